#include "groupoidal/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "groupoidal/kernels.hpp"

namespace groupoidal {

GFunction::GFunction(GroupoidPtr base) : base_(std::move(base)) {
  if (!base_) throw InvalidArgument("GFunction needs a groupoid");
}

GFunction GFunction::from_dense(GroupoidPtr base, const std::vector<Complex>& values) {
  GFunction f(std::move(base));
  if (values.size() != f.base_->morphism_count()) throw InvalidArgument("dense values have the wrong length");
  for (MorphismIndex m = 0; m < values.size(); ++m) f.set(m, values[m]);
  return f;
}

GFunction GFunction::constant(GroupoidPtr base, Complex c) {
  GFunction f(std::move(base));
  for (MorphismIndex m = 0; m < f.base_->morphism_count(); ++m) f.set(m, c);
  return f;
}

Complex GFunction::operator()(MorphismIndex m) const {
  if (m >= base_->morphism_count()) throw UnknownId("morphism #" + std::to_string(m));
  auto it = values_.find(m);
  return it == values_.end() ? Complex{} : it->second;
}

void GFunction::set(MorphismIndex m, Complex value) {
  if (m >= base_->morphism_count()) throw UnknownId("morphism #" + std::to_string(m));
  if (value == Complex{}) {
    values_.erase(m);
  } else {
    values_[m] = value;
  }
}

std::vector<Complex> GFunction::dense() const {
  std::vector<Complex> out(base_->morphism_count());
  for (const auto& [m, v] : values_) out[m] = v;
  return out;
}

double GFunction::distance(const GFunction& other) const {
  require_same_base(base_, other.base_, "distance");
  double worst = 0.0;
  for (MorphismIndex m = 0; m < base_->morphism_count(); ++m) {
    const auto d = (*this)(m) - other(m);
    worst = std::max({worst, std::abs(d.real()), std::abs(d.imag())});
  }
  return worst;
}

bool GFunction::approx_equal(const GFunction& other, double tol) const { return distance(other) <= tol; }

double GFunction::sup_norm() const {
  double worst = 0.0;
  for (const auto& [m, v] : values_) worst = std::max(worst, std::abs(v));
  return worst;
}

GFunction& GFunction::operator+=(const GFunction& other) {
  require_same_base(base_, other.base_, "addition");
  for (const auto& [m, v] : other.values_) set(m, (*this)(m) + v);
  return *this;
}

GFunction& GFunction::operator-=(const GFunction& other) {
  require_same_base(base_, other.base_, "subtraction");
  for (const auto& [m, v] : other.values_) set(m, (*this)(m) - v);
  return *this;
}

GFunction& GFunction::operator*=(Complex c) {
  if (c == Complex{}) {
    values_.clear();
    return *this;
  }
  for (auto& [m, v] : values_) v *= c;
  return *this;
}

void require_same_base(const GroupoidPtr& a, const GroupoidPtr& b, const char* what) {
  if (!same_groupoid(a, b)) throw BaseMismatch(std::string(what) + ": operands live on different groupoids");
}

GFunction pointwise_product(const GFunction& f, const GFunction& h) {
  require_same_base(f.base(), h.base(), "pointwise product");
  GFunction out(f.base());
  for (const auto& [m, v] : f.support()) out.set(m, v * h(m));
  return out;
}

GFunction conjugate(const GFunction& f) {
  GFunction out(f.base());
  for (const auto& [m, v] : f.support()) out.set(m, std::conj(v));
  return out;
}

GFunction canonical_potential(const GroupoidPtr& g, MorphismIndex m) {
  GFunction f(g);
  f.set(m, 1.0);
  return f;
}

GFunction canonical_potential(const GroupoidPtr& g, const std::string& id) {
  return canonical_potential(g, g->morphism_index(id));
}

GFunction adjoint(const GFunction& f) {
  const auto& g = f.groupoid();
  GFunction out(f.base());
  for (const auto& [m, v] : f.support()) out.set(g.inv(m), std::conj(v));
  return out;
}

GFunction convolve(const GFunction& f, const GFunction& h) {
  require_same_base(f.base(), h.base(), "convolve");
  const auto& g = f.groupoid();
  const auto n = static_cast<std::int64_t>(g.morphism_count());
  std::vector<std::vector<MorphismIndex>> range_fibers(g.object_count());
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) range_fibers[g.rng(m)].push_back(m);
  const auto fd = f.dense();
  const auto hd = h.dense();
  std::vector<Complex> out(g.morphism_count());

  // (f ∗ h)(γ) = Σ_{r(α) = r(γ)} f(α) h(α⁻¹·γ)
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n; ++c) {
    const auto gamma = static_cast<MorphismIndex>(c);
    Complex acc{};
    for (auto alpha : range_fibers[g.rng(gamma)]) {
      if (fd[alpha] == Complex{}) continue;
      acc += fd[alpha] * hd[*g.product(g.inv(alpha), gamma)];
    }
    out[gamma] = acc;
  }
  return GFunction::from_dense(f.base(), out);
}

GFunction convolve_haar(const GFunction& f, const GFunction& h, const GKernel& lambda) {
  require_same_base(f.base(), h.base(), "convolve_haar");
  require_same_base(f.base(), lambda.base(), "convolve_haar kernel");
  const auto& g = f.groupoid();
  const auto n = static_cast<std::int64_t>(g.morphism_count());
  std::vector<std::vector<MorphismIndex>> range_fibers(g.object_count());
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) range_fibers[g.rng(m)].push_back(m);
  const auto fd = f.dense();
  const auto hd = h.dense();
  std::vector<Complex> out(g.morphism_count());

#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n; ++c) {
    const auto alpha = static_cast<MorphismIndex>(c);
    const auto a = g.src(alpha);
    Complex acc{};
    for (auto gamma : range_fibers[a]) {
      const double t = lambda.coeff(gamma);
      if (t == 0.0) continue;
      acc += t * fd[*g.product(alpha, gamma)] * hd[g.inv(gamma)];
    }
    out[alpha] = acc;
  }
  return GFunction::from_dense(f.base(), out);
}

AssociativityReport check_basis_associativity(const GroupoidPtr& g, const GKernel* lambda, double tol) {
  if (lambda) require_same_base(g, lambda->base(), "check_basis_associativity");
  const auto n = g->morphism_count();
  auto product = [&](const GFunction& f, const GFunction& h) { return lambda ? convolve_haar(f, h, *lambda) : convolve(f, h); };
  std::vector<GFunction> basis;
  for (MorphismIndex m = 0; m < n; ++m) basis.push_back(canonical_potential(g, m));
  std::vector<GFunction> pairs;
  pairs.reserve(n * n);
  for (MorphismIndex a = 0; a < n; ++a) {
    for (MorphismIndex b = 0; b < n; ++b) pairs.push_back(product(basis[a], basis[b]));
  }

  std::vector<double> worst(n, 0.0);
  std::vector<std::optional<std::array<MorphismIndex, 3>>> first(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    const auto a = static_cast<MorphismIndex>(i);
    for (MorphismIndex b = 0; b < n; ++b) {
      const auto& ab = pairs[a * n + b];
      for (MorphismIndex c = 0; c < n; ++c) {
        const auto& bc = pairs[b * n + c];
        if (ab.support().empty() && bc.support().empty()) continue;  // both sides vanish
        const double r = product(ab, basis[c]).distance(product(basis[a], bc));
        worst[a] = std::max(worst[a], r);
        if (r > tol && !first[a]) first[a] = std::array<MorphismIndex, 3>{a, b, c};
      }
    }
  }

  AssociativityReport report;
  report.triples = n * n * n;
  for (MorphismIndex a = 0; a < n; ++a) {
    report.max_residual = std::max(report.max_residual, worst[a]);
    if (!report.witness && first[a]) report.witness = first[a];
  }
  return report;
}

DensityWeights::DensityWeights(GFunction weights, double tol) : weights_(std::move(weights)) {
  Complex total{};
  for (const auto& [m, v] : weights_.support()) total += v;
  if (std::abs(total - Complex{1.0}) > tol) {
    throw InvalidArgument("density weights sum to (" + std::to_string(total.real()) + ", " +
                          std::to_string(total.imag()) + "), expected 1");
  }
}

std::vector<MorphismIndex> DensityWeights::positivity_lint(double tol) const {
  std::vector<MorphismIndex> out;
  for (const auto& [m, v] : weights_.support()) {
    if (v.real() < -tol || std::abs(v.imag()) > tol) out.push_back(m);
  }
  return out;
}

Complex apply_density(const DensityWeights& rho, const GFunction& f) {
  require_same_base(rho.weights().base(), f.base(), "apply_density");
  Complex acc{};
  for (const auto& [m, w] : rho.weights().support()) acc += f(m) * w;
  return acc;
}

}  // namespace groupoidal
