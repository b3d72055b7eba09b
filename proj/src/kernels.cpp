#include "groupoidal/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace groupoidal {

GKernel::GKernel(GroupoidPtr base, const Coefficients& coeffs, bool full_support)
    : base_(std::move(base)), full_support_(full_support) {
  if (!base_) throw InvalidArgument("GKernel needs a groupoid");
  values_.assign(base_->morphism_count(), 0.0);
  for (const auto& [key, t] : coeffs) {
    const auto [a, m] = key;
    if (a >= base_->object_count() || m >= base_->morphism_count()) throw InvalidArgument("kernel index out of range");
    if (!std::isfinite(t) || t < 0.0) {
      throw InvalidArgument("kernel coefficient for '" + base_->morphism_id(m) + "' is negative or not finite");
    }
    if (t == 0.0) continue;
    if (base_->rng(m) != a) {
      throw InvalidArgument("kernel is not fibered: t^" + base_->object_id(a) + "_" + base_->morphism_id(m) +
                            " > 0 but r(" + base_->morphism_id(m) + ") = " + base_->object_id(base_->rng(m)));
    }
    values_[m] = t;
  }
  if (full_support_) {
    for (MorphismIndex m = 0; m < base_->morphism_count(); ++m) {
      if (values_[m] <= 0.0) {
        throw InvalidArgument("kernel declared full-support but t_" + base_->morphism_id(m) + " = 0");
      }
    }
  }
}

GKernel GKernel::counting(GroupoidPtr base, double c) {
  return from_morphism_values(base, std::vector<double>(base->morphism_count(), c), c > 0.0);
}

GKernel GKernel::from_morphism_values(GroupoidPtr base, const std::vector<double>& values, bool full_support) {
  if (values.size() != base->morphism_count()) throw InvalidArgument("kernel values have the wrong length");
  Coefficients coeffs;
  for (MorphismIndex m = 0; m < values.size(); ++m) coeffs[{base->rng(m), m}] = values[m];
  return GKernel(std::move(base), coeffs, full_support);
}

double GKernel::coeff(ObjectIndex a, MorphismIndex m) const { return base_->rng(m) == a ? values_[m] : 0.0; }

std::vector<Complex> apply_kernel(const GKernel& lambda, const GFunction& f) {
  require_same_base(lambda.base(), f.base(), "apply_kernel");
  const auto& g = *lambda.base();
  std::vector<Complex> out(g.object_count());
  for (const auto& [m, v] : f.support()) out[g.rng(m)] += lambda.coeff(m) * v;
  return out;
}

TransverseReport check_transverse(const GKernel& lambda, double tol) {
  const auto& g = *lambda.base();
  const auto n = static_cast<std::int64_t>(g.morphism_count());
  std::vector<std::vector<TransverseViolation>> per_alpha(g.morphism_count());
  std::vector<double> worst(g.morphism_count(), 0.0);

  // For δ_η the identity reads t_η^{r(α)} = t_{α⁻¹·η}^{s(α)} on η ∈ 𝒢_{r(α)};
  // both sides vanish off that fiber.
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto alpha = static_cast<MorphismIndex>(i);
    for (MorphismIndex eta = 0; eta < g.morphism_count(); ++eta) {
      if (g.rng(eta) != g.rng(alpha)) continue;
      const double lhs = lambda.coeff(g.rng(alpha), eta);
      const double rhs = lambda.coeff(g.src(alpha), *g.product(g.inv(alpha), eta));
      const double r = std::abs(lhs - rhs);
      worst[alpha] = std::max(worst[alpha], r);
      if (r > tol) per_alpha[alpha].push_back({alpha, eta, lhs, rhs});
    }
  }

  TransverseReport report;
  for (MorphismIndex a = 0; a < g.morphism_count(); ++a) {
    report.max_residual = std::max(report.max_residual, worst[a]);
    report.violations.insert(report.violations.end(), per_alpha[a].begin(), per_alpha[a].end());
  }
  return report;
}

bool check_faithful(const GKernel& lambda) {
  const auto& g = *lambda.base();
  std::vector<bool> seen(g.object_count(), false);
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (lambda.coeff(m) > 0.0) seen[g.rng(m)] = true;
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

ModularReport check_modular(const ModularFunction& delta, double tol) {
  const auto& g = *delta.base;
  if (delta.values.size() != g.morphism_count()) throw InvalidArgument("modular function has the wrong length");
  ModularReport report;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (!(delta.values[m] > 0.0)) report.nonpositive.push_back(m);
  }
  if (!report.nonpositive.empty()) return report;

  // (α⁻¹, β) ∈ 𝒢^(2) ⇔ r(α) = r(β)
  for (MorphismIndex a = 0; a < g.morphism_count(); ++a) {
    for (MorphismIndex b = 0; b < g.morphism_count(); ++b) {
      if (g.rng(a) != g.rng(b)) continue;
      const double lhs = delta.values[g.compose(g.inv(a), b)];
      const double rhs = delta.values[b] / delta.values[a];
      const double r = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
      report.max_residual = std::max(report.max_residual, r);
      if (r > tol) report.violations.push_back({a, b, lhs, rhs});
    }
  }
  return report;
}

ModularFunction make_haar_modular(const GroupoidPtr& base, const std::vector<double>& potential) {
  if (potential.size() != base->object_count()) throw InvalidArgument("potential must have one value per object");
  ModularFunction delta{base, std::vector<double>(base->morphism_count())};
  for (MorphismIndex m = 0; m < base->morphism_count(); ++m) {
    delta.values[m] = std::exp(potential[base->src(m)] - potential[base->rng(m)]);
  }
  return delta;
}

namespace {

void require_quasi_inputs(const ObjectMeasure& m, const GKernel& lambda, const ModularFunction& delta) {
  require_same_base(m.base, lambda.base(), "quasi-invariance measure");
  require_same_base(delta.base, lambda.base(), "quasi-invariance modular function");
  if (m.weights.size() != lambda.base()->object_count()) throw InvalidArgument("measure has the wrong length");
  if (delta.values.size() != lambda.base()->morphism_count()) throw InvalidArgument("modular function has the wrong length");
}

}  // namespace

QuasiInvariantSides quasi_invariant_sides(const ObjectMeasure& m, const GKernel& lambda, const ModularFunction& delta,
                                          const GFunction& f, InverseCoefficient reading) {
  require_quasi_inputs(m, lambda, delta);
  require_same_base(f.base(), lambda.base(), "quasi-invariance function");
  const auto& g = *lambda.base();
  QuasiInvariantSides sides{};
  for (ObjectIndex a = 0; a < g.object_count(); ++a) {
    for (MorphismIndex alpha = 0; alpha < g.morphism_count(); ++alpha) {
      if (g.rng(alpha) != a) continue;
      const auto inv = g.inv(alpha);
      sides.lhs += m.weights[a] * lambda.coeff(a, alpha) * f(alpha);
      const double c = reading == InverseCoefficient::Literal ? lambda.coeff(a, inv) : lambda.coeff(inv);
      sides.rhs += m.weights[a] * c * std::conj(f(inv)) * delta.values[inv];
    }
  }
  return sides;
}

Complex check_quasi_invariant(const ObjectMeasure& m, const GKernel& lambda, const ModularFunction& delta,
                              const GFunction& f, InverseCoefficient reading) {
  return quasi_invariant_sides(m, lambda, delta, f, reading).residual();
}

QuasiInvariantReport is_quasi_invariant(const ObjectMeasure& m, const GKernel& lambda, const ModularFunction& delta,
                                        InverseCoefficient reading, double tol) {
  QuasiInvariantReport report;
  for (MorphismIndex gamma = 0; gamma < lambda.base()->morphism_count(); ++gamma) {
    const auto r = check_quasi_invariant(m, lambda, delta, canonical_potential(lambda.base(), gamma), reading);
    report.max_residual = std::max(report.max_residual, std::abs(r));
    if (std::abs(r) > tol) report.violations.emplace_back(gamma, r);
  }
  return report;
}

CompositeMeasure::CompositeMeasure(ObjectMeasure m, GKernel lambda) : measure_(std::move(m)), lambda_(std::move(lambda)) {
  require_same_base(measure_.base, lambda_.base(), "composite measure");
  if (measure_.weights.size() != lambda_.base()->object_count()) throw InvalidArgument("measure has the wrong length");
}

Complex CompositeMeasure::operator()(const GFunction& f) const {
  const auto values = apply_kernel(lambda_, f);
  Complex acc{};
  for (ObjectIndex a = 0; a < values.size(); ++a) acc += measure_.weights[a] * values[a];
  return acc;
}

Complex CompositeMeasure::modular_residual(const ModularFunction& delta, const GFunction& f) const {
  require_same_base(delta.base, lambda_.base(), "modular residual");
  auto twisted = adjoint(f);
  for (MorphismIndex m = 0; m < delta.values.size(); ++m) twisted.set(m, twisted(m) / delta.values[m]);
  return (*this)(f) - (*this)(twisted);
}

double CompositeMeasure::modular_residual_on_basis(const ModularFunction& delta) const {
  double worst = 0.0;
  for (MorphismIndex m = 0; m < lambda_.base()->morphism_count(); ++m) {
    worst = std::max(worst, std::abs(modular_residual(delta, canonical_potential(lambda_.base(), m))));
  }
  return worst;
}

}  // namespace groupoidal
