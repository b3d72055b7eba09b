#include "groupoidal/representation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace groupoidal {

namespace {

constexpr std::size_t kRetries = 8;

void require_same_rep_base(const Representation& a, const Representation& b, const char* what) {
  if (!same_groupoid(a.base(), b.base())) throw BaseMismatch(std::string(what) + ": representations live on different groupoids");
}

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

bool invertible(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > rel_tol * std::max(1.0, sv(0));
}

}  // namespace

Representation::Representation(GroupoidPtr base, std::vector<Eigen::Index> dims, std::vector<Matrix> mats)
    : base_(std::move(base)), dims_(std::move(dims)), mats_(std::move(mats)) {
  if (!base_) throw InvalidArgument("Representation needs a groupoid");
  const auto& g = *base_;
  if (dims_.size() != g.object_count()) {
    throw ShapeMismatch("expected " + std::to_string(g.object_count()) + " dimensions, got " + std::to_string(dims_.size()));
  }
  if (mats_.size() != g.morphism_count()) {
    throw ShapeMismatch("expected " + std::to_string(g.morphism_count()) + " matrices, got " + std::to_string(mats_.size()));
  }
  for (ObjectIndex a = 0; a < g.object_count(); ++a) {
    if (dims_[a] < 0) throw ShapeMismatch("negative dimension at object '" + g.object_id(a) + "'");
  }
  for (const auto& component : connected_components(g)) {
    for (auto a : component) {
      if (dims_[a] != dims_[component.front()]) {
        throw ShapeMismatch("dimension differs between connected objects '" + g.object_id(component.front()) + "' and '" +
                            g.object_id(a) + "'");
      }
    }
  }
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    const auto rows = dims_[g.rng(m)];
    const auto cols = dims_[g.src(m)];
    if (mats_[m].rows() != rows || mats_[m].cols() != cols) {
      throw ShapeMismatch("matrix for '" + g.morphism_id(m) + "' is " + std::to_string(mats_[m].rows()) + "x" +
                          std::to_string(mats_[m].cols()) + ", expected " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    }
  }
}

Representation Representation::trivial(GroupoidPtr base) {
  const auto& g = *base;
  return Representation(base, std::vector<Eigen::Index>(g.object_count(), 1), std::vector<Matrix>(g.morphism_count(), identity(1)));
}

std::optional<Eigen::Index> Representation::uniform_dim() const {
  if (std::adjacent_find(dims_.begin(), dims_.end(), std::not_equal_to<>()) != dims_.end()) return std::nullopt;
  return dims_.front();
}

RepReport check_representation(const Representation& rep, double tol) {
  const auto& g = rep.groupoid();
  RepReport report;
  auto note = [&](std::string kind, std::vector<std::string> witness, double r) {
    report.max_residual = std::max(report.max_residual, r);
    if (r > tol) report.violations.push_back({std::move(kind), std::move(witness), r});
  };
  for (ObjectIndex a = 0; a < g.object_count(); ++a) {
    const auto u = g.unit(a);
    note("unit", {g.morphism_id(u)}, max_abs(rep(u) - identity(rep.dim(a))));
  }
  for (MorphismIndex a = 0; a < g.morphism_count(); ++a) {
    for (MorphismIndex b = 0; b < g.morphism_count(); ++b) {
      if (g.src(a) != g.rng(b)) continue;
      const auto ab = g.compose(a, b);
      note("functor", {g.morphism_id(a), g.morphism_id(b)}, max_abs(rep(ab) - rep(a) * rep(b)));
    }
  }
  return report;
}

RepReport check_unitary(const Representation& rep, double tol) {
  const auto& g = rep.groupoid();
  RepReport report;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    const double r = unitarity_defect(rep(m));
    report.max_residual = std::max(report.max_residual, r);
    if (r > tol) report.violations.push_back({"unitary", {g.morphism_id(m)}, r});
  }
  return report;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  require_same_rep_base(a, b, "direct_sum");
  const auto& g = a.groupoid();
  std::vector<Eigen::Index> dims(g.object_count());
  for (ObjectIndex x = 0; x < dims.size(); ++x) dims[x] = a.dim(x) + b.dim(x);
  std::vector<Matrix> mats(g.morphism_count());
  for (MorphismIndex m = 0; m < mats.size(); ++m) mats[m] = block_diag(a(m), b(m));
  return Representation(a.base(), std::move(dims), std::move(mats));
}

Representation tensor_product(const Representation& a, const Representation& b) {
  require_same_rep_base(a, b, "tensor_product");
  const auto& g = a.groupoid();
  std::vector<Eigen::Index> dims(g.object_count());
  for (ObjectIndex x = 0; x < dims.size(); ++x) dims[x] = a.dim(x) * b.dim(x);
  std::vector<Matrix> mats(g.morphism_count());
  for (MorphismIndex m = 0; m < mats.size(); ++m) mats[m] = kron(a(m), b(m));
  return Representation(a.base(), std::move(dims), std::move(mats));
}

Representation conjugate_rep(const Representation& rep) {
  const auto& g = rep.groupoid();
  std::vector<Matrix> mats(g.morphism_count());
  for (MorphismIndex m = 0; m < mats.size(); ++m) mats[m] = rep(g.inv(m));
  return Representation(rep.base(), rep.dims(), std::move(mats));
}

Representation complex_conjugate(const Representation& rep) {
  std::vector<Matrix> mats;
  mats.reserve(rep.mats().size());
  for (const auto& m : rep.mats()) mats.push_back(m.conjugate());
  return Representation(rep.base(), rep.dims(), std::move(mats));
}

Representation change_basis(const Representation& rep, const std::vector<Matrix>& u) {
  const auto& g = rep.groupoid();
  if (u.size() != g.object_count()) throw ShapeMismatch("change_basis needs one matrix per object");
  std::vector<Matrix> inverse(u.size());
  for (ObjectIndex x = 0; x < u.size(); ++x) {
    if (u[x].rows() != rep.dim(x) || u[x].cols() != rep.dim(x)) {
      throw ShapeMismatch("basis change at '" + g.object_id(x) + "' has the wrong size");
    }
    inverse[x] = u[x].size() == 0 ? Matrix(0, 0) : Matrix(u[x].inverse());
  }
  std::vector<Matrix> mats(g.morphism_count());
  for (MorphismIndex m = 0; m < mats.size(); ++m) mats[m] = u[g.rng(m)] * rep(m) * inverse[g.src(m)];
  return Representation(rep.base(), rep.dims(), std::move(mats));
}

std::vector<Intertwiner> intertwiner_space(const Representation& a, const Representation& b, double tol) {
  require_same_rep_base(a, b, "intertwiner_space");
  const auto& g = a.groupoid();
  // Unknowns: vec(φ_x) (column-major, dims′(x) × dims(x)) stacked by object.
  std::vector<Eigen::Index> offset(g.object_count() + 1, 0);
  for (ObjectIndex x = 0; x < g.object_count(); ++x) offset[x + 1] = offset[x] + b.dim(x) * a.dim(x);
  const auto unknowns = offset.back();

  Eigen::Index rows = 0;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (!g.is_unit(m)) rows += b.dim(g.rng(m)) * a.dim(g.src(m));
  }
  Matrix system = Matrix::Zero(rows, unknowns);
  Eigen::Index row = 0;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (g.is_unit(m)) continue;
    const auto r = g.rng(m);
    const auto s = g.src(m);
    const auto height = b.dim(r) * a.dim(s);
    // vec(φ_r Λ(α)) = (Λ(α)ᵀ ⊗ I) vec(φ_r),  vec(Λ′(α) φ_s) = (I ⊗ Λ′(α)) vec(φ_s)
    system.block(row, offset[r], height, offset[r + 1] - offset[r]) += kron(a(m).transpose(), identity(b.dim(r)));
    system.block(row, offset[s], height, offset[s + 1] - offset[s]) -= kron(identity(a.dim(s)), b(m));
    row += height;
  }

  const Matrix kernel = nullspace(system, tol);
  std::vector<Intertwiner> basis;
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
    Intertwiner phi;
    for (ObjectIndex x = 0; x < g.object_count(); ++x) {
      const Vector v = kernel.col(k).segment(offset[x], offset[x + 1] - offset[x]);
      phi.components.push_back(Eigen::Map<const Matrix>(v.data(), b.dim(x), a.dim(x)));
    }
    basis.push_back(std::move(phi));
  }
  return basis;
}

double intertwining_defect(const Intertwiner& phi, const Representation& a, const Representation& b) {
  require_same_rep_base(a, b, "intertwining_defect");
  const auto& g = a.groupoid();
  if (phi.components.size() != g.object_count()) throw ShapeMismatch("intertwiner needs one component per object");
  double worst = 0.0;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    worst = std::max(worst, max_abs(phi.components[g.rng(m)] * a(m) - b(m) * phi.components[g.src(m)]));
  }
  return worst;
}

EquivalenceResult are_equivalent(const Representation& a, const Representation& b, std::uint64_t seed, double tol) {
  require_same_rep_base(a, b, "are_equivalent");
  EquivalenceResult result;
  if (a.dims() != b.dims()) {
    result.verdict = Equivalence::Inequivalent;
    return result;
  }
  const auto basis = intertwiner_space(a, b, tol);
  const auto& g = a.groupoid();
  if (basis.empty()) {
    const bool all_zero = std::all_of(a.dims().begin(), a.dims().end(), [](auto d) { return d == 0; });
    result.verdict = all_zero ? Equivalence::Equivalent : Equivalence::Inequivalent;
    if (all_zero) result.witness = Intertwiner{std::vector<Matrix>(g.object_count(), Matrix(0, 0))};
    return result;
  }
  Rng rng(seed);
  std::normal_distribution<double> normal;
  for (std::size_t attempt = 0; attempt < kRetries; ++attempt) {
    result.attempts = attempt + 1;
    Intertwiner phi;
    for (ObjectIndex x = 0; x < g.object_count(); ++x) phi.components.push_back(Matrix::Zero(b.dim(x), a.dim(x)));
    for (const auto& element : basis) {
      const double re = normal(rng);
      const Complex c(re, normal(rng));
      for (ObjectIndex x = 0; x < g.object_count(); ++x) phi.components[x] += c * element.components[x];
    }
    const bool ok = std::all_of(phi.components.begin(), phi.components.end(),
                                [&](const Matrix& m) { return invertible(m, kDefaultTolerance.cluster); });
    if (ok) {
      result.verdict = Equivalence::Equivalent;
      result.witness = std::move(phi);
      return result;
    }
  }
  result.verdict = Equivalence::Undecided;
  return result;
}

std::size_t commutant_dimension(const Representation& rep, double tol) { return intertwiner_space(rep, rep, tol).size(); }

bool is_irreducible(const Representation& rep, double tol) { return commutant_dimension(rep, tol) == 1; }

namespace {

struct Eigenpair {
  double value;
  ObjectIndex object;
  Vector vector;
};

/// Splits `rep` once along the eigenspaces of a random Hermitian commutant
/// element. Returns the isometries per cluster, or nothing when the draw
/// failed to separate anything.
std::optional<std::vector<std::vector<Matrix>>> split_once(const Representation& rep,
                                                           const std::vector<Intertwiner>& commutant, Rng& rng,
                                                           const Tolerance& tol) {
  const auto& g = rep.groupoid();
  std::normal_distribution<double> normal;
  std::vector<Matrix> h;
  for (ObjectIndex x = 0; x < g.object_count(); ++x) h.push_back(Matrix::Zero(rep.dim(x), rep.dim(x)));
  for (const auto& element : commutant) {
    const double a = normal(rng);
    const double b = normal(rng);
    for (ObjectIndex x = 0; x < g.object_count(); ++x) {
      const auto& c = element.components[x];
      h[x] += a * 0.5 * (c + c.adjoint()) + b * Complex(0.0, 0.5) * (c - c.adjoint());
    }
  }

  std::vector<Eigenpair> pairs;
  for (ObjectIndex x = 0; x < g.object_count(); ++x) {
    if (rep.dim(x) == 0) continue;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h[x]);
    for (Eigen::Index i = 0; i < rep.dim(x); ++i) pairs.push_back({solver.eigenvalues()(i), x, solver.eigenvectors().col(i)});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& l, const auto& r) { return l.value < r.value; });

  std::vector<std::vector<const Eigenpair*>> clusters;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == 0 || pairs[i].value - pairs[i - 1].value > tol.cluster) clusters.emplace_back();
    clusters.back().push_back(&pairs[i]);
  }
  if (clusters.size() < 2) return std::nullopt;

  std::vector<std::vector<Matrix>> out;
  for (const auto& cluster : clusters) {
    std::vector<std::vector<const Vector*>> per_object(g.object_count());
    for (const auto* p : cluster) per_object[p->object].push_back(&p->vector);
    std::vector<Matrix> basis;
    for (ObjectIndex x = 0; x < g.object_count(); ++x) {
      Matrix b(rep.dim(x), static_cast<Eigen::Index>(per_object[x].size()));
      for (std::size_t k = 0; k < per_object[x].size(); ++k) b.col(static_cast<Eigen::Index>(k)) = *per_object[x][k];
      basis.push_back(std::move(b));
    }
    out.push_back(std::move(basis));
  }
  return out;
}

Representation compress(const Representation& rep, const std::vector<Matrix>& basis) {
  const auto& g = rep.groupoid();
  std::vector<Eigen::Index> dims(g.object_count());
  for (ObjectIndex x = 0; x < dims.size(); ++x) dims[x] = basis[x].cols();
  std::vector<Matrix> mats(g.morphism_count());
  for (MorphismIndex m = 0; m < mats.size(); ++m) mats[m] = basis[g.rng(m)].adjoint() * rep(m) * basis[g.src(m)];
  return Representation(rep.base(), std::move(dims), std::move(mats));
}

void split_recursive(const Representation& rep, const std::vector<Matrix>& embedding, Rng& rng, const Tolerance& tol,
                     std::vector<RepPiece>& out) {
  const auto total = std::accumulate(rep.dims().begin(), rep.dims().end(), Eigen::Index{0});
  if (total == 0) return;
  const auto commutant = intertwiner_space(rep, rep, tol.eq);
  if (commutant.size() <= 1) {
    out.push_back({embedding, rep});
    return;
  }
  for (std::size_t attempt = 0; attempt < kRetries; ++attempt) {
    auto split = split_once(rep, commutant, rng, tol);
    if (!split) continue;
    std::vector<std::pair<Representation, std::vector<Matrix>>> parts;
    try {
      for (const auto& basis : *split) {
        std::vector<Matrix> nested(basis.size());
        for (std::size_t x = 0; x < basis.size(); ++x) nested[x] = embedding[x] * basis[x];
        parts.emplace_back(compress(rep, basis), std::move(nested));
      }
    } catch (const ShapeMismatch&) {
      // eigenvalue clusters disagreed across a component; redraw
      continue;
    }
    for (const auto& [sub, nested] : parts) split_recursive(sub, nested, rng, tol, out);
    return;
  }
  throw Error("decompose: " + std::to_string(kRetries) + " random commutant elements failed to split a reducible representation");
}

}  // namespace

Decomposition decompose(const Representation& rep, std::uint64_t seed, const Tolerance& tol) {
  if (!check_unitary(rep, tol.eq).ok()) throw InvalidArgument("decompose needs a unitary representation");
  const auto& g = rep.groupoid();
  Decomposition d;
  d.seed = seed;
  Rng rng(seed);
  std::vector<Matrix> embedding;
  for (ObjectIndex x = 0; x < g.object_count(); ++x) embedding.push_back(identity(rep.dim(x)));
  split_recursive(rep, embedding, rng, tol, d.pieces);

  for (const auto& piece : d.pieces) {
    std::vector<Matrix> projector;
    for (ObjectIndex x = 0; x < g.object_count(); ++x) {
      const auto& b = piece.basis[x];
      d.orthonormality_residual = std::max(d.orthonormality_residual, max_abs(b.adjoint() * b - identity(b.cols())));
      projector.push_back(b * b.adjoint());
    }
    for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
      const auto& pr = projector[g.rng(m)];
      const auto& ps = projector[g.src(m)];
      const Matrix leak_out = (identity(rep.dim(g.rng(m))) - pr) * rep(m) * ps;
      const Matrix leak_in = pr * rep(m) * (identity(rep.dim(g.src(m))) - ps);
      d.stability_residual = std::max({d.stability_residual, max_abs(leak_out), max_abs(leak_in)});
    }
  }
  return d;
}

Representation reassemble(const Representation& rep, const Decomposition& d) {
  const auto& g = rep.groupoid();
  std::vector<Matrix> u(g.object_count());
  for (ObjectIndex x = 0; x < g.object_count(); ++x) {
    Eigen::Index cols = 0;
    for (const auto& p : d.pieces) cols += p.basis[x].cols();
    if (cols != rep.dim(x)) throw ShapeMismatch("pieces do not exhaust the space at '" + g.object_id(x) + "'");
    u[x] = Matrix(rep.dim(x), cols);
    Eigen::Index at = 0;
    for (const auto& p : d.pieces) {
      u[x].middleCols(at, p.basis[x].cols()) = p.basis[x];
      at += p.basis[x].cols();
    }
  }
  std::vector<Matrix> mats(g.morphism_count());
  for (MorphismIndex m = 0; m < mats.size(); ++m) {
    Matrix blocks(0, 0);
    for (const auto& p : d.pieces) blocks = block_diag(blocks, p.rep(m));
    mats[m] = u[g.rng(m)] * blocks * u[g.src(m)].adjoint();
  }
  return Representation(rep.base(), rep.dims(), std::move(mats));
}

Representation restrict_to_isotropy(const Representation& rep, ObjectIndex a) {
  const auto& g = rep.groupoid();
  auto group = isotropy_group(g, a);
  std::vector<Matrix> mats;
  for (const auto& id : group->morphism_ids()) mats.push_back(rep(g.morphism_index(id)));
  return Representation(group, {rep.dim(a)}, std::move(mats));
}

namespace {

void require_section(const FiniteGroupoid& g, const Section& omega) {
  if (!is_connected(g)) throw NotConnected("the (λ, μ) correspondence needs a connected groupoid");
  if (omega.base >= g.object_count() || omega.omega.size() != g.object_count()) {
    throw InvalidArgument("section does not match the groupoid");
  }
  for (ObjectIndex x = 0; x < g.object_count(); ++x) {
    const auto w = omega.omega[x];
    if (w >= g.morphism_count() || g.rng(w) != omega.base || g.src(w) != x) {
      throw InvalidArgument("section value at '" + g.object_id(x) + "' is not in the right fiber");
    }
  }
}

}  // namespace

RepPair split_H(const Representation& rep, const Section& omega) {
  const auto& g = rep.groupoid();
  require_section(g, omega);
  RepPair pair{restrict_to_isotropy(rep, omega.base), {}};
  for (ObjectIndex x = 0; x < g.object_count(); ++x) pair.mu.push_back(rep(omega.omega[x]));
  return pair;
}

Representation rebuild_H(const GroupoidPtr& base, const RepPair& pair, const Section& omega) {
  const auto& g = *base;
  require_section(g, omega);
  const auto& lambda = pair.lambda;
  if (lambda.groupoid().object_count() != 1) throw InvalidArgument("λ must be a representation of a group");
  const auto d = lambda.dim(0);
  if (pair.mu.size() != g.object_count()) throw ShapeMismatch("μ needs one matrix per object");
  for (const auto& m : pair.mu) {
    if (m.rows() != d || m.cols() != d) throw ShapeMismatch("μ matrices must match dim λ");
  }
  if (max_abs(pair.mu[omega.base] - identity(d)) > kDefaultTolerance.eq) {
    throw InvalidArgument("μ must send the base object to the identity");
  }
  std::vector<Matrix> mu_inv;
  for (const auto& m : pair.mu) mu_inv.push_back(m.inverse());
  std::vector<Matrix> mats(g.morphism_count());
  for (MorphismIndex m = 0; m < mats.size(); ++m) {
    const auto gm = gamma(g, omega, m);
    const auto id = lambda.groupoid().find_morphism(g.morphism_id(gm));
    if (!id) throw BaseMismatch("λ is not a representation of the isotropy group at '" + g.object_id(omega.base) + "'");
    mats[m] = mu_inv[g.rng(m)] * lambda(*id) * pair.mu[g.src(m)];
  }
  return Representation(base, std::vector<Eigen::Index>(g.object_count(), d), std::move(mats));
}

Representation extend_from_isotropy(const GroupoidPtr& base, const Representation& lambda_x, ObjectIndex x,
                                    MorphismIndex omega_morphism, const Section& section) {
  const auto& g = *base;
  require_section(g, section);
  if (omega_morphism >= g.morphism_count() || g.rng(omega_morphism) != section.base || g.src(omega_morphism) != x) {
    throw InvalidArgument("ω must have range '" + g.object_id(section.base) + "' and source '" + g.object_id(x) + "'");
  }
  if (!same_groupoid(lambda_x.base(), isotropy_group(g, x))) {
    throw BaseMismatch("λ′ is not a representation of the isotropy group at '" + g.object_id(x) + "'");
  }
  const auto& iso_x = lambda_x.groupoid();
  auto at_x = [&](MorphismIndex m) -> const Matrix& { return lambda_x(iso_x.morphism_index(g.morphism_id(m))); };

  // λ(α) = λ′(ω⁻¹·α·ω) on 𝒢_a^a
  auto iso_a = isotropy_group(g, section.base);
  const auto w_inv = g.inv(omega_morphism);
  std::vector<Matrix> transported;
  for (const auto& id : iso_a->morphism_ids()) {
    transported.push_back(at_x(g.compose(g.compose(w_inv, g.morphism_index(id)), omega_morphism)));
  }
  const auto d = lambda_x.dim(0);
  RepPair pair{Representation(iso_a, {d}, std::move(transported)), std::vector<Matrix>(g.object_count(), identity(d))};
  const auto flat = rebuild_H(base, pair, section);

  // The restriction of `flat` at x is λ′ conjugated by λ′(ω⁻¹·Ω(x)); undo it.
  const Matrix u = at_x(g.compose(w_inv, section.omega[x]));
  return change_basis(flat, std::vector<Matrix>(g.object_count(), u.inverse()));
}

Representation regular_representation(const GroupoidPtr& group) {
  const auto& g = *group;
  if (g.object_count() != 1) throw InvalidArgument("regular_representation needs a group (one object)");
  const auto n = static_cast<Eigen::Index>(g.morphism_count());
  std::vector<Matrix> mats;
  for (MorphismIndex a = 0; a < g.morphism_count(); ++a) {
    Matrix m = Matrix::Zero(n, n);
    for (MorphismIndex h = 0; h < g.morphism_count(); ++h) m(static_cast<Eigen::Index>(g.compose(a, h)), static_cast<Eigen::Index>(h)) = 1.0;
    mats.push_back(std::move(m));
  }
  return Representation(group, {n}, std::move(mats));
}

Representation induced_regular_representation(const GroupoidPtr& base, ObjectIndex anchor, std::uint64_t seed) {
  const auto& g = *base;
  const auto section = section_omega(g, anchor);
  RepPair pair{regular_representation(isotropy_group(g, anchor)), {}};
  const auto d = pair.lambda.dim(0);
  Rng rng(seed);
  for (ObjectIndex x = 0; x < g.object_count(); ++x) pair.mu.push_back(x == anchor ? identity(d) : random_unitary(rng, d));
  return rebuild_H(base, pair, section);
}

}  // namespace groupoidal
