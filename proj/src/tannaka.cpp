#include "groupoidal/tannaka.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace groupoidal {

namespace {

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

void require_group(const FiniteGroupoid& g, const char* what) {
  if (g.object_count() != 1) throw InvalidArgument(std::string(what) + " needs a group (one object)");
}

}  // namespace

GFunction matrix_coefficient(const Representation& rep, const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw ShapeMismatch("u and v have different lengths");
  const auto& g = rep.groupoid();
  for (ObjectIndex x = 0; x < g.object_count(); ++x) {
    if (rep.dim(x) != 0 && rep.dim(x) != u.size()) {
      throw ShapeMismatch("vector length " + std::to_string(u.size()) + " does not match dim " +
                          std::to_string(rep.dim(x)) + " at '" + g.object_id(x) + "'");
    }
  }
  GFunction f(rep.base());
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (rep.dim(g.rng(m)) == 0) continue;
    f.set(m, bilinear(v, rep(m), u));
  }
  return f;
}

Complex mean_value(const GFunction& f) {
  require_group(f.groupoid(), "mean_value");
  // Shifted about the first value so that constant functions average exactly.
  const auto n = f.groupoid().morphism_count();
  const Complex pivot = f(0);
  Complex acc{};
  for (MorphismIndex m = 1; m < n; ++m) acc += f(m) - pivot;
  return pivot + acc / static_cast<double>(n);
}

Matrix fixed_space_projector(const Representation& lambda) {
  require_group(lambda.groupoid(), "fixed_space_projector");
  Matrix p = Matrix::Zero(lambda.dim(0), lambda.dim(0));
  for (const auto& m : lambda.mats()) p += m;
  return p / static_cast<double>(lambda.mats().size());
}

MeanValueReport check_mv_lemma(const Representation& lambda, std::uint64_t seed, std::size_t samples, double tol) {
  require_group(lambda.groupoid(), "check_mv_lemma");
  MeanValueReport report;
  report.irreducible = is_irreducible(lambda, tol);
  report.trivial = std::all_of(lambda.mats().begin(), lambda.mats().end(),
                               [&](const Matrix& m) { return max_abs(m - identity(m.rows())) <= tol; });
  report.samples = samples;
  Rng rng(seed);
  const auto d = lambda.dim(0);
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector u = random_complex_vector(rng, d);
    const Vector v = random_complex_vector(rng, d);
    const Complex expected = report.trivial ? bilinear(v, identity(d), u) : Complex{};
    report.max_residual = std::max(report.max_residual, std::abs(mean_value(matrix_coefficient(lambda, u, v)) - expected));
  }
  return report;
}

double dec_lemma_residual(const Representation& lambda, const Vector& u, const Vector& v) {
  const Matrix p = fixed_space_projector(lambda);
  return std::abs(mean_value(matrix_coefficient(lambda, u, v)) - bilinear(v, p, u));
}

MeanValueReport check_dec_lemma(const Representation& lambda, std::uint64_t seed, std::size_t samples) {
  require_group(lambda.groupoid(), "check_dec_lemma");
  MeanValueReport report;
  report.samples = samples;
  Rng rng(seed);
  const Matrix p = fixed_space_projector(lambda);
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector u = random_complex_vector(rng, lambda.dim(0));
    const Vector v = random_complex_vector(rng, lambda.dim(0));
    const double r = std::abs(mean_value(matrix_coefficient(lambda, u, v)) - bilinear(v, p, u));
    report.max_residual = std::max(report.max_residual, r);
  }
  return report;
}

RepFamily::RepFamily(GroupoidPtr base, std::vector<Representation> members, std::vector<ClosureWitness> witnesses,
                     std::vector<std::string> labels)
    : base_(std::move(base)), members_(std::move(members)), witnesses_(std::move(witnesses)), labels_(std::move(labels)) {
  if (members_.empty()) throw InvalidArgument("a family needs at least the trivial representation");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (!same_groupoid(members_[i].base(), base_)) throw BaseMismatch("family member " + std::to_string(i) + " has a foreign base");
    const auto d = members_[i].uniform_dim();
    if (!d || *d == 0) throw InvalidArgument("family member " + std::to_string(i) + " must have one positive dimension");
    dims_.push_back(*d);
  }
  const auto& g = *base_;
  const auto& t = members_.front();
  if (dims_.front() != 1 || std::any_of(t.mats().begin(), t.mats().end(), [](const Matrix& m) { return m(0, 0) != Complex{1.0}; })) {
    throw InvalidArgument("family member 0 must be the trivial representation");
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < members_.size(); ++i) labels_.push_back(i == 0 ? "trivial" : "rep" + std::to_string(i));
  }
  if (labels_.size() != members_.size()) throw InvalidArgument("one label per family member");

  for (const auto& w : witnesses_) {
    if (w.left >= members_.size() || w.result >= members_.size() ||
        (w.kind != ClosureKind::Conjugate && w.right >= members_.size())) {
      throw InvalidArgument("closure witness refers to a missing member");
    }
    double worst = 0.0;
    for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
      const auto& l = members_[w.left](m);
      Matrix expected;
      switch (w.kind) {
        case ClosureKind::Sum: expected = block_diag(l, members_[w.right](m)); break;
        case ClosureKind::Product: expected = kron(l, members_[w.right](m)); break;
        case ClosureKind::Conjugate: expected = l.conjugate(); break;
      }
      const auto& got = members_[w.result](m);
      if (got.rows() != expected.rows() || got.cols() != expected.cols()) {
        worst = std::numeric_limits<double>::infinity();
        break;
      }
      worst = std::max(worst, max_abs(got - expected));
    }
    if (worst > kDefaultTolerance.eq) {
      throw InvalidArgument("closure witness for member " + std::to_string(w.result) + " does not hold");
    }
  }
}

FamilyPtr RepFamily::generate(const GroupoidPtr& base, const std::vector<Representation>& generators) {
  std::vector<Representation> members{Representation::trivial(base)};
  std::vector<std::string> labels{"trivial"};
  std::vector<ClosureWitness> witnesses{{ClosureKind::Conjugate, 0, 0, 0}};
  const auto k = generators.size();
  for (std::size_t i = 0; i < k; ++i) {
    members.push_back(generators[i]);
    labels.push_back("gen" + std::to_string(i));
  }
  for (std::size_t i = 0; i < k; ++i) {
    members.push_back(complex_conjugate(generators[i]));
    labels.push_back("conj(gen" + std::to_string(i) + ")");
    witnesses.push_back({ClosureKind::Conjugate, 1 + i, 0, 1 + k + i});
    witnesses.push_back({ClosureKind::Conjugate, 1 + k + i, 0, 1 + i});
  }
  const auto core = members.size();
  for (std::size_t i = 0; i < core; ++i) {
    for (std::size_t j = i; j < core; ++j) {
      witnesses.push_back({ClosureKind::Sum, i, j, members.size()});
      members.push_back(direct_sum(members[i], members[j]));
      labels.push_back(labels[i] + "+" + labels[j]);
      witnesses.push_back({ClosureKind::Product, i, j, members.size()});
      members.push_back(tensor_product(members[i], members[j]));
      labels.push_back(labels[i] + "*" + labels[j]);
    }
  }
  return std::make_shared<const RepFamily>(base, std::move(members), std::move(witnesses), std::move(labels));
}

Complex TannakaElement::pairing(std::size_t i, const Vector& u, const Vector& v) const { return bilinear(v, ls.at(i), u); }

TannakaReport check_tannaka(const TannakaElement& t) {
  TannakaReport report;
  const auto& fam = *t.family;
  report.trivial_residual = std::abs(t.ls.front()(0, 0) - Complex{1.0});
  for (const auto& l : t.ls) report.unitarity_residual = std::max(report.unitarity_residual, unitarity_defect(l));
  for (const auto& w : fam.witnesses()) {
    Matrix expected;
    switch (w.kind) {
      case ClosureKind::Sum: expected = block_diag(t.ls[w.left], t.ls[w.right]); break;
      case ClosureKind::Product: expected = kron(t.ls[w.left], t.ls[w.right]); break;
      case ClosureKind::Conjugate: expected = t.ls[w.left].conjugate(); break;
    }
    report.closure_residual = std::max(report.closure_residual, max_abs(t.ls[w.result] - expected));
  }
  return report;
}

TannakaElement evaluation_T(MorphismIndex alpha, const FamilyPtr& family) {
  TannakaElement t{family, {}};
  for (const auto& rep : family->members()) t.ls.push_back(rep(alpha));
  return t;
}

TannakaElement identity_T(const FamilyPtr& family) {
  TannakaElement t{family, {}};
  for (std::size_t i = 0; i < family->size(); ++i) t.ls.push_back(identity(family->dim(i)));
  return t;
}

TannakaElement tannaka_product(const TannakaElement& a, const TannakaElement& b) {
  if (a.family != b.family) throw BaseMismatch("Tannaka elements over different families");
  TannakaElement t{a.family, {}};
  for (std::size_t i = 0; i < a.ls.size(); ++i) t.ls.push_back(a.ls[i] * b.ls[i]);
  return t;
}

TannakaElement tannaka_inverse(const TannakaElement& t) {
  TannakaElement out{t.family, {}};
  for (const auto& l : t.ls) out.ls.push_back(l.inverse());
  return out;
}

double tannaka_distance(const TannakaElement& a, const TannakaElement& b) {
  if (a.family != b.family) throw BaseMismatch("Tannaka elements over different families");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.ls.size(); ++i) worst = std::max(worst, max_abs(a.ls[i] - b.ls[i]));
  return worst;
}

FrakGElement frak_G_compose(const FrakGElement& x, const FrakGElement& y) {
  if (x.b != y.a) {
    const auto& g = *x.t.family->base();
    throw NotComposable("(" + g.object_id(x.a) + ", " + g.object_id(x.b) + ", T)",
                        "(" + g.object_id(y.a) + ", " + g.object_id(y.b) + ", T)", g.object_id(x.b), g.object_id(y.a));
  }
  return {x.a, y.b, tannaka_product(x.t, y.t)};
}

FrakGElement frak_G_inverse(const FrakGElement& x) { return {x.b, x.a, tannaka_inverse(x.t)}; }

FrakGElement frak_G_unit(ObjectIndex a, const FamilyPtr& family) { return {a, a, identity_T(family)}; }

bool ideal_membership(const GFunction& f, ObjectIndex a, ObjectIndex b, double tol) {
  const auto& g = f.groupoid();
  if (a >= g.object_count()) throw UnknownId("object #" + std::to_string(a));
  if (b >= g.object_count()) throw UnknownId("object #" + std::to_string(b));
  for (auto m : fiber(g, a, b)) {
    if (std::abs(f(m)) > tol) return false;
  }
  return true;
}

IdealReport check_ideal_condition(const FrakGElement& x, double tol) {
  const auto& fam = *x.t.family;
  const auto& g = *fam.base();
  const auto members = fiber(g, x.a, x.b);
  IdealReport report;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& rep = fam.member(i);
    const auto& l = x.t.ls[i];
    const auto d = fam.dim(i);
    for (Eigen::Index k = 0; k < d; ++k) {
      for (Eigen::Index j = 0; j < d; ++j) {
        // f^Λ_{e_j, e_k} restricted to 𝒢_a^b
        const bool vanishes =
            std::all_of(members.begin(), members.end(), [&](MorphismIndex m) { return std::abs(rep(m)(k, j)) <= tol; });
        if (!vanishes) continue;
        ++report.vanishing_pairs;
        report.basis_residual = std::max(report.basis_residual, std::abs(l(k, j)));
      }
    }
    // least-squares distance from L to span{Λ(α)}
    Matrix span(d * d, static_cast<Eigen::Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c) span.col(static_cast<Eigen::Index>(c)) = rep(members[c]).reshaped();
    const Vector target = l.reshaped();
    double residual = target.cwiseAbs().maxCoeff();
    if (!members.empty()) {
      const Vector coeffs = span.completeOrthogonalDecomposition().solve(target);
      residual = (span * coeffs - target).cwiseAbs().maxCoeff();
    }
    report.span_residual = std::max(report.span_residual, residual);
  }
  return report;
}

FrakGElement phi(MorphismIndex alpha, const FamilyPtr& family) {
  const auto& g = *family->base();
  return {g.rng(alpha), g.src(alpha), evaluation_T(alpha, family)};
}

SeparationReport separation_check(const RepFamily& family, double tol) {
  const auto& g = *family.base();
  const auto n = static_cast<std::int64_t>(g.morphism_count());
  std::vector<std::vector<std::pair<MorphismIndex, MorphismIndex>>> misses(g.morphism_count());
  std::vector<std::size_t> by_endpoints(g.morphism_count(), 0);
  std::vector<std::size_t> by_coefficients(g.morphism_count(), 0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto a = static_cast<MorphismIndex>(i);
    for (MorphismIndex b = a + 1; b < g.morphism_count(); ++b) {
      if (g.rng(a) != g.rng(b) || g.src(a) != g.src(b)) {
        ++by_endpoints[a];
        continue;
      }
      bool separated = false;
      for (std::size_t k = 0; k < family.size() && !separated; ++k) {
        separated = max_abs(family.member(k)(a) - family.member(k)(b)) > tol;
      }
      if (separated) {
        ++by_coefficients[a];
      } else {
        misses[a].emplace_back(a, b);
      }
    }
  }

  SeparationReport report;
  report.pairs = g.morphism_count() * (g.morphism_count() - 1) / 2;
  for (MorphismIndex a = 0; a < g.morphism_count(); ++a) {
    report.separated_by_endpoints += by_endpoints[a];
    report.separated_by_coefficients += by_coefficients[a];
    report.unseparated.insert(report.unseparated.end(), misses[a].begin(), misses[a].end());
  }
  return report;
}

FamilyPtr separating_family(const GroupoidPtr& base, std::uint64_t seed, ObjectIndex anchor) {
  if (!is_connected(*base)) throw NotConnected("separating_family needs a connected groupoid");
  FamilyPtr family;
  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    family = RepFamily::generate(base, {induced_regular_representation(base, anchor, seed + attempt)});
    if (separation_check(*family).separates()) return family;
  }
  return family;
}

PhiReport phi_check(const FamilyPtr& family, double tol) {
  const auto& g = *family->base();
  const auto n = g.morphism_count();
  std::vector<FrakGElement> images;
  images.reserve(n);
  for (MorphismIndex m = 0; m < n; ++m) images.push_back(phi(m, family));

  struct Row {
    double hom = 0.0;
    double inv = 0.0;
    double ideal = 0.0;
    std::size_t composable = 0;
    std::vector<std::pair<MorphismIndex, MorphismIndex>> collisions;
    std::vector<std::pair<MorphismIndex, MorphismIndex>> mismatches;
  };
  std::vector<Row> rows(n);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    const auto a = static_cast<MorphismIndex>(i);
    auto& row = rows[a];
    const auto& x = images[a];
    for (MorphismIndex b = 0; b < n; ++b) {
      const auto& y = images[b];
      const bool composes = g.src(a) == g.rng(b);
      const bool images_compose = x.b == y.a;
      if (composes != images_compose) row.mismatches.emplace_back(a, b);
      if (composes && images_compose) {
        ++row.composable;
        const auto xy = frak_G_compose(x, y);
        const auto& target = images[g.compose(a, b)];
        double r = tannaka_distance(xy.t, target.t);
        if (xy.a != target.a || xy.b != target.b) r = std::numeric_limits<double>::infinity();
        row.hom = std::max(row.hom, r);
      }
      if (b > a && x.a == y.a && x.b == y.b && tannaka_distance(x.t, y.t) <= tol) row.collisions.emplace_back(a, b);
    }
    const auto inv = frak_G_inverse(x);
    const auto& target = images[g.inv(a)];
    row.inv = (inv.a == target.a && inv.b == target.b) ? tannaka_distance(inv.t, target.t)
                                                       : std::numeric_limits<double>::infinity();
    const auto ideal = check_ideal_condition(x, tol);
    row.ideal = std::max(ideal.basis_residual, ideal.span_residual);
  }

  PhiReport report;
  report.pairs_checked = n * n;
  for (const auto& row : rows) {
    report.composable_pairs += row.composable;
    report.homomorphism_residual = std::max(report.homomorphism_residual, row.hom);
    report.inverse_residual = std::max(report.inverse_residual, row.inv);
    report.ideal_residual = std::max(report.ideal_residual, row.ideal);
    report.collisions.insert(report.collisions.end(), row.collisions.begin(), row.collisions.end());
    report.composability_mismatches.insert(report.composability_mismatches.end(), row.mismatches.begin(), row.mismatches.end());
  }
  for (ObjectIndex o = 0; o < g.object_count(); ++o) {
    const auto unit = frak_G_unit(o, family);
    const auto& image = images[g.unit(o)];
    const double r = (image.a == o && image.b == o) ? tannaka_distance(image.t, unit.t) : std::numeric_limits<double>::infinity();
    report.unit_residual = std::max(report.unit_residual, r);
  }
  return report;
}

std::vector<std::vector<Complex>> enumerate_characters(const FiniteGroupoid& group, double tol) {
  require_group(group, "enumerate_characters");
  const auto n = group.morphism_count();
  // χ(g)^n = χ(gⁿ) = 1, so every value is an n-th root of unity.
  std::vector<Complex> roots;
  for (std::size_t k = 0; k < n; ++k) roots.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / n));

  std::vector<std::vector<Complex>> out;
  std::vector<Complex> chi(n);
  auto consistent = [&](std::size_t upto) {
    for (std::size_t x = 0; x <= upto; ++x) {
      for (std::size_t y = 0; y <= upto; ++y) {
        const auto xy = group.compose(x, y);
        if (xy > upto) continue;
        if (std::abs(chi[xy] - chi[x] * chi[y]) > tol) return false;
      }
    }
    return true;
  };
  auto extend = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(chi);
      return;
    }
    for (const auto& r : roots) {
      chi[i] = r;
      if (consistent(i)) self(self, i + 1);
    }
  };
  extend(extend, 0);
  return out;
}

AbelianDualityReport abelian_tannaka_surjectivity(const GroupoidPtr& group, double tol) {
  const auto& g = *group;
  require_group(g, "abelian_tannaka_surjectivity");
  const auto n = g.morphism_count();
  for (MorphismIndex a = 0; a < n; ++a) {
    for (MorphismIndex b = 0; b < n; ++b) {
      if (g.compose(a, b) != g.compose(b, a)) throw InvalidArgument("group is not abelian");
    }
  }

  AbelianDualityReport report;
  report.group_order = n;
  const auto chars = enumerate_characters(g, tol);
  report.characters = chars.size();

  auto find_char = [&](const std::vector<Complex>& values) -> std::size_t {
    for (std::size_t k = 0; k < chars.size(); ++k) {
      bool same = true;
      for (std::size_t x = 0; x < n && same; ++x) same = std::abs(chars[k][x] - values[x]) <= tol;
      if (same) return k;
    }
    throw Error("character group is not closed under multiplication");
  };
  // The character group Ĝ under pointwise product.
  std::vector<std::vector<std::size_t>> table(chars.size(), std::vector<std::size_t>(chars.size()));
  std::vector<std::size_t> conj(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i) {
    std::vector<Complex> c(n);
    for (std::size_t x = 0; x < n; ++x) c[x] = std::conj(chars[i][x]);
    conj[i] = find_char(c);
    for (std::size_t j = 0; j < chars.size(); ++j) {
      std::vector<Complex> p(n);
      for (std::size_t x = 0; x < n; ++x) p[x] = chars[i][x] * chars[j][x];
      table[i][j] = find_char(p);
    }
  }
  const auto dual = build_group_groupoid(table);

  // Multiplicative c on Ĝ are the characters of Ĝ; keep those with
  // c(χ̄) = conj c(χ). Ĝ's morphism ids "g<k>" follow the order of `chars`.
  std::vector<bool> hit(n, false);
  for (const auto& c : enumerate_characters(*dual, tol)) {
    bool conj_ok = true;
    for (std::size_t i = 0; i < chars.size() && conj_ok; ++i) conj_ok = std::abs(c[conj[i]] - std::conj(c[i])) <= tol;
    if (!conj_ok) continue;
    ++report.assignments;
    for (MorphismIndex x = 0; x < n; ++x) {
      bool match = true;
      for (std::size_t i = 0; i < chars.size() && match; ++i) match = std::abs(c[i] - chars[i][x]) <= tol;
      if (match) {
        ++report.matched;
        hit[x] = true;
        break;
      }
    }
  }
  report.elements_hit = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
  return report;
}

}  // namespace groupoidal
