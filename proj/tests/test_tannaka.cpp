#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "generators.hpp"
#include "groupoidal/io.hpp"
#include "groupoidal/reference.hpp"
#include "groupoidal/tannaka.hpp"
#include "oracles.hpp"

using namespace groupoidal;

namespace {

GroupoidPtr group(const std::string& name) { return io::builtin("group:" + name); }

/// L for every member, from the values on the core members (trivial,
/// generators, conjugates), extended along the recorded witnesses.
TannakaElement from_core(const FamilyPtr& fam, std::vector<Matrix> core) {
  std::vector<Matrix> ls(fam->size());
  for (std::size_t i = 0; i < core.size(); ++i) ls[i] = core[i];
  for (const auto& w : fam->witnesses()) {
    if (w.result < core.size()) continue;
    switch (w.kind) {
      case ClosureKind::Sum: ls[w.result] = block_diag(ls[w.left], ls[w.right]); break;
      case ClosureKind::Product: ls[w.result] = kron(ls[w.left], ls[w.right]); break;
      case ClosureKind::Conjugate: ls[w.result] = ls[w.left].conjugate(); break;
    }
  }
  return {fam, ls};
}

Vector basis(Eigen::Index n, Eigen::Index i) { return Vector::Unit(n, i); }

}  // namespace

TEST_CASE("coefficient indices and bilinearity") {
  const auto g = build_quantum_ratchet();
  const auto rep = induced_regular_representation(g, 0, 3);
  Rng rng(41);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      const auto f = matrix_coefficient(rep, basis(3, j), basis(3, i));
      for (MorphismIndex m = 0; m < 12; ++m) CHECK(f(m) == rep(m)(i, j));
    }
  }
  const auto u = random_complex_vector(rng, 3), u2 = random_complex_vector(rng, 3);
  const auto v = random_complex_vector(rng, 3), v2 = random_complex_vector(rng, 3);
  const Complex a{0.7, 0.2}, b{-1.3, 0.5};
  CHECK(matrix_coefficient(rep, a * u + b * u2, v)
            .distance(a * matrix_coefficient(rep, u, v) + b * matrix_coefficient(rep, u2, v)) < 1e-12);
  CHECK(matrix_coefficient(rep, u, a * v + b * v2)
            .distance(a * matrix_coefficient(rep, u, v) + b * matrix_coefficient(rep, u, v2)) < 1e-12);
  CHECK_THROWS_AS(matrix_coefficient(rep, random_complex_vector(rng, 2), v), ShapeMismatch);
}

TEST_CASE("conjugate coefficients on real vectors") {
  Rng rng(42);
  for (const auto& name : gen::connected_builtins()) {
    CAPTURE(name);
    const auto g = io::builtin(name);
    const auto rep = induced_regular_representation(g, 0, 5);
    const auto n = rep.dim(0);
    for (int i = 0; i < 5; ++i) {
      const auto u = random_real_vector(rng, n);
      const auto v = random_real_vector(rng, n);
      const auto f = matrix_coefficient(rep, u, v);
      CHECK(matrix_coefficient(complex_conjugate(rep), u, v).distance(conjugate(f)) < 1e-12);
      CHECK(matrix_coefficient(conjugate_rep(rep), u, v).distance(conjugate(matrix_coefficient(rep, v, u))) < 1e-12);
    }
  }
}

TEST_CASE("sums and products of coefficients are coefficients") {
  Rng rng(43);
  const auto g = build_quantum_ratchet();
  const auto a = induced_regular_representation(g, 0, 6);
  const auto b = induced_regular_representation(g, 1, 7);
  const auto u = random_complex_vector(rng, 3), v = random_complex_vector(rng, 3);
  const auto u2 = random_complex_vector(rng, 3), v2 = random_complex_vector(rng, 3);
  Vector us(6), vs(6);
  us << u, u2;
  vs << v, v2;
  CHECK(matrix_coefficient(direct_sum(a, b), us, vs)
            .distance(matrix_coefficient(a, u, v) + matrix_coefficient(b, u2, v2)) < 1e-12);
  const Vector uk = kron(u, u2), vk = kron(v, v2);
  CHECK(matrix_coefficient(tensor_product(a, b), uk, vk)
            .distance(pointwise_product(matrix_coefficient(a, u, v), matrix_coefficient(b, u2, v2))) < 1e-12);
  const auto one = matrix_coefficient(Representation::trivial(g), Vector::Ones(1), Vector::Ones(1));
  CHECK(one.approx_equal(GFunction::constant(g, 1.0), 0.0));
}

TEST_CASE("mean value properties") {
  Rng rng(44);
  for (const auto* name : {"Z2", "Z3", "Z4", "S3", "D4"}) {
    CAPTURE(name);
    const auto g = group(name);
    CHECK(std::abs(mean_value(GFunction::constant(g, 1.0)) - 1.0) < 1e-15);
    for (int i = 0; i < 10; ++i) {
      const auto f = gen::function(g, rng);
      std::vector<Complex> abs_values, sq;
      for (MorphismIndex m = 0; m < g->morphism_count(); ++m) {
        abs_values.emplace_back(std::abs(f(m)));
        sq.emplace_back(std::norm(f(m)));
      }
      const auto mf = mean_value(f);
      CHECK(std::abs(mf) <= mean_value(GFunction::from_dense(g, abs_values)).real() + 1e-12);
      CHECK(std::abs(mf) <= f.sup_norm() + 1e-12);
      CHECK(mean_value(GFunction::from_dense(g, sq)).real() > 0.0);
      CHECK(std::abs(mean_value(adjoint(f)) - std::conj(mf)) < 1e-12);
      for (MorphismIndex x = 0; x < g->morphism_count(); ++x) {
        GFunction left(g), right(g);
        for (MorphismIndex y = 0; y < g->morphism_count(); ++y) {
          left.set(y, f(g->compose(x, y)));
          right.set(y, f(g->compose(y, x)));
        }
        CHECK(std::abs(mean_value(left) - mf) < 1e-12);
        CHECK(std::abs(mean_value(right) - mf) < 1e-12);
      }
    }
    const auto real = gen::function(g, rng, true);
    CHECK(std::abs(mean_value(adjoint(real)) - mean_value(real)) < 1e-12);
  }
  CHECK_THROWS_AS(mean_value(GFunction::constant(build_pair_groupoid(2), 1.0)), InvalidArgument);
}

TEST_CASE("mean of coefficients of irreducibles") {
  for (const auto* name : {"Z2", "Z3", "Z4"}) {
    CAPTURE(name);
    const auto g = group(name);
    for (int k = 0; k < static_cast<int>(g->morphism_count()); ++k) {
      const auto r = check_mv_lemma(gen::character(g, k), 100 + k);
      CHECK(r.irreducible);
      CHECK(r.trivial == (k == 0));
      CHECK(r.samples == 100);
      if (k == 0) {
        CHECK(r.max_residual == 0.0);
      } else {
        CHECK(r.max_residual < 1e-9);
      }
    }
  }
  const auto r = check_mv_lemma(gen::sign_of_s3(group("S3")), 7);
  CHECK(r.irreducible);
  CHECK_FALSE(r.trivial);
  CHECK(r.max_residual < 1e-9);
  CHECK_FALSE(check_mv_lemma(regular_representation(group("Z3")), 1).irreducible);
}

TEST_CASE("fixed-space projector and the decomposition lemma") {
  Rng rng(45);
  for (const auto* name : {"Z3", "S3", "D4", "Z2xZ2"}) {
    CAPTURE(name);
    const auto lambda = gen::unitary_conjugate(regular_representation(group(name)), rng);
    const auto p = fixed_space_projector(lambda);
    CHECK(max_abs(p - oracle::fixed_projector(lambda.mats())) < 1e-9);
    CHECK(check_dec_lemma(lambda, 3).max_residual < 1e-9);
    const auto u = random_complex_vector(rng, lambda.dim(0));
    const auto v = random_complex_vector(rng, lambda.dim(0));
    CHECK(std::abs(mean_value(matrix_coefficient(lambda, u, v)) - (v.transpose() * p * u).value()) < 1e-9);
  }
}

TEST_CASE("evaluations are Tannaka elements and compose like morphisms") {
  const auto g = build_quantum_ratchet();
  const auto fam = separating_family(g, 1);
  CHECK(fam->size() == 15);
  for (MorphismIndex a = 0; a < 12; ++a) {
    const auto t = evaluation_T(a, fam);
    CHECK(check_tannaka(t).ok());
    CHECK(tannaka_distance(tannaka_inverse(t), evaluation_T(g->inv(a), fam)) < 1e-9);
    for (MorphismIndex b = 0; b < 12; ++b) {
      if (const auto ab = g->product(a, b)) {
        CHECK(tannaka_distance(tannaka_product(t, evaluation_T(b, fam)), evaluation_T(*ab, fam)) < 1e-9);
      }
    }
  }
  CHECK(tannaka_distance(evaluation_T(g->unit(0), fam), identity_T(fam)) < 1e-12);
}

TEST_CASE("frak G composition") {
  const auto g = build_quantum_ratchet();
  const auto fam = separating_family(g, 2);
  const auto x = phi(g->morphism_index("α1"), fam);
  const auto y = phi(g->morphism_index("β2"), fam);
  const auto xy = frak_G_compose(x, y);
  CHECK(xy.a == x.a);
  CHECK(xy.b == y.b);
  CHECK(tannaka_distance(xy.t, phi(g->morphism_index("+"), fam).t) < 1e-9);
  CHECK_THROWS_AS(frak_G_compose(x, x), NotComposable);
  CHECK(tannaka_distance(frak_G_compose(x, frak_G_inverse(x)).t, frak_G_unit(x.a, fam).t) < 1e-9);
}

TEST_CASE("hand-built assignments on Z3") {
  const auto z3 = group("Z3");
  const auto fam = RepFamily::generate(z3, {gen::character(z3, 1)});
  const auto w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  auto make = [&](Complex c) {
    return from_core(fam, {Matrix::Ones(1, 1), Matrix::Constant(1, 1, c), Matrix::Constant(1, 1, std::conj(c))});
  };

  const auto t = make(w);
  CHECK(check_tannaka(t).ok());
  CHECK(tannaka_distance(t, evaluation_T(z3->morphism_index("g1"), fam)) < 1e-12);

  // Multiplicative on realized products: members (gen0 ⊗ gen0) realize f·f.
  const auto& labels = fam->labels();
  const auto prod = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), "gen0*gen0") - labels.begin());
  const auto conj1 = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), "conj(gen0)") - labels.begin());
  REQUIRE(prod < fam->size());
  const Vector one = Vector::Ones(1);
  CHECK(std::abs(t.pairing(prod, one, one) - t.pairing(1, one, one) * t.pairing(1, one, one)) < 1e-12);

  // χ₁ ⊗ χ₁ and conj χ₁ realize the same function; a well-defined T must
  // pair them equally, which forces c³ = 1.
  CHECK(matrix_coefficient(fam->member(prod), one, one)
            .approx_equal(matrix_coefficient(fam->member(conj1), one, one), 1e-12));
  CHECK(std::abs(t.pairing(prod, one, one) - t.pairing(conj1, one, one)) < 1e-12);
  const auto bogus = make(Complex{0.0, 1.0});
  CHECK(check_tannaka(bogus).ok());
  CHECK(std::abs(bogus.pairing(prod, one, one) - bogus.pairing(conj1, one, one)) > 0.5);

  CHECK_FALSE(check_tannaka(make(2.0)).ok());
}

TEST_CASE("pairings are single-valued across realizations") {
  const auto g = build_quantum_ratchet();
  const auto base = induced_regular_representation(g, 0, 9);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(3);
  perm.indices() << 2, 0, 1;
  const Matrix p = perm.toDenseMatrix().cast<Complex>();
  std::vector<Matrix> permuted;
  for (const auto& m : base.mats()) permuted.push_back(p * m * p.transpose());
  const auto fam = std::make_shared<const RepFamily>(
      g, std::vector<Representation>{Representation::trivial(g), base, Representation(g, base.dims(), permuted)},
      std::vector<ClosureWitness>{});

  Rng rng(46);
  for (int i = 0; i < 10; ++i) {
    const auto u = random_complex_vector(rng, 3);
    const auto v = random_complex_vector(rng, 3);
    const Vector pu = p * u, pv = p * v;
    REQUIRE(matrix_coefficient(fam->member(1), u, v).distance(matrix_coefficient(fam->member(2), pu, pv)) < 1e-12);
    for (MorphismIndex a = 0; a < 12; ++a) {
      for (MorphismIndex b = 0; b < 12; ++b) {
        if (!g->product(a, b)) continue;
        const auto t = tannaka_product(evaluation_T(a, fam), evaluation_T(b, fam));
        CHECK(std::abs(t.pairing(1, u, v) - t.pairing(2, pu, pv)) < 1e-9);
      }
    }
  }
}

TEST_CASE("ideal condition") {
  const auto g = build_quantum_ratchet();
  const auto fam = separating_family(g, 3);
  for (MorphismIndex a = 0; a < 12; ++a) {
    const auto r = check_ideal_condition(phi(a, fam));
    CHECK(r.ok());
    CHECK(r.vanishing_pairs > 0);
  }
  // (+, -, T_σ+) puts an isotropy element on a non-isotropy fiber.
  const FrakGElement wrong{g->object_index("+"), g->object_index("-"), evaluation_T(g->morphism_index("σ+"), fam)};
  CHECK_FALSE(check_ideal_condition(wrong).ok());

  const auto f = matrix_coefficient(fam->member(1), Vector::Unit(3, 0), Vector::Unit(3, 1));
  CHECK(ideal_membership(GFunction(g), 0, 1));
  const auto iso = fiber(*g, 0, 0);
  const bool vanishes = std::none_of(iso.begin(), iso.end(), [&](MorphismIndex m) { return std::abs(f(m)) > 1e-9; });
  CHECK(ideal_membership(f, 0, 0) == vanishes);
}

TEST_CASE("separation and phi on every connected builtin") {
  for (const auto& name : gen::connected_builtins()) {
    CAPTURE(name);
    const auto g = io::builtin(name);
    const auto fam = separating_family(g, 7);
    const auto sep = separation_check(*fam);
    CHECK(sep.separates());
    const auto n = g->morphism_count();
    CHECK(sep.pairs == n * (n - 1) / 2);
    CHECK(sep.separated_by_endpoints + sep.separated_by_coefficients == sep.pairs);
    const auto r = phi_check(fam);
    CHECK(r.ok());
    CHECK(r.pairs_checked == n * n);
  }
}

TEST_CASE("the trivial family does not separate") {
  const auto g = build_quantum_ratchet();
  const auto fam = RepFamily::generate(g, {Representation::trivial(g)});
  const auto sep = separation_check(*fam);
  CHECK_FALSE(sep.separates());
  const auto r = phi_check(fam);
  CHECK_FALSE(r.injective());
  CHECK_FALSE(r.ok());
}

TEST_CASE("characters and abelian duality") {
  const auto z2 = group("Z2");
  const auto chars = enumerate_characters(*z2);
  REQUIRE(chars.size() == 2);
  const auto hand = oracle::z2_characters();
  for (const auto& h : hand) {
    CHECK(std::any_of(chars.begin(), chars.end(), [&](const std::vector<Complex>& c) {
      return std::abs(c[0] - h[0]) < 1e-12 && std::abs(c[1] - h[1]) < 1e-12;
    }));
  }
  for (const auto& [name, order] : std::vector<std::pair<std::string, std::size_t>>{
           {"Z2", 2}, {"Z3", 3}, {"Z4", 4}, {"Z2xZ2", 4}, {"Z2xZ3", 6}}) {
    CAPTURE(name);
    const auto r = abelian_tannaka_surjectivity(group(name));
    CHECK(r.group_order == order);
    CHECK(r.characters == order);
    CHECK(r.assignments == order);
    CHECK(r.ok());
  }
  CHECK(enumerate_characters(*group("Z3")).size() == 3);
  CHECK_THROWS_AS(abelian_tannaka_surjectivity(group("S3")), InvalidArgument);
  CHECK_THROWS_AS(abelian_tannaka_surjectivity(build_pair_groupoid(2)), InvalidArgument);
}
