#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "groupoidal/io.hpp"
#include "groupoidal/representation.hpp"
#include "oracles.hpp"

using namespace groupoidal;

namespace {

GroupoidPtr group(const std::string& name) { return io::builtin("group:" + name); }

void check_decomposition(const Representation& rep, std::uint64_t seed) {
  const auto d = decompose(rep, seed);
  CHECK(d.stability_residual < 1e-9);
  CHECK(d.orthonormality_residual < 1e-9);
  for (ObjectIndex a = 0; a < rep.groupoid().object_count(); ++a) {
    Eigen::Index total = 0;
    for (const auto& p : d.pieces) total += p.rep.dim(a);
    CHECK(total == rep.dim(a));
  }
  for (const auto& p : d.pieces) {
    CHECK(check_representation(p.rep).ok());
    CHECK(check_unitary(p.rep).ok());
    CHECK(commutant_dimension(p.rep) == 1);
  }
  const auto back = reassemble(rep, d);
  for (MorphismIndex m = 0; m < rep.groupoid().morphism_count(); ++m) CHECK(max_abs(back(m) - rep(m)) < 1e-9);

  // ⊕ of the pieces in block form is equivalent to the input.
  auto sum = d.pieces.front().rep;
  for (std::size_t i = 1; i < d.pieces.size(); ++i) sum = direct_sum(sum, d.pieces[i].rep);
  CHECK(are_equivalent(sum, rep, seed).verdict == Equivalence::Equivalent);
}

}  // namespace

TEST_CASE("regular representation of Z3 splits into the DFT characters") {
  const auto z3 = group("Z3");
  const auto reg = regular_representation(z3);
  const auto d = decompose(reg, 3);
  REQUIRE(d.pieces.size() == 3);
  const auto chars = oracle::dft_characters(3);
  std::vector<bool> hit(3, false);
  for (const auto& p : d.pieces) {
    REQUIRE(p.rep.dim(0) == 1);
    int matched = -1;
    for (int k = 0; k < 3; ++k) {
      bool same = true;
      for (int j = 0; j < 3; ++j) same &= std::abs(p.rep(j)(0, 0) - chars[k][j]) < 1e-9;
      if (same) matched = k;
    }
    REQUIRE(matched >= 0);
    hit[matched] = true;
    // Eigenvector of the shift: v_h ∝ conj χ_k(h).
    Vector expected(3);
    for (int h = 0; h < 3; ++h) expected(h) = std::conj(chars[matched][h]) / std::sqrt(3.0);
    CHECK(std::abs(std::abs(expected.dot(p.basis[0].col(0))) - 1.0) < 1e-9);
  }
  CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
}

TEST_CASE("decompositions satisfy accounting, unitarity and equivalence") {
  Rng rng(31);
  SUBCASE("regular reps of small groups") {
    for (const auto* name : {"Z2", "Z4", "Z2xZ2", "S3", "D4"}) {
      CAPTURE(name);
      check_decomposition(regular_representation(group(name)), 5);
    }
  }
  SUBCASE("S3 piece dimensions") {
    const auto d = decompose(regular_representation(group("S3")), 6);
    std::vector<Eigen::Index> dims;
    for (const auto& p : d.pieces) dims.push_back(p.rep.dim(0));
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<Eigen::Index>{1, 1, 2, 2});
  }
  SUBCASE("induced reps on connected builtins") {
    for (const auto& name : gen::connected_builtins()) {
      CAPTURE(name);
      const auto g = io::builtin(name);
      check_decomposition(induced_regular_representation(g, 0, 7), 8);
    }
  }
  SUBCASE("conjugated sums") {
    const auto z3 = group("Z3");
    const auto rep = gen::unitary_conjugate(direct_sum(gen::character(z3, 1), direct_sum(gen::character(z3, 1), gen::character(z3, 2))), rng);
    check_decomposition(rep, 9);
    CHECK(commutant_dimension(rep) == 5);
  }
  SUBCASE("disjoint union gives pieces on one component") {
    const auto u = build_disjoint_union(*build_pair_groupoid(2), *group("Z2"));
    std::vector<Matrix> mats;
    for (MorphismIndex m = 0; m < u->morphism_count(); ++m) {
      const auto& id = u->morphism_id(m);
      Matrix x = Matrix::Identity(2, 2);
      if (id == "R.g1") x = Matrix{{0, 1}, {1, 0}};
      mats.push_back(x);
    }
    const Representation rep(u, std::vector<Eigen::Index>(u->object_count(), 2), mats);
    REQUIRE(check_representation(rep).ok());
    const auto d = decompose(rep, 10);
    CHECK(d.pieces.size() == 4);
    for (const auto& p : d.pieces) {
      const auto& dims = p.rep.dims();
      CHECK(std::count(dims.begin(), dims.end(), 0) > 0);
    }
    check_decomposition(rep, 10);
  }
}

TEST_CASE("functoriality and unitarity checks catch mutations") {
  const auto g = build_quantum_ratchet();
  const auto rep = induced_regular_representation(g, 0, 1);
  CHECK(check_representation(rep).ok());
  CHECK(check_unitary(rep).ok());

  auto mats = rep.mats();
  mats[g->morphism_index("α1")] *= Complex{2.0, 0.0};
  const Representation bad(g, rep.dims(), mats);
  const auto r = check_representation(bad);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(check_unitary(bad).ok());
  bool names_alpha = false;
  for (const auto& v : r.violations) {
    names_alpha |= std::find(v.witness.begin(), v.witness.end(), "α1") != v.witness.end();
  }
  CHECK(names_alpha);

  mats = rep.mats();
  mats[g->unit(0)](0, 1) = 0.5;
  CHECK_FALSE(check_representation(Representation(g, rep.dims(), mats)).ok());
}

TEST_CASE("shapes are validated") {
  const auto g = build_quantum_ratchet();
  std::vector<Matrix> mats(12, Matrix::Identity(2, 2));
  CHECK_THROWS_AS(Representation(g, {2, 3}, mats), ShapeMismatch);
  CHECK_THROWS_AS(Representation(g, {2, 2}, std::vector<Matrix>(11, Matrix::Identity(2, 2))), ShapeMismatch);
  mats[3] = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(Representation(g, {2, 2}, mats), ShapeMismatch);
}

TEST_CASE("conjugates") {
  const auto z3 = group("Z3");
  const auto chi = gen::character(z3, 1);
  const auto star = conjugate_rep(chi);
  CHECK(check_representation(star).ok());
  CHECK(are_equivalent(star, gen::character(z3, 2), 1).verdict == Equivalence::Equivalent);
  CHECK(are_equivalent(complex_conjugate(chi), gen::character(z3, 2), 1).verdict == Equivalence::Equivalent);

  const auto s3 = regular_representation(group("S3"));
  CHECK_FALSE(check_representation(conjugate_rep(s3)).ok());
  CHECK(check_representation(complex_conjugate(s3)).ok());
  const auto twice = conjugate_rep(conjugate_rep(s3));
  for (MorphismIndex m = 0; m < 6; ++m) CHECK(max_abs(twice(m) - s3(m)) == 0.0);
}

TEST_CASE("equivalence and intertwiners") {
  Rng rng(32);
  const auto z3 = group("Z3");
  CHECK(are_equivalent(gen::character(z3, 1), gen::character(z3, 2), 1).verdict == Equivalence::Inequivalent);
  CHECK(are_equivalent(gen::character(z3, 0), Representation::trivial(z3), 1).verdict == Equivalence::Equivalent);

  const auto g = build_quantum_ratchet();
  const auto rep = induced_regular_representation(g, 0, 2);
  const auto moved = gen::unitary_conjugate(rep, rng);
  const auto eq = are_equivalent(rep, moved, 3);
  REQUIRE(eq.verdict == Equivalence::Equivalent);
  CHECK(intertwining_defect(*eq.witness, rep, moved) < 1e-9);

  // Object-dependent change of basis: the intertwiner is φ_x = U_x.
  const auto space = intertwiner_space(rep, moved);
  CHECK(space.size() == 3);
  for (const auto& phi : space) CHECK(intertwining_defect(phi, rep, moved) < 1e-9);

  CHECK(commutant_dimension(regular_representation(group("S3"))) == 6);
  CHECK(commutant_dimension(regular_representation(z3)) == 3);
  CHECK(is_irreducible(gen::character(z3, 2)));
  CHECK_FALSE(is_irreducible(regular_representation(z3)));
}

TEST_CASE("tensor products and sums") {
  const auto z3 = group("Z3");
  const auto prod = tensor_product(gen::character(z3, 1), gen::character(z3, 1));
  CHECK(are_equivalent(prod, gen::character(z3, 2), 4).verdict == Equivalence::Equivalent);
  const auto g = build_quantum_ratchet();
  const auto a = induced_regular_representation(g, 0, 4);
  const auto b = induced_regular_representation(g, 1, 5);
  CHECK(check_representation(tensor_product(a, b)).ok());
  CHECK(check_unitary(direct_sum(a, b)).ok());
  CHECK(tensor_product(a, b).dim(0) == 9);
}

TEST_CASE("split and rebuild are mutually inverse") {
  Rng rng(33);
  for (const auto& name : gen::connected_builtins()) {
    CAPTURE(name);
    const auto g = io::builtin(name);
    for (ObjectIndex base = 0; base < g->object_count(); ++base) {
      const auto s = section_omega(*g, base);
      const auto rep = gen::unitary_conjugate(induced_regular_representation(g, base, 11 + base), rng);
      const auto pair = split_H(rep, s);
      CHECK(max_abs(pair.mu[base] - Matrix::Identity(rep.dim(base), rep.dim(base))) < 1e-12);
      const auto back = rebuild_H(g, pair, s);
      for (MorphismIndex m = 0; m < g->morphism_count(); ++m) CHECK(max_abs(back(m) - rep(m)) < 1e-9);

      const auto again = split_H(back, s);
      for (MorphismIndex m = 0; m < pair.lambda.groupoid().morphism_count(); ++m) {
        CHECK(max_abs(again.lambda(m) - pair.lambda(m)) < 1e-9);
      }
      for (ObjectIndex x = 0; x < g->object_count(); ++x) CHECK(max_abs(again.mu[x] - pair.mu[x]) < 1e-9);
    }
  }
  CHECK_THROWS_AS(split_H(Representation::trivial(io::builtin("action:1.0.2,2")), Section{}), NotConnected);
}

TEST_CASE("extension from an isotropy group restricts back") {
  const auto g = build_quantum_ratchet();
  const auto plus = g->object_index("+");
  const auto minus = g->object_index("-");
  const auto s = section_omega(*g, plus);
  const auto iso = isotropy_group(*g, minus);
  Rng rng(34);
  for (const auto& omega_id : {"α1", "α2", "α3"}) {
    CAPTURE(omega_id);
    const auto lambda_x = gen::unitary_conjugate(regular_representation(iso), rng);
    const auto ext = extend_from_isotropy(g, lambda_x, minus, g->morphism_index(omega_id), s);
    CHECK(check_representation(ext).ok());
    const auto back = restrict_to_isotropy(ext, minus);
    for (MorphismIndex m = 0; m < 3; ++m) CHECK(max_abs(back(m) - lambda_x(m)) < 1e-9);
  }
  CHECK_THROWS_AS(extend_from_isotropy(g, regular_representation(iso), minus, g->morphism_index("β1"), s),
                  InvalidArgument);
}
