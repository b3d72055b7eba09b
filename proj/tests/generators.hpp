#pragma once

// Seeded generators for property tests, plus small conversions between
// library objects and the oracle's id-keyed maps.

#include <random>
#include <string>
#include <vector>

#include "groupoidal/algebra.hpp"
#include "groupoidal/io.hpp"
#include "groupoidal/kernels.hpp"
#include "groupoidal/linalg.hpp"
#include "groupoidal/representation.hpp"
#include "oracles.hpp"

namespace gen {

using namespace groupoidal;

inline GFunction function(const GroupoidPtr& g, Rng& rng, bool real = false) {
  std::normal_distribution<double> n;
  std::vector<Complex> v(g->morphism_count());
  for (auto& x : v) x = real ? Complex{n(rng), 0.0} : Complex{n(rng), n(rng)};
  return GFunction::from_dense(g, v);
}

/// Positive weights in [0.5, 2).
inline double weight(Rng& rng) { return std::uniform_real_distribution<double>(0.5, 2.0)(rng); }

inline GKernel full_kernel(const GroupoidPtr& g, Rng& rng) {
  std::vector<double> t(g->morphism_count());
  for (auto& x : t) x = weight(rng);
  return GKernel::from_morphism_values(g, t, true);
}

/// t_β = t_{β⁻¹} for every β.
inline GKernel inversion_symmetric_kernel(const GroupoidPtr& g, Rng& rng) {
  std::vector<double> t(g->morphism_count(), -1.0);
  for (MorphismIndex m = 0; m < g->morphism_count(); ++m) {
    if (t[m] < 0) t[m] = t[g->inv(m)] = weight(rng);
  }
  return GKernel::from_morphism_values(g, t, true);
}

/// t_η = ρ(s(η)) for a positive ρ on objects; always transverse.
inline GKernel source_weighted_kernel(const GroupoidPtr& g, Rng& rng) {
  std::vector<double> rho(g->object_count());
  for (auto& x : rho) x = weight(rng);
  std::vector<double> t(g->morphism_count());
  for (MorphismIndex m = 0; m < g->morphism_count(); ++m) t[m] = rho[g->src(m)];
  return GKernel::from_morphism_values(g, t, true);
}

inline Representation unitary_conjugate(const Representation& rep, Rng& rng) {
  std::vector<Matrix> u;
  for (ObjectIndex a = 0; a < rep.groupoid().object_count(); ++a) u.push_back(random_unitary(rng, rep.dim(a)));
  return change_basis(rep, u);
}

/// The 1-dim rep g_j ↦ ω^{jk} of ℤ/n, from the DFT oracle.
inline Representation character(const GroupoidPtr& zn, int k) {
  const auto n = static_cast<int>(zn->morphism_count());
  const auto chars = oracle::dft_characters(n);
  std::vector<Matrix> mats;
  for (int j = 0; j < n; ++j) mats.push_back(Matrix::Constant(1, 1, chars[k][j]));
  return Representation(zn, {1}, mats);
}

/// Sign character of S3: the involutions are the odd permutations.
inline Representation sign_of_s3(const GroupoidPtr& s3) {
  const auto& g = *s3;
  std::vector<Matrix> mats;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    const bool involution = !g.is_unit(m) && g.compose(m, m) == g.unit(0);
    mats.push_back(Matrix::Constant(1, 1, involution ? -1.0 : 1.0));
  }
  return Representation(s3, {1}, mats);
}

inline oracle::Values values(const GFunction& f) {
  oracle::Values out;
  for (MorphismIndex m = 0; m < f.groupoid().morphism_count(); ++m) out[f.groupoid().morphism_id(m)] = f(m);
  return out;
}

/// The connected builtins used by sweeps over "every builder groupoid".
inline std::vector<std::string> connected_builtins() {
  return {"quantum-ratchet", "pair:3", "group:Z3", "group:S3", "action:3cycle,3", "action:3cycle,6"};
}

inline std::vector<std::string> all_builtins() {
  auto v = connected_builtins();
  v.push_back("action:1.0.2,2");
  return v;
}

}  // namespace gen
