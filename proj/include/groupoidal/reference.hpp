#pragma once

// Serial versions of the parallel kernels, each a literal reading of the
// defining sum. Used to cross-check the OpenMP code and as the benchmark
// baseline.

#include "groupoidal/algebra.hpp"
#include "groupoidal/kernels.hpp"
#include "groupoidal/tannaka.hpp"

namespace groupoidal::reference {

/// Scatters f(α)h(β) into γ = α·β over every pair in the product table.
GFunction convolve(const GFunction& f, const GFunction& h);

/// Σ over all γ with r(γ) = s(α) of t_γ^{s(α)} f(α·γ) h(γ⁻¹).
GFunction convolve_haar(const GFunction& f, const GFunction& h, const GKernel& lambda);

/// Evaluates both sides of the transversality identity on δ_η by summing
/// over every γ with α·γ = η.
TransverseReport check_transverse(const GKernel& lambda, double tol = kDefaultTolerance.eq);

AssociativityReport check_basis_associativity(const GroupoidPtr& g, const GKernel* lambda = nullptr,
                                              double tol = kDefaultTolerance.eq);

SeparationReport separation_check(const RepFamily& family, double tol = kDefaultTolerance.eq);

}  // namespace groupoidal::reference
