#pragma once

#include <cstdint>
#include <random>

#include "groupoidal/types.hpp"

namespace groupoidal {

/// Seeded generator used everywhere randomness is needed. Each call site owns
/// its generator; none is shared.
using Rng = std::mt19937_64;

Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);

/// Orthonormal basis (as columns) of ker(m). Singular values at or below
/// tol·max(1, σ_max) count as zero.
Matrix nullspace(const Matrix& m, double tol = kDefaultTolerance.eq);

/// Entries with independent standard normal real and imaginary parts.
Matrix random_complex(Rng& rng, Eigen::Index rows, Eigen::Index cols);
Vector random_complex_vector(Rng& rng, Eigen::Index n);
Vector random_real_vector(Rng& rng, Eigen::Index n);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q.
Matrix random_unitary(Rng& rng, Eigen::Index n);

/// max |entry|
double max_abs(const Matrix& m);
/// max |M†M - I|
double unitarity_defect(const Matrix& m);

/// vᵀ M u, no conjugation.
Complex bilinear(const Vector& v, const Matrix& m, const Vector& u);

}  // namespace groupoidal
