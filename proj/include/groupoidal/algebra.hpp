#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "groupoidal/groupoid.hpp"

namespace groupoidal {

class GKernel;

/// A complex-valued function on the morphisms of a groupoid, an element of
/// the convolution algebra C(𝒢). Storage is sparse; absent entries are 0.
class GFunction {
 public:
  explicit GFunction(GroupoidPtr base);

  static GFunction from_dense(GroupoidPtr base, const std::vector<Complex>& values);
  static GFunction constant(GroupoidPtr base, Complex c);

  const GroupoidPtr& base() const noexcept { return base_; }
  const FiniteGroupoid& groupoid() const noexcept { return *base_; }

  Complex operator()(MorphismIndex m) const;
  Complex at(const std::string& id) const { return (*this)(base_->morphism_index(id)); }
  void set(MorphismIndex m, Complex value);
  void set(const std::string& id, Complex value) { set(base_->morphism_index(id), value); }

  /// Values in canonical morphism order.
  std::vector<Complex> dense() const;
  const std::map<MorphismIndex, Complex>& support() const noexcept { return values_; }

  /// Componentwise |f(α) - h(α)| <= tol over every morphism.
  bool approx_equal(const GFunction& other, double tol = kDefaultTolerance.eq) const;
  /// max_α |f(α) - h(α)|
  double distance(const GFunction& other) const;
  double sup_norm() const;

  GFunction& operator+=(const GFunction& other);
  GFunction& operator-=(const GFunction& other);
  GFunction& operator*=(Complex c);

  friend GFunction operator+(GFunction a, const GFunction& b) { return a += b; }
  friend GFunction operator-(GFunction a, const GFunction& b) { return a -= b; }
  friend GFunction operator*(Complex c, GFunction f) { return f *= c; }

 private:
  GroupoidPtr base_;
  std::map<MorphismIndex, Complex> values_;
};

/// Throws BaseMismatch unless both functions live on the same groupoid.
void require_same_base(const GroupoidPtr& a, const GroupoidPtr& b, const char* what);

/// Pointwise product f·h (the product in ξ(𝒢), not the convolution).
GFunction pointwise_product(const GFunction& f, const GFunction& h);
/// Pointwise complex conjugate.
GFunction conjugate(const GFunction& f);

/// χ_α, the indicator of a single morphism.
GFunction canonical_potential(const GroupoidPtr& g, MorphismIndex m);
GFunction canonical_potential(const GroupoidPtr& g, const std::string& id);

/// f*(α) = conj(f(α⁻¹)).
GFunction adjoint(const GFunction& f);

/// (f ∗ h)(γ) = Σ_{α·β = γ} f(α) h(β).
GFunction convolve(const GFunction& f, const GFunction& h);

/// (f ∗_λ h)(α) = Σ_{γ ∈ 𝒢_{s(α)}} t_γ^{s(α)} f(α·γ) h(γ⁻¹).
GFunction convolve_haar(const GFunction& f, const GFunction& h, const GKernel& lambda);

struct AssociativityReport {
  std::size_t triples = 0;
  double max_residual = 0.0;
  /// Least (a, b, c) in canonical order whose residual exceeds tol.
  std::optional<std::array<MorphismIndex, 3>> witness;
  bool associative() const noexcept { return !witness.has_value(); }
};

/// Compares (χ_a ∗ χ_b) ∗ χ_c with χ_a ∗ (χ_b ∗ χ_c) on every basis triple,
/// using ∗_λ instead of ∗ when `lambda` is given.
AssociativityReport check_basis_associativity(const GroupoidPtr& g, const GKernel* lambda = nullptr,
                                              double tol = kDefaultTolerance.eq);

/// Weights ρ(χ_α) of a density operator; they must sum to 1.
class DensityWeights {
 public:
  /// Throws InvalidArgument when |Σ w - 1| > tol.
  explicit DensityWeights(GFunction weights, double tol = kDefaultTolerance.eq);

  const GFunction& weights() const noexcept { return weights_; }
  /// Morphisms whose weight is not a nonnegative real; the operator itself
  /// only requires ρ(1) = 1.
  std::vector<MorphismIndex> positivity_lint(double tol = kDefaultTolerance.eq) const;

 private:
  GFunction weights_;
};

/// ρ(f) = Σ_α f(α) ρ(χ_α).
Complex apply_density(const DensityWeights& rho, const GFunction& f);

}  // namespace groupoidal
