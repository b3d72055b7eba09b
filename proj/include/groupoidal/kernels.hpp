#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "groupoidal/algebra.hpp"

namespace groupoidal {

/// A 𝒢-kernel λ(f)(a) = Σ_{α ∈ 𝒢_a} t_α^a f(α), i.e. a finite Haar system.
///
/// The coefficient t_α^a may only be nonzero when r(α) = a, so each kernel is
/// stored as its nonzero coefficients keyed by morphism.
class GKernel {
 public:
  using Coefficients = std::map<std::pair<ObjectIndex, MorphismIndex>, double>;

  /// Throws InvalidArgument for negative coefficients, for a nonzero t_α^a
  /// with r(α) != a, and, when `full_support` is set, for any α ∈ 𝒢_a with
  /// t_α^a = 0.
  GKernel(GroupoidPtr base, const Coefficients& coeffs, bool full_support);

  /// t ≡ c on every range fiber.
  static GKernel counting(GroupoidPtr base, double c = 1.0);
  /// t_α^{r(α)} = values[α] for every α.
  static GKernel from_morphism_values(GroupoidPtr base, const std::vector<double>& values, bool full_support);

  const GroupoidPtr& base() const noexcept { return base_; }
  bool full_support() const noexcept { return full_support_; }

  /// t_α^a; zero whenever α ∉ 𝒢_a.
  double coeff(ObjectIndex a, MorphismIndex m) const;
  /// t_α^{r(α)}
  double coeff(MorphismIndex m) const { return values_[m]; }
  const std::vector<double>& morphism_values() const noexcept { return values_; }

 private:
  GroupoidPtr base_;
  std::vector<double> values_;
  bool full_support_ = false;
};

/// M = Σ_a t_a δ_a
struct ObjectMeasure {
  GroupoidPtr base;
  std::vector<double> weights;
};

/// Δ : 𝒢 → ℝ⁺
struct ModularFunction {
  GroupoidPtr base;
  std::vector<double> values;
};

/// λ(f) as a function on objects.
std::vector<Complex> apply_kernel(const GKernel& lambda, const GFunction& f);

struct TransverseViolation {
  MorphismIndex alpha;
  MorphismIndex gamma;
  double lhs;
  double rhs;
};

struct TransverseReport {
  std::vector<TransverseViolation> violations;
  double max_residual = 0.0;
  bool transverse() const noexcept { return violations.empty(); }
};

/// Checks Σ_γ t_γ^{r(α)} f(γ) = Σ_γ t_γ^{s(α)} f(α·γ) for every α and every
/// basis function f = δ_γ.
TransverseReport check_transverse(const GKernel& lambda, double tol = kDefaultTolerance.eq);

/// Every object has a nonempty range fiber carrying a positive coefficient.
bool check_faithful(const GKernel& lambda);

struct ModularViolation {
  MorphismIndex alpha;
  MorphismIndex beta;
  double lhs;
  double rhs;
};

struct ModularReport {
  std::vector<ModularViolation> violations;
  std::vector<MorphismIndex> nonpositive;
  double max_residual = 0.0;
  bool valid() const noexcept { return violations.empty() && nonpositive.empty(); }
};

/// Δ(α⁻¹·β) = Δ(α)⁻¹ Δ(β) for every (α⁻¹, β) ∈ 𝒢^(2). Residuals are relative
/// to max(1, |lhs|).
ModularReport check_modular(const ModularFunction& delta, double tol = kDefaultTolerance.eq);

/// Δ(α) = exp(φ(s(α)) - φ(r(α))).
ModularFunction make_haar_modular(const GroupoidPtr& base, const std::vector<double>& potential);

/// Which coefficient multiplies the inverted term of the quasi-invariance sum.
enum class InverseCoefficient {
  /// t_{α⁻¹}^a, exactly as written.
  Literal,
  /// t_{α⁻¹}^{r(α⁻¹)}
  InverseRange,
};

struct QuasiInvariantSides {
  Complex lhs;
  Complex rhs;
  Complex residual() const { return lhs - rhs; }
};

/// LHS = Σ_a Σ_{α∈𝒢_a} t_a t_α^a f(α)
/// RHS = Σ_a Σ_{α∈𝒢_a} t_a c(α) conj(f(α⁻¹)) Δ(α⁻¹), c per `reading`.
QuasiInvariantSides quasi_invariant_sides(const ObjectMeasure& m, const GKernel& lambda, const ModularFunction& delta,
                                          const GFunction& f,
                                          InverseCoefficient reading = InverseCoefficient::Literal);

/// LHS - RHS of the quasi-invariance identity for a single f.
Complex check_quasi_invariant(const ObjectMeasure& m, const GKernel& lambda, const ModularFunction& delta,
                              const GFunction& f, InverseCoefficient reading = InverseCoefficient::Literal);

struct QuasiInvariantReport {
  /// Basis elements δ_γ with a nonvanishing residual, with that residual.
  std::vector<std::pair<MorphismIndex, Complex>> violations;
  double max_residual = 0.0;
  bool quasi_invariant() const noexcept { return violations.empty(); }
};

/// Exhaustive over the basis δ_γ. The identity is conjugate-linear on one
/// side, so the real basis decides it only for real-valued f.
QuasiInvariantReport is_quasi_invariant(const ObjectMeasure& m, const GKernel& lambda, const ModularFunction& delta,
                                        InverseCoefficient reading = InverseCoefficient::Literal,
                                        double tol = kDefaultTolerance.eq);

/// The composite functional m = M·λ, m(f) = Σ_a t_a Σ_{α∈𝒢_a} t_α^a f(α).
class CompositeMeasure {
 public:
  CompositeMeasure(ObjectMeasure m, GKernel lambda);

  Complex operator()(const GFunction& f) const;
  /// m(f) - m(f* Δ⁻¹)
  Complex modular_residual(const ModularFunction& delta, const GFunction& f) const;
  /// Largest |m(δ_γ) - m(δ_γ* Δ⁻¹)| over the basis.
  double modular_residual_on_basis(const ModularFunction& delta) const;

 private:
  ObjectMeasure measure_;
  GKernel lambda_;
};

}  // namespace groupoidal
