#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groupoidal/algebra.hpp"
#include "groupoidal/representation.hpp"

namespace groupoidal {

/// f^Λ_{u,v}(α) = Σ_{i,j} v_i Λ_{ij}(α) u_j, no conjugation. u and v must
/// match every nonzero dimension of Λ; morphisms over zero-dimensional
/// objects get 0. Throws ShapeMismatch.
GFunction matrix_coefficient(const Representation& rep, const Vector& u, const Vector& v);

/// (1/|G|) Σ_x f(x) over a one-object groupoid. Throws InvalidArgument for
/// more than one object.
Complex mean_value(const GFunction& f);

/// P = (1/|G|) Σ_x λ(x), the projector onto the fixed vectors of λ.
Matrix fixed_space_projector(const Representation& lambda);

struct MeanValueReport {
  bool irreducible = false;
  bool trivial = false;
  std::size_t samples = 0;
  double max_residual = 0.0;
};

/// For irreducible λ: M(f^λ_{u,v}) = vᵀu when λ is the trivial character,
/// and 0 otherwise, over `samples` seeded random complex (u, v).
MeanValueReport check_mv_lemma(const Representation& lambda, std::uint64_t seed, std::size_t samples = 100,
                               double tol = kDefaultTolerance.eq);

/// |M(f^λ_{u,v}) - vᵀ P u| for one pair.
double dec_lemma_residual(const Representation& lambda, const Vector& u, const Vector& v);
/// Largest dec_lemma_residual over `samples` seeded random complex (u, v).
MeanValueReport check_dec_lemma(const Representation& lambda, std::uint64_t seed, std::size_t samples = 100);

/// The three closure rules recorded for a family.
enum class ClosureKind { Sum, Product, Conjugate };

/// members[result] = members[left] ⊕ / ⊗ members[right], or
/// members[result] = conj(members[left]) (right unused).
struct ClosureWitness {
  ClosureKind kind;
  std::size_t left;
  std::size_t right;
  std::size_t result;
};

/// A finite family of representations with uniform dimension on a common
/// base, member 0 the trivial one, and recorded closure witnesses.
class RepFamily {
 public:
  /// Members in order: trivial, generators, complex conjugates of the
  /// generators, then ⊕ and ⊗ of every unordered pair from those. Throws
  /// InvalidArgument for reps with non-uniform dimension or a foreign base.
  static std::shared_ptr<const RepFamily> generate(const GroupoidPtr& base, const std::vector<Representation>& generators);

  /// Members and witnesses exactly as given; the witnesses are checked.
  RepFamily(GroupoidPtr base, std::vector<Representation> members, std::vector<ClosureWitness> witnesses,
            std::vector<std::string> labels = {});

  const GroupoidPtr& base() const noexcept { return base_; }
  const std::vector<Representation>& members() const noexcept { return members_; }
  const Representation& member(std::size_t i) const { return members_.at(i); }
  std::size_t size() const noexcept { return members_.size(); }
  Eigen::Index dim(std::size_t i) const { return dims_.at(i); }
  const std::vector<ClosureWitness>& witnesses() const noexcept { return witnesses_; }
  /// One short label per member, e.g. "trivial", "gen0", "conj(gen0)", "gen0+trivial".
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  GroupoidPtr base_;
  std::vector<Representation> members_;
  std::vector<Eigen::Index> dims_;
  std::vector<ClosureWitness> witnesses_;
  std::vector<std::string> labels_;
};

using FamilyPtr = std::shared_ptr<const RepFamily>;

/// An element of 𝔗(𝒢) given extensionally by one matrix L^Λ per member.
struct TannakaElement {
  FamilyPtr family;
  std::vector<Matrix> ls;

  /// (L^Λ u, v) = vᵀ L^Λ u for member i.
  Complex pairing(std::size_t i, const Vector& u, const Vector& v) const;
};

struct TannakaReport {
  /// |L^{Λ₀} - 1|
  double trivial_residual = 0.0;
  /// Largest defect of L^{Λ⊕Λ′} = L^Λ ⊕ L^{Λ′}, L^{Λ⊗Λ′} = L^Λ ⊗ L^{Λ′},
  /// L^{Λ̄} = conj L^Λ over the recorded witnesses.
  double closure_residual = 0.0;
  double unitarity_residual = 0.0;
  bool ok(double tol = kDefaultTolerance.eq) const {
    return trivial_residual <= tol && closure_residual <= tol && unitarity_residual <= tol;
  }
};

TannakaReport check_tannaka(const TannakaElement& t);

/// T_α: L^Λ = Λ(α) for every member.
TannakaElement evaluation_T(MorphismIndex alpha, const FamilyPtr& family);
/// The unit element, all L = I.
TannakaElement identity_T(const FamilyPtr& family);
/// L^Λ_{T₁·T₂} = L^Λ_{T₁} L^Λ_{T₂}. Throws BaseMismatch across families.
TannakaElement tannaka_product(const TannakaElement& a, const TannakaElement& b);
/// L^Λ_{T⁻¹} = (L^Λ_T)⁻¹
TannakaElement tannaka_inverse(const TannakaElement& t);
/// max over members of |L₁ - L₂|
double tannaka_distance(const TannakaElement& a, const TannakaElement& b);

/// (a, b, T), with a the range side as for morphisms of 𝒢.
struct FrakGElement {
  ObjectIndex a;
  ObjectIndex b;
  TannakaElement t;
};

/// (a, b, T₁)·(b, c, T₂) = (a, c, T₁·T₂). Throws NotComposable.
FrakGElement frak_G_compose(const FrakGElement& x, const FrakGElement& y);
FrakGElement frak_G_inverse(const FrakGElement& x);
FrakGElement frak_G_unit(ObjectIndex a, const FamilyPtr& family);

/// f vanishes within tol on every morphism of 𝒢_a^b.
bool ideal_membership(const GFunction& f, ObjectIndex a, ObjectIndex b, double tol = kDefaultTolerance.eq);

struct IdealReport {
  /// Largest |L_{kj}| over members and entries whose coefficient function
  /// vanishes on 𝒢_a^b.
  double basis_residual = 0.0;
  /// Largest distance from L^Λ to span{Λ(α) : α ∈ 𝒢_a^b}.
  double span_residual = 0.0;
  std::size_t vanishing_pairs = 0;
  bool ok(double tol = kDefaultTolerance.eq) const { return basis_residual <= tol && span_residual <= tol; }
};

/// The condition for (a, b, T) ∈ 𝔊: T kills the ideal I_a^b.
IdealReport check_ideal_condition(const FrakGElement& x, double tol = kDefaultTolerance.eq);

/// φ(α) = (r(α), s(α), T_α).
FrakGElement phi(MorphismIndex alpha, const FamilyPtr& family);

struct SeparationReport {
  /// Unordered pairs with equal endpoints that no coefficient tells apart.
  std::vector<std::pair<MorphismIndex, MorphismIndex>> unseparated;
  std::size_t pairs = 0;
  /// Pairs told apart by their (range, source) alone.
  std::size_t separated_by_endpoints = 0;
  std::size_t separated_by_coefficients = 0;
  bool separates() const noexcept { return unseparated.empty(); }
};

/// For every pair of distinct morphisms, a member and basis entry whose
/// coefficient differs by more than tol; pairs with different endpoints are
/// already told apart by φ's (range, source) components.
SeparationReport separation_check(const RepFamily& family, double tol = kDefaultTolerance.eq);

/// Family generated by the induced regular representation at `anchor`;
/// μ is redrawn up to 8 times until the family separates. Throws
/// NotConnected.
FamilyPtr separating_family(const GroupoidPtr& base, std::uint64_t seed, ObjectIndex anchor = 0);

struct PhiReport {
  std::size_t pairs_checked = 0;
  std::size_t composable_pairs = 0;
  double homomorphism_residual = 0.0;
  double unit_residual = 0.0;
  double inverse_residual = 0.0;
  double ideal_residual = 0.0;
  /// Images that coincide, as pairs of morphisms.
  std::vector<std::pair<MorphismIndex, MorphismIndex>> collisions;
  /// Composable pairs whose images fail to compose or the converse.
  std::vector<std::pair<MorphismIndex, MorphismIndex>> composability_mismatches;
  bool injective() const noexcept { return collisions.empty(); }
  bool ok(double tol = kDefaultTolerance.eq) const {
    return injective() && composability_mismatches.empty() && homomorphism_residual <= tol && unit_residual <= tol &&
           inverse_residual <= tol && ideal_residual <= tol;
  }
};

/// Exhaustive over ordered pairs: φ composes iff the morphisms do and then
/// φ(α·β) = φ(α)·φ(β); units, inverses, injectivity and the ideal condition.
PhiReport phi_check(const FamilyPtr& family, double tol = kDefaultTolerance.eq);

struct AbelianDualityReport {
  std::size_t group_order = 0;
  std::size_t characters = 0;
  /// Multiplicative, conjugation-compatible unit-modulus assignments on the
  /// character group.
  std::size_t assignments = 0;
  /// Assignments equal to evaluation at some group element, and group
  /// elements hit by some assignment.
  std::size_t matched = 0;
  std::size_t elements_hit = 0;
  bool ok() const noexcept {
    return assignments == group_order && matched == assignments && elements_hit == group_order;
  }
};

/// Every character χ of a finite abelian group, as values on the elements.
std::vector<std::vector<Complex>> enumerate_characters(const FiniteGroupoid& group, double tol = kDefaultTolerance.eq);

/// Throws InvalidArgument for non-groups and non-abelian groups.
AbelianDualityReport abelian_tannaka_surjectivity(const GroupoidPtr& group, double tol = kDefaultTolerance.eq);

}  // namespace groupoidal
