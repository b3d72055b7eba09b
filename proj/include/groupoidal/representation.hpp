#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groupoidal/groupoid.hpp"
#include "groupoidal/linalg.hpp"

namespace groupoidal {

/// A finite-dimensional linear representation Λ of a finite groupoid.
///
/// Λ(α) is stored as a dims(r(α)) × dims(s(α)) matrix so that
/// Λ(α·β) = Λ(α)Λ(β) is an ordinary matrix product. Dimensions must be
/// constant on each connected component, which makes the matrices square
/// and the shape dims(s) × dims(r) coincide with dims(r) × dims(s).
/// A component may carry dimension 0; pieces of a decomposition on a
/// disconnected groupoid live on a single component.
class Representation {
 public:
  /// Throws ShapeMismatch on wrong sizes or dimensions that vary inside a
  /// component. Functoriality is checked separately.
  Representation(GroupoidPtr base, std::vector<Eigen::Index> dims, std::vector<Matrix> mats);

  /// Every Λ(α) = 1×1 identity.
  static Representation trivial(GroupoidPtr base);

  const GroupoidPtr& base() const noexcept { return base_; }
  const FiniteGroupoid& groupoid() const noexcept { return *base_; }
  Eigen::Index dim(ObjectIndex a) const { return dims_[a]; }
  const std::vector<Eigen::Index>& dims() const noexcept { return dims_; }
  /// The common dimension when it is the same at every object, else nullopt.
  std::optional<Eigen::Index> uniform_dim() const;

  const Matrix& operator()(MorphismIndex m) const { return mats_[m]; }
  const Matrix& at(const std::string& id) const { return mats_[base_->morphism_index(id)]; }
  const std::vector<Matrix>& mats() const noexcept { return mats_; }

 private:
  GroupoidPtr base_;
  std::vector<Eigen::Index> dims_;
  std::vector<Matrix> mats_;
};

struct RepViolation {
  /// "unit", "functor" or "unitary".
  std::string kind;
  std::vector<std::string> witness;
  double residual = 0.0;
};

struct RepReport {
  std::vector<RepViolation> violations;
  double max_residual = 0.0;
  bool ok() const noexcept { return violations.empty(); }
};

/// Units go to identities and Λ(α·β) = Λ(α)Λ(β) on every composable pair.
RepReport check_representation(const Representation& rep, double tol = kDefaultTolerance.eq);
/// Λ(α)†Λ(α) = I for every α.
RepReport check_unitary(const Representation& rep, double tol = kDefaultTolerance.eq);

Representation direct_sum(const Representation& a, const Representation& b);
Representation tensor_product(const Representation& a, const Representation& b);

/// Λ*(α) = Λ(α⁻¹). Since Λ*(α·β) = Λ*(β)Λ*(α), the result is a
/// representation only when those images commute; check_representation
/// tells.
Representation conjugate_rep(const Representation& rep);
/// Entrywise complex conjugate, always a representation. For unitary Λ it
/// equals α ↦ Λ(α⁻¹)ᵀ.
Representation complex_conjugate(const Representation& rep);

/// Λ′(α) = U_{r(α)} Λ(α) U_{s(α)}⁻¹ for invertible U_x.
Representation change_basis(const Representation& rep, const std::vector<Matrix>& u);

/// Per-object components φ_x : V_x → V′_x.
struct Intertwiner {
  std::vector<Matrix> components;
};

/// Basis of {φ : φ_{r(α)} Λ(α) = Λ′(α) φ_{s(α)} for all α}, orthonormal
/// for the Frobenius inner product on the stacked components.
std::vector<Intertwiner> intertwiner_space(const Representation& a, const Representation& b,
                                           double tol = kDefaultTolerance.eq);

/// max over α of |φ_{r(α)} Λ(α) - Λ′(α) φ_{s(α)}|
double intertwining_defect(const Intertwiner& phi, const Representation& a, const Representation& b);

enum class Equivalence { Equivalent, Inequivalent, Undecided };

struct EquivalenceResult {
  Equivalence verdict = Equivalence::Undecided;
  std::optional<Intertwiner> witness;
  std::size_t attempts = 0;
};

/// Random combinations of the intertwiner basis, tested for invertibility at
/// every object; 8 draws before giving up with Undecided. Dimension mismatch
/// or an empty intertwiner space is Inequivalent outright.
EquivalenceResult are_equivalent(const Representation& a, const Representation& b, std::uint64_t seed,
                                 double tol = kDefaultTolerance.eq);

std::size_t commutant_dimension(const Representation& rep, double tol = kDefaultTolerance.eq);
bool is_irreducible(const Representation& rep, double tol = kDefaultTolerance.eq);

/// One irreducible piece: isometries B_x whose columns span the stable
/// subspace W_x ⊂ V_x, and Λ_W(α) = B_{r(α)}† Λ(α) B_{s(α)}.
struct RepPiece {
  std::vector<Matrix> basis;
  Representation rep;
};

struct Decomposition {
  std::vector<RepPiece> pieces;
  /// Largest leak |P_r Λ(α) (I - P_s)| or |(I - P_r) Λ(α) P_s| over pieces:
  /// zero means both W and W⊥ are stable.
  double stability_residual = 0.0;
  /// Largest |B†B - I| over pieces and objects.
  double orthonormality_residual = 0.0;
  std::uint64_t seed = 0;
};

/// Splits a unitary representation into irreducible unitary pieces by
/// repeatedly diagonalizing a random Hermitian element of the commutant.
/// Throws InvalidArgument for non-unitary input.
Decomposition decompose(const Representation& rep, std::uint64_t seed, const Tolerance& tol = kDefaultTolerance);

/// ⊕ of the pieces, written in the original coordinates through the
/// unitary U_x = [B_x¹ ⋯ B_xᵏ]; equals the input exactly when the pieces
/// exhaust it.
Representation reassemble(const Representation& rep, const Decomposition& d);

/// λ = Λ|_{𝒢_a^a} on isotropy_group(g, a); morphism ids are kept.
Representation restrict_to_isotropy(const Representation& rep, ObjectIndex a);

/// The (λ, μ) data of a representation of a connected groupoid relative to
/// a section Ω at `section.base`.
struct RepPair {
  Representation lambda;
  /// μ(x) = Λ(Ω(x)), indexed by object; μ(base) = I.
  std::vector<Matrix> mu;
};

/// Throws NotConnected.
RepPair split_H(const Representation& rep, const Section& omega);
/// Λ(α) = μ(r(α))⁻¹ λ(Γ(α)) μ(s(α)). Throws NotConnected, ShapeMismatch.
Representation rebuild_H(const GroupoidPtr& base, const RepPair& pair, const Section& omega);

/// A representation of the whole (connected) groupoid whose restriction at
/// x is exactly `lambda_x`, a representation of isotropy_group(g, x).
/// ω must lie in 𝒢_a^x for a = section.base; throws InvalidArgument
/// otherwise.
Representation extend_from_isotropy(const GroupoidPtr& base, const Representation& lambda_x, ObjectIndex x,
                                    MorphismIndex omega_morphism, const Section& section);

/// Left-regular permutation representation of a one-object groupoid:
/// Λ(g) e_h = e_{g·h}. Throws InvalidArgument for more than one object.
Representation regular_representation(const GroupoidPtr& group);

/// Regular representation of the isotropy group at `anchor`, spread over
/// the connected groupoid with seeded random unitary μ (μ(anchor) = I).
Representation induced_regular_representation(const GroupoidPtr& base, ObjectIndex anchor, std::uint64_t seed);

}  // namespace groupoidal
