#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "groupoidal/types.hpp"

namespace groupoidal {

/// Raw, unchecked description of a finite groupoid as read from a file or
/// produced by a builder. `dst` is the range r(α), `src` the source s(α).
struct Presentation {
  struct Morphism {
    std::string id;
    std::string src;
    std::string dst;
  };

  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::map<std::string, std::string> inv;
  /// Every defined product as {left, right, result}.
  std::vector<std::array<std::string, 3>> comp;
  /// Optional explicit units; when absent the unit at a is the idempotent of
  /// the isotropy fiber at a.
  std::map<std::string, std::string> units;
};

/// A finite groupoid with an explicit partial composition table.
///
/// Objects and morphisms are kept in lexicographic id order and addressed by
/// their position in that order. Instances are immutable; construction only
/// checks structure (no dangling ids), the groupoid axioms are checked by
/// validate().
class FiniteGroupoid {
 public:
  static FiniteGroupoid from_presentation(const Presentation& p);

  std::size_t object_count() const noexcept { return object_ids_.size(); }
  std::size_t morphism_count() const noexcept { return morphism_ids_.size(); }

  const std::string& object_id(ObjectIndex a) const { return object_ids_.at(a); }
  const std::string& morphism_id(MorphismIndex m) const { return morphism_ids_.at(m); }
  const std::vector<std::string>& object_ids() const noexcept { return object_ids_; }
  const std::vector<std::string>& morphism_ids() const noexcept { return morphism_ids_; }

  /// Throws UnknownId.
  ObjectIndex object_index(const std::string& id) const;
  MorphismIndex morphism_index(const std::string& id) const;
  std::optional<ObjectIndex> find_object(const std::string& id) const;
  std::optional<MorphismIndex> find_morphism(const std::string& id) const;

  ObjectIndex src(MorphismIndex m) const { return src_[m]; }
  ObjectIndex rng(MorphismIndex m) const { return rng_[m]; }
  MorphismIndex inv(MorphismIndex m) const { return inv_[m]; }
  MorphismIndex unit(ObjectIndex a) const { return units_[a]; }
  bool is_unit(MorphismIndex m) const { return units_[rng_[m]] == m && src_[m] == rng_[m]; }

  /// Table lookup; empty when the pair has no recorded product.
  std::optional<MorphismIndex> product(MorphismIndex left, MorphismIndex right) const {
    const auto v = comp_[left * morphism_count() + right];
    if (v < 0) return std::nullopt;
    return static_cast<MorphismIndex>(v);
  }

  /// left·right; throws NotComposable when s(left) != r(right).
  MorphismIndex compose(MorphismIndex left, MorphismIndex right) const;

  Presentation presentation() const;

  friend bool operator==(const FiniteGroupoid&, const FiniteGroupoid&) = default;

 private:
  FiniteGroupoid() = default;

  std::vector<std::string> object_ids_;
  std::vector<std::string> morphism_ids_;
  std::unordered_map<std::string, ObjectIndex> object_lookup_;
  std::unordered_map<std::string, MorphismIndex> morphism_lookup_;
  std::vector<ObjectIndex> src_;
  std::vector<ObjectIndex> rng_;
  std::vector<MorphismIndex> inv_;
  std::vector<MorphismIndex> units_;
  std::vector<std::int64_t> comp_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// True when both pointers denote the same groupoid (identity or equal structure).
bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);

struct Violation {
  /// "i", "ii", "iii", "iv", "units" or "composability".
  std::string axiom;
  std::vector<std::string> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const FiniteGroupoid& g);

MorphismIndex compose(const FiniteGroupoid& g, const std::string& left, const std::string& right);
MorphismIndex inverse(const FiniteGroupoid& g, const std::string& m);

/// 𝒢_range^source; a missing endpoint acts as a wildcard. Canonical order.
std::vector<MorphismIndex> fiber(const FiniteGroupoid& g, std::optional<ObjectIndex> range,
                                 std::optional<ObjectIndex> source);

/// The group 𝒢_a^a as a one-object groupoid. Morphism ids are kept.
GroupoidPtr isotropy_group(const FiniteGroupoid& g, ObjectIndex a);

/// Objects grouped by connectivity, each group sorted, groups ordered by
/// their least object.
std::vector<std::vector<ObjectIndex>> connected_components(const FiniteGroupoid& g);
bool is_connected(const FiniteGroupoid& g);

/// A choice of Ω(x) ∈ 𝒢_base^x for every object x with Ω(base) the unit.
struct Section {
  ObjectIndex base = 0;
  std::vector<MorphismIndex> omega;
};

/// Least-id section anchored at `base`; throws NotConnected.
Section section_omega(const FiniteGroupoid& g, ObjectIndex base);

/// Γ(α) = Ω(r(α))·α·Ω(s(α))⁻¹, an element of the isotropy group at the base.
MorphismIndex gamma(const FiniteGroupoid& g, const Section& omega, MorphismIndex m);

// Builders. Outputs are valid groupoids with deterministic orderings.

/// The two-object, twelve-morphism quantum ratchet.
GroupoidPtr build_quantum_ratchet();

/// Group with elements 0..n-1 and table[i][j] = i*j. Throws InvalidArgument
/// when the table is not a group.
GroupoidPtr build_group_groupoid(const std::vector<std::vector<std::size_t>>& table,
                                 std::vector<std::string> element_names = {});

/// Pair groupoid on n objects: one morphism (i, j) for every ordered pair.
GroupoidPtr build_pair_groupoid(std::size_t n);

/// Finite action groupoid of ℤ/period acting on {0..n-1} through `perm`.
/// Morphism (x, k) has range x and source perm^k(x). Throws InvalidArgument
/// when perm^period is not the identity.
GroupoidPtr build_action_groupoid(const std::vector<std::size_t>& perm, std::size_t period);

/// Disjoint union; ids are prefixed with "L." and "R.".
GroupoidPtr build_disjoint_union(const FiniteGroupoid& left, const FiniteGroupoid& right);

/// Multiplication tables for small named groups: Zn, ZaxZb, Sn (n <= 5), Dn.
std::vector<std::vector<std::size_t>> named_group_table(const std::string& name);

}  // namespace groupoidal
