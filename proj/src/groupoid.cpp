#include "groupoidal/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace groupoidal {

namespace {

template <typename Index>
std::unordered_map<std::string, Index> index_ids(const std::vector<std::string>& ids, const char* what) {
  std::unordered_map<std::string, Index> out;
  for (Index i = 0; i < ids.size(); ++i) {
    if (ids[i].empty()) throw StructuralError(std::string("empty ") + what + " id");
    if (!out.emplace(ids[i], i).second) throw StructuralError(std::string("duplicate ") + what + " id '" + ids[i] + "'");
  }
  return out;
}

}  // namespace

FiniteGroupoid FiniteGroupoid::from_presentation(const Presentation& p) {
  FiniteGroupoid g;
  g.object_ids_ = p.objects;
  std::sort(g.object_ids_.begin(), g.object_ids_.end());
  g.object_lookup_ = index_ids<ObjectIndex>(g.object_ids_, "object");

  for (const auto& m : p.morphisms) g.morphism_ids_.push_back(m.id);
  std::sort(g.morphism_ids_.begin(), g.morphism_ids_.end());
  g.morphism_lookup_ = index_ids<MorphismIndex>(g.morphism_ids_, "morphism");

  const std::size_t n = g.morphism_ids_.size();
  auto object_of = [&](const std::string& id, const std::string& context) {
    auto it = g.object_lookup_.find(id);
    if (it == g.object_lookup_.end()) throw StructuralError(context + ": dangling object id '" + id + "'");
    return it->second;
  };
  auto morphism_of = [&](const std::string& id, const std::string& context) {
    auto it = g.morphism_lookup_.find(id);
    if (it == g.morphism_lookup_.end()) throw StructuralError(context + ": dangling morphism id '" + id + "'");
    return it->second;
  };

  g.src_.assign(n, 0);
  g.rng_.assign(n, 0);
  for (const auto& m : p.morphisms) {
    const auto i = g.morphism_lookup_.at(m.id);
    g.src_[i] = object_of(m.src, "morphism '" + m.id + "' src");
    g.rng_[i] = object_of(m.dst, "morphism '" + m.id + "' dst");
  }

  g.inv_.assign(n, 0);
  std::vector<bool> has_inv(n, false);
  for (const auto& [from, to] : p.inv) {
    const auto i = morphism_of(from, "inv key");
    g.inv_[i] = morphism_of(to, "inv['" + from + "']");
    has_inv[i] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_inv[i]) throw StructuralError("inv has no entry for '" + g.morphism_ids_[i] + "'");
  }

  g.comp_.assign(n * n, -1);
  for (const auto& [l, r, res] : p.comp) {
    const auto li = morphism_of(l, "comp left");
    const auto ri = morphism_of(r, "comp right");
    const auto xi = morphism_of(res, "comp result");
    auto& slot = g.comp_[li * n + ri];
    if (slot >= 0 && static_cast<MorphismIndex>(slot) != xi) {
      throw StructuralError("comp lists two products for ('" + l + "', '" + r + "')");
    }
    slot = static_cast<std::int64_t>(xi);
  }

  g.units_.assign(g.object_ids_.size(), 0);
  for (ObjectIndex a = 0; a < g.object_ids_.size(); ++a) {
    const auto& oid = g.object_ids_[a];
    if (auto it = p.units.find(oid); it != p.units.end()) {
      g.units_[a] = morphism_of(it->second, "units['" + oid + "']");
      continue;
    }
    std::optional<MorphismIndex> found;
    for (MorphismIndex m = 0; m < n; ++m) {
      if (g.src_[m] == a && g.rng_[m] == a && g.inv_[m] == m && g.comp_[m * n + m] == static_cast<std::int64_t>(m)) {
        found = m;
        break;
      }
    }
    if (!found) throw StructuralError("object '" + oid + "' has no unit morphism");
    g.units_[a] = *found;
  }
  return g;
}

ObjectIndex FiniteGroupoid::object_index(const std::string& id) const {
  auto it = object_lookup_.find(id);
  if (it == object_lookup_.end()) throw UnknownId(id);
  return it->second;
}

MorphismIndex FiniteGroupoid::morphism_index(const std::string& id) const {
  auto it = morphism_lookup_.find(id);
  if (it == morphism_lookup_.end()) throw UnknownId(id);
  return it->second;
}

std::optional<ObjectIndex> FiniteGroupoid::find_object(const std::string& id) const {
  auto it = object_lookup_.find(id);
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorphismIndex> FiniteGroupoid::find_morphism(const std::string& id) const {
  auto it = morphism_lookup_.find(id);
  if (it == morphism_lookup_.end()) return std::nullopt;
  return it->second;
}

MorphismIndex FiniteGroupoid::compose(MorphismIndex left, MorphismIndex right) const {
  if (src_[left] != rng_[right]) {
    throw NotComposable(morphism_ids_[left], morphism_ids_[right], object_ids_[src_[left]],
                        object_ids_[rng_[right]]);
  }
  auto p = product(left, right);
  if (!p) {
    throw StructuralError("no recorded product for composable pair ('" + morphism_ids_[left] + "', '" +
                          morphism_ids_[right] + "')");
  }
  return *p;
}

Presentation FiniteGroupoid::presentation() const {
  Presentation p;
  p.objects = object_ids_;
  const std::size_t n = morphism_count();
  for (MorphismIndex m = 0; m < n; ++m) {
    p.morphisms.push_back({morphism_ids_[m], object_ids_[src_[m]], object_ids_[rng_[m]]});
    p.inv[morphism_ids_[m]] = morphism_ids_[inv_[m]];
  }
  for (MorphismIndex l = 0; l < n; ++l) {
    for (MorphismIndex r = 0; r < n; ++r) {
      if (auto x = product(l, r)) p.comp.push_back({morphism_ids_[l], morphism_ids_[r], morphism_ids_[*x]});
    }
  }
  for (ObjectIndex a = 0; a < object_count(); ++a) p.units[object_ids_[a]] = morphism_ids_[units_[a]];
  return p;
}

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  if (!a || !b) return false;
  return a == b || *a == *b;
}

ValidationReport validate(const FiniteGroupoid& g) {
  ValidationReport report;
  const std::size_t n = g.morphism_count();
  auto id = [&](MorphismIndex m) { return g.morphism_id(m); };
  auto add = [&](std::string axiom, std::vector<std::string> witness, std::string detail) {
    report.violations.push_back({std::move(axiom), std::move(witness), std::move(detail)});
  };

  for (MorphismIndex a = 0; a < n; ++a) {
    if (g.inv(g.inv(a)) != a) add("i", {id(a)}, "inv(inv(" + id(a) + ")) = " + id(g.inv(g.inv(a))));
    if (g.src(g.inv(a)) != g.rng(a) || g.rng(g.inv(a)) != g.src(a)) {
      add("i", {id(a), id(g.inv(a))}, "inverse does not swap source and range");
    }
  }

  for (ObjectIndex x = 0; x < g.object_count(); ++x) {
    const auto u = g.unit(x);
    if (g.src(u) != x || g.rng(u) != x) add("units", {id(u)}, "unit of " + g.object_id(x) + " is not in its isotropy fiber");
  }

  for (MorphismIndex a = 0; a < n; ++a) {
    for (MorphismIndex b = 0; b < n; ++b) {
      const bool composable = g.src(a) == g.rng(b);
      const auto p = g.product(a, b);
      if (composable != p.has_value()) {
        add("composability", {id(a), id(b)},
            composable ? "s(left) = r(right) but no product recorded" : "product recorded for non-composable pair");
        continue;
      }
      if (!p) continue;
      if (g.src(*p) != g.src(b) || g.rng(*p) != g.rng(a)) {
        add("composability", {id(a), id(b), id(*p)}, "product has wrong endpoints");
      }
    }
  }

  for (MorphismIndex a = 0; a < n; ++a) {
    const auto su = g.unit(g.src(a));
    const auto ru = g.unit(g.rng(a));
    if (g.product(a, su) != a) add("units", {id(a), id(su)}, "α·1_s(α) != α");
    if (g.product(ru, a) != a) add("units", {id(ru), id(a)}, "1_r(α)·α != α");
    if (g.product(g.inv(a), a) != su) add("units", {id(g.inv(a)), id(a)}, "α⁻¹·α is not the unit at s(α)");
    if (g.product(a, g.inv(a)) != ru) add("units", {id(a), id(g.inv(a))}, "α·α⁻¹ is not the unit at r(α)");
  }

  // iii) α⁻¹·(α·β) = β and iv) (β·α)·α⁻¹ = β, wherever the products exist.
  for (MorphismIndex a = 0; a < n; ++a) {
    for (MorphismIndex b = 0; b < n; ++b) {
      if (auto ab = g.product(a, b)) {
        if (g.product(g.inv(a), *ab) != b) add("iii", {id(a), id(b)}, "α⁻¹·(α·β) != β");
      }
      if (auto ba = g.product(b, a)) {
        if (g.product(*ba, g.inv(a)) != b) add("iv", {id(b), id(a)}, "(β·α)·α⁻¹ != β");
      }
    }
  }

  // ii) associativity over all composable triples.
  for (MorphismIndex a = 0; a < n; ++a) {
    for (MorphismIndex b = 0; b < n; ++b) {
      const auto ab = g.product(a, b);
      if (!ab) continue;
      for (MorphismIndex c = 0; c < n; ++c) {
        const auto bc = g.product(b, c);
        if (!bc) continue;
        const auto left = g.product(*ab, c);
        const auto right = g.product(a, *bc);
        if (!left || !right || *left != *right) add("ii", {id(a), id(b), id(c)}, "(α·β)·γ != α·(β·γ)");
      }
    }
  }
  return report;
}

MorphismIndex compose(const FiniteGroupoid& g, const std::string& left, const std::string& right) {
  return g.compose(g.morphism_index(left), g.morphism_index(right));
}

MorphismIndex inverse(const FiniteGroupoid& g, const std::string& m) { return g.inv(g.morphism_index(m)); }

std::vector<MorphismIndex> fiber(const FiniteGroupoid& g, std::optional<ObjectIndex> range,
                                 std::optional<ObjectIndex> source) {
  if (range && *range >= g.object_count()) throw UnknownId("object #" + std::to_string(*range));
  if (source && *source >= g.object_count()) throw UnknownId("object #" + std::to_string(*source));
  std::vector<MorphismIndex> out;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (range && g.rng(m) != *range) continue;
    if (source && g.src(m) != *source) continue;
    out.push_back(m);
  }
  return out;
}

GroupoidPtr isotropy_group(const FiniteGroupoid& g, ObjectIndex a) {
  if (a >= g.object_count()) throw UnknownId("object #" + std::to_string(a));
  const auto members = fiber(g, a, a);
  Presentation p;
  const auto& oid = g.object_id(a);
  p.objects = {oid};
  for (auto m : members) {
    p.morphisms.push_back({g.morphism_id(m), oid, oid});
    p.inv[g.morphism_id(m)] = g.morphism_id(g.inv(m));
    for (auto k : members) {
      p.comp.push_back({g.morphism_id(m), g.morphism_id(k), g.morphism_id(g.compose(m, k))});
    }
  }
  p.units[oid] = g.morphism_id(g.unit(a));
  return std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_presentation(p));
}

std::vector<std::vector<ObjectIndex>> connected_components(const FiniteGroupoid& g) {
  std::vector<ObjectIndex> parent(g.object_count());
  std::iota(parent.begin(), parent.end(), ObjectIndex{0});
  auto find = [&](ObjectIndex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    auto a = find(g.rng(m));
    auto b = find(g.src(m));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<ObjectIndex, std::vector<ObjectIndex>> groups;
  for (ObjectIndex x = 0; x < g.object_count(); ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<ObjectIndex>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

bool is_connected(const FiniteGroupoid& g) { return connected_components(g).size() <= 1; }

Section section_omega(const FiniteGroupoid& g, ObjectIndex base) {
  if (base >= g.object_count()) throw UnknownId("object #" + std::to_string(base));
  Section s;
  s.base = base;
  s.omega.resize(g.object_count());
  for (ObjectIndex x = 0; x < g.object_count(); ++x) {
    if (x == base) {
      s.omega[x] = g.unit(base);
      continue;
    }
    // Canonical order is lexicographic, so the first hit is the least id.
    const auto candidates = fiber(g, base, x);
    if (candidates.empty()) {
      throw NotConnected("no morphism from " + g.object_id(x) + " to " + g.object_id(base));
    }
    s.omega[x] = candidates.front();
  }
  return s;
}

MorphismIndex gamma(const FiniteGroupoid& g, const Section& omega, MorphismIndex m) {
  if (m >= g.morphism_count()) throw UnknownId("morphism #" + std::to_string(m));
  const auto left = g.compose(omega.omega[g.rng(m)], m);
  return g.compose(left, g.inv(omega.omega[g.src(m)]));
}

}  // namespace groupoidal
