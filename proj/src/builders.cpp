#include <algorithm>
#include <map>
#include <numeric>
#include <regex>

#include "groupoidal/groupoid.hpp"

namespace groupoidal {

namespace {

using Perm = std::vector<std::size_t>;

Perm compose_perm(const Perm& p, const Perm& q) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[q[i]];
  return out;
}

Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

/// Multiplication table (p∘q) of a list of permutations closed under composition.
std::vector<std::vector<std::size_t>> table_of(const std::vector<Perm>& elements) {
  std::map<Perm, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  std::vector<std::vector<std::size_t>> t(elements.size(), std::vector<std::size_t>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) t[i][j] = index.at(compose_perm(elements[i], elements[j]));
  }
  return t;
}

/// Closure of `gens` under composition, identity first, breadth-first order.
std::vector<Perm> generate(std::size_t n, const std::vector<Perm>& gens) {
  std::vector<Perm> out{identity_perm(n)};
  std::map<Perm, bool> seen{{out.front(), true}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      auto next = compose_perm(out[i], g);
      if (seen.emplace(next, true).second) out.push_back(std::move(next));
    }
  }
  return out;
}

std::string padded(std::size_t i, std::size_t count) {
  const auto width = std::to_string(count == 0 ? 0 : count - 1).size();
  auto s = std::to_string(i);
  return std::string(width - s.size(), '0') + s;
}

std::string pair_id(std::size_t a, std::size_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

GroupoidPtr build_quantum_ratchet() {
  // Morphism (range, j, source) carries σ^j; σ is the 3-cycle 1→2→3→1.
  struct Triple {
    const char* id;
    char range;
    int power;
    char source;
  };
  static constexpr Triple kTriples[] = {
      {"+", '+', 0, '+'},  {"σ+", '+', 1, '+'}, {"σ+2", '+', 2, '+'}, {"-", '-', 0, '-'},
      {"σ-", '-', 1, '-'}, {"σ-2", '-', 2, '-'}, {"β1", '-', 1, '+'}, {"β2", '-', 2, '+'},
      {"β3", '-', 0, '+'}, {"α1", '+', 1, '-'}, {"α2", '+', 2, '-'}, {"α3", '+', 0, '-'},
  };
  auto find = [](char range, int power, char source) -> const char* {
    for (const auto& t : kTriples) {
      if (t.range == range && t.power == power && t.source == source) return t.id;
    }
    return nullptr;
  };

  Presentation p;
  p.objects = {"-", "+"};
  for (const auto& t : kTriples) {
    p.morphisms.push_back({t.id, std::string(1, t.source), std::string(1, t.range)});
    p.inv[t.id] = find(t.source, (3 - t.power) % 3, t.range);
  }
  // (a₂, σ_j, a₁)·(a₁, σ_i, b₁) = (a₂, σ_j σ_i, b₁)
  for (const auto& left : kTriples) {
    for (const auto& right : kTriples) {
      if (left.source != right.range) continue;
      p.comp.push_back({left.id, right.id, find(left.range, (left.power + right.power) % 3, right.source)});
    }
  }
  p.units = {{"+", "+"}, {"-", "-"}};
  return std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_presentation(p));
}

GroupoidPtr build_group_groupoid(const std::vector<std::vector<std::size_t>>& table,
                                 std::vector<std::string> element_names) {
  const std::size_t n = table.size();
  if (n == 0) throw InvalidArgument("group table is empty");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidArgument("group table is not square");
    for (auto v : row) {
      if (v >= n) throw InvalidArgument("group table entry out of range");
    }
  }
  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw InvalidArgument("group table has no identity");
  std::vector<std::size_t> inverse(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto it = std::find(table[x].begin(), table[x].end(), *identity);
    if (it == table[x].end()) throw InvalidArgument("group table element " + std::to_string(x) + " has no inverse");
    inverse[x] = static_cast<std::size_t>(it - table[x].begin());
    if (table[inverse[x]][x] != *identity) throw InvalidArgument("group table inverse is not two-sided");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) throw InvalidArgument("group table is not associative");
      }
    }
  }

  if (element_names.empty()) {
    for (std::size_t i = 0; i < n; ++i) element_names.push_back("g" + padded(i, n));
  }
  if (element_names.size() != n) throw InvalidArgument("wrong number of element names");

  Presentation p;
  const std::string object = "*";
  p.objects = {object};
  for (std::size_t i = 0; i < n; ++i) {
    p.morphisms.push_back({element_names[i], object, object});
    p.inv[element_names[i]] = element_names[inverse[i]];
    for (std::size_t j = 0; j < n; ++j) p.comp.push_back({element_names[i], element_names[j], element_names[table[i][j]]});
  }
  p.units[object] = element_names[*identity];
  return std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_presentation(p));
}

GroupoidPtr build_pair_groupoid(std::size_t n) {
  if (n == 0) throw InvalidArgument("pair groupoid needs at least one object");
  Presentation p;
  for (std::size_t i = 0; i < n; ++i) p.objects.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      p.morphisms.push_back({pair_id(i, j), std::to_string(j), std::to_string(i)});
      p.inv[pair_id(i, j)] = pair_id(j, i);
      for (std::size_t k = 0; k < n; ++k) p.comp.push_back({pair_id(i, j), pair_id(j, k), pair_id(i, k)});
    }
    p.units[std::to_string(i)] = pair_id(i, i);
  }
  return std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_presentation(p));
}

GroupoidPtr build_action_groupoid(const std::vector<std::size_t>& perm, std::size_t period) {
  const std::size_t n = perm.size();
  if (n == 0) throw InvalidArgument("action groupoid needs a nonempty permutation");
  if (period == 0) throw InvalidArgument("action period must be positive");
  {
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity_perm(n)) throw InvalidArgument("action map is not a permutation");
  }
  // powers[k][x] = perm^k(x)
  std::vector<Perm> powers{identity_perm(n)};
  for (std::size_t k = 1; k <= period; ++k) powers.push_back(compose_perm(perm, powers.back()));
  if (powers[period] != identity_perm(n)) {
    throw InvalidArgument("perm^" + std::to_string(period) + " is not the identity");
  }

  Presentation p;
  for (std::size_t x = 0; x < n; ++x) p.objects.push_back(std::to_string(x));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t k = 0; k < period; ++k) {
      const auto id = pair_id(x, k);
      p.morphisms.push_back({id, std::to_string(powers[k][x]), std::to_string(x)});
      p.inv[id] = pair_id(powers[k][x], (period - k) % period);
      // (x, k)·(perm^k(x), k') = (x, k + k')
      for (std::size_t k2 = 0; k2 < period; ++k2) {
        p.comp.push_back({id, pair_id(powers[k][x], k2), pair_id(x, (k + k2) % period)});
      }
    }
    p.units[std::to_string(x)] = pair_id(x, 0);
  }
  return std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_presentation(p));
}

GroupoidPtr build_disjoint_union(const FiniteGroupoid& left, const FiniteGroupoid& right) {
  Presentation out;
  auto absorb = [&out](const FiniteGroupoid& g, const std::string& prefix) {
    auto p = g.presentation();
    for (auto& o : p.objects) out.objects.push_back(prefix + o);
    for (auto& m : p.morphisms) out.morphisms.push_back({prefix + m.id, prefix + m.src, prefix + m.dst});
    for (auto& [k, v] : p.inv) out.inv[prefix + k] = prefix + v;
    for (auto& [a, b, c] : p.comp) out.comp.push_back({prefix + a, prefix + b, prefix + c});
    for (auto& [k, v] : p.units) out.units[prefix + k] = prefix + v;
  };
  absorb(left, "L.");
  absorb(right, "R.");
  return std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_presentation(out));
}

std::vector<std::vector<std::size_t>> named_group_table(const std::string& name) {
  std::smatch m;
  static const std::regex cyclic(R"(Z(\d+))");
  static const std::regex product(R"(Z(\d+)xZ(\d+))");
  static const std::regex symmetric(R"(S(\d+))");
  static const std::regex dihedral(R"(D(\d+))");

  if (std::regex_match(name, m, cyclic)) {
    const auto n = std::stoul(m[1]);
    if (n == 0) throw InvalidArgument("Z0 is not a group");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    }
    return t;
  }
  if (std::regex_match(name, m, product)) {
    const auto a = std::stoul(m[1]);
    const auto b = std::stoul(m[2]);
    if (a == 0 || b == 0) throw InvalidArgument("empty factor in " + name);
    const auto n = a * b;
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) t[i][j] = ((i / b + j / b) % a) * b + (i % b + j % b) % b;
    }
    return t;
  }
  if (std::regex_match(name, m, symmetric)) {
    const auto n = std::stoul(m[1]);
    if (n == 0 || n > 5) throw InvalidArgument("symmetric groups are supported for 1 <= n <= 5");
    std::vector<Perm> elements;
    auto p = identity_perm(n);
    do elements.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return table_of(elements);
  }
  if (std::regex_match(name, m, dihedral)) {
    const auto n = std::stoul(m[1]);
    if (n < 3) throw InvalidArgument("dihedral groups are supported for n >= 3");
    Perm rotation(n), reflection(n);
    for (std::size_t i = 0; i < n; ++i) {
      rotation[i] = (i + 1) % n;
      reflection[i] = (n - i) % n;
    }
    return table_of(generate(n, {rotation, reflection}));
  }
  throw InvalidArgument("unknown group '" + name + "'");
}

}  // namespace groupoidal
