#include "groupoidal/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace groupoidal::io {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_at(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

double number_at(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

ObjectIndex object_at(const FiniteGroupoid& g, const std::string& id, const std::string& where) {
  auto o = g.find_object(id);
  if (!o) throw ParseError(where + ": unknown object '" + id + "'");
  return *o;
}

MorphismIndex morphism_at(const FiniteGroupoid& g, const std::string& id, const std::string& where) {
  auto m = g.find_morphism(id);
  if (!m) throw ParseError(where + ": unknown morphism '" + id + "'");
  return *m;
}

std::vector<std::size_t> parse_perm(const std::string& spec) {
  static const std::regex cycle(R"((\d+)cycle)");
  std::smatch m;
  std::vector<std::size_t> perm;
  if (std::regex_match(spec, m, cycle)) {
    const auto n = std::stoul(m[1]);
    for (std::size_t i = 0; i < n; ++i) perm.push_back((i + 1) % n);
    return perm;
  }
  static const std::regex list(R"(\d+(\.\d+)*)");
  if (!std::regex_match(spec, list)) throw InvalidArgument("bad permutation '" + spec + "'");
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, '.')) perm.push_back(std::stoul(part));
  return perm;
}

}  // namespace

GroupoidPtr builtin(const std::string& name) {
  static const std::regex pair(R"(pair:(\d+))");
  static const std::regex group(R"(group:(.+))");
  static const std::regex action(R"(action:([^,]+),(\d+))");
  std::smatch m;
  if (name == "quantum-ratchet") return build_quantum_ratchet();
  if (std::regex_match(name, m, pair)) return build_pair_groupoid(std::stoul(m[1]));
  if (std::regex_match(name, m, group)) return build_group_groupoid(named_group_table(m[1]));
  if (std::regex_match(name, m, action)) return build_action_groupoid(parse_perm(m[1]), std::stoul(m[2]));
  throw InvalidArgument("unknown builtin '" + name + "'");
}

bool is_builtin_name(const std::string& name) {
  static const std::regex shape(R"(quantum-ratchet|pair:\d+|group:.+|action:[^,]+,\d+)");
  return std::regex_match(name, shape);
}

Json to_json(const Presentation& p) {
  Json j;
  j["objects"] = p.objects;
  j["morphisms"] = Json::array();
  for (const auto& m : p.morphisms) j["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
  j["inv"] = p.inv;
  j["comp"] = Json::array();
  for (const auto& c : p.comp) j["comp"].push_back({c[0], c[1], c[2]});
  if (!p.units.empty()) j["units"] = p.units;
  return j;
}

Presentation presentation_from_json(const Json& j, const std::string& source) {
  Presentation p;
  const auto& objects = field(j, "objects", source);
  if (!objects.is_array()) throw ParseError(source + ": objects: expected an array");
  for (std::size_t i = 0; i < objects.size(); ++i) p.objects.push_back(string_at(objects[i], source + ": objects[" + std::to_string(i) + "]"));

  const auto& morphisms = field(j, "morphisms", source);
  if (!morphisms.is_array()) throw ParseError(source + ": morphisms: expected an array");
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto where = source + ": morphisms[" + std::to_string(i) + "]";
    p.morphisms.push_back({string_at(field(morphisms[i], "id", where), where + ".id"),
                           string_at(field(morphisms[i], "src", where), where + ".src"),
                           string_at(field(morphisms[i], "dst", where), where + ".dst")});
  }

  const auto& inv = field(j, "inv", source);
  if (!inv.is_object()) throw ParseError(source + ": inv: expected an object");
  for (const auto& [k, v] : inv.items()) p.inv[k] = string_at(v, source + ": inv." + k);

  const auto& comp = field(j, "comp", source);
  if (!comp.is_array()) throw ParseError(source + ": comp: expected an array");
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const auto where = source + ": comp[" + std::to_string(i) + "]";
    if (!comp[i].is_array() || comp[i].size() != 3) throw ParseError(where + ": expected [left, right, result]");
    p.comp.push_back({string_at(comp[i][0], where), string_at(comp[i][1], where), string_at(comp[i][2], where)});
  }

  if (auto it = j.find("units"); it != j.end()) {
    if (!it->is_object()) throw ParseError(source + ": units: expected an object");
    for (const auto& [k, v] : it->items()) p.units[k] = string_at(v, source + ": units." + k);
  }
  return p;
}

std::string serialize_groupoid(const FiniteGroupoid& g) { return to_json(g.presentation()).dump(2) + "\n"; }

GroupoidPtr parse_groupoid(const std::string& text, const std::string& source) {
  const auto j = parse_json(text, source);
  return std::make_shared<const FiniteGroupoid>(FiniteGroupoid::from_presentation(presentation_from_json(j, source)));
}

GroupoidPtr load_groupoid(const std::filesystem::path& path) { return parse_groupoid(read_file(path), path.string()); }

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const auto stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
  }
}

Json load_json(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

GroupoidPtr resolve_groupoid(const Json& doc, const std::filesystem::path& file, const GroupoidPtr& expected) {
  const auto source = file.string();
  GroupoidPtr found;
  auto it = doc.is_object() ? doc.find("groupoid") : doc.end();
  if (it == doc.end()) {
    if (!expected) throw ParseError(source + ": missing field 'groupoid'");
    return expected;
  }
  if (it->is_object()) {
    found = std::make_shared<const FiniteGroupoid>(
        FiniteGroupoid::from_presentation(presentation_from_json(*it, source + ": groupoid")));
  } else {
    const auto ref = string_at(*it, source + ": groupoid");
    if (is_builtin_name(ref)) {
      found = builtin(ref);
    } else {
      auto path = std::filesystem::path(ref);
      if (path.is_relative()) path = file.parent_path() / path;
      found = load_groupoid(path);
    }
  }
  if (expected && !same_groupoid(found, expected)) {
    throw GroupoidMismatch(source + ": refers to a different groupoid than the one in use");
  }
  return found;
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError(where + ": expected a number or [re, im]");
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Vector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row_where = where + "[" + std::to_string(r) + "]";
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError(row_where + ": ragged row");
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], row_where + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

GFunction function_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source) {
  GFunction f(base);
  const auto& values = field(doc, "values", source);
  if (!values.is_object()) throw ParseError(source + ": values: expected an object");
  for (const auto& [id, v] : values.items()) {
    const auto where = source + ": values." + id;
    f.set(morphism_at(*base, id, where), complex_from_json(v, where));
  }
  return f;
}

Json to_json(const GFunction& f, const std::string& groupoid_ref) {
  Json values = Json::object();
  for (const auto& [m, v] : f.support()) values[f.groupoid().morphism_id(m)] = to_json(v);
  return {{"groupoid", groupoid_ref}, {"values", values}};
}

GKernel kernel_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source) {
  const auto& coeffs = field(doc, "coeffs", source);
  if (!coeffs.is_object()) throw ParseError(source + ": coeffs: expected an object");
  GKernel::Coefficients c;
  for (const auto& [obj, row] : coeffs.items()) {
    const auto where = source + ": coeffs." + obj;
    const auto a = object_at(*base, obj, where);
    if (!row.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [id, t] : row.items()) c[{a, morphism_at(*base, id, where + "." + id)}] = number_at(t, where + "." + id);
  }
  bool full = false;
  if (auto it = doc.find("full_support"); it != doc.end()) {
    if (!it->is_boolean()) throw ParseError(source + ": full_support: expected a boolean");
    full = it->get<bool>();
  }
  try {
    return GKernel(base, c, full);
  } catch (const InvalidArgument& e) {
    throw ParseError(source + ": " + e.what());
  }
}

ObjectMeasure measure_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source) {
  const auto& weights = field(doc, "weights", source);
  if (!weights.is_object()) throw ParseError(source + ": weights: expected an object");
  ObjectMeasure m{base, std::vector<double>(base->object_count(), 0.0)};
  for (const auto& [obj, w] : weights.items()) {
    const auto where = source + ": weights." + obj;
    m.weights[object_at(*base, obj, where)] = number_at(w, where);
  }
  return m;
}

ModularFunction modular_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source) {
  if (auto it = doc.find("potential"); it != doc.end()) {
    if (!it->is_object()) throw ParseError(source + ": potential: expected an object");
    std::vector<double> potential(base->object_count(), 0.0);
    for (const auto& [obj, v] : it->items()) {
      const auto where = source + ": potential." + obj;
      potential[object_at(*base, obj, where)] = number_at(v, where);
    }
    return make_haar_modular(base, potential);
  }
  const auto& values = field(doc, "values", source);
  if (!values.is_object()) throw ParseError(source + ": values: expected an object");
  ModularFunction delta{base, std::vector<double>(base->morphism_count(), 0.0)};
  std::vector<bool> seen(base->morphism_count(), false);
  for (const auto& [id, v] : values.items()) {
    const auto where = source + ": values." + id;
    const auto m = morphism_at(*base, id, where);
    delta.values[m] = number_at(v, where);
    seen[m] = true;
  }
  for (MorphismIndex m = 0; m < seen.size(); ++m) {
    if (!seen[m]) throw ParseError(source + ": values: missing morphism '" + base->morphism_id(m) + "'");
  }
  return delta;
}

Representation representation_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source) {
  const auto& g = *base;
  const auto& dims_json = field(doc, "dims", source);
  if (!dims_json.is_object()) throw ParseError(source + ": dims: expected an object");
  std::vector<Eigen::Index> dims(g.object_count(), -1);
  for (const auto& [obj, d] : dims_json.items()) {
    const auto where = source + ": dims." + obj;
    if (!d.is_number_integer()) throw ParseError(where + ": expected an integer");
    dims[object_at(g, obj, where)] = d.get<Eigen::Index>();
  }
  for (ObjectIndex a = 0; a < g.object_count(); ++a) {
    if (dims[a] < 0) throw ParseError(source + ": dims: missing object '" + g.object_id(a) + "'");
  }
  const auto& mats_json = field(doc, "mats", source);
  if (!mats_json.is_object()) throw ParseError(source + ": mats: expected an object");
  std::vector<std::optional<Matrix>> mats(g.morphism_count());
  for (const auto& [id, mj] : mats_json.items()) {
    const auto where = source + ": mats." + id;
    auto m = matrix_from_json(mj, where);
    const auto idx = morphism_at(g, id, where);
    // an empty list stands for a 0×0 block
    if (m.rows() == 0) m.resize(dims[g.rng(idx)], dims[g.src(idx)]);
    mats[idx] = std::move(m);
  }
  std::vector<Matrix> out;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (!mats[m]) throw ParseError(source + ": mats: missing morphism '" + g.morphism_id(m) + "'");
    out.push_back(std::move(*mats[m]));
  }
  try {
    return Representation(base, std::move(dims), std::move(out));
  } catch (const ShapeMismatch& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Json to_json(const Representation& rep, const std::string& groupoid_ref) {
  const auto& g = rep.groupoid();
  Json dims = Json::object();
  for (ObjectIndex a = 0; a < g.object_count(); ++a) dims[g.object_id(a)] = rep.dim(a);
  Json mats = Json::object();
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) mats[g.morphism_id(m)] = to_json(rep(m));
  return {{"groupoid", groupoid_ref}, {"dims", dims}, {"mats", mats}};
}

}  // namespace groupoidal::io
