#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "groupoidal/algebra.hpp"
#include "groupoidal/kernels.hpp"
#include "groupoidal/representation.hpp"

namespace groupoidal::io {

using Json = nlohmann::json;

/// Malformed input. The message carries the source name and either a
/// line:column position or the path of the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A data file refers to a different groupoid than the one in use.
class GroupoidMismatch : public Error {
 public:
  using Error::Error;
};

/// quantum-ratchet, pair:<n>, group:<name> (Zn, ZaxZb, Sn, Dn),
/// action:<perm>,<period> with perm "<n>cycle" or a dot list such as
/// "1.2.0". Throws InvalidArgument for unknown names.
GroupoidPtr builtin(const std::string& name);
bool is_builtin_name(const std::string& name);

Json to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j, const std::string& source);
/// Canonical file text; parse_groupoid(serialize_groupoid(g)) == g.
std::string serialize_groupoid(const FiniteGroupoid& g);
/// Structural problems surface as StructuralError; validate() is separate.
GroupoidPtr parse_groupoid(const std::string& text, const std::string& source = "<string>");
GroupoidPtr load_groupoid(const std::filesystem::path& path);

/// Parses text as JSON, turning syntax errors into ParseError with a line
/// and column.
Json parse_json(const std::string& text, const std::string& source);
Json load_json(const std::filesystem::path& path);

/// Resolves the "groupoid" field of a data file: a builtin name, a path
/// relative to the file, or an inline presentation. When `expected` is set
/// the field may be omitted, and a differing groupoid raises
/// GroupoidMismatch.
GroupoidPtr resolve_groupoid(const Json& doc, const std::filesystem::path& file, const GroupoidPtr& expected);

Complex complex_from_json(const Json& j, const std::string& where);
Json to_json(Complex z);
Vector vector_from_json(const Json& j, const std::string& where);
Matrix matrix_from_json(const Json& j, const std::string& where);
Json to_json(const Matrix& m);

GFunction function_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source);
/// {"groupoid": ref, "values": {...}}; zero values are omitted.
Json to_json(const GFunction& f, const std::string& groupoid_ref);
GKernel kernel_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source);
ObjectMeasure measure_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source);
ModularFunction modular_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source);
Representation representation_from_json(const Json& doc, const GroupoidPtr& base, const std::string& source);
Json to_json(const Representation& rep, const std::string& groupoid_ref);

}  // namespace groupoidal::io
