#pragma once

// JSON encodings of fields, scalars, algebras, modules, subspaces,
// polynomials and witnesses. F_p values are integers, rationals are strings
// "num/den". Malformed input throws SchemaError; well-formed input that
// breaks an axiom throws AxiomViolation from the constructors.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mathieu/algebra.hpp"
#include "mathieu/mathieu.hpp"
#include "mathieu/module.hpp"
#include "mathieu/polyspaces.hpp"

namespace mathieu::io {

using json = nlohmann::json;

json to_json(Field field);
Field field_from_json(const json& j);

json to_json(const Scalar& s);
/// Integers are read in either field; strings "a", "-a", "a/b" too.
Scalar scalar_from_json(Field field, const json& j);

json to_json(const Vector& v);
Vector vector_from_json(Field field, const json& j, std::size_t expected_size);
std::vector<Scalar> scalars_from_json(Field field, const json& j);

/// Array of rows.
json to_json(const Matrix& m);
Matrix matrix_from_json(Field field, const json& j, std::size_t rows, std::size_t cols);

json to_json(const Algebra& a);
Algebra algebra_from_json(const json& j);

/// The algebra is written inline.
json to_json(const ModuleSpace& m);
/// "algebra" is an inline object or a path, relative to base_dir.
ModulePtr module_from_json(const json& j, const std::filesystem::path& base_dir = {});

json to_json(const Subspace& s);
Subspace subspace_from_json(Field field, const json& j);
/// Requires "ambient" to equal expected_ambient.
Subspace subspace_from_json(Field field, const json& j, std::size_t expected_ambient);

json to_json(const Poly& p);
Poly poly_from_json(Field field, const json& j);

/// {"field", "points", "alpha"}
json to_json(const EvalConfig& cfg);
EvalConfig eval_config_from_json(const json& j);
/// {"a", "b", "q"}; always over Q.
json to_json(const IntegralConfig& cfg);
IntegralConfig integral_config_from_json(const json& j);

json to_json(const MathieuWitness& w);
MathieuWitness mathieu_witness_from_json(Field field, const json& j, std::size_t dim);
json to_json(const IdealWitness& w);
IdealWitness ideal_witness_from_json(Field field, const json& j, std::size_t dim);

json to_json(const ElementSet& s);
json to_json(const StabilityVerdict& v);

/// Parses a file; parse errors become SchemaError naming the path.
json load_json(const std::filesystem::path& path);
json parse_json(const std::string& text);

Algebra load_algebra(const std::filesystem::path& path);
ModulePtr load_module(const std::filesystem::path& path);
/// The ambient dimension and field come from the module or algebra.
Subspace load_subspace(const std::filesystem::path& path, Field field, std::size_t ambient);

/// Builder names: "matrix", "product", "truncated", "upper". size is n, l,
/// k and n respectively.
Algebra build_algebra(const std::string& kind, std::size_t size, Field field);
/// Compact form "kind:size:field", e.g. "matrix:2:3", "product:3:Q".
Algebra build_algebra(const std::string& descriptor);
/// "p" or "Q".
Field parse_field(const std::string& text);

}  // namespace mathieu::io
