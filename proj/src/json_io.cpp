#include "mathieu/json_io.hpp"

#include <fstream>
#include <sstream>

namespace mathieu::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw SchemaError(what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing key '") + key + "'");
  return *it;
}

std::size_t size_value(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    schema(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

const json& array_of(const json& j, std::size_t n, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array");
  if (j.size() != n) {
    schema(std::string(what) + " has length " + std::to_string(j.size()) + ", expected " + std::to_string(n));
  }
  return j;
}

}  // namespace

json to_json(Field field) {
  if (field.is_rational()) return "Q";
  return json{{"p", field.characteristic()}};
}

Field field_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Q") return Field::rationals();
    schema("field string must be \"Q\"");
  }
  const json& p = member(j, "p");
  if (!p.is_number_integer() || p.get<std::int64_t>() <= 0 || p.get<std::int64_t>() > UINT32_MAX)
    schema("field characteristic must be a positive integer");
  try {
    return Field::prime(static_cast<std::uint32_t>(p.get<std::int64_t>()));
  } catch (const InvalidArgument& e) {
    schema(e.what());
  }
}

json to_json(const Scalar& s) {
  if (s.field().is_prime()) return s.residue();
  return s.to_string();
}

Scalar scalar_from_json(Field field, const json& j) {
  try {
    if (j.is_number_integer()) return Scalar(field, j.get<std::int64_t>());
    if (j.is_string()) return Scalar::parse(field, j.get<std::string>());
  } catch (const InvalidArgument& e) {
    schema(e.what());
  }
  schema("scalar must be an integer or a \"num/den\" string, got " + j.dump());
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const Scalar& s : v) out.push_back(to_json(s));
  return out;
}

std::vector<Scalar> scalars_from_json(Field field, const json& j) {
  if (!j.is_array()) schema("expected an array of scalars");
  std::vector<Scalar> out;
  out.reserve(j.size());
  for (const json& x : j) out.push_back(scalar_from_json(field, x));
  return out;
}

Vector vector_from_json(Field field, const json& j, std::size_t expected_size) {
  array_of(j, expected_size, "vector");
  return Vector(field, scalars_from_json(field, j));
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Matrix matrix_from_json(Field field, const json& j, std::size_t rows, std::size_t cols) {
  array_of(j, rows, "matrix");
  std::vector<Vector> rs;
  for (const json& r : j) rs.push_back(vector_from_json(field, r, cols));
  return Matrix::from_rows(field, cols, rs);
}

json to_json(const Algebra& a) {
  json structure = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < a.dim(); ++k) row.push_back(to_json(a.basis_product(i, k)));
    structure.push_back(row);
  }
  return json{{"field", to_json(a.field())}, {"dim", a.dim()}, {"unit", to_json(a.unit())}, {"structure", structure}};
}

Algebra algebra_from_json(const json& j) {
  const Field field = field_from_json(member(j, "field"));
  const std::size_t dim = size_value(member(j, "dim"), "dim");
  if (dim == 0) schema("algebra dimension must be positive");
  const Vector unit = vector_from_json(field, member(j, "unit"), dim);
  const json& s = array_of(member(j, "structure"), dim, "structure");
  Algebra::Structure structure(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    array_of(s[i], dim, "structure row");
    for (std::size_t k = 0; k < dim; ++k) structure[i].push_back(vector_from_json(field, s[i][k], dim));
  }
  return Algebra(field, dim, std::move(structure), unit);
}

json to_json(const ModuleSpace& m) {
  json actions = json::array();
  for (const Matrix& a : m.actions()) actions.push_back(to_json(a));
  return json{{"algebra", to_json(m.algebra())}, {"dim", m.dim()}, {"actions", actions}};
}

ModulePtr module_from_json(const json& j, const std::filesystem::path& base_dir) {
  const json& a = member(j, "algebra");
  AlgebraPtr algebra;
  if (a.is_string()) {
    std::filesystem::path p = a.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    algebra = std::make_shared<const Algebra>(load_algebra(p));
  } else {
    algebra = std::make_shared<const Algebra>(algebra_from_json(a));
  }
  const std::size_t dim = size_value(member(j, "dim"), "dim");
  const json& acts = array_of(member(j, "actions"), algebra->dim(), "actions");
  std::vector<Matrix> actions;
  for (const json& m : acts) actions.push_back(matrix_from_json(algebra->field(), m, dim, dim));
  return std::make_shared<const ModuleSpace>(algebra, dim, std::move(actions));
}

json to_json(const Subspace& s) {
  json basis = json::array();
  for (const Vector& v : s.basis()) basis.push_back(to_json(v));
  return json{{"ambient", s.ambient_dim()}, {"basis", basis}};
}

Subspace subspace_from_json(Field field, const json& j) {
  const std::size_t ambient = size_value(member(j, "ambient"), "ambient");
  const json& b = member(j, "basis");
  if (!b.is_array()) schema("basis must be an array");
  std::vector<Vector> vs;
  for (const json& v : b) vs.push_back(vector_from_json(field, v, ambient));
  return Subspace::span(field, ambient, vs);
}

Subspace subspace_from_json(Field field, const json& j, std::size_t expected_ambient) {
  Subspace s = subspace_from_json(field, j);
  if (s.ambient_dim() != expected_ambient) {
    schema("subspace ambient dimension " + std::to_string(s.ambient_dim()) + " does not match " +
           std::to_string(expected_ambient));
  }
  return s;
}

json to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [exp, c] : p.terms()) {
    terms.push_back(json{{"exp", exp}, {"coef", c.field().is_prime() ? json(c.residue()) : json(c.to_string())}});
  }
  return json{{"vars", p.vars()}, {"terms", terms}};
}

Poly poly_from_json(Field field, const json& j) {
  const std::size_t vars = size_value(member(j, "vars"), "vars");
  const json& terms = member(j, "terms");
  if (!terms.is_array()) schema("terms must be an array");
  Poly out = Poly::constant(field, vars, Scalar::zero(field));
  for (const json& t : terms) {
    const json& e = array_of(member(t, "exp"), vars, "exp");
    Poly::Exponent exp;
    for (const json& x : e) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0) schema("exponents must be non-negative integers");
      exp.push_back(x.get<std::uint32_t>());
    }
    out += Poly::monomial(field, exp, scalar_from_json(field, member(t, "coef")));
  }
  return out;
}

json to_json(const EvalConfig& cfg) {
  json pts = json::array();
  for (const auto& u : cfg.points) pts.push_back(to_json(Vector(cfg.field(), u)));
  return json{{"field", to_json(cfg.field())}, {"points", pts}, {"alpha", to_json(Vector(cfg.field(), cfg.alpha))}};
}

EvalConfig eval_config_from_json(const json& j) {
  const Field field = field_from_json(member(j, "field"));
  EvalConfig cfg;
  const json& pts = member(j, "points");
  if (!pts.is_array()) schema("points must be an array");
  for (const json& u : pts) cfg.points.push_back(scalars_from_json(field, u));
  cfg.alpha = scalars_from_json(field, member(j, "alpha"));
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    schema(e.what());
  }
  return cfg;
}

json to_json(const IntegralConfig& cfg) {
  return json{{"a", to_json(cfg.a)}, {"b", to_json(cfg.b)}, {"q", to_json(cfg.q)}};
}

IntegralConfig integral_config_from_json(const json& j) {
  const Field q = Field::rationals();
  IntegralConfig cfg{scalar_from_json(q, member(j, "a")), scalar_from_json(q, member(j, "b")),
                     poly_from_json(q, member(j, "q"))};
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    schema(e.what());
  }
  return cfg;
}

json to_json(const MathieuWitness& w) {
  json out{{"a", to_json(w.a)}, {"exponent", w.exponent}};
  if (w.left) out["left"] = to_json(*w.left);
  if (w.right) out["right"] = to_json(*w.right);
  return out;
}

MathieuWitness mathieu_witness_from_json(Field field, const json& j, std::size_t dim) {
  MathieuWitness w;
  w.a = vector_from_json(field, member(j, "a"), dim);
  w.exponent = size_value(member(j, "exponent"), "exponent");
  if (j.contains("left")) w.left = vector_from_json(field, j["left"], dim);
  if (j.contains("right")) w.right = vector_from_json(field, j["right"], dim);
  return w;
}

json to_json(const IdealWitness& w) {
  return json{{"element", to_json(w.element)}, {"multiplier", to_json(w.multiplier)},
              {"side", w.on_left ? "left" : "right"}};
}

IdealWitness ideal_witness_from_json(Field field, const json& j, std::size_t dim) {
  IdealWitness w;
  w.element = vector_from_json(field, member(j, "element"), dim);
  w.multiplier = vector_from_json(field, member(j, "multiplier"), dim);
  const json& side = member(j, "side");
  if (side != "left" && side != "right") schema("side must be \"left\" or \"right\"");
  w.on_left = side == "left";
  return w;
}

json to_json(const ElementSet& s) {
  json out = json::array();
  for (const Vector& v : s.members()) out.push_back(to_json(v));
  return out;
}

json to_json(const StabilityVerdict& v) {
  json out{{"holds", v.holds}};
  if (v.subspace) out["subspace"] = to_json(*v.subspace);
  if (v.element) out["element"] = to_json(*v.element);
  if (v.mathieu_witness) out["mathieu_witness"] = to_json(*v.mathieu_witness);
  if (v.ideal_witness) out["ideal_witness"] = to_json(*v.ideal_witness);
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    schema(path.string() + ": invalid JSON: " + e.what());
  }
}

Algebra load_algebra(const std::filesystem::path& path) { return algebra_from_json(load_json(path)); }

ModulePtr load_module(const std::filesystem::path& path) {
  return module_from_json(load_json(path), path.parent_path());
}

Subspace load_subspace(const std::filesystem::path& path, Field field, std::size_t ambient) {
  return subspace_from_json(field, load_json(path), ambient);
}

Field parse_field(const std::string& text) {
  if (text == "Q") return Field::rationals();
  try {
    std::size_t used = 0;
    const unsigned long p = std::stoul(text, &used);
    if (used == text.size() && p <= UINT32_MAX) return Field::prime(static_cast<std::uint32_t>(p));
  } catch (const std::logic_error&) {
  } catch (const InvalidArgument& e) {
    schema(e.what());
  }
  schema("field must be a prime or Q, got '" + text + "'");
}

Algebra build_algebra(const std::string& kind, std::size_t size, Field field) {
  if (size == 0) schema("builder size must be positive");
  if (kind == "matrix") return matrix_algebra(size, field);
  if (kind == "product") return product_algebra(size, field);
  if (kind == "truncated") return truncated_poly(size, field);
  if (kind == "upper") return upper_triangular(size, field);
  schema("unknown algebra builder '" + kind + "'");
}

Algebra build_algebra(const std::string& descriptor) {
  const auto a = descriptor.find(':');
  const auto b = a == std::string::npos ? a : descriptor.find(':', a + 1);
  if (b == std::string::npos) schema("algebra descriptor must look like kind:size:field, got '" + descriptor + "'");
  std::size_t size = 0;
  try {
    size = std::stoul(descriptor.substr(a + 1, b - a - 1));
  } catch (const std::logic_error&) {
    schema("bad size in algebra descriptor '" + descriptor + "'");
  }
  return build_algebra(descriptor.substr(0, a), size, parse_field(descriptor.substr(b + 1)));
}

}  // namespace mathieu::io
