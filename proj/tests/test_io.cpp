#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>

#include "mathieu/json_io.hpp"

using namespace mathieu;
using io::json;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field Q = Field::rationals();

/// (e_i e_j) e_k - e_i (e_j e_k) straight from raw structure constants,
/// entries mod p.
std::vector<long> associator(const json& s, std::size_t i, std::size_t j, std::size_t k, long p) {
  const std::size_t d = s.size();
  std::vector<long> out(d, 0);
  for (std::size_t m = 0; m < d; ++m) {
    const long ij = s[i][j][m].get<long>();
    const long jk = s[j][k][m].get<long>();
    for (std::size_t r = 0; r < d; ++r) {
      out[r] += ij * s[m][k][r].get<long>();
      out[r] -= jk * s[i][m][r].get<long>();
    }
  }
  for (long& x : out) x = ((x % p) + p) % p;
  return out;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("builder-emitted M_2(F_2) JSON round-trips") {
  const Algebra m2 = matrix_algebra(2, F2);
  const json j = io::to_json(m2);
  CHECK(j["field"] == json{{"p", 2}});
  CHECK(j["dim"] == 4);
  CHECK(j["unit"] == json({1, 0, 0, 1}));
  // E_12 * E_21 = E_11
  CHECK(j["structure"][1][2] == json({1, 0, 0, 0}));
  const Algebra back = io::algebra_from_json(j);
  CHECK(back == m2);
  CHECK(io::to_json(back).dump() == j.dump());
  CHECK(io::algebra_from_json(io::parse_json(j.dump())) == m2);
}

TEST_CASE("all builders round-trip over F_p and Q") {
  for (Field f : {F2, F3, Q}) {
    for (const char* kind : {"matrix", "product", "truncated", "upper"}) {
      const Algebra a = io::build_algebra(kind, 2, f);
      CHECK(io::algebra_from_json(io::to_json(a)) == a);
    }
  }
  CHECK(io::build_algebra("product:3:Q").dim() == 3);
  CHECK(io::build_algebra("matrix:2:5").field() == Field::prime(5));
  CHECK_THROWS_AS(io::build_algebra("matrix:2"), SchemaError);
  CHECK_THROWS_AS(io::build_algebra("cube:2:2"), SchemaError);
  CHECK_THROWS_AS(io::build_algebra("matrix:x:2"), SchemaError);
}

TEST_CASE("non-associative structure constants are rejected naming the triple") {
  json j = io::to_json(matrix_algebra(2, F2));
  // E_12 * E_12 := E_12 (was 0); the unit axiom still holds
  j["structure"][1][1] = json({0, 1, 0, 0});
  const std::string msg = message_of([&] { io::algebra_from_json(j); });
  CHECK_THROWS_AS(io::algebra_from_json(j), AxiomViolation);
  std::smatch m;
  REQUIRE(std::regex_search(msg, m, std::regex(R"(associativity fails for basis triple \((\d+), (\d+), (\d+)\))")));
  const std::size_t i = std::stoul(m[1]), jj = std::stoul(m[2]), k = std::stoul(m[3]);
  const std::vector<long> a = associator(j["structure"], i, jj, k, 2);
  CHECK(std::any_of(a.begin(), a.end(), [](long x) { return x != 0; }));
  // triples before it in loop order associate
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y)
      for (std::size_t z = 0; z < 4; ++z) {
        if (std::tuple(x, y, z) >= std::tuple(i, jj, k)) continue;
        const std::vector<long> b = associator(j["structure"], x, y, z, 2);
        CHECK(std::all_of(b.begin(), b.end(), [](long v) { return v == 0; }));
      }
}

TEST_CASE("unit axiom violations are named") {
  json j = io::to_json(product_algebra(2, F3));
  j["unit"] = json({1, 0});
  CHECK(message_of([&] { io::algebra_from_json(j); }).find("unit") != std::string::npos);
  CHECK_THROWS_AS(io::algebra_from_json(j), AxiomViolation);
}

TEST_CASE("schema errors") {
  const json good = io::to_json(product_algebra(2, F2));
  auto broken = [&](auto edit) {
    json j = good;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(io::algebra_from_json(broken([](json& j) { j.erase("unit"); })), SchemaError);
  CHECK_THROWS_AS(io::algebra_from_json(broken([](json& j) { j["dim"] = -1; })), SchemaError);
  CHECK_THROWS_AS(io::algebra_from_json(broken([](json& j) { j["dim"] = 3; })), SchemaError);
  CHECK_THROWS_AS(io::algebra_from_json(broken([](json& j) { j["field"] = json{{"p", 4}}; })), SchemaError);
  CHECK_THROWS_AS(io::algebra_from_json(broken([](json& j) { j["field"] = "R"; })), SchemaError);
  CHECK_THROWS_AS(io::algebra_from_json(broken([](json& j) { j["structure"][0][0] = json({1}); })), SchemaError);
  CHECK_THROWS_AS(io::algebra_from_json(broken([](json& j) { j["unit"] = json({"x", 1}); })), SchemaError);
  CHECK_THROWS_AS(io::parse_json("{"), SchemaError);
  CHECK_THROWS_AS(io::load_json("/nonexistent/algebra.json"), SchemaError);
  CHECK_THROWS_AS(io::subspace_from_json(F2, json{{"ambient", 2}, {"basis", {{1, 0, 1}}}}), SchemaError);
  CHECK_THROWS_AS(io::subspace_from_json(F2, json{{"ambient", 2}, {"basis", json::array()}}, 3), SchemaError);
  CHECK_THROWS_AS(io::scalar_from_json(Q, "1/0"), SchemaError);
  CHECK_THROWS_AS(io::parse_field("4"), SchemaError);
}

TEST_CASE("scalars") {
  CHECK(io::to_json(Scalar(F3, 5)) == 2);
  CHECK(io::to_json(Scalar(Q, mpq_class(-3, 6))) == "-1/2");
  CHECK(io::scalar_from_json(Q, "6/4") == Scalar(Q, mpq_class(3, 2)));
  CHECK(io::scalar_from_json(Q, 7) == Scalar(Q, 7));
  CHECK(io::scalar_from_json(F3, -1) == Scalar(F3, 2));
  CHECK(io::scalar_from_json(F3, "1/2") == Scalar(F3, 2));
}

TEST_CASE("modules, subspaces and files") {
  const AlgebraPtr m2 = std::make_shared<const Algebra>(matrix_algebra(2, F3));
  const ModulePtr k2 = standard_module(m2, 2);
  const json mj = io::to_json(*k2);
  const ModulePtr back = io::module_from_json(mj);
  CHECK(back->dim() == 2);
  CHECK(back->actions() == k2->actions());
  CHECK(back->algebra() == *m2);

  const Subspace s = Subspace::span(F3, 2, {Vector::from_ints(F3, {1, 2})});
  CHECK(io::subspace_from_json(F3, io::to_json(s), 2) == s);

  const auto dir = std::filesystem::temp_directory_path() / "mathieu_io_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "alg.json") << io::to_json(*m2).dump();
  json by_path = mj;
  by_path["algebra"] = "alg.json";
  std::ofstream(dir / "mod.json") << by_path.dump();
  std::ofstream(dir / "sub.json") << io::to_json(s).dump();
  const ModulePtr loaded = io::load_module(dir / "mod.json");
  CHECK(loaded->actions() == k2->actions());
  CHECK(io::load_algebra(dir / "alg.json") == *m2);
  CHECK(io::load_subspace(dir / "sub.json", F3, 2) == s);
  CHECK_THROWS_AS(io::load_subspace(dir / "sub.json", F3, 4), SchemaError);
  std::filesystem::remove_all(dir);

  json bad = mj;
  bad["actions"][0][0][0] = 2;  // e_11 no longer acts as an idempotent
  CHECK_THROWS_AS(io::module_from_json(bad), AxiomViolation);
}

TEST_CASE("polynomials and configs") {
  const json pj = json::parse(R"({"vars": 2, "terms": [{"exp": [2, 0], "coef": "1/3"}, {"exp": [0, 1], "coef": -2}]})");
  const Poly p = io::poly_from_json(Q, pj);
  CHECK(p.degree() == 2);
  CHECK(p.coefficient({2, 0}) == Scalar(Q, mpq_class(1, 3)));
  CHECK(io::poly_from_json(Q, io::to_json(p)).terms() == p.terms());
  CHECK_THROWS_AS(io::poly_from_json(Q, json::parse(R"({"vars": 1, "terms": [{"exp": [-1], "coef": 1}]})")), SchemaError);
  CHECK_THROWS_AS(io::poly_from_json(Q, json::parse(R"({"vars": 1, "terms": [{"exp": [1, 1], "coef": 1}]})")), SchemaError);

  const json cj = json::parse(R"({"field": "Q", "points": [["1/2"], [3]], "alpha": [1, -1]})");
  const EvalConfig cfg = io::eval_config_from_json(cj);
  CHECK(cfg.vars() == 1);
  CHECK(io::to_json(cfg) == io::to_json(io::eval_config_from_json(io::to_json(cfg))));
  CHECK_THROWS_AS(io::eval_config_from_json(json::parse(R"({"field": "Q", "points": [[1], [1]], "alpha": [1, 1]})")),
                  SchemaError);

  const json ij = json::parse(R"({"a": 0, "b": 1, "q": {"vars": 1, "terms": [{"exp": [1], "coef": 1}]}})");
  const IntegralConfig icfg = io::integral_config_from_json(ij);
  CHECK(icfg.b == Scalar(Q, 1));
}

TEST_CASE("witnesses round-trip") {
  const MathieuWitness w{Vector::from_ints(F2, {1, 0, 0, 1}), 1, Vector::from_ints(F2, {1, 0, 0, 0}), std::nullopt};
  const MathieuWitness back = io::mathieu_witness_from_json(F2, io::to_json(w), 4);
  CHECK(back.a == w.a);
  CHECK(back.exponent == 1);
  CHECK(back.left == w.left);
  CHECK_FALSE(back.right.has_value());
  const IdealWitness iw{Vector::from_ints(F2, {0, 1, 0, 0}), Vector::from_ints(F2, {0, 0, 1, 0}), false};
  const IdealWitness iback = io::ideal_witness_from_json(F2, io::to_json(iw), 4);
  CHECK(iback.element == iw.element);
  CHECK(iback.multiplier == iw.multiplier);
  CHECK_FALSE(iback.on_left);
}
