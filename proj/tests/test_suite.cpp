#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mathieu/json_io.hpp"
#include "mathieu/suite.hpp"

using namespace mathieu;
using namespace mathieu::suite;

namespace {

Profile only(const std::string& check, Profile base = quick_profile()) {
  base.checks = {check};
  return base;
}

json claim(const std::string& algebra, json subspace, const std::string& theta, const std::string& what) {
  return json{{"algebra", algebra}, {"subspace", std::move(subspace)}, {"theta", theta}, {"claim", what}};
}

/// Trace-zero hyperplane of M_2(F_p).
json trace_zero_json() {
  return json{{"ambient", 4}, {"basis", json::array({{0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, -1}})}};
}

}  // namespace

TEST_CASE("empty profile gives an empty passing report") {
  const Report r = run_suite(empty_profile());
  CHECK(r.entries.empty());
  CHECK(r.passed());
  const json j = to_json(r);
  CHECK(j["passed"] == true);
  CHECK(j["entries"].empty());
}

TEST_CASE("quick profile passes every check") {
  const Report r = run_suite(quick_profile());
  for (const Entry& e : r.entries) {
    INFO(e.id << " [" << e.instance << "] expected " << e.expected << " computed " << e.computed);
    CHECK(e.pass);
    CHECK(e.witness.is_null());
  }
  for (const std::string& id : check_ids()) {
    if (id == "claims") continue;
    const bool present = std::any_of(r.entries.begin(), r.entries.end(), [&](const Entry& e) { return e.id == id; });
    INFO(id);
    CHECK(present);
  }
}

TEST_CASE("runs are deterministic up to timing") {
  Profile p = quick_profile();
  p.checks = {"max-submodule", "evaluation-subspaces", "integral-subspaces", "functoriality", "oracle-equivalence"};
  const std::string a = to_json(run_suite(p), false).dump();
  p.limits.threads = 3;
  const std::string b = to_json(run_suite(p), false).dump();
  p.limits.threads = 1;
  const std::string c = to_json(run_suite(p), false).dump();
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("codim-one profile over F_2, n = 2: no Mathieu hyperplane") {
  Profile p = profile_from_json(json{{"base", "empty"}, {"checks", {"codim-one-uniqueness"}}, {"primes", {2}}, {"sizes", {2}}});
  const Report r = run_suite(p);
  REQUIRE(r.entries.size() == 4);
  for (const Entry& e : r.entries) {
    CHECK(e.pass);
    CHECK(e.computed.rfind("0 Mathieu hyperplanes", 0) == 0);
  }
}

TEST_CASE("codim-one over F_3, n = 2: exactly the trace-zero hyperplane") {
  Profile p = only("codim-one-uniqueness");
  p.primes = {3};
  const Report r = run_suite(p);
  REQUIRE(r.entries.size() == 4);
  for (const Entry& e : r.entries) CHECK(e.computed == "1 Mathieu hyperplane: Tr = 0");
}

TEST_CASE("claims: one failure makes the report fail with a re-validating witness") {
  Profile p = empty_profile();
  p.checks = {"claims"};
  p.claims = {claim("matrix:2:3", trace_zero_json(), "two", "mathieu"),
              claim("matrix:2:3", trace_zero_json(), "left", "not-ideal"),
              claim("matrix:2:2", trace_zero_json(), "two", "mathieu"),
              claim("matrix:2:3", trace_zero_json(), "left", "ideal")};
  const Report r = run_suite(p);
  REQUIRE(r.entries.size() == 4);
  CHECK(r.entries[0].pass);
  CHECK(r.entries[1].pass);
  CHECK_FALSE(r.entries[2].pass);
  CHECK_FALSE(r.entries[3].pass);
  CHECK_FALSE(r.passed());
  CHECK(to_json(r)["passed"] == false);
  for (const Entry& e : r.entries) {
    if (e.pass) continue;
    REQUIRE_FALSE(e.witness.is_null());
    const WitnessCheck w = verify_witness(e.witness);
    INFO(w.message);
    CHECK(w.valid);
  }
}

TEST_CASE("verify_witness rejects witnesses that do not reproduce") {
  const Algebra m3 = matrix_algebra(2, Field::prime(3));
  const json honest{{"kind", "verdict"}, {"algebra", io::to_json(m3)}, {"subspace", trace_zero_json()},
                    {"theta", "left"}, {"property", "mathieu"}, {"formula", true}};
  CHECK_FALSE(verify_witness(honest).valid);
  json wrong = honest;
  wrong["formula"] = false;
  CHECK(verify_witness(wrong).valid);

  const json omega{{"kind", "omega"}, {"field", json::object({{"p", 3}})}, {"alpha", {1, 2}}, {"theta", "left"}};
  CHECK_FALSE(verify_witness(omega).valid);

  CHECK_THROWS_AS(verify_witness(json{{"kind", "bogus"}}), SchemaError);
  CHECK_THROWS_AS(verify_witness(json{{"kind", "verdict"}}), SchemaError);
}

TEST_CASE("membership witnesses re-run the colon space") {
  const AlgebraPtr a = std::make_shared<const Algebra>(matrix_algebra(2, Field::prime(2)));
  const ModulePtr k2 = standard_module(a, 2);
  const Field f = Field::prime(2);
  const Subspace line = Subspace::span(f, 2, {Vector::from_ints(f, {1, 0})});
  json w{{"kind", "membership"}, {"module", io::to_json(*k2)}, {"subspace", io::to_json(line)},
         {"theta", "left"},      {"set", "tau"},                {"element", {0, 1}},
         {"formula", false}};
  // tau(N) = 0 for a line N, so e2 is outside tau
  CHECK_FALSE(verify_witness(w).valid);
  w["formula"] = true;
  CHECK(verify_witness(w).valid);
}

TEST_CASE("profile JSON") {
  const Profile d = default_profile();
  const Profile back = profile_from_json(to_json(d));
  CHECK(to_json(back) == to_json(d));
  CHECK(profile_from_json(json{{"base", "quick"}}).name == "custom");
  CHECK(profile_from_json(json{{"checks", "all"}}).checks == check_ids());
  CHECK(profile_from_json(json{{"element_cap", 100}}).limits.element_cap == 100);
  CHECK_THROWS_AS(profile_from_json(json{{"colour", 1}}), SchemaError);
  CHECK_THROWS_AS(profile_from_json(json{{"checks", {"nope"}}}), SchemaError);
  CHECK_THROWS_AS(profile_from_json(json{{"primes", {4}}}), SchemaError);
  CHECK_THROWS_AS(profile_from_json(json{{"seed", -1}}), SchemaError);
  CHECK_THROWS_AS(profile_from_json(json::array()), SchemaError);
  CHECK_THROWS_AS(profile_from_json(json{{"claims", {{{"algebra", "matrix:2:2"}}}}}), SchemaError);
  CHECK_THROWS_AS(named_profile("huge"), SchemaError);
}

TEST_CASE("caps in the profile skip large instances") {
  Profile p = only("standard-module");
  p.limits.element_cap = 10;
  const Report r = run_suite(p);
  REQUIRE_FALSE(r.entries.empty());
  for (const Entry& e : r.entries) {
    CHECK(e.pass);
    CHECK(e.computed.rfind("skipped", 0) == 0);
  }
}

TEST_CASE("text report") {
  Profile p = only("division-algebras");
  const std::string text = to_text(run_suite(p));
  CHECK(text.find("PASS division-algebras [F_2 over itself]") != std::string::npos);
  CHECK(text.find("profile quick: 2/2 entries pass; PASS") != std::string::npos);
}
