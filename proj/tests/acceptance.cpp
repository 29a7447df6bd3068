// Acceptance run: the default profile on one thread, one line per criterion.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "mathieu/suite.hpp"

using namespace mathieu::suite;

namespace {

struct Criterion {
  int number;
  std::string check;
  std::string title;
  double seconds;  // time bound
  std::vector<std::string> instances;  // substrings that must occur among the instances
  std::function<std::string(const std::vector<const Entry*>&)> extra;  // empty string = ok
};

/// "a/b ..." at the start of a computed field.
std::pair<long, long> leading_ratio(const std::string& s) {
  long a = 0, b = 0;
  if (std::sscanf(s.c_str(), "%ld/%ld", &a, &b) != 2) return {-1, -1};
  return {a, b};
}

std::string require_total(const std::vector<const Entry*>& entries, long want) {
  long total = 0;
  for (const Entry* e : entries) total += leading_ratio(e->computed).second;
  return total == want ? "" : "sampled " + std::to_string(total) + ", want " + std::to_string(want);
}

}  // namespace

int main() {
  Profile profile = default_profile();
  profile.limits.threads = 1;

  const std::vector<Criterion> criteria = {
      {1, "oracle-equivalence", "brute force = idempotent criterion", 300,
       {"F_2+F_2, all", "F_2[x]/(x^2), all", "F_3[x]/(x^2), all", "UT_2(F_2), all", "M_2(F_2),", "M_2(F_3),"},
       {}},
      {2, "standard-module", "sigma, tau of K^n over M_n(F_p)", 600,
       {"K^2 over M_2(F_2)", "K^2 over M_2(F_3)", "K^3 over M_3(F_2)", "K^3 over M_3(F_3)"},
       {}},
      {3, "trace-hyperplanes", "sigma, tau of H_X", 900, {"M_2(F_5), theta", "M_2(F_2), theta"}, {}},
      {4, "max-submodule", "I_N = N cap sigma = N cap tau", 300, {"over M_2(F_2)", "over M_2(F_3)"},
       [](const std::vector<const Entry*>& es) { return require_total(es, 1000); }},
      {5, "quasi-stable-classification", "quasi-stable classification", 300,
       {"[F_2+F_2]", "[F_2[x]/(x^2)]", "[F_2[x]/(x^3)]", "[F_3[x]/(x^2)]", "[M_2(F_2)]", "[UT_2(F_2)]"},
       {}},
      {6, "stable-classification", "stable classification", 60,
       {"[F_2]", "[F_3]", "[F_2+F_2]", "[F_3+F_3]", "[F_2[x]/(x^2)]"},
       {}},
      {7, "product-reduction", "weight hyperplanes vs Omega", 300, {"l = 2, F_3", "l = 2, F_5", "l = 3, F_3"}, {}},
      {8, "evaluation-subspaces", "N_{B,alpha} identities", 120, {"200 random rational configs, 50 g each"}, {}},
      {9, "integral-subspaces", "N_q battery", 60, {"100 random rational samples"}, {}},
      {10, "functoriality", "pullbacks, quotients, surjections", 300,
       {"100 random homomorphisms", "100 random (M, N, V)", "A -> A/I"},
       {}},
      {11, "division-algebras", "F_p over itself", 60, {"[F_2 ", "[F_3 ", "[F_5 ", "[F_7 "}, {}},
  };

  const auto start = std::chrono::steady_clock::now();
  const Report report = run_suite(profile);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::map<std::string, std::vector<const Entry*>> by_check;
  for (const Entry& e : report.entries) by_check[e.id].push_back(&e);

  bool all = true;
  for (const Criterion& c : criteria) {
    const std::vector<const Entry*>& es = by_check[c.check];
    double ms = 0;
    std::size_t passed = 0;
    std::string problem;
    for (const Entry* e : es) {
      ms += e->ms;
      if (e->pass) ++passed;
      if (!e->pass && e->witness.is_null()) problem = "failing entry without witness";
      if (!e->pass && !e->witness.is_null() && !verify_witness(e->witness).valid) problem = "witness does not reproduce";
    }
    for (const std::string& want : c.instances) {
      const bool found = std::any_of(es.begin(), es.end(), [&](const Entry* e) {
        return ("[" + e->instance + "]").find(want) != std::string::npos;
      });
      const bool skipped = std::any_of(es.begin(), es.end(), [&](const Entry* e) {
        return ("[" + e->instance + "]").find(want) != std::string::npos && e->computed.rfind("skipped", 0) == 0;
      });
      if (!found) problem = "missing instance " + want;
      if (skipped) problem = "skipped instance " + want;
    }
    if (problem.empty() && c.extra) problem = c.extra(es);
    const double seconds = ms / 1000;
    const bool ok = !es.empty() && passed == es.size() && problem.empty() && seconds <= c.seconds;
    all = all && ok;
    std::printf("criterion %d: %s  %s; %zu/%zu entries pass; %.2f s (bound %.0f s)%s%s\n", c.number,
                ok ? "PASS" : "FAIL", c.title.c_str(), passed, es.size(), seconds, c.seconds,
                problem.empty() ? "" : "; ", problem.c_str());
  }
  const bool full_ok = report.passed() && total <= 1800;
  all = all && full_ok;
  std::printf("full suite: %s  %zu entries; %.2f s on one thread (bound 1800 s)\n", full_ok ? "PASS" : "FAIL",
              report.entries.size(), total);
  return all ? 0 : 1;
}
