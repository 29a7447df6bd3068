#pragma once

// The verification battery: each check instantiates a statement about
// sigma, tau, Mathieu subspaces or the polynomial subspaces on concrete
// finite (or sampled rational) instances and compares against the closed
// formula. Failing entries carry a JSON witness for verify_witness.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mathieu/exactfield.hpp"

namespace mathieu::suite {

using json = nlohmann::json;

struct ProductCase {
  std::size_t l = 0;
  std::uint32_t p = 0;
};

struct Profile {
  std::string name = "custom";
  /// Check ids in run order.
  std::vector<std::string> checks;
  /// Primes and matrix sizes for the M_n(F_p) families.
  std::vector<std::uint32_t> primes;
  std::vector<std::size_t> sizes;
  Limits limits;
  std::uint64_t seed = 1;

  // oracle-equivalence; algebras in "kind:size:field" form
  std::vector<std::string> oracle_exhaustive;
  std::vector<std::string> oracle_sampled;
  std::size_t oracle_samples = 500;
  // trace-hyperplanes: largest |M_n(F_p)| swept (|A|^2 colon spaces)
  std::uint64_t trace_cap = 1000;
  // max-submodule and functoriality zoo
  std::vector<std::uint32_t> zoo_primes;
  std::size_t max_submodule_pairs = 1000;
  // classification
  std::vector<std::string> quasi_stable_true;
  std::vector<std::string> quasi_stable_false;
  std::vector<std::string> stable_true;
  std::vector<std::string> stable_false;
  // product-reduction
  std::vector<ProductCase> product_cases;
  std::size_t product_polys = 10;
  // evaluation-subspaces
  std::size_t evaluation_configs = 200;
  std::size_t evaluation_samples = 50;
  std::size_t evaluation_points = 4;
  std::size_t evaluation_degree = 8;
  // integral-subspaces
  std::size_t integral_samples = 100;
  std::size_t integral_degree = 6;
  // functoriality
  std::size_t hom_samples = 100;
  // division-algebras
  std::vector<std::uint32_t> division_primes;
  /// User assertions {"algebra", "subspace", "theta", "claim"}; claim is one
  /// of "mathieu", "not-mathieu", "ideal", "not-ideal".
  std::vector<json> claims;
};

const std::vector<std::string>& check_ids();

/// The acceptance battery.
Profile default_profile();
/// Small instances of every check; seconds.
Profile quick_profile();
/// No checks.
Profile empty_profile();
/// "default", "quick" or "empty".
Profile named_profile(const std::string& name);
/// Keys override the profile named by "base" (default "default"). "checks"
/// is a list of ids or "all". Unknown keys or ids throw SchemaError.
Profile profile_from_json(const json& j);
json to_json(const Profile& p);

struct Entry {
  std::string id;
  /// Formula under test.
  std::string statement;
  std::string instance;
  std::string expected;
  std::string computed;
  bool pass = true;
  double ms = 0;
  /// Null on pass.
  json witness;
};

struct Report {
  std::string profile;
  std::vector<Entry> entries;

  bool passed() const;
};

/// Entries come out in check order, then instance order, independent of
/// scheduling.
Report run_suite(const Profile& profile);

/// timing=false drops the ms fields so that runs compare byte for byte.
json to_json(const Report& report, bool timing = true);
std::string to_text(const Report& report);

struct WitnessCheck {
  /// The recorded failure was reproduced.
  bool valid = false;
  std::string message;
};

/// Re-runs the failure recorded in a witness by an independent route.
WitnessCheck verify_witness(const json& witness, const Limits& limits = {});

}  // namespace mathieu::suite
