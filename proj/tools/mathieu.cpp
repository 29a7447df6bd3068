// Command-line front end: builders, deciders, polynomial predicates and the
// verification suite. Exit codes: 0 pass, 1 check failure, 2 usage or schema
// error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mathieu/error.hpp"
#include "mathieu/json_io.hpp"
#include "mathieu/mathieu.hpp"
#include "mathieu/polyspaces.hpp"
#include "mathieu/suite.hpp"

namespace io = mathieu::io;
namespace suite = mathieu::suite;
using json = nlohmann::json;
using namespace mathieu;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string field;
  std::string theta = "left";
  std::optional<std::uint64_t> cap;
  std::string format = "json";
  unsigned threads = 0;
};

/// A path, or inline JSON when the argument starts with '{' or '['.
json read_arg(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return io::parse_json(buf.str());
  }
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return io::parse_json(arg);
  return io::load_json(arg);
}

std::filesystem::path base_of(const std::string& arg) {
  if (arg.empty() || arg == "-" || arg[0] == '{' || arg[0] == '[') return {};
  return std::filesystem::path(arg).parent_path();
}

Limits limits_of(const Globals& g) {
  Limits l;
  if (g.cap) {
    l.element_cap = *g.cap;
    l.subspace_cap = *g.cap;
  }
  l.threads = g.threads;
  return l;
}

void check_field(const Globals& g, Field actual) {
  if (!g.field.empty() && io::parse_field(g.field) != actual)
    throw SchemaError("--field " + g.field + " does not match the input field " + actual.name());
}

void print_text(const json& j, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      std::cout << indent << key << ":\n";
      print_text(value, indent + "  ");
    } else {
      std::cout << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

void emit(const Globals& g, const json& j) {
  if (g.format == "text") {
    print_text(j);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

struct AlgebraInput {
  std::string algebra;
  std::string module;
  std::string subspace;
};

/// The module given by --module, or the regular module of --algebra.
ModulePtr module_input(const Globals& g, const AlgebraInput& in) {
  ModulePtr m;
  if (!in.module.empty()) {
    m = io::module_from_json(read_arg(in.module), base_of(in.module));
  } else if (!in.algebra.empty()) {
    m = regular_module(std::make_shared<const Algebra>(io::algebra_from_json(read_arg(in.algebra))));
  } else {
    throw CLI::ValidationError("--module or --algebra", "one of them is required");
  }
  check_field(g, m->field());
  return m;
}

Algebra algebra_input(const Globals& g, const std::string& path) {
  Algebra a = io::algebra_from_json(read_arg(path));
  check_field(g, a.field());
  return a;
}

json witness_json(const MathieuVerdict& v) { return v.witness ? io::to_json(*v.witness) : json(nullptr); }

// ------------------------------------------------------------ verbs

int run_gen(const Globals& g, const std::string& kind, std::size_t size, const std::string& module) {
  const Field f = io::parse_field(g.field.empty() ? "2" : g.field);
  const AlgebraPtr a = std::make_shared<const Algebra>(io::build_algebra(kind, size, f));
  if (module.empty()) {
    emit(g, io::to_json(*a));
  } else if (module == "regular") {
    emit(g, io::to_json(*regular_module(a)));
  } else if (module == "right-regular") {
    emit(g, io::to_json(*right_regular_module(a)));
  } else if (module == "standard") {
    if (kind == "matrix") {
      emit(g, io::to_json(*standard_module(a, size)));
    } else if (kind == "upper") {
      emit(g, io::to_json(*triangular_standard_module(a, size)));
    } else {
      throw SchemaError("standard module needs a matrix or upper triangular algebra");
    }
  } else {
    throw SchemaError("unknown module kind '" + module + "'");
  }
  return kPass;
}

int run_is_mathieu(const Globals& g, const AlgebraInput& in, bool brute) {
  const Algebra a = algebra_input(g, in.algebra);
  const Subspace j = io::subspace_from_json(a.field(), read_arg(in.subspace), a.dim());
  const Theta t = parse_theta(g.theta);
  const MathieuVerdict v = brute ? is_theta_mathieu_bruteforce(a, j, t, limits_of(g))
                                 : is_theta_mathieu_idempotent(a, j, t, limits_of(g));
  json out{{"result", v.is_mathieu}, {"theta", std::string(to_string(t))}};
  if (v.witness) out["witness"] = witness_json(v);
  emit(g, out);
  return kPass;
}

int run_is_ideal(const Globals& g, const AlgebraInput& in) {
  const Algebra a = algebra_input(g, in.algebra);
  const Subspace j = io::subspace_from_json(a.field(), read_arg(in.subspace), a.dim());
  const Theta t = parse_theta(g.theta);
  const auto w = ideal_violation(a, j, t);
  json out{{"result", !w.has_value()}, {"theta", std::string(to_string(t))}};
  if (w) out["witness"] = io::to_json(*w);
  emit(g, out);
  return kPass;
}

int run_stable_set(const Globals& g, const AlgebraInput& in, bool stable, const std::string& element) {
  const ModulePtr m = module_input(g, in);
  const Subspace n = io::subspace_from_json(m->field(), read_arg(in.subspace), m->dim());
  const Theta t = parse_theta(g.theta);
  const StableSets sets(m, limits_of(g));
  json out{{"theta", std::string(to_string(t))}};
  if (t == Theta::pre_two_sided && stable) out["note"] = "sigma for pre-two-sided uses two-sided ideals";
  if (!element.empty()) {
    const Vector u = io::vector_from_json(m->field(), read_arg(element), m->dim());
    const bool member = stable ? sets.in_sigma(n, u, t) : sets.in_tau(n, u, t);
    out["result"] = member;
    const Subspace colon_space = colon(*m, n, u);
    out["colon"] = io::to_json(colon_space);
    if (!member) {
      if (stable) {
        if (auto w = ideal_violation(m->algebra(), colon_space, t)) out["witness"] = io::to_json(*w);
      } else {
        out["witness"] = witness_json(sets.mathieu(colon_space, t));
      }
    }
  } else {
    const ElementSet s = stable ? sets.sigma(n, t) : sets.tau(n, t);
    out["result"] = s.size();
    out["set"] = io::to_json(s);
  }
  emit(g, out);
  return kPass;
}

int run_max_submodule(const Globals& g, const AlgebraInput& in) {
  const ModulePtr m = module_input(g, in);
  const Subspace n = io::subspace_from_json(m->field(), read_arg(in.subspace), m->dim());
  const Subspace in_n = max_submodule(*m, n);
  emit(g, json{{"result", in_n.dim()}, {"set", io::to_json(in_n)}});
  return kPass;
}

int run_radical(const Globals& g, const AlgebraInput& in) {
  const Algebra a = algebra_input(g, in.algebra);
  const Subspace j = io::subspace_from_json(a.field(), read_arg(in.subspace), a.dim());
  const std::vector<Vector> r = radical_of_subspace(a, j, limits_of(g));
  json set = json::array();
  for (const Vector& v : r) set.push_back(io::to_json(v));
  emit(g, json{{"result", r.size()}, {"set", set}});
  return kPass;
}

int run_quasi_stable(const Globals& g, const AlgebraInput& in, bool stable_only) {
  const Theta t = parse_theta(g.theta);
  const Limits limits = limits_of(g);
  json out{{"theta", std::string(to_string(t))}, {"property", stable_only ? "stable" : "quasi-stable"}};
  StabilityVerdict v;
  if (!in.module.empty()) {
    const ModulePtr m = module_input(g, in);
    v = stable_only ? stable_module(m, t, limits) : quasi_stable_module(m, t, limits);
  } else {
    const Algebra a = algebra_input(g, in.algebra);
    v = stable_only ? stable_algebra(a, t, limits) : quasi_stable_algebra(a, t, limits);
    out["classification"] = stable_only ? classified_stable(a, limits) : classified_quasi_stable(a, limits);
  }
  out["result"] = v.holds;
  if (!v.holds) out["witness"] = io::to_json(v);
  emit(g, out);
  return kPass;
}

int run_omega(const Globals& g, const std::string& alpha_arg) {
  const Field f = io::parse_field(g.field.empty() ? "Q" : g.field);
  const std::vector<Scalar> alpha = io::scalars_from_json(f, read_arg(alpha_arg));
  const Limits limits = limits_of(g);
  json out{{"result", omega_member(alpha, limits.support_cap)}};
  const std::vector<std::size_t> s = support(alpha);
  out["support"] = s;
  if (const auto bad = omega_violation(alpha, limits.support_cap)) out["witness"] = *bad;
  emit(g, out);
  return kPass;
}

int run_nba(const Globals& g, const std::string& what, const std::string& config, const std::string& poly) {
  const EvalConfig cfg = io::eval_config_from_json(read_arg(config));
  check_field(g, cfg.field());
  const Poly f = io::poly_from_json(cfg.field(), read_arg(poly));
  json out;
  if (what == "member") {
    out["result"] = nba_member(f, cfg);
  } else if (what == "sigma") {
    out["result"] = nba_sigma_member(f, cfg);
  } else {
    out["result"] = nba_tau_member(f, cfg, limits_of(g).support_cap);
  }
  json af = json::array();
  for (const Scalar& s : alpha_f_B(f, cfg)) af.push_back(io::to_json(s));
  out["alpha_f"] = af;
  emit(g, out);
  return kPass;
}

int run_nq(const Globals& g, const std::string& what, const std::string& config, const std::string& poly) {
  const IntegralConfig cfg = io::integral_config_from_json(read_arg(config));
  check_field(g, Field::rationals());
  const Poly h = io::poly_from_json(Field::rationals(), read_arg(poly));
  json out;
  if (what == "member") {
    out["result"] = nq_member(h, cfg);
  } else if (what == "sigma") {
    out["result"] = nq_sigma_member(h, cfg);
  } else {
    out["result"] = nq_tau_member(h, cfg);
  }
  out["integral"] = io::to_json(exact_integral(h, cfg));
  emit(g, out);
  return kPass;
}

int run_integral(const Globals& g, const std::string& config, const std::string& poly) {
  const IntegralConfig cfg = io::integral_config_from_json(read_arg(config));
  check_field(g, Field::rationals());
  const Poly f = io::poly_from_json(Field::rationals(), read_arg(poly));
  emit(g, json{{"result", exact_integral(f, cfg).to_string()}});
  return kPass;
}

int run_verify_paper(const Globals& g, const std::string& profile_arg, const std::string& output, bool no_timing) {
  suite::Profile p;
  if (profile_arg == "default" || profile_arg == "quick" || profile_arg == "empty") {
    p = suite::named_profile(profile_arg);
  } else {
    p = suite::profile_from_json(read_arg(profile_arg));
  }
  if (g.cap) p.limits.element_cap = *g.cap;
  if (g.threads) p.limits.threads = g.threads;
  const suite::Report report = suite::run_suite(p);
  const std::string text = g.format == "text" ? suite::to_text(report) : suite::to_json(report, !no_timing).dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw SchemaError("cannot write " + output);
    out << text;
    std::cout << "profile " << report.profile << ": " << (report.passed() ? "PASS" : "FAIL") << "\n";
  }
  return report.passed() ? kPass : kFail;
}

int run_verify_witness(const Globals& g, const std::string& arg) {
  const json j = read_arg(arg);
  // a whole report: check every failing entry
  if (j.is_object() && j.contains("entries")) {
    std::size_t failing = 0, reproduced = 0;
    json results = json::array();
    for (const json& e : j.at("entries")) {
      if (e.value("pass", true)) continue;
      ++failing;
      if (!e.contains("witness")) {
        results.push_back({{"valid", false}, {"message", "entry has no witness"}});
        continue;
      }
      const suite::WitnessCheck c = suite::verify_witness(e.at("witness"), limits_of(g));
      if (c.valid) ++reproduced;
      results.push_back({{"valid", c.valid}, {"message", c.message}});
    }
    emit(g, json{{"result", reproduced == failing}, {"failing", failing}, {"reproduced", reproduced}, {"checks", results}});
    return reproduced == failing ? kPass : kFail;
  }
  const suite::WitnessCheck c = suite::verify_witness(j, limits_of(g));
  emit(g, json{{"result", c.valid}, {"message", c.message}});
  return c.valid ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mathieu subspaces of finite-dimensional algebras and their modules"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field, "Prime p or Q");
  app.add_option("--theta", g.theta, "left, right, pre or two")
      ->check(CLI::IsMember({"left", "right", "pre", "two", "pre-two-sided", "two-sided"}));
  app.add_option("--cap", g.cap, "Enumeration cap");
  app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware)");

  AlgebraInput in;
  const auto add_inputs = [&](CLI::App* c, bool module_ok, bool subspace) {
    c->add_option("--algebra,-a", in.algebra, "Algebra JSON (path or inline)");
    if (module_ok) c->add_option("--module,-m", in.module, "Module JSON (path or inline)");
    if (subspace) c->add_option("--subspace,-s", in.subspace, "Subspace JSON (path or inline)")->required();
  };

  std::string gen_kind, gen_module;
  std::size_t gen_size = 0;
  auto* gen = app.add_subcommand("gen", "Emit the JSON of a built-in algebra or module");
  gen->add_option("kind", gen_kind, "matrix, product, truncated or upper")->required();
  gen->add_option("size", gen_size, "n, l, k or n")->required();
  gen->add_option("--module", gen_module, "regular, right-regular or standard");

  bool brute = false;
  auto* is_mathieu = app.add_subcommand("is-mathieu", "Decide whether J is theta-Mathieu");
  add_inputs(is_mathieu, false, true);
  is_mathieu->add_flag("--brute", brute, "Use the definition instead of the idempotent criterion");
  auto* is_ideal = app.add_subcommand("is-ideal", "Decide whether J is a theta-ideal");
  add_inputs(is_ideal, false, true);

  std::string element;
  auto* sigma_cmd = app.add_subcommand("sigma", "sigma_theta(N), or membership of --element");
  add_inputs(sigma_cmd, true, true);
  sigma_cmd->add_option("--element,-e", element);
  auto* tau_cmd = app.add_subcommand("tau", "tau_theta(N), or membership of --element");
  add_inputs(tau_cmd, true, true);
  tau_cmd->add_option("--element,-e", element);
  auto* max_sub = app.add_subcommand("max-submodule", "Largest submodule contained in N");
  add_inputs(max_sub, true, true);
  auto* radical = app.add_subcommand("radical", "Elements a with a^m in J for m >> 0");
  add_inputs(radical, false, true);
  bool stable_only = false;
  auto* quasi = app.add_subcommand("quasi-stable", "Exhaustive quasi-stability (or --stable) test");
  add_inputs(quasi, true, false);
  quasi->add_flag("--stable", stable_only);

  std::string alpha;
  auto* omega = app.add_subcommand("omega", "Membership of alpha in Omega_l");
  omega->add_option("--alpha", alpha, "JSON array of scalars")->required();

  std::string pred, config, poly;
  auto* nba = app.add_subcommand("nba", "Predicates of N_{B,alpha}");
  nba->add_option("predicate", pred)->required()->check(CLI::IsMember({"member", "sigma", "tau"}));
  nba->add_option("--config,-c", config, "{field, points, alpha}")->required();
  nba->add_option("--poly,-f", poly, "Polynomial JSON")->required();
  auto* nq = app.add_subcommand("nq", "Predicates of N_q");
  nq->add_option("predicate", pred)->required()->check(CLI::IsMember({"member", "sigma", "tau"}));
  nq->add_option("--config,-c", config, "{a, b, q}")->required();
  nq->add_option("--poly,-f", poly, "Polynomial JSON")->required();
  auto* integral = app.add_subcommand("integral", "Exact integral of f*q over [a, b]");
  integral->add_option("--config,-c", config, "{a, b, q}")->required();
  integral->add_option("--poly,-f", poly, "Polynomial JSON")->required();

  std::string profile = "default", output;
  bool no_timing = false;
  auto* verify = app.add_subcommand("verify-paper", "Run the verification suite");
  verify->add_option("--profile", profile, "default, quick, empty or a profile JSON");
  verify->add_option("--output,-o", output, "Write the report here");
  verify->add_flag("--no-timing", no_timing, "Omit timing fields");

  std::string witness;
  auto* verify_w = app.add_subcommand("verify-witness", "Re-run a failure witness (or every witness of a report)");
  verify_w->add_option("witness", witness, "Witness or report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return run_gen(g, gen_kind, gen_size, gen_module);
    if (*is_mathieu) return run_is_mathieu(g, in, brute);
    if (*is_ideal) return run_is_ideal(g, in);
    if (*sigma_cmd) return run_stable_set(g, in, true, element);
    if (*tau_cmd) return run_stable_set(g, in, false, element);
    if (*max_sub) return run_max_submodule(g, in);
    if (*radical) return run_radical(g, in);
    if (*quasi) return run_quasi_stable(g, in, stable_only);
    if (*omega) return run_omega(g, alpha);
    if (*nba) return run_nba(g, pred, config, poly);
    if (*nq) return run_nq(g, pred, config, poly);
    if (*integral) return run_integral(g, config, poly);
    if (*verify) return run_verify_paper(g, profile, output, no_timing);
    if (*verify_w) return run_verify_witness(g, witness);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kUsage;
  } catch (const mathieu::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
