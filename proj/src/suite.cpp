#include "mathieu/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "mathieu/json_io.hpp"
#include "mathieu/mathieu.hpp"
#include "mathieu/parallel.hpp"
#include "mathieu/polyspaces.hpp"

namespace mathieu::suite {

namespace {

using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point start = Clock::now();
  double ms() const { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }
};

using Task = std::function<std::vector<Entry>()>;

AlgebraPtr share(Algebra a) { return std::make_shared<const Algebra>(std::move(a)); }

std::string theta_name(Theta t) { return std::string(to_string(t)); }

std::uint64_t mix_seed(std::uint64_t seed, std::string_view id, std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (char c : id) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  h ^= index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Scalar random_scalar(Field f, Rng& rng) {
  if (f.is_prime()) return Scalar(f, static_cast<std::int64_t>(uniform(rng, 0, f.characteristic() - 1)));
  const auto num = static_cast<long>(uniform(rng, 0, 18)) - 9;
  const auto den = static_cast<long>(uniform(rng, 1, 5));
  return Scalar(f, mpq_class(num, den));
}

Scalar random_nonzero(Field f, Rng& rng) {
  for (;;) {
    Scalar s = random_scalar(f, rng);
    if (!s.is_zero()) return s;
  }
}

Vector random_vector(Field f, std::size_t dim, Rng& rng) {
  std::vector<Scalar> xs;
  for (std::size_t i = 0; i < dim; ++i) xs.push_back(random_scalar(f, rng));
  return Vector(f, std::move(xs));
}

Subspace random_subspace(Field f, std::size_t dim, Rng& rng) {
  std::vector<Vector> gens;
  const std::size_t k = uniform(rng, 0, dim);
  for (std::size_t i = 0; i < k; ++i) gens.push_back(random_vector(f, dim, rng));
  return Subspace::span(f, dim, gens);
}

Poly random_poly(Field f, std::size_t vars, std::size_t max_degree, Rng& rng) {
  Poly out(f, vars);
  const std::size_t terms = uniform(rng, 1, 6);
  for (std::size_t t = 0; t < terms; ++t) {
    Poly::Exponent e(vars, 0);
    std::size_t budget = uniform(rng, 0, max_degree);
    for (std::size_t v = 0; v < vars && budget > 0; ++v) {
      const std::size_t d = v + 1 == vars ? budget : uniform(rng, 0, budget);
      e[v] = static_cast<std::uint32_t>(d);
      budget -= d;
    }
    out += Poly::monomial(f, e, random_scalar(f, rng));
  }
  return out;
}

std::uint64_t power(std::uint64_t base, std::size_t exp) { return saturating_power(base, exp); }

Limits inner_limits(const Profile& pr) {
  Limits l = pr.limits;
  if (resolve_threads(pr.limits.threads) > 1) l.threads = 1;
  return l;
}

std::string algebra_label(const std::string& descriptor) {
  const auto a = descriptor.find(':');
  const auto b = descriptor.find(':', a + 1);
  const std::string kind = descriptor.substr(0, a);
  const std::string size = descriptor.substr(a + 1, b - a - 1);
  const std::string fs = descriptor.substr(b + 1);
  const std::string field = fs == "Q" ? "Q" : "F_" + fs;
  if (kind == "matrix") return "M_" + size + "(" + field + ")";
  if (kind == "upper") return "UT_" + size + "(" + field + ")";
  if (kind == "truncated") return field + "[x]/(x^" + size + ")";
  if (kind == "product") {
    std::string out = field;
    for (std::size_t i = 1; i < std::stoul(size); ++i) out += "+" + field;
    return out;
  }
  return descriptor;
}

Entry make_entry(std::string id, std::string statement, std::string instance) {
  Entry e;
  e.id = std::move(id);
  e.statement = std::move(statement);
  e.instance = std::move(instance);
  e.witness = nullptr;
  return e;
}

std::string ratio(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

// ------------------------------------------------------------ witnesses

json membership_witness(const ModuleSpace& m, const Subspace& n, Theta t, bool stable, const Vector& u,
                        bool formula) {
  return json{{"kind", "membership"}, {"module", io::to_json(m)}, {"subspace", io::to_json(n)},
              {"theta", theta_name(t)}, {"set", stable ? "sigma" : "tau"}, {"element", io::to_json(u)},
              {"formula", formula}};
}

json verdict_witness(const Algebra& a, const Subspace& j, Theta t, const std::string& property, bool formula) {
  return json{{"kind", "verdict"}, {"algebra", io::to_json(a)}, {"subspace", io::to_json(j)},
              {"theta", theta_name(t)}, {"property", property}, {"formula", formula}};
}

json not_mathieu_witness(const Algebra& a, const Subspace& j, Theta t, const MathieuWitness& w, bool rejected) {
  return json{{"kind", rejected ? "rejected-certificate" : "not-mathieu"}, {"algebra", io::to_json(a)},
              {"subspace", io::to_json(j)}, {"theta", theta_name(t)}, {"witness", io::to_json(w)}};
}

json not_ideal_witness(const Algebra& a, const Subspace& j, Theta t, const IdealWitness& w) {
  return json{{"kind", "not-ideal"}, {"algebra", io::to_json(a)}, {"subspace", io::to_json(j)},
              {"theta", theta_name(t)}, {"witness", io::to_json(w)}};
}

json colon_side(const ModuleSpace& m, const Subspace& n, const Vector& u) {
  return json{{"module", io::to_json(m)}, {"subspace", io::to_json(n)}, {"element", io::to_json(u)}};
}

json colon_pair_witness(json first, json second, Theta t, bool stable, const std::string& relation) {
  return json{{"kind", "colon-pair"}, {"first", std::move(first)}, {"second", std::move(second)},
              {"theta", theta_name(t)}, {"set", stable ? "sigma" : "tau"}, {"relation", relation}};
}

/// Independent membership test: ideals straight from the definition,
/// Mathieu status by brute force.
bool brute_member(const ModuleSpace& m, const Subspace& n, const Vector& u, Theta t, bool stable,
                  const Limits& limits) {
  const Subspace j = colon(m, n, u);
  if (stable) return !ideal_violation(m.algebra(), j, t).has_value();
  return is_theta_mathieu_bruteforce(m.algebra(), j, t, limits).is_mathieu;
}

// ------------------------------------------------------------ set comparison

/// First u of M where the computed set and the formula disagree.
std::optional<Vector> first_mismatch(const ElementSet& computed, const VectorRange& range,
                                     const std::function<bool(const Vector&)>& formula) {
  for (const Vector u : range) {
    if (computed.contains(u) != formula(u)) return u;
  }
  return std::nullopt;
}

// ------------------------------------------------------------ statements

constexpr const char* kOracle = "J theta-Mathieu <=> (e)_theta in J for every idempotent e in J";
constexpr const char* kStandard =
    "M = K^n over M_n(K), n >= 2: sigma(N) = tau(N) = K^n if N = K^n; K^n (theta = left) or 0 (otherwise) "
    "if N = 0; 0 if 0 < N < K^n";
constexpr const char* kTrace =
    "H_X = {Y : Tr(YX) = 0}: sigma(H_X) = {Y : YX = 0}; tau(H_X) = {Y : YX = 0 or YX ~ I} if p > n, "
    "sigma(H_X) if p <= n";
constexpr const char* kTraceIdeals =
    "largest left ideal in H_X = {Y : YX = 0}; largest right ideal in H_X = {Y : XY = 0}; H_X = H_Y iff X ~ Y";
constexpr const char* kCodimOne =
    "codimension-one theta-Mathieu subspaces of M_n(K): exactly {Tr = 0} if p > n, none if p <= n";
constexpr const char* kMaxSub = "I_N = N cap sigma(N) = N cap tau(N)";
constexpr const char* kQuasi =
    "A quasi-stable <=> A = K+K or A local; quasi-stable A has tau(N) = I_N cup N^c on the regular module";
constexpr const char* kStable = "A stable <=> A = K, or K = F_2 and A = F_2+F_2";
constexpr const char* kProduct = "weight hyperplane of alpha theta-Mathieu in K^l <=> alpha in Omega_l";
constexpr const char* kProductPoly = "f in tau(N_{B,alpha}) <=> weight hyperplane of alpha_f Mathieu in K^l";
constexpr const char* kColon = "(N_{B,alpha} : f) = N_{B,alpha_f}";
constexpr const char* kEvalSigma = "f in sigma(N_{B,alpha}) <=> |S(alpha_f)| <= 1 <=> hyperplane of alpha_f is an ideal";
constexpr const char* kEvalTau = "f in tau(N_{B,alpha}) <=> alpha_f in Omega_l <=> hyperplane of alpha_f Mathieu";
constexpr const char* kZeroSet = "N cap sigma(N) = {g : g(u_i) = 0 for i in S(alpha)}";
constexpr const char* kNonClosed =
    "|S(alpha)| >= 2: N_{B,alpha} is not an ideal and sigma(N_{B,alpha}) is not closed under addition";
constexpr const char* kIntegral = "int_a^b f q dz by the monomial rule";
constexpr const char* kPositivity = "int_a^b q^2 dz > 0 for q != 0, a < b";
constexpr const char* kNqTau = "tau(N_q) = N_q^c cup {0}";
constexpr const char* kNqSigma = "sigma(N_q) = {0}";
constexpr const char* kPullback = "phi^-1(tau(H)) = tau(phi^-1(H)) for module homomorphisms phi";
constexpr const char* kQuotient = "tau(N) = pi^-1(tau(N/V)) for submodules V inside N";
constexpr const char* kSurjection = "psi^-1(tau(J)) = tau(psi^-1(J)) for surjective algebra homomorphisms psi";
constexpr const char* kInclusion = "psi^-1(tau(J)) subset tau(psi^-1(J)) for algebra homomorphisms psi";
constexpr const char* kDivision = "A = F_p: sigma(J) = tau(J) = A for J = 0 and J = A";
constexpr const char* kClaim = "profile assertion";

// ------------------------------------------------------------ oracle-equivalence

std::vector<Entry> oracle_equivalence(const Profile& pr, const std::string& descriptor, bool sampled, std::uint64_t seed) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const Algebra a = io::build_algebra(descriptor);
  std::vector<Subspace> all = enumerate_subspaces(a.dim(), a.field(), limits);
  std::vector<Subspace> chosen;
  Entry e = make_entry("oracle-equivalence", kOracle, algebra_label(descriptor));
  if (sampled && all.size() > pr.oracle_samples) {
    Rng rng(seed);
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(pr.oracle_samples);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) chosen.push_back(all[i]);
    e.instance += ", random sample of " + std::to_string(chosen.size()) + " of " + std::to_string(all.size()) +
                  " subspaces";
  } else {
    chosen = std::move(all);
    e.instance += ", all " + std::to_string(chosen.size()) + " subspaces";
  }
  const BruteForceDecider brute(a, limits);
  const IdempotentDecider crit(a, limits);
  std::size_t agree = 0, negatives = 0, validated = 0;
  for (const Subspace& j : chosen) {
    for (Theta t : kAllThetas) {
      const MathieuVerdict b = brute.decide(j, t);
      const MathieuVerdict c = crit.decide(j, t);
      if (b.is_mathieu == c.is_mathieu) {
        ++agree;
      } else if (e.witness.is_null()) {
        e.witness = verdict_witness(a, j, t, "mathieu", c.is_mathieu);
      }
      for (const MathieuVerdict* v : {&b, &c}) {
        if (v->is_mathieu) continue;
        ++negatives;
        if (v->witness && validate_mathieu_witness(a, j, t, *v->witness)) {
          ++validated;
        } else if (e.witness.is_null() && v->witness) {
          e.witness = not_mathieu_witness(a, j, t, *v->witness, true);
        }
      }
    }
  }
  const std::size_t total = chosen.size() * kAllThetas.size();
  e.expected = "brute force = idempotent criterion on " + std::to_string(total) +
               " (subspace, theta) pairs; every negative witness re-validates";
  e.computed = ratio(agree, total) + " agree; " + ratio(validated, negatives) + " witnesses re-validate";
  e.pass = agree == total && validated == negatives;
  if (e.pass) e.witness = nullptr;
  e.ms = timer.ms();
  return {e};
}

// ------------------------------------------------------------ standard-module

bool over_cap(std::uint32_t p, std::size_t n, std::uint64_t cap) { return power(p, n * n) > cap; }

Entry skipped(const std::string& id, const char* statement, const std::string& instance, std::uint64_t size,
              std::uint64_t cap) {
  Entry e = make_entry(id, statement, instance);
  e.expected = "-";
  e.computed = "skipped: " + std::to_string(size) + " elements exceed cap " + std::to_string(cap);
  return e;
}

std::vector<Entry> standard_module_check(const Profile& pr, std::uint32_t p, std::size_t n) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const Field f = Field::prime(p);
  const ModulePtr m = standard_module(share(matrix_algebra(n, f)), n);
  const StableSets sets(m, limits);
  const std::vector<Subspace> subspaces = enumerate_subspaces(n, f, limits);
  const VectorRange range = enumerate_vectors(n, f, limits.element_cap);
  std::array<std::size_t, 4> ok{};
  std::array<json, 4> witness{};
  for (const Subspace& nn : subspaces) {
    const ThetaSets s = sets.all(nn);
    for (std::size_t k = 0; k < 4; ++k) {
      const Theta t = kAllThetas[k];
      const auto formula = [&](const Vector& u) {
        if (nn.is_full()) return true;
        if (nn.is_zero()) return t == Theta::left || u.is_zero();
        return u.is_zero();
      };
      bool good = true;
      for (bool stable : {true, false}) {
        const ElementSet& set = stable ? s.sigma[k] : s.tau[k];
        if (auto u = first_mismatch(set, range, formula)) {
          good = false;
          if (witness[k].is_null()) witness[k] = membership_witness(*m, nn, t, stable, *u, formula(*u));
        }
      }
      if (good) ++ok[k];
    }
  }
  const double ms = timer.ms() / 4;
  std::vector<Entry> out;
  for (std::size_t k = 0; k < 4; ++k) {
    Entry e = make_entry("standard-module", kStandard,
                         "K^" + std::to_string(n) + " over M_" + std::to_string(n) + "(F_" + std::to_string(p) +
                             "), theta = " + theta_name(kAllThetas[k]));
    e.expected = "formula on all " + std::to_string(subspaces.size()) + " subspaces";
    e.computed = ratio(ok[k], subspaces.size()) + " subspaces match";
    e.pass = ok[k] == subspaces.size();
    e.witness = witness[k];
    e.ms = ms;
    out.push_back(std::move(e));
  }
  return out;
}

// ------------------------------------------------------------ trace-hyperplanes

/// Coefficients of Y -> Tr(YX) on the basis E_ij (index i*n+j): X_ji.
Vector trace_functional(const Vector& x, std::size_t n) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c.push_back(x[j * n + i]);
  return Vector(x.field(), std::move(c));
}

Subspace kernel_of(const Vector& functional) {
  if (functional.is_zero()) return Subspace::full(functional.field(), functional.size());
  return solve_right_kernel(Matrix::from_rows(functional.field(), functional.size(), std::span<const Vector>(&functional, 1)));
}

bool is_nonzero_scalar_matrix(const Vector& y, std::size_t n) {
  const Scalar c = y[0];
  if (c.is_zero()) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (y[i * n + j] != (i == j ? c : Scalar::zero(y.field()))) return false;
  return true;
}

std::vector<Entry> trace_hyperplanes_check(const Profile& pr, std::uint32_t p, std::size_t n) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const Field f = Field::prime(p);
  const AlgebraPtr a = share(matrix_algebra(n, f));
  const ModulePtr reg = regular_module(a);
  const ModulePtr rreg = right_regular_module(a);
  const StableSets sets(reg, limits);
  const VectorRange range = enumerate_vectors(a->dim(), f, limits.element_cap);
  const bool large_p = p > n;
  std::array<std::size_t, 4> ok{};
  std::array<json, 4> witness{};
  std::size_t ideals_ok = 0;
  json ideals_witness;
  std::unordered_set<Subspace, SubspaceHash> distinct;
  for (const Vector x : range) {
    const Subspace h = kernel_of(trace_functional(x, n));
    if (!x.is_zero()) distinct.insert(h);
    const ThetaSets s = sets.all(h);
    const auto sigma_formula = [&](const Vector& y) { return a->multiply(y, x).is_zero(); };
    const auto tau_formula = [&](const Vector& y) {
      const Vector yx = a->multiply(y, x);
      return yx.is_zero() || (large_p && is_nonzero_scalar_matrix(yx, n));
    };
    for (std::size_t k = 0; k < 4; ++k) {
      bool good = true;
      for (bool stable : {true, false}) {
        const auto& formula = stable ? std::function<bool(const Vector&)>(sigma_formula)
                                     : std::function<bool(const Vector&)>(tau_formula);
        if (auto u = first_mismatch(stable ? s.sigma[k] : s.tau[k], range, formula)) {
          good = false;
          if (witness[k].is_null()) witness[k] = membership_witness(*reg, h, kAllThetas[k], stable, *u, formula(*u));
        }
      }
      if (good) ++ok[k];
    }
    const Subspace left_ann = solve_right_kernel(a->right_multiplication(x));
    const Subspace right_ann = solve_right_kernel(a->left_multiplication(x));
    if (max_submodule(*reg, h) == left_ann && max_submodule(*rreg, h) == right_ann) {
      ++ideals_ok;
    } else if (ideals_witness.is_null()) {
      ideals_witness = json{{"kind", "annihilator"}, {"algebra", io::to_json(*a)}, {"x", io::to_json(x)}};
    }
  }
  const std::uint64_t expected_distinct = (range.size() - 1) / (p - 1);
  const double ms = timer.ms() / 5;
  const std::string label = "M_" + std::to_string(n) + "(F_" + std::to_string(p) + ")";
  std::vector<Entry> out;
  for (std::size_t k = 0; k < 4; ++k) {
    Entry e = make_entry("trace-hyperplanes", kTrace, label + ", theta = " + theta_name(kAllThetas[k]));
    e.expected = std::string(large_p ? "p > n" : "p <= n") + " formula for all " + std::to_string(range.size()) + " X";
    e.computed = ratio(ok[k], range.size()) + " X match on every Y";
    e.pass = ok[k] == range.size();
    e.witness = witness[k];
    e.ms = ms;
    out.push_back(std::move(e));
  }
  Entry e = make_entry("trace-hyperplanes", kTraceIdeals, label);
  e.expected = "annihilators for all " + std::to_string(range.size()) + " X; " + std::to_string(expected_distinct) +
               " distinct H_X";
  e.computed = ratio(ideals_ok, range.size()) + " annihilators match; " + std::to_string(distinct.size()) +
               " distinct H_X";
  e.pass = ideals_ok == range.size() && distinct.size() == expected_distinct;
  e.witness = ideals_witness;
  e.ms = ms;
  out.push_back(std::move(e));
  return out;
}

// ------------------------------------------------------------ codim-one-uniqueness

std::vector<Entry> codim_one_check(const Profile& pr, std::uint32_t p, std::size_t n) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const Field f = Field::prime(p);
  const Algebra a = matrix_algebra(n, f);
  const IdempotentDecider decider(a, limits);
  const bool large_p = p > n;
  Vector trace(f, a.dim());
  for (std::size_t i = 0; i < n; ++i) trace[i * n + i] = Scalar::one(f);
  const Subspace trace_zero = kernel_of(trace);

  std::vector<Subspace> hyperplanes;
  for (const Vector c : enumerate_vectors(a.dim(), f, limits.element_cap)) {
    // normalized: first nonzero coordinate is 1
    auto it = std::find_if(c.begin(), c.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (it == c.end() || !it->is_one()) continue;
    hyperplanes.push_back(kernel_of(c));
  }
  std::vector<Entry> out;
  std::array<std::size_t, 4> found{};
  std::array<bool, 4> trace_found{};
  std::array<json, 4> witness{};
  for (const Subspace& h : hyperplanes) {
    for (std::size_t k = 0; k < 4; ++k) {
      const Theta t = kAllThetas[k];
      const MathieuVerdict v = decider.decide(h, t);
      const bool expected = large_p && h == trace_zero;
      if (v.is_mathieu) {
        ++found[k];
        if (h == trace_zero) trace_found[k] = true;
      }
      if (v.is_mathieu != expected && witness[k].is_null()) {
        witness[k] = v.is_mathieu ? verdict_witness(a, h, t, "mathieu", false)
                                  : not_mathieu_witness(a, h, t, *v.witness, false);
      }
    }
  }
  const double ms = timer.ms() / 4;
  for (std::size_t k = 0; k < 4; ++k) {
    Entry e = make_entry("codim-one-uniqueness", kCodimOne,
                         "M_" + std::to_string(n) + "(F_" + std::to_string(p) + "), theta = " +
                             theta_name(kAllThetas[k]) + ", " + std::to_string(hyperplanes.size()) + " hyperplanes");
    e.expected = large_p ? "1 Mathieu hyperplane: Tr = 0" : "0 Mathieu hyperplanes";
    e.computed = std::to_string(found[k]) + " Mathieu hyperplane" + (found[k] == 1 ? "" : "s") +
                 (trace_found[k] ? ": Tr = 0" : "");
    e.pass = large_p ? (found[k] == 1 && trace_found[k]) : found[k] == 0;
    e.witness = witness[k];
    e.ms = ms;
    out.push_back(std::move(e));
  }
  return out;
}

// ------------------------------------------------------------ module zoo

struct ZooModule {
  std::string label;
  ModulePtr module;
  std::size_t group;  // modules in one group share the algebra pointer
};

std::vector<ZooModule> module_zoo(const std::vector<std::uint32_t>& primes) {
  std::vector<ZooModule> out;
  std::size_t group = 0;
  for (std::uint32_t p : primes) {
    const Field f = Field::prime(p);
    const std::string fp = "F_" + std::to_string(p);
    {
      const AlgebraPtr m2 = share(matrix_algebra(2, f));
      const ModulePtr k2 = standard_module(m2, 2);
      out.push_back({fp + "^2 over M_2(" + fp + ")", k2, group});
      out.push_back({fp + "^2+" + fp + "^2 over M_2(" + fp + ")", direct_sum(k2, k2), group});
      out.push_back({"M_2(" + fp + ") regular", regular_module(m2), group});
      ++group;
    }
    {
      const AlgebraPtr t2 = share(truncated_poly(2, f));
      const ModulePtr r = regular_module(t2);
      out.push_back({fp + "[x]/(x^2) regular", r, group});
      out.push_back({fp + "[x]/(x^2) regular, doubled", direct_sum(r, r), group});
      out.push_back({fp + "[x]/(x^2) mod (x)", quotient_module(r, Subspace::span(f, 2, {Vector::unit(f, 2, 1)})).module,
                     group});
      ++group;
    }
    out.push_back({fp + "[x]/(x^3) regular", regular_module(share(truncated_poly(3, f))), group++});
    {
      const AlgebraPtr k2 = share(product_algebra(2, f));
      const ModulePtr r = regular_module(k2);
      out.push_back({fp + "+" + fp + " regular", r, group});
      out.push_back({fp + "+" + fp + " regular, doubled", direct_sum(r, r), group});
      ++group;
    }
    {
      const AlgebraPtr ut = share(upper_triangular(2, f));
      out.push_back({"UT_2(" + fp + ") regular", regular_module(ut), group});
      out.push_back({fp + "^2 over UT_2(" + fp + ")", triangular_standard_module(ut, 2), group});
      ++group;
      out.push_back({"UT_2(" + fp + ") right regular", right_regular_module(ut), group++});
    }
  }
  return out;
}

// ------------------------------------------------------------ max-submodule

std::vector<Entry> max_submodule_check(const Profile& pr, const ZooModule& zm, std::size_t pairs, std::uint64_t seed) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const ModuleSpace& m = *zm.module;
  const StableSets sets(zm.module, limits);
  const VectorRange range = enumerate_vectors(m.dim(), m.field(), limits.element_cap);
  Rng rng(seed);
  std::size_t ok = 0;
  Entry e = make_entry("max-submodule", kMaxSub, zm.label + ", " + std::to_string(pairs) + " random subspaces");
  for (std::size_t i = 0; i < pairs; ++i) {
    const Subspace n = random_subspace(m.field(), m.dim(), rng);
    const Subspace in = max_submodule(m, n);
    const ThetaSets s = sets.all(n);
    bool good = true;
    for (const Vector u : range) {
      if (!n.contains(u)) continue;
      const bool in_i = in.contains(u);
      for (std::size_t k = 0; k < 4 && good; ++k) {
        const bool sg = s.sigma[k].contains(u);
        const bool tu = s.tau[k].contains(u);
        if (sg != in_i || tu != in_i) {
          good = false;
          if (e.witness.is_null()) e.witness = membership_witness(m, n, kAllThetas[k], sg != in_i, u, in_i);
        }
      }
    }
    if (good) ++ok;
  }
  e.expected = "equality for all thetas on " + std::to_string(pairs) + " subspaces";
  e.computed = ratio(ok, pairs) + " subspaces";
  e.pass = ok == pairs;
  e.ms = timer.ms();
  return {e};
}

// ------------------------------------------------------------ classification

/// tau(N) = I_N cup N^c for every N of the regular module and every theta.
std::pair<std::size_t, std::size_t> quasi_stable_tau_formula(const ModulePtr& m, const Limits& limits, json& witness) {
  const StableSets sets(m, limits);
  const VectorRange range = enumerate_vectors(m->dim(), m->field(), limits.element_cap);
  std::size_t ok = 0, total = 0;
  for (const Subspace& n : enumerate_subspaces(m->dim(), m->field(), limits)) {
    const Subspace in = max_submodule(*m, n);
    const ThetaSets s = sets.all(n);
    for (std::size_t k = 0; k < 4; ++k) {
      ++total;
      const auto formula = [&](const Vector& u) { return in.contains(u) || !n.contains(u); };
      if (auto u = first_mismatch(s.tau[k], range, formula)) {
        if (witness.is_null()) witness = membership_witness(*m, n, kAllThetas[k], false, *u, formula(*u));
      } else {
        ++ok;
      }
    }
  }
  return {ok, total};
}

std::vector<Entry> classification_check(const Profile& pr, const std::string& descriptor, bool quasi, bool expected) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const AlgebraPtr a = share(io::build_algebra(descriptor));
  const ModulePtr reg = regular_module(a);
  const std::string id = quasi ? "quasi-stable-classification" : "stable-classification";
  const std::string word = quasi ? "quasi-stable" : "stable";
  Entry e = make_entry(id, quasi ? kQuasi : kStable, algebra_label(descriptor));
  std::size_t holds = 0, module_agree = 0, validated = 0, failures = 0;
  for (Theta t : kAllThetas) {
    const StabilityVerdict v = quasi ? quasi_stable_algebra(*a, t, limits) : stable_algebra(*a, t, limits);
    const StabilityVerdict vm = quasi ? quasi_stable_module(reg, t, limits) : stable_module(reg, t, limits);
    if (v.holds) ++holds;
    if (v.holds == vm.holds) ++module_agree;
    if (!v.holds) {
      ++failures;
      if (validate_algebra_stability_witness(*a, t, quasi, v) && validate_module_stability_witness(*reg, t, quasi, vm))
        ++validated;
    }
    if (v.holds != expected && e.witness.is_null()) {
      e.witness = json{{"kind", "stability"}, {"algebra", io::to_json(*a)}, {"theta", theta_name(t)},
                       {"quasi", quasi}, {"formula", expected}, {"verdict", io::to_json(v)}};
    }
  }
  const bool classified = quasi ? classified_quasi_stable(*a, limits) : classified_stable(*a, limits);
  bool pass = (holds == (expected ? 4U : 0U)) && module_agree == 4 && validated == failures && classified == expected;
  e.expected = (expected ? word : "not " + word) + " for all thetas; algebra and regular module agree" +
               (expected ? "" : "; witnesses re-validate");
  e.computed = word + " for " + std::to_string(holds) + "/4 thetas; " + std::to_string(module_agree) +
               "/4 agree; classification says " + (classified ? word : "not " + word);
  if (!expected) e.computed += "; " + ratio(validated, failures) + " witnesses re-validate";
  if (quasi && expected) {
    const auto [ok, total] = quasi_stable_tau_formula(reg, limits, e.witness);
    e.expected += "; tau = I_N cup N^c";
    e.computed += "; tau formula " + ratio(ok, total);
    pass = pass && ok == total;
  }
  e.pass = pass;
  if (e.pass) e.witness = nullptr;
  e.ms = timer.ms();
  return {e};
}

// ------------------------------------------------------------ product-reduction

std::vector<Entry> product_reduction_check(const Profile& pr, ProductCase pc, std::uint64_t seed) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const Field f = Field::prime(pc.p);
  const Algebra a = product_algebra(pc.l, f);
  const IdempotentDecider decider(a, limits);
  const BruteForceDecider brute(a, limits);
  const std::string label = "l = " + std::to_string(pc.l) + ", F_" + std::to_string(pc.p);
  Entry e = make_entry("product-reduction", kProduct, label + ", all alpha");
  Entry ep = make_entry("product-reduction", kProductPoly, label + ", points 0..l-1, random f");
  std::size_t ok = 0, total = 0, in_omega = 0, pok = 0, ptotal = 0;
  Rng rng(seed);
  for (const Vector alpha : enumerate_vectors(pc.l, f, limits.element_cap)) {
    const std::vector<Scalar> al(alpha.begin(), alpha.end());
    const Subspace h = weight_hyperplane(al);
    const bool om = omega_member(al, limits.support_cap);
    if (om) ++in_omega;
    for (Theta t : kAllThetas) {
      ++total;
      const bool v = decider.decide(h, t).is_mathieu;
      const bool b = brute.decide(h, t).is_mathieu;
      if (v == om && b == om) {
        ++ok;
      } else if (e.witness.is_null()) {
        e.witness = json{{"kind", "omega"}, {"field", io::to_json(f)}, {"alpha", io::to_json(alpha)},
                         {"theta", theta_name(t)}};
      }
    }
    const EvalConfig cfg{line_points(pc.l, f), al};
    for (std::size_t i = 0; i < pr.product_polys; ++i) {
      const Poly p = random_poly(f, 1, 2 * pc.l, rng);
      const std::vector<Scalar> af = alpha_f_B(p, cfg);
      const Subspace hf = weight_hyperplane(af);
      bool good = true;
      for (Theta t : kAllThetas) {
        good = good && nba_tau_member(p, cfg, limits.support_cap) == decider.decide(hf, t).is_mathieu &&
               nba_sigma_member(p, cfg) == is_theta_ideal(a, hf, t);
      }
      ++ptotal;
      if (good) {
        ++pok;
      } else if (ep.witness.is_null()) {
        ep.witness = json{{"kind", "nba"}, {"property", "tau"}, {"config", io::to_json(cfg)}, {"f", io::to_json(p)},
                          {"theta", "left"}};
      }
    }
  }
  const double ms = timer.ms() / 2;
  e.expected = "idempotent and brute-force verdicts = omega_member on " + std::to_string(total) +
               " (alpha, theta) pairs";
  e.computed = ratio(ok, total) + " agree; " + std::to_string(in_omega) + " alpha in Omega";
  e.pass = ok == total;
  e.ms = ms;
  ep.expected = "predicates = product-algebra verdicts on " + std::to_string(ptotal) + " polynomials";
  ep.computed = ratio(pok, ptotal) + " agree";
  ep.pass = pok == ptotal;
  ep.ms = ms;
  return {e, ep};
}

// ------------------------------------------------------------ evaluation-subspaces

/// A linear form c . u, c = (1, k, k^2, ...), injective on the points.
std::vector<Scalar> separating_form(const std::vector<std::vector<Scalar>>& points) {
  const Field f = points[0][0].field();
  const std::size_t vars = points[0].size();
  for (std::int64_t k = 1;; ++k) {
    std::vector<Scalar> c;
    Scalar w = Scalar::one(f);
    for (std::size_t v = 0; v < vars; ++v) {
      c.push_back(w);
      w *= Scalar(f, k);
    }
    std::vector<Scalar> images;
    for (const auto& u : points) {
      Scalar s = Scalar::zero(f);
      for (std::size_t v = 0; v < vars; ++v) s += c[v] * u[v];
      images.push_back(s);
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) == images.end()) return c;
  }
}

/// P(c . z) for univariate P.
Poly compose_linear(const Poly& univariate, const std::vector<Scalar>& c) {
  const Field f = univariate.field();
  const std::size_t vars = c.size();
  Poly lin(f, vars);
  for (std::size_t v = 0; v < vars; ++v) lin += c[v] * Poly::variable(f, vars, v);
  Poly out(f, vars);
  for (int d = univariate.degree(); d >= 0; --d) {
    out = out * lin + Poly::constant(f, vars, univariate.coefficient({static_cast<std::uint32_t>(d)}));
  }
  return out;
}

struct EvalCase {
  EvalConfig cfg;
  std::vector<Scalar> form;
  std::vector<Scalar> projected;  // form applied to the points

  Field field() const { return cfg.field(); }
  std::size_t vars() const { return cfg.vars(); }

  /// Takes value values[i] at u_i.
  Poly interpolate(const std::vector<Scalar>& values) const {
    Poly p(field(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i].is_zero()) p += values[i] * lagrange_basis(projected, i);
    }
    return compose_linear(p, form);
  }

  /// Vanishes exactly at u_i for i in idx (and possibly elsewhere).
  Poly vanishing(const std::vector<std::size_t>& idx) const {
    Poly p = Poly::constant(field(), 1, Scalar::one(field()));
    for (std::size_t i : idx) p = p * Poly::univariate(field(), std::vector<Scalar>{-projected[i], Scalar::one(field())});
    return compose_linear(p, form);
  }
};

EvalCase random_eval_case(const Profile& pr, Rng& rng) {
  const Field q = Field::rationals();
  const std::size_t l = uniform(rng, 1, std::max<std::size_t>(1, pr.evaluation_points));
  const std::size_t vars = uniform(rng, 1, 2);
  EvalCase c;
  while (c.cfg.points.size() < l) {
    std::vector<Scalar> u;
    for (std::size_t v = 0; v < vars; ++v) u.push_back(random_scalar(q, rng));
    if (std::find(c.cfg.points.begin(), c.cfg.points.end(), u) == c.cfg.points.end()) c.cfg.points.push_back(u);
  }
  for (std::size_t i = 0; i < l; ++i) c.cfg.alpha.push_back(uniform(rng, 0, 3) == 0 ? Scalar::zero(q) : random_nonzero(q, rng));
  if (l >= 2 && uniform(rng, 0, 2) == 0) {
    // force a zero-sum subset ending at the last index
    Scalar s = Scalar::zero(q);
    for (std::size_t i = 0; i + 1 < l; ++i)
      if (uniform(rng, 0, 1) == 1) s += c.cfg.alpha[i];
    c.cfg.alpha[l - 1] = -s;
  }
  c.cfg.validate();
  c.form = separating_form(c.cfg.points);
  for (const auto& u : c.cfg.points) {
    Scalar s = Scalar::zero(q);
    for (std::size_t v = 0; v < vars; ++v) s += c.form[v] * u[v];
    c.projected.push_back(s);
  }
  return c;
}

Poly random_eval_poly(const EvalCase& c, std::size_t kind, std::size_t max_degree, Rng& rng) {
  const Field q = c.field();
  const std::size_t l = c.cfg.points.size();
  switch (kind % 4) {
    case 0:
      return random_poly(q, c.vars(), max_degree, rng);
    case 1: {
      std::vector<Scalar> values;
      for (std::size_t i = 0; i < l; ++i) values.push_back(Scalar(q, static_cast<std::int64_t>(uniform(rng, 0, 4)) - 2));
      Poly p = c.interpolate(values);
      if (l < max_degree) {
        std::vector<std::size_t> all(l);
        std::iota(all.begin(), all.end(), 0);
        p += c.vanishing(all) * random_poly(q, c.vars(), max_degree - l, rng);
      }
      return p;
    }
    case 2: {
      // alpha_f entries in {-1, 0, 1, 2}: exercises zero-sum subsets
      std::vector<Scalar> values;
      for (std::size_t i = 0; i < l; ++i) {
        const Scalar w(q, static_cast<std::int64_t>(uniform(rng, 0, 3)) - 1);
        values.push_back(c.cfg.alpha[i].is_zero() ? w : w / c.cfg.alpha[i]);
      }
      return c.interpolate(values);
    }
    default: {
      const std::vector<std::size_t> s = support(c.cfg.alpha);
      std::vector<std::size_t> pick;
      for (std::size_t i : s)
        if (uniform(rng, 0, 3) != 0) pick.push_back(i);
      Poly v = c.vanishing(pick);
      return pick.size() < max_degree ? v * random_poly(q, c.vars(), max_degree - pick.size(), rng) : v;
    }
  }
}

json nba_witness(const std::string& property, const EvalConfig& cfg, const Poly& f, const Poly* g, Theta t) {
  json w{{"kind", "nba"}, {"property", property}, {"config", io::to_json(cfg)}, {"f", io::to_json(f)},
         {"theta", theta_name(t)}};
  if (g) w["g"] = io::to_json(*g);
  return w;
}

bool nba_colon_holds(const EvalConfig& cfg, const Poly& f, const Poly& g) {
  const EvalConfig shifted{cfg.points, alpha_f_B(f, cfg)};
  Scalar direct = Scalar::zero(cfg.field());
  for (std::size_t i = 0; i < cfg.points.size(); ++i)
    direct += cfg.alpha[i] * f.evaluate(cfg.points[i]) * g.evaluate(cfg.points[i]);
  const bool lhs = nba_member(f * g, cfg);
  return lhs == nba_member(g, shifted) && lhs == direct.is_zero();
}

bool nba_sigma_route_holds(const EvalConfig& cfg, const Poly& f, Theta t) {
  const std::vector<Scalar> af = alpha_f_B(f, cfg);
  const Algebra k = product_algebra(af.size(), cfg.field());
  const bool pred = nba_sigma_member(f, cfg);
  return pred == (support(af).size() <= 1) && pred == is_theta_ideal(k, weight_hyperplane(af), t);
}

bool nba_tau_route_holds(const EvalConfig& cfg, const Poly& f, Theta t, const Limits& limits) {
  const std::vector<Scalar> af = alpha_f_B(f, cfg);
  const Algebra k = product_algebra(af.size(), cfg.field());
  const IdempotentDecider decider(k, product_idempotents(af.size(), cfg.field()));
  const bool pred = nba_tau_member(f, cfg, limits.support_cap);
  return pred == omega_member(af, limits.support_cap) && pred == decider.decide(weight_hyperplane(af), t).is_mathieu;
}

bool nba_zero_set_holds(const EvalConfig& cfg, const Poly& g) {
  bool vanishes = true;
  for (std::size_t i : support(cfg.alpha)) vanishes = vanishes && g.evaluate(cfg.points[i]).is_zero();
  return (nba_member(g, cfg) && nba_sigma_member(g, cfg)) == vanishes;
}

/// g1, g2 in sigma with g1 + g2 outside, and g1 * (a_j L_i - a_i L_j) outside N.
bool nba_sum_breaks(const EvalConfig& cfg, const Poly& g1, const Poly& g2) {
  return nba_sigma_member(g1, cfg) && nba_sigma_member(g2, cfg) && !nba_sigma_member(g1 + g2, cfg);
}

std::vector<Entry> evaluation_check(const Profile& pr, std::uint64_t seed) {
  const Limits limits = inner_limits(pr);
  const std::string scope = std::to_string(pr.evaluation_configs) + " random rational configs, " +
                            std::to_string(pr.evaluation_samples) + " g each";
  Entry colon_e = make_entry("evaluation-subspaces", kColon, scope);
  Entry sigma_e = make_entry("evaluation-subspaces", kEvalSigma, std::to_string(pr.evaluation_configs) + " random rational configs");
  Entry tau_e = make_entry("evaluation-subspaces", kEvalTau, sigma_e.instance);
  Entry zero_e = make_entry("evaluation-subspaces", kZeroSet, scope);
  Entry sum_e = make_entry("evaluation-subspaces", kNonClosed, "configs with |S(alpha)| >= 2");
  std::size_t colon_ok = 0, colon_n = 0, sigma_ok = 0, tau_ok = 0, zero_ok = 0, zero_n = 0, zero_hits = 0;
  std::size_t sum_ok = 0, sum_n = 0, omega_hits = 0;
  double colon_ms = 0, sigma_ms = 0, tau_ms = 0, zero_ms = 0, sum_ms = 0;
  for (std::size_t ci = 0; ci < pr.evaluation_configs; ++ci) {
    Rng rng(mix_seed(seed, "evaluation-config", ci));
    const EvalCase c = random_eval_case(pr, rng);
    const Poly f = random_eval_poly(c, ci, pr.evaluation_degree, rng);
    std::vector<Poly> gs;
    for (std::size_t k = 0; k < pr.evaluation_samples; ++k) gs.push_back(random_eval_poly(c, k, pr.evaluation_degree, rng));

    Timer t0;
    for (const Poly& g : gs) {
      ++colon_n;
      if (nba_colon_holds(c.cfg, f, g)) {
        ++colon_ok;
      } else if (colon_e.witness.is_null()) {
        colon_e.witness = nba_witness("colon", c.cfg, f, &g, Theta::left);
      }
    }
    colon_ms += t0.ms();

    Timer t1;
    bool good = true;
    for (Theta t : kAllThetas) {
      if (!nba_sigma_route_holds(c.cfg, f, t)) {
        good = false;
        if (sigma_e.witness.is_null()) sigma_e.witness = nba_witness("sigma", c.cfg, f, nullptr, t);
      }
    }
    if (good) ++sigma_ok;
    sigma_ms += t1.ms();

    Timer t2;
    good = true;
    for (Theta t : kAllThetas) {
      if (!nba_tau_route_holds(c.cfg, f, t, limits)) {
        good = false;
        if (tau_e.witness.is_null()) tau_e.witness = nba_witness("tau", c.cfg, f, nullptr, t);
      }
    }
    if (good) ++tau_ok;
    if (nba_tau_member(f, c.cfg, limits.support_cap)) ++omega_hits;
    tau_ms += t2.ms();

    Timer t3;
    for (const Poly& g : gs) {
      ++zero_n;
      if (nba_member(g, c.cfg) && nba_sigma_member(g, c.cfg)) ++zero_hits;
      if (nba_zero_set_holds(c.cfg, g)) {
        ++zero_ok;
      } else if (zero_e.witness.is_null()) {
        zero_e.witness = nba_witness("zero-set", c.cfg, g, nullptr, Theta::left);
      }
    }
    zero_ms += t3.ms();

    Timer t4;
    const std::vector<std::size_t> s = support(c.cfg.alpha);
    if (s.size() >= 2) {
      ++sum_n;
      const std::size_t i = s[0], j = s[1];
      std::vector<Scalar> ei(c.cfg.points.size(), Scalar::zero(c.field()));
      std::vector<Scalar> ej = ei;
      ei[i] = Scalar::one(c.field());
      ej[j] = Scalar::one(c.field());
      const Poly li = c.interpolate(ei);
      const Poly lj = c.interpolate(ej);
      const Poly in_n = c.cfg.alpha[j] * li - c.cfg.alpha[i] * lj;
      const bool not_ideal = nba_member(in_n, c.cfg) && !nba_member(in_n * li, c.cfg);
      if (nba_sum_breaks(c.cfg, li, lj) && not_ideal) {
        ++sum_ok;
      } else if (sum_e.witness.is_null()) {
        sum_e.witness = nba_witness("sum", c.cfg, li, &lj, Theta::left);
      }
    }
    sum_ms += t4.ms();
  }
  colon_e.expected = "identity on " + std::to_string(colon_n) + " (f, g) pairs";
  colon_e.computed = ratio(colon_ok, colon_n) + " hold";
  colon_e.pass = colon_ok == colon_n;
  colon_e.ms = colon_ms;
  sigma_e.expected = "three routes agree for all thetas on " + std::to_string(pr.evaluation_configs) + " f";
  sigma_e.computed = ratio(sigma_ok, pr.evaluation_configs) + " agree";
  sigma_e.pass = sigma_ok == pr.evaluation_configs;
  sigma_e.ms = sigma_ms;
  tau_e.expected = sigma_e.expected;
  tau_e.computed = ratio(tau_ok, pr.evaluation_configs) + " agree; " + std::to_string(omega_hits) + " f in tau";
  tau_e.pass = tau_ok == pr.evaluation_configs;
  tau_e.ms = tau_ms;
  zero_e.expected = "identity on " + std::to_string(zero_n) + " g";
  zero_e.computed = ratio(zero_ok, zero_n) + " hold; " + std::to_string(zero_hits) + " g in N cap sigma(N)";
  zero_e.pass = zero_ok == zero_n;
  zero_e.ms = zero_ms;
  sum_e.expected = "violating pair and non-ideal product in all " + std::to_string(sum_n) + " configs";
  sum_e.computed = ratio(sum_ok, sum_n) + " found";
  sum_e.pass = sum_ok == sum_n;
  sum_e.ms = sum_ms;
  return {colon_e, sigma_e, tau_e, zero_e, sum_e};
}

// ------------------------------------------------------------ integral-subspaces

/// Independent route: dense product, antiderivative, Horner.
Scalar dense_integral(const Poly& f, const IntegralConfig& cfg) {
  const Field q = Field::rationals();
  const auto coeffs = [&](const Poly& p) {
    std::vector<mpq_class> c(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = p.coefficient({static_cast<std::uint32_t>(k)}).rational();
    return c;
  };
  const std::vector<mpq_class> a = coeffs(f), b = coeffs(cfg.q);
  std::vector<mpq_class> prod(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  std::vector<mpq_class> anti(prod.size() + 1);
  for (std::size_t k = 0; k < prod.size(); ++k) anti[k + 1] = prod[k] / static_cast<long>(k + 1);
  const auto horner = [&](const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = anti.rbegin(); it != anti.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  return Scalar(q, mpq_class(horner(cfg.b.rational()) - horner(cfg.a.rational())));
}

IntegralConfig random_integral_config(const Profile& pr, Rng& rng, bool ordered) {
  const Field q = Field::rationals();
  Scalar a = random_scalar(q, rng);
  Scalar b = random_scalar(q, rng);
  while (b == a) b = random_scalar(q, rng);
  if (ordered && b < a) std::swap(a, b);
  Poly qq(q, 1);
  while (qq.is_zero()) qq = random_poly(q, 1, pr.integral_degree, rng);
  return IntegralConfig{a, b, qq};
}

json nq_witness(const std::string& property, const IntegralConfig& cfg, const Poly& h, bool formula) {
  return json{{"kind", "nq"}, {"property", property}, {"config", io::to_json(cfg)}, {"h", io::to_json(h)},
              {"formula", formula}};
}

std::vector<Entry> integral_check(const Profile& pr, std::uint64_t seed) {
  const Field q = Field::rationals();
  const std::size_t n = pr.integral_samples;
  const std::string scope = std::to_string(n) + " random rational samples";
  Entry int_e = make_entry("integral-subspaces", kIntegral, scope + " (f, q, a, b)");
  Entry pos_e = make_entry("integral-subspaces", kPositivity, scope + " (q, a < b)");
  Entry tau_e = make_entry("integral-subspaces", kNqTau, scope + " (h, q, a, b)");
  Entry sig_e = make_entry("integral-subspaces", kNqSigma, tau_e.instance);
  Rng rng(seed);

  Timer t0;
  std::size_t int_ok = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const IntegralConfig cfg = random_integral_config(pr, rng, false);
    const Poly f = random_poly(q, 1, pr.integral_degree, rng);
    const Scalar v = exact_integral(f, cfg);
    // substitution z = a + (b - a) t onto [0, 1]
    const Scalar w = cfg.b - cfg.a;
    const IntegralConfig unit{Scalar::zero(q), Scalar::one(q), Poly::constant(q, 1, Scalar::one(q))};
    const Scalar sub = w * exact_integral((f * cfg.q).substitute_affine(w, cfg.a), unit);
    if (v == dense_integral(f, cfg) && v == sub) {
      ++int_ok;
    } else if (int_e.witness.is_null()) {
      int_e.witness = nq_witness("integral", cfg, f, true);
    }
  }
  int_e.expected = "exact value = dense oracle = [0,1] substitution on " + std::to_string(n) + " samples";
  int_e.computed = ratio(int_ok, n) + " agree";
  int_e.pass = int_ok == n;
  int_e.ms = t0.ms();

  Timer t1;
  std::size_t pos_ok = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const IntegralConfig cfg = random_integral_config(pr, rng, true);
    if (Scalar::zero(q) < exact_integral(cfg.q, cfg)) {
      ++pos_ok;
    } else if (pos_e.witness.is_null()) {
      pos_e.witness = nq_witness("positivity", cfg, cfg.q, true);
    }
  }
  pos_e.expected = "positive on " + std::to_string(n) + " samples";
  pos_e.computed = ratio(pos_ok, n) + " positive";
  pos_e.pass = pos_ok == n;
  pos_e.ms = t1.ms();

  Timer t2;
  std::size_t tau_ok = 0, sig_ok = 0, outside = 0, inside = 0;
  double sig_ms = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const IntegralConfig cfg = random_integral_config(pr, rng, false);
    const Poly h = random_poly(q, 1, pr.integral_degree, rng);
    const Scalar hq = exact_integral(h, cfg);
    const Scalar qq = exact_integral(cfg.q, cfg);
    const Poly h0 = h - (hq / qq) * cfg.q;  // projection into N_q
    bool good = nq_tau_member(Poly(q, 1), cfg);
    if (!hq.is_zero()) {
      ++outside;
      good = good && !nq_member(h, cfg) && nq_tau_member(h, cfg);
      if (!good && tau_e.witness.is_null()) tau_e.witness = nq_witness("tau", cfg, h, true);
    }
    good = good && nq_member(h0, cfg);
    if (!h0.is_zero()) {
      ++inside;
      // (N_q : h0) = N_{h0 q} holds 1 = 1^m but not (h0 q) * 1^m
      const IntegralConfig shifted{cfg.a, cfg.b, h0 * cfg.q};
      const bool certificate = exact_integral(Poly::constant(q, 1, Scalar::one(q)), shifted).is_zero() &&
                               !exact_integral(h0 * cfg.q, shifted).is_zero();
      const bool ok = !nq_tau_member(h0, cfg) && certificate;
      if (!ok && tau_e.witness.is_null()) tau_e.witness = nq_witness("tau", cfg, h0, false);
      good = good && ok;
    }
    if (good) ++tau_ok;

    Timer ts;
    bool sgood = nq_sigma_member(Poly(q, 1), cfg);
    for (const Poly* x : {&h, &h0}) {
      if (x->is_zero()) continue;
      // (N_q : x) = N_{xq}; g in N_{xq} with g * (g x q) outside certifies non-ideal
      const Poly xq = *x * cfg.q;
      const IntegralConfig shifted{cfg.a, cfg.b, xq};
      const Scalar norm = exact_integral(xq, shifted);
      bool certified = false;
      for (std::size_t d = 0; d < 2 && !certified; ++d) {
        const Poly r = Poly::monomial(q, {static_cast<std::uint32_t>(d)}, Scalar::one(q));
        const Poly g = r - (exact_integral(r, shifted) / norm) * xq;
        if (g.is_zero()) continue;
        certified = nq_member(g, shifted) && !nq_member(g * (g * xq), shifted);
      }
      const bool ok = !nq_sigma_member(*x, cfg) && certified;
      if (!ok && sig_e.witness.is_null()) sig_e.witness = nq_witness("sigma", cfg, *x, false);
      sgood = sgood && ok;
    }
    bool threw = false;
    try {
      nq_sigma_member(h, IntegralConfig{cfg.a, cfg.b, Poly(q, 1)});
    } catch (const InvalidArgument&) {
      threw = true;
    }
    if (sgood && threw) ++sig_ok;
    sig_ms += ts.ms();
  }
  tau_e.expected = "N_q^c in tau, N_q \\ {0} outside tau with certificate, 0 in tau; " + std::to_string(n) + " samples";
  tau_e.computed = ratio(tau_ok, n) + " consistent (" + std::to_string(outside) + " outside N_q, " +
                   std::to_string(inside) + " projected inside)";
  tau_e.pass = tau_ok == n;
  tau_e.ms = t2.ms() - sig_ms;
  sig_e.expected = "only 0 in sigma, non-ideal certificates, q = 0 rejected; " + std::to_string(n) + " samples";
  sig_e.computed = ratio(sig_ok, n) + " consistent";
  sig_e.pass = sig_ok == n;
  sig_e.ms = sig_ms;
  return {int_e, pos_e, tau_e, sig_e};
}

// ------------------------------------------------------------ functoriality

class SetsCache {
 public:
  explicit SetsCache(Limits limits) : limits_(limits) {}
  const StableSets& get(const ModulePtr& m) {
    auto it = sets_.find(m.get());
    if (it == sets_.end()) it = sets_.emplace(m.get(), std::make_unique<StableSets>(m, limits_)).first;
    return *it->second;
  }

 private:
  Limits limits_;
  std::map<const ModuleSpace*, std::unique_ptr<StableSets>> sets_;
};

/// Compares membership of u in sets of the source with membership of
/// image(u) in sets of the target, for every u of the source.
struct PairCompare {
  std::size_t strict = 0;  // implications that hold one way only

  bool run(const ThetaSets& source, const ThetaSets& target, const ModuleSpace& sm, const Subspace& sn,
           const ModuleSpace& tm, const Subspace& tn, const std::function<Vector(const Vector&)>& image,
           bool equality, bool with_sigma, const Limits& limits, json& witness) {
    bool good = true;
    for (const Vector u : enumerate_vectors(sm.dim(), sm.field(), limits.element_cap)) {
      const Vector v = image(u);
      for (std::size_t k = 0; k < 4; ++k) {
        for (bool stable : {false, true}) {
          if (stable && !with_sigma) continue;
          const bool at_target = (stable ? target.sigma[k] : target.tau[k]).contains(v);
          const bool at_source = (stable ? source.sigma[k] : source.tau[k]).contains(u);
          const bool ok = equality ? at_target == at_source : (!at_target || at_source);
          if (!equality && at_source && !at_target) ++strict;
          if (!ok) {
            good = false;
            if (witness.is_null()) {
              witness = colon_pair_witness(colon_side(tm, tn, v), colon_side(sm, sn, u), kAllThetas[k], stable,
                                           equality ? "equal" : "implies");
            }
          }
        }
      }
    }
    return good;
  }
};

Matrix random_combination(const std::vector<Matrix>& basis, Rng& rng) {
  Matrix out = Scalar::zero(basis[0].field()) * basis[0];
  for (const Matrix& b : basis) out += random_scalar(b.field(), rng) * b;
  return out;
}

std::vector<Entry> module_hom_check(const Profile& pr, std::uint64_t seed) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const std::vector<ZooModule> zoo = module_zoo(pr.zoo_primes);
  struct Pair {
    std::size_t source, target;
    std::vector<Matrix> basis;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < zoo.size(); ++i)
    for (std::size_t j = 0; j < zoo.size(); ++j) {
      if (zoo[i].group != zoo[j].group) continue;
      std::vector<Matrix> basis = hom_space_basis(*zoo[i].module, *zoo[j].module);
      if (!basis.empty()) pairs.push_back({i, j, std::move(basis)});
    }
  Entry e = make_entry("functoriality", kPullback,
                       std::to_string(pr.hom_samples) + " random homomorphisms among " + std::to_string(pairs.size()) +
                           " zoo module pairs");
  if (pairs.empty()) {
    e.expected = e.computed = "no homomorphisms";
    return {e};
  }
  SetsCache cache(limits);
  Rng rng(seed);
  std::size_t ok = 0;
  PairCompare cmp;
  for (std::size_t s = 0; s < pr.hom_samples; ++s) {
    const Pair& pp = pairs[uniform(rng, 0, pairs.size() - 1)];
    const ModulePtr& src = zoo[pp.source].module;
    const ModulePtr& tgt = zoo[pp.target].module;
    const ModuleHom phi(src, tgt, random_combination(pp.basis, rng));
    const Subspace h = random_subspace(tgt->field(), tgt->dim(), rng);
    const Subspace back = pullback_subspace(phi, h);
    const ThetaSets ts = cache.get(tgt).all(h);
    const ThetaSets ss = cache.get(src).all(back);
    if (cmp.run(ss, ts, *src, back, *tgt, h, [&](const Vector& u) { return phi.apply(u); }, true, true, limits,
                e.witness))
      ++ok;
  }
  e.expected = "equality of tau and of sigma for all thetas on " + std::to_string(pr.hom_samples) + " samples";
  e.computed = ratio(ok, pr.hom_samples) + " samples";
  e.pass = ok == pr.hom_samples;
  e.ms = timer.ms();
  return {e};
}

std::vector<Entry> quotient_check(const Profile& pr, std::uint64_t seed) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const std::vector<ZooModule> zoo = module_zoo(pr.zoo_primes);
  Entry e = make_entry("functoriality", kQuotient, std::to_string(pr.hom_samples) + " random (M, N, V) from the zoo");
  if (zoo.empty()) {
    e.expected = e.computed = "empty zoo";
    return {e};
  }
  SetsCache cache(limits);
  Rng rng(seed);
  std::size_t ok = 0, nontrivial = 0;
  PairCompare cmp;
  for (std::size_t s = 0; s < pr.hom_samples; ++s) {
    const ModulePtr& m = zoo[uniform(rng, 0, zoo.size() - 1)].module;
    const Subspace n = random_subspace(m->field(), m->dim(), rng);
    const Subspace in = max_submodule(*m, n);
    std::vector<Vector> gens;
    const std::size_t k = uniform(rng, 0, 2);
    for (std::size_t i = 0; i < k; ++i) {
      Vector g = m->zero();
      for (const Vector& b : in.basis()) g.add_scaled(random_scalar(m->field(), rng), b);
      gens.push_back(g);
    }
    const Subspace v = submodule_generated(*m, gens);
    if (!v.is_zero()) ++nontrivial;
    const QuotientModule qm = quotient_module(m, v);
    std::vector<Vector> images;
    for (const Vector& b : n.basis()) images.push_back(qm.projection.apply(b));
    const Subspace nv = Subspace::span(m->field(), qm.module->dim(), images);
    const ThetaSets ms = cache.get(m).all(n);
    const StableSets qsets(qm.module, limits);
    const ThetaSets qs = qsets.all(nv);
    if (cmp.run(ms, qs, *m, n, *qm.module, nv, [&](const Vector& u) { return qm.projection.apply(u); }, true, true,
                limits, e.witness))
      ++ok;
  }
  e.expected = "equality of tau and of sigma for all thetas on " + std::to_string(pr.hom_samples) + " samples";
  e.computed = ratio(ok, pr.hom_samples) + " samples (" + std::to_string(nontrivial) + " with V != 0)";
  e.pass = ok == pr.hom_samples;
  e.ms = timer.ms();
  return {e};
}

std::vector<Entry> algebra_hom_check(const Profile& pr) {
  const Limits limits = inner_limits(pr);
  Entry sur = make_entry("functoriality", kSurjection, "A -> A/I for every ideal I != A, all J in A/I");
  Entry inc = make_entry("functoriality", kInclusion, "K -> A, UT_2 -> M_2, K+K -> M_2, all J");
  Timer t0;
  std::size_t sur_ok = 0, sur_n = 0;
  PairCompare cmp;
  for (std::uint32_t p : pr.zoo_primes) {
    const Field f = Field::prime(p);
    for (AlgebraPtr a : {share(upper_triangular(2, f)), share(truncated_poly(3, f)), share(product_algebra(3, f))}) {
      const ModulePtr ra = regular_module(a);
      const StableSets asets(ra, limits);
      for (const Subspace& i : enumerate_subspaces(a->dim(), f, limits)) {
        if (i.contains(a->unit()) || !is_two_sided_ideal(*a, i)) continue;
        const QuotientAlgebra q = quotient_algebra(a, i);
        const ModulePtr rb = regular_module(q.algebra);
        const StableSets bsets(rb, limits);
        for (const Subspace& j : enumerate_subspaces(q.algebra->dim(), f, limits)) {
          ++sur_n;
          const Subspace back = q.projection.preimage(j);
          if (cmp.run(asets.all(back), bsets.all(j), *ra, back, *rb, j,
                      [&](const Vector& u) { return q.projection.apply(u); }, true, true, limits, sur.witness))
            ++sur_ok;
        }
      }
    }
  }
  sur.expected = "equality of tau and of sigma for all thetas on " + std::to_string(sur_n) + " (I, J)";
  sur.computed = ratio(sur_ok, sur_n) + " hold";
  sur.pass = sur_ok == sur_n;
  sur.ms = t0.ms();

  Timer t1;
  std::size_t inc_ok = 0, inc_n = 0;
  PairCompare icmp;
  for (std::uint32_t p : pr.zoo_primes) {
    const Field f = Field::prime(p);
    const AlgebraPtr k = share(product_algebra(1, f));
    const AlgebraPtr m2 = share(matrix_algebra(2, f));
    const AlgebraPtr ut = share(upper_triangular(2, f));
    const AlgebraPtr kk = share(product_algebra(2, f));
    std::vector<AlgebraHom> homs;
    for (const AlgebraPtr& target : {m2, ut, share(truncated_poly(2, f))}) {
      homs.emplace_back(k, target, Matrix::from_columns(f, target->dim(), std::vector<Vector>{target->unit()}));
    }
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = i; j < 2; ++j) cols.push_back(Vector::unit(f, 4, i * 2 + j));
    homs.emplace_back(ut, m2, Matrix::from_columns(f, 4, cols));
    homs.emplace_back(kk, m2, Matrix::from_columns(f, 4, std::vector<Vector>{Vector::unit(f, 4, 0), Vector::unit(f, 4, 3)}));
    for (const AlgebraHom& psi : homs) {
      const ModulePtr ra = regular_module(psi.source_ptr());
      const ModulePtr rb = regular_module(psi.target_ptr());
      const StableSets asets(ra, limits), bsets(rb, limits);
      for (const Subspace& j : enumerate_subspaces(psi.target().dim(), f, limits)) {
        ++inc_n;
        const Subspace back = psi.preimage(j);
        if (icmp.run(asets.all(back), bsets.all(j), *ra, back, *rb, j, [&](const Vector& u) { return psi.apply(u); },
                     false, false, limits, inc.witness))
          ++inc_ok;
      }
    }
  }
  inc.expected = "inclusion for all thetas on " + std::to_string(inc_n) + " J";
  inc.computed = ratio(inc_ok, inc_n) + " hold; " + std::to_string(icmp.strict) + " strict cases";
  inc.pass = inc_ok == inc_n;
  inc.ms = t1.ms();
  return {sur, inc};
}

// ------------------------------------------------------------ division-algebras

std::vector<Entry> division_check(const Profile& pr, std::uint32_t p) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  const Field f = Field::prime(p);
  const ModulePtr m = regular_module(share(product_algebra(1, f)));
  const StableSets sets(m, limits);
  const std::vector<Subspace> subspaces = enumerate_subspaces(1, f, limits);
  const VectorRange range = enumerate_vectors(1, f, limits.element_cap);
  Entry e = make_entry("division-algebras", kDivision, "F_" + std::to_string(p) + " over itself");
  std::size_t ok = 0;
  for (const Subspace& j : subspaces) {
    const ThetaSets s = sets.all(j);
    for (std::size_t k = 0; k < 4; ++k) {
      bool good = true;
      for (bool stable : {true, false}) {
        if (auto u = first_mismatch(stable ? s.sigma[k] : s.tau[k], range, [](const Vector&) { return true; })) {
          good = false;
          if (e.witness.is_null()) e.witness = membership_witness(*m, j, kAllThetas[k], stable, *u, true);
        }
      }
      if (good) ++ok;
    }
  }
  e.expected = "2 subspaces; sigma = tau = A for 8 (J, theta)";
  e.computed = std::to_string(subspaces.size()) + " subspaces; " + ratio(ok, subspaces.size() * 4) + " match";
  e.pass = subspaces.size() == 2 && ok == 8;
  e.ms = timer.ms();
  return {e};
}

// ------------------------------------------------------------ claims

std::vector<Entry> claim_check(const Profile& pr, const json& claim, std::size_t index) {
  Timer timer;
  const Limits limits = inner_limits(pr);
  Entry e = make_entry("claim", kClaim, "claim " + std::to_string(index));
  const json& aj = claim.at("algebra");
  const Algebra a = aj.is_string() ? io::build_algebra(aj.get<std::string>()) : io::algebra_from_json(aj);
  const Subspace j = io::subspace_from_json(a.field(), claim.at("subspace"), a.dim());
  const Theta t = parse_theta(claim.at("theta").get<std::string>());
  const std::string what = claim.at("claim").get<std::string>();
  e.instance += ": " + what + ", theta = " + theta_name(t) + ", dim J = " + std::to_string(j.dim());
  e.expected = what;
  if (what == "mathieu" || what == "not-mathieu") {
    const MathieuVerdict v = IdempotentDecider(a, limits).decide(j, t);
    e.computed = v.is_mathieu ? "mathieu" : "not-mathieu";
    if (e.computed != what) {
      e.witness = v.is_mathieu ? verdict_witness(a, j, t, "mathieu", false) : not_mathieu_witness(a, j, t, *v.witness, false);
    }
  } else if (what == "ideal" || what == "not-ideal") {
    const auto w = ideal_violation(a, j, t);
    e.computed = w ? "not-ideal" : "ideal";
    if (e.computed != what) e.witness = w ? not_ideal_witness(a, j, t, *w) : verdict_witness(a, j, t, "ideal", false);
  } else {
    throw SchemaError("unknown claim '" + what + "'");
  }
  e.pass = e.computed == what;
  e.ms = timer.ms();
  return {e};
}

// ------------------------------------------------------------ task list

std::vector<Task> tasks_for(const std::string& id, const Profile& pr) {
  std::vector<Task> out;
  const std::uint64_t cap = pr.limits.element_cap;
  if (id == "oracle-equivalence") {
    std::size_t idx = 0;
    for (const std::string& s : pr.oracle_exhaustive) out.push_back([&pr, s] { return oracle_equivalence(pr, s, false, 0); });
    for (const std::string& s : pr.oracle_sampled) {
      const std::uint64_t seed = mix_seed(pr.seed, id, idx++);
      out.push_back([&pr, s, seed] { return oracle_equivalence(pr, s, true, seed); });
    }
  } else if (id == "standard-module") {
    for (std::uint32_t p : pr.primes)
      for (std::size_t n : pr.sizes) {
        if (n < 2) continue;
        const std::string label = "K^" + std::to_string(n) + " over M_" + std::to_string(n) + "(F_" + std::to_string(p) + ")";
        if (over_cap(p, n, cap)) {
          out.push_back([=] { return std::vector<Entry>{skipped(id, kStandard, label, power(p, n * n), cap)}; });
        } else {
          out.push_back([&pr, p, n] { return standard_module_check(pr, p, n); });
        }
      }
  } else if (id == "trace-hyperplanes") {
    for (std::uint32_t p : pr.primes)
      for (std::size_t n : pr.sizes) {
        if (n < 2) continue;
        const std::uint64_t c = std::min(cap, pr.trace_cap);
        if (over_cap(p, n, c)) {
          const std::string label = "M_" + std::to_string(n) + "(F_" + std::to_string(p) + ")";
          out.push_back([=] { return std::vector<Entry>{skipped(id, kTrace, label, power(p, n * n), c)}; });
        } else {
          out.push_back([&pr, p, n] { return trace_hyperplanes_check(pr, p, n); });
        }
      }
  } else if (id == "codim-one-uniqueness") {
    for (std::uint32_t p : pr.primes)
      for (std::size_t n : pr.sizes) {
        if (over_cap(p, n, cap)) {
          const std::string label = "M_" + std::to_string(n) + "(F_" + std::to_string(p) + ")";
          out.push_back([=] { return std::vector<Entry>{skipped(id, kCodimOne, label, power(p, n * n), cap)}; });
        } else {
          out.push_back([&pr, p, n] { return codim_one_check(pr, p, n); });
        }
      }
  } else if (id == "max-submodule") {
    auto zoo = std::make_shared<std::vector<ZooModule>>(module_zoo(pr.zoo_primes));
    if (zoo->empty()) return out;
    for (std::size_t i = 0; i < zoo->size(); ++i) {
      const std::size_t pairs = pr.max_submodule_pairs / zoo->size() + (i < pr.max_submodule_pairs % zoo->size() ? 1 : 0);
      const std::uint64_t seed = mix_seed(pr.seed, id, i);
      out.push_back([&pr, zoo, i, pairs, seed] { return max_submodule_check(pr, (*zoo)[i], pairs, seed); });
    }
  } else if (id == "quasi-stable-classification") {
    for (const std::string& s : pr.quasi_stable_true) out.push_back([&pr, s] { return classification_check(pr, s, true, true); });
    for (const std::string& s : pr.quasi_stable_false) out.push_back([&pr, s] { return classification_check(pr, s, true, false); });
  } else if (id == "stable-classification") {
    for (const std::string& s : pr.stable_true) out.push_back([&pr, s] { return classification_check(pr, s, false, true); });
    for (const std::string& s : pr.stable_false) out.push_back([&pr, s] { return classification_check(pr, s, false, false); });
  } else if (id == "product-reduction") {
    std::size_t idx = 0;
    for (const ProductCase& pc : pr.product_cases) {
      const std::uint64_t seed = mix_seed(pr.seed, id, idx++);
      out.push_back([&pr, pc, seed] { return product_reduction_check(pr, pc, seed); });
    }
  } else if (id == "evaluation-subspaces") {
    if (pr.evaluation_configs > 0) out.push_back([&pr, seed = mix_seed(pr.seed, id, 0)] { return evaluation_check(pr, seed); });
  } else if (id == "integral-subspaces") {
    if (pr.integral_samples > 0) out.push_back([&pr, seed = mix_seed(pr.seed, id, 0)] { return integral_check(pr, seed); });
  } else if (id == "functoriality") {
    if (pr.hom_samples > 0) {
      out.push_back([&pr, seed = mix_seed(pr.seed, id, 0)] { return module_hom_check(pr, seed); });
      out.push_back([&pr, seed = mix_seed(pr.seed, id, 1)] { return quotient_check(pr, seed); });
    }
    out.push_back([&pr] { return algebra_hom_check(pr); });
  } else if (id == "division-algebras") {
    for (std::uint32_t p : pr.division_primes) out.push_back([&pr, p] { return division_check(pr, p); });
  } else if (id == "claims") {
    for (std::size_t i = 0; i < pr.claims.size(); ++i) out.push_back([&pr, i] { return claim_check(pr, pr.claims[i], i); });
  } else {
    throw SchemaError("unknown check id '" + id + "'");
  }
  return out;
}

// ------------------------------------------------------------ profile JSON

template <class T>
std::vector<T> list_of(const json& j, const char* key) {
  if (!j.is_array()) throw SchemaError(std::string(key) + " must be an array");
  try {
    return j.get<std::vector<T>>();
  } catch (const json::exception&) {
    throw SchemaError(std::string(key) + " has elements of the wrong type");
  }
}

template <class T>
T number_of(const json& j, const char* key) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw SchemaError(std::string(key) + " must be a non-negative integer");
  return j.get<T>();
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {
      "oracle-equivalence",   "standard-module",   "trace-hyperplanes",          "codim-one-uniqueness",
      "max-submodule",        "quasi-stable-classification", "stable-classification", "product-reduction",
      "evaluation-subspaces", "integral-subspaces", "functoriality",              "division-algebras",
      "claims"};
  return ids;
}

Profile default_profile() {
  Profile p;
  p.name = "default";
  p.checks = check_ids();
  p.primes = {2, 3, 5};
  p.sizes = {2, 3};
  p.seed = 20240601;
  p.oracle_exhaustive = {"product:2:2", "truncated:2:2", "truncated:2:3", "upper:2:2"};
  p.oracle_sampled = {"matrix:2:2", "matrix:2:3"};
  p.oracle_samples = 500;
  p.trace_cap = 1000;
  p.zoo_primes = {2, 3};
  p.max_submodule_pairs = 1000;
  p.quasi_stable_true = {"product:2:2", "truncated:2:2", "truncated:3:2", "truncated:2:3",
                         "product:1:2", "product:1:3", "product:1:5"};
  p.quasi_stable_false = {"matrix:2:2", "upper:2:2"};
  p.stable_true = {"product:1:2", "product:1:3", "product:2:2"};
  p.stable_false = {"product:2:3", "truncated:2:2"};
  p.product_cases = {{2, 3}, {2, 5}, {3, 3}};
  p.division_primes = {2, 3, 5, 7};
  return p;
}

Profile quick_profile() {
  Profile p = default_profile();
  p.name = "quick";
  p.primes = {2, 3};
  p.sizes = {2};
  p.oracle_exhaustive = {"product:2:2", "truncated:2:2"};
  p.oracle_sampled = {"matrix:2:2"};
  p.oracle_samples = 20;
  p.trace_cap = 100;
  p.zoo_primes = {2};
  p.max_submodule_pairs = 40;
  p.quasi_stable_true = {"product:2:2", "truncated:2:2", "product:1:3"};
  p.quasi_stable_false = {"upper:2:2"};
  p.stable_true = {"product:1:2", "product:2:2"};
  p.stable_false = {"product:2:3"};
  p.product_cases = {{2, 3}};
  p.product_polys = 2;
  p.evaluation_configs = 20;
  p.evaluation_samples = 10;
  p.integral_samples = 20;
  p.hom_samples = 10;
  p.division_primes = {2, 3};
  return p;
}

Profile empty_profile() {
  Profile p;
  p.name = "empty";
  return p;
}

Profile named_profile(const std::string& name) {
  if (name == "default") return default_profile();
  if (name == "quick") return quick_profile();
  if (name == "empty") return empty_profile();
  throw SchemaError("unknown profile '" + name + "'");
}

Profile profile_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("profile must be a JSON object");
  Profile p = named_profile(j.contains("base") ? j["base"].get<std::string>() : "default");
  if (!j.contains("name")) p.name = "custom";
  for (const auto& [key, v] : j.items()) {
    const char* k = key.c_str();
    if (key == "base") {
    } else if (key == "name") {
      if (!v.is_string()) throw SchemaError("name must be a string");
      p.name = v.get<std::string>();
    } else if (key == "checks") {
      if (v == "all") {
        p.checks = check_ids();
      } else {
        p.checks = list_of<std::string>(v, k);
        for (const std::string& id : p.checks)
          if (std::find(check_ids().begin(), check_ids().end(), id) == check_ids().end())
            throw SchemaError("unknown check id '" + id + "'");
      }
    } else if (key == "primes") {
      p.primes = list_of<std::uint32_t>(v, k);
    } else if (key == "sizes") {
      p.sizes = list_of<std::size_t>(v, k);
    } else if (key == "seed") {
      p.seed = number_of<std::uint64_t>(v, k);
    } else if (key == "element_cap") {
      p.limits.element_cap = number_of<std::uint64_t>(v, k);
    } else if (key == "subspace_cap") {
      p.limits.subspace_cap = number_of<std::uint64_t>(v, k);
    } else if (key == "support_cap") {
      p.limits.support_cap = number_of<std::size_t>(v, k);
    } else if (key == "threads") {
      p.limits.threads = number_of<unsigned>(v, k);
    } else if (key == "oracle_exhaustive") {
      p.oracle_exhaustive = list_of<std::string>(v, k);
    } else if (key == "oracle_sampled") {
      p.oracle_sampled = list_of<std::string>(v, k);
    } else if (key == "oracle_samples") {
      p.oracle_samples = number_of<std::size_t>(v, k);
    } else if (key == "trace_cap") {
      p.trace_cap = number_of<std::uint64_t>(v, k);
    } else if (key == "zoo_primes") {
      p.zoo_primes = list_of<std::uint32_t>(v, k);
    } else if (key == "max_submodule_pairs") {
      p.max_submodule_pairs = number_of<std::size_t>(v, k);
    } else if (key == "quasi_stable_true") {
      p.quasi_stable_true = list_of<std::string>(v, k);
    } else if (key == "quasi_stable_false") {
      p.quasi_stable_false = list_of<std::string>(v, k);
    } else if (key == "stable_true") {
      p.stable_true = list_of<std::string>(v, k);
    } else if (key == "stable_false") {
      p.stable_false = list_of<std::string>(v, k);
    } else if (key == "product_cases") {
      p.product_cases.clear();
      for (const auto& c : list_of<std::vector<std::uint64_t>>(v, k)) {
        if (c.size() != 2) throw SchemaError("product_cases entries are [l, p]");
        p.product_cases.push_back({static_cast<std::size_t>(c[0]), static_cast<std::uint32_t>(c[1])});
      }
    } else if (key == "product_polys") {
      p.product_polys = number_of<std::size_t>(v, k);
    } else if (key == "evaluation_configs") {
      p.evaluation_configs = number_of<std::size_t>(v, k);
    } else if (key == "evaluation_samples") {
      p.evaluation_samples = number_of<std::size_t>(v, k);
    } else if (key == "evaluation_points") {
      p.evaluation_points = number_of<std::size_t>(v, k);
    } else if (key == "evaluation_degree") {
      p.evaluation_degree = number_of<std::size_t>(v, k);
    } else if (key == "integral_samples") {
      p.integral_samples = number_of<std::size_t>(v, k);
    } else if (key == "integral_degree") {
      p.integral_degree = number_of<std::size_t>(v, k);
    } else if (key == "hom_samples") {
      p.hom_samples = number_of<std::size_t>(v, k);
    } else if (key == "division_primes") {
      p.division_primes = list_of<std::uint32_t>(v, k);
    } else if (key == "claims") {
      p.claims = list_of<json>(v, k);
    } else {
      throw SchemaError("unknown profile key '" + key + "'");
    }
  }
  for (auto list : {&p.primes, &p.zoo_primes, &p.division_primes})
    for (std::uint32_t q : *list)
      if (!is_prime_number(q)) throw SchemaError("not a prime: " + std::to_string(q));
  for (const ProductCase& c : p.product_cases)
    if (!is_prime_number(c.p) || c.l == 0 || c.l > c.p) throw SchemaError("product case needs 1 <= l <= p, p prime");
  for (const json& c : p.claims)
    for (const char* key : {"algebra", "subspace", "theta", "claim"})
      if (!c.is_object() || !c.contains(key)) throw SchemaError(std::string("claim is missing '") + key + "'");
  return p;
}

json to_json(const Profile& p) {
  json cases = json::array();
  for (const ProductCase& c : p.product_cases) cases.push_back({c.l, c.p});
  return json{{"name", p.name},
              {"checks", p.checks},
              {"primes", p.primes},
              {"sizes", p.sizes},
              {"seed", p.seed},
              {"element_cap", p.limits.element_cap},
              {"subspace_cap", p.limits.subspace_cap},
              {"support_cap", p.limits.support_cap},
              {"threads", p.limits.threads},
              {"oracle_exhaustive", p.oracle_exhaustive},
              {"oracle_sampled", p.oracle_sampled},
              {"oracle_samples", p.oracle_samples},
              {"trace_cap", p.trace_cap},
              {"zoo_primes", p.zoo_primes},
              {"max_submodule_pairs", p.max_submodule_pairs},
              {"quasi_stable_true", p.quasi_stable_true},
              {"quasi_stable_false", p.quasi_stable_false},
              {"stable_true", p.stable_true},
              {"stable_false", p.stable_false},
              {"product_cases", cases},
              {"product_polys", p.product_polys},
              {"evaluation_configs", p.evaluation_configs},
              {"evaluation_samples", p.evaluation_samples},
              {"evaluation_points", p.evaluation_points},
              {"evaluation_degree", p.evaluation_degree},
              {"integral_samples", p.integral_samples},
              {"integral_degree", p.integral_degree},
              {"hom_samples", p.hom_samples},
              {"division_primes", p.division_primes},
              {"claims", p.claims}};
}

bool Report::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
}

Report run_suite(const Profile& profile) {
  std::vector<Task> tasks;
  for (const std::string& id : profile.checks) {
    std::vector<Task> t = tasks_for(id, profile);
    tasks.insert(tasks.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  }
  std::vector<std::vector<Entry>> results(tasks.size());
  parallel_for(tasks.size(), profile.limits.threads, [&](std::size_t i) { results[i] = tasks[i](); });
  Report report;
  report.profile = profile.name;
  for (auto& r : results)
    for (Entry& e : r) report.entries.push_back(std::move(e));
  return report;
}

json to_json(const Report& report, bool timing) {
  json entries = json::array();
  for (const Entry& e : report.entries) {
    json j{{"id", e.id},       {"statement", e.statement}, {"instance", e.instance},
           {"expected", e.expected}, {"computed", e.computed}, {"pass", e.pass}};
    if (timing) j["ms"] = e.ms;
    if (!e.witness.is_null()) j["witness"] = e.witness;
    entries.push_back(std::move(j));
  }
  return json{{"profile", report.profile},
              {"passed", report.passed()},
              {"entries", entries},
              {"notes", json::array({"sigma for theta = pre-two-sided is computed with two-sided ideals, so it "
                                     "equals sigma for theta = two-sided"})}};
}

std::string to_text(const Report& report) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const Entry& e : report.entries) {
    if (!e.pass) ++failed;
    out << (e.pass ? "PASS " : "FAIL ") << e.id << " [" << e.instance << "]\n"
        << "     expected: " << e.expected << "\n"
        << "     computed: " << e.computed << "\n";
    out.setf(std::ios::fixed);
    out.precision(1);
    out << "     " << e.ms << " ms\n";
    if (!e.pass && !e.witness.is_null()) out << "     witness: " << e.witness.dump() << "\n";
  }
  out << "profile " << report.profile << ": " << report.entries.size() - failed << "/" << report.entries.size()
      << " entries pass; " << (report.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

// ------------------------------------------------------------ verify_witness

namespace {

struct AlgebraContext {
  Algebra algebra;
  Subspace subspace;
  Theta theta;
};

AlgebraContext algebra_context(const json& w) {
  Algebra a = io::algebra_from_json(w.at("algebra"));
  Subspace j = io::subspace_from_json(a.field(), w.at("subspace"), a.dim());
  return {std::move(a), std::move(j), parse_theta(w.at("theta").get<std::string>())};
}

bool stability_by_definition(const Algebra& a, Theta t, bool quasi, const Limits& limits) {
  for (const Subspace& j : enumerate_subspaces(a.dim(), a.field(), limits)) {
    if (j.contains(a.unit())) continue;
    const bool ok = quasi ? is_theta_mathieu_bruteforce(a, j, t, limits).is_mathieu
                          : !ideal_violation(a, j, t).has_value();
    if (!ok) return false;
  }
  return true;
}

WitnessCheck verdict_message(bool reproduced, const std::string& what) {
  return {reproduced, (reproduced ? "reproduced: " : "not reproduced: ") + what};
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

WitnessCheck verify_witness(const json& w, const Limits& limits) {
  try {
    const std::string kind = w.at("kind").get<std::string>();
    if (kind == "not-mathieu" || kind == "rejected-certificate") {
      const AlgebraContext c = algebra_context(w);
      const MathieuWitness mw = io::mathieu_witness_from_json(c.algebra.field(), w.at("witness"), c.algebra.dim());
      const bool ok = validate_mathieu_witness(c.algebra, c.subspace, c.theta, mw);
      if (kind == "not-mathieu") return verdict_message(ok, ok ? "certificate shows J is not Mathieu" : "certificate does not check");
      return verdict_message(!ok, ok ? "certificate checks after all" : "certificate is rejected");
    }
    if (kind == "not-ideal") {
      const AlgebraContext c = algebra_context(w);
      const IdealWitness iw = io::ideal_witness_from_json(c.algebra.field(), w.at("witness"), c.algebra.dim());
      const bool ok = validate_ideal_witness(c.algebra, c.subspace, c.theta, iw);
      return verdict_message(ok, ok ? "certificate shows J is not an ideal" : "certificate does not check");
    }
    if (kind == "verdict") {
      const AlgebraContext c = algebra_context(w);
      const std::string property = w.at("property").get<std::string>();
      const bool formula = w.at("formula").get<bool>();
      bool actual;
      if (property == "mathieu") {
        actual = is_theta_mathieu_bruteforce(c.algebra, c.subspace, c.theta, limits).is_mathieu;
      } else if (property == "ideal") {
        actual = !ideal_violation(c.algebra, c.subspace, c.theta).has_value();
      } else {
        throw SchemaError("unknown verdict property '" + property + "'");
      }
      return verdict_message(actual != formula, property + " recomputed as " + yes_no(actual) + ", expected " + yes_no(formula));
    }
    if (kind == "membership") {
      const ModulePtr m = io::module_from_json(w.at("module"));
      const Subspace n = io::subspace_from_json(m->field(), w.at("subspace"), m->dim());
      const Theta t = parse_theta(w.at("theta").get<std::string>());
      const bool stable = w.at("set").get<std::string>() == "sigma";
      const Vector u = io::vector_from_json(m->field(), w.at("element"), m->dim());
      const bool formula = w.at("formula").get<bool>();
      const bool actual = brute_member(*m, n, u, t, stable, limits);
      return verdict_message(actual != formula, std::string(stable ? "sigma" : "tau") + " membership recomputed as " +
                                                    yes_no(actual) + ", formula says " + yes_no(formula));
    }
    if (kind == "colon-pair") {
      const Theta t = parse_theta(w.at("theta").get<std::string>());
      const bool stable = w.at("set").get<std::string>() == "sigma";
      const auto side = [&](const json& s) {
        const ModulePtr m = io::module_from_json(s.at("module"));
        const Subspace n = io::subspace_from_json(m->field(), s.at("subspace"), m->dim());
        const Vector u = io::vector_from_json(m->field(), s.at("element"), m->dim());
        return brute_member(*m, n, u, t, stable, limits);
      };
      const bool first = side(w.at("first"));
      const bool second = side(w.at("second"));
      const bool equality = w.at("relation").get<std::string>() == "equal";
      const bool violated = equality ? first != second : (first && !second);
      return verdict_message(violated, "memberships recomputed as " + yes_no(first) + " and " + yes_no(second));
    }
    if (kind == "annihilator") {
      const AlgebraPtr a = share(io::algebra_from_json(w.at("algebra")));
      const Vector x = io::vector_from_json(a->field(), w.at("x"), a->dim());
      std::size_t n = 0;
      while (n * n < a->dim()) ++n;
      const Subspace h = kernel_of(trace_functional(x, n));
      const bool ok = max_submodule(*regular_module(a), h) == solve_right_kernel(a->right_multiplication(x)) &&
                      max_submodule(*right_regular_module(a), h) == solve_right_kernel(a->left_multiplication(x));
      return verdict_message(!ok, ok ? "largest ideals equal the annihilators" : "largest ideals differ from the annihilators");
    }
    if (kind == "stability") {
      const Algebra a = io::algebra_from_json(w.at("algebra"));
      const Theta t = parse_theta(w.at("theta").get<std::string>());
      const bool quasi = w.at("quasi").get<bool>();
      const bool formula = w.at("formula").get<bool>();
      const bool actual = stability_by_definition(a, t, quasi, limits);
      return verdict_message(actual != formula, std::string(quasi ? "quasi-stable" : "stable") + " recomputed as " +
                                                    yes_no(actual) + ", formula says " + yes_no(formula));
    }
    if (kind == "omega") {
      const Field f = io::field_from_json(w.at("field"));
      const std::vector<Scalar> alpha = io::scalars_from_json(f, w.at("alpha"));
      const Theta t = parse_theta(w.at("theta").get<std::string>());
      const bool om = omega_member(alpha, limits.support_cap);
      const bool m = is_theta_mathieu_bruteforce(product_algebra(alpha.size(), f), weight_hyperplane(alpha), t, limits).is_mathieu;
      return verdict_message(om != m, "omega_member " + yes_no(om) + ", hyperplane Mathieu " + yes_no(m));
    }
    if (kind == "nba") {
      const EvalConfig cfg = io::eval_config_from_json(w.at("config"));
      const Poly f = io::poly_from_json(cfg.field(), w.at("f"));
      const Theta t = parse_theta(w.at("theta").get<std::string>());
      const std::string property = w.at("property").get<std::string>();
      bool holds;
      if (property == "colon") {
        holds = nba_colon_holds(cfg, f, io::poly_from_json(cfg.field(), w.at("g")));
      } else if (property == "sigma") {
        holds = nba_sigma_route_holds(cfg, f, t);
      } else if (property == "tau") {
        holds = nba_tau_route_holds(cfg, f, t, limits);
      } else if (property == "zero-set") {
        holds = nba_zero_set_holds(cfg, f);
      } else if (property == "sum") {
        holds = nba_sum_breaks(cfg, f, io::poly_from_json(cfg.field(), w.at("g")));
      } else {
        throw SchemaError("unknown nba property '" + property + "'");
      }
      return verdict_message(!holds, property + (holds ? " identity holds" : " identity fails"));
    }
    if (kind == "nq") {
      const IntegralConfig cfg = io::integral_config_from_json(w.at("config"));
      const Poly h = io::poly_from_json(Field::rationals(), w.at("h"));
      const std::string property = w.at("property").get<std::string>();
      const bool formula = w.at("formula").get<bool>();
      if (property == "integral") {
        const bool same = exact_integral(h, cfg) == dense_integral(h, cfg);
        return verdict_message(!same, same ? "integrals agree" : "integrals differ");
      }
      if (property == "positivity") {
        const bool positive = Scalar::zero(Field::rationals()) < exact_integral(cfg.q, cfg);
        return verdict_message(!positive, positive ? "integral of q^2 is positive" : "integral of q^2 is not positive");
      }
      bool actual;
      if (property == "tau") {
        actual = nq_tau_member(h, cfg);
      } else if (property == "sigma") {
        actual = nq_sigma_member(h, cfg);
      } else {
        throw SchemaError("unknown nq property '" + property + "'");
      }
      return verdict_message(actual != formula, property + " membership " + yes_no(actual) + ", formula says " + yes_no(formula));
    }
    throw SchemaError("unknown witness kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed witness: ") + e.what());
  }
}

}  // namespace mathieu::suite
