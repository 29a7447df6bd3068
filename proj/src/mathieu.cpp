#include "mathieu/mathieu.hpp"

#include <algorithm>
#include <utility>

#include "mathieu/parallel.hpp"

namespace mathieu {

namespace {

bool uses_left(Theta theta) { return theta != Theta::right; }
bool uses_right(Theta theta) { return theta != Theta::left; }

void require_subspace_of(const Algebra& algebra, const Subspace& j) {
  if (j.field() != algebra.field()) throw FieldMismatch("subspace over " + j.field().name());
  if (j.ambient_dim() != algebra.dim()) throw DimensionMismatch("subspace does not live in the algebra");
}

std::optional<MathieuWitness> left_failure(const Algebra& algebra, const Subspace& j, const Vector& x,
                                           const Vector& a, std::size_t exponent) {
  for (std::size_t i = 0; i < algebra.dim(); ++i) {
    if (!j.contains(algebra.left_basis_action(i) * x)) {
      return MathieuWitness{a, exponent, algebra.basis_vector(i), std::nullopt};
    }
  }
  return std::nullopt;
}

std::optional<MathieuWitness> right_failure(const Algebra& algebra, const Subspace& j, const Vector& x,
                                            const Vector& a, std::size_t exponent) {
  for (std::size_t i = 0; i < algebra.dim(); ++i) {
    if (!j.contains(algebra.right_basis_action(i) * x)) {
      return MathieuWitness{a, exponent, std::nullopt, algebra.basis_vector(i)};
    }
  }
  return std::nullopt;
}

std::optional<MathieuWitness> two_sided_failure(const Algebra& algebra, const Subspace& j, const Vector& x,
                                                const Vector& a, std::size_t exponent) {
  for (std::size_t i = 0; i < algebra.dim(); ++i) {
    const Vector bx = algebra.left_basis_action(i) * x;
    for (std::size_t k = 0; k < algebra.dim(); ++k) {
      if (!j.contains(algebra.right_basis_action(k) * bx)) {
        return MathieuWitness{a, exponent, algebra.basis_vector(i), algebra.basis_vector(k)};
      }
    }
  }
  return std::nullopt;
}

std::optional<MathieuWitness> multiplier_failure(const Algebra& algebra, const Subspace& j, const Vector& x,
                                                 const Vector& a, std::size_t exponent, Theta theta) {
  switch (theta) {
    case Theta::left:
      return left_failure(algebra, j, x, a, exponent);
    case Theta::right:
      return right_failure(algebra, j, x, a, exponent);
    case Theta::pre_two_sided:
      if (auto w = left_failure(algebra, j, x, a, exponent)) return w;
      return right_failure(algebra, j, x, a, exponent);
    case Theta::two_sided:
      return two_sided_failure(algebra, j, x, a, exponent);
  }
  return std::nullopt;
}

MathieuVerdict failed(MathieuWitness w) { return MathieuVerdict{false, std::move(w)}; }

}  // namespace

// ---------------------------------------------------------------- ideals

std::optional<IdealWitness> ideal_violation(const Algebra& algebra, const Subspace& j, Theta theta) {
  require_subspace_of(algebra, j);
  for (const Vector& v : j.basis())
    for (std::size_t i = 0; i < algebra.dim(); ++i) {
      if (uses_left(theta) && !j.contains(algebra.left_basis_action(i) * v)) {
        return IdealWitness{v, algebra.basis_vector(i), true};
      }
      if (uses_right(theta) && !j.contains(algebra.right_basis_action(i) * v)) {
        return IdealWitness{v, algebra.basis_vector(i), false};
      }
    }
  return std::nullopt;
}

bool is_theta_ideal(const Algebra& algebra, const Subspace& j, Theta theta) {
  return !ideal_violation(algebra, j, theta).has_value();
}

bool validate_ideal_witness(const Algebra& algebra, const Subspace& j, Theta theta, const IdealWitness& w) {
  require_subspace_of(algebra, j);
  if (w.on_left ? !uses_left(theta) : !uses_right(theta)) return false;
  if (!j.contains(w.element)) return false;
  const Vector product = w.on_left ? algebra.multiply(w.multiplier, w.element) : algebra.multiply(w.element, w.multiplier);
  return !j.contains(product);
}

bool validate_mathieu_witness(const Algebra& algebra, const Subspace& j, Theta theta, const MathieuWitness& w) {
  require_subspace_of(algebra, j);
  if (theta == Theta::left && w.right) return false;
  if (theta == Theta::right && w.left) return false;
  if (theta == Theta::pre_two_sided && w.left && w.right) return false;
  if (w.exponent == 0) return false;

  Vector power;
  if (algebra.field().is_prime()) {
    const PowerTrajectory t = power_trajectory(algebra, w.a);
    for (const Vector& v : t.tail)
      if (!j.contains(v)) return false;
    for (const Vector& v : t.cycle)
      if (!j.contains(v)) return false;
    if (w.exponent <= t.tail.size()) return false;
    power = t.power(w.exponent);
  } else {
    if (!(algebra.multiply(w.a, w.a) == w.a)) {
      throw Unsupported("over Q only witnesses with an idempotent element can be re-checked");
    }
    if (!j.contains(w.a)) return false;
    power = w.a;
  }
  if (w.left) power = algebra.multiply(*w.left, power);
  if (w.right) power = algebra.multiply(power, *w.right);
  return !j.contains(power);
}

// ---------------------------------------------------------------- deciders

IdempotentDecider::IdempotentDecider(const Algebra& algebra, const Limits& limits)
    : algebra_(&algebra), idempotents_(mathieu::idempotents(algebra, limits)) {
  prepare();
}

IdempotentDecider::IdempotentDecider(const Algebra& algebra, std::vector<Vector> list)
    : algebra_(&algebra), idempotents_(std::move(list)) {
  for (const Vector& e : idempotents_) {
    if (!(algebra.multiply(e, e) == e)) throw InvalidArgument("supplied element " + e.to_string() + " is not idempotent");
  }
  prepare();
}

void IdempotentDecider::prepare() {
  for (const Vector& e : idempotents_) {
    left_.push_back(theta_ideal_generated(*algebra_, e, Theta::left));
    right_.push_back(theta_ideal_generated(*algebra_, e, Theta::right));
    two_.push_back(theta_ideal_generated(*algebra_, e, Theta::two_sided));
  }
}

MathieuVerdict IdempotentDecider::decide(const Subspace& j, Theta theta) const {
  require_subspace_of(*algebra_, j);
  for (std::size_t k = 0; k < idempotents_.size(); ++k) {
    const Vector& e = idempotents_[k];
    if (e.is_zero() || !j.contains(e)) continue;
    bool ok = true;
    switch (theta) {
      case Theta::left:
        ok = j.contains(left_[k]);
        break;
      case Theta::right:
        ok = j.contains(right_[k]);
        break;
      case Theta::pre_two_sided:
        ok = j.contains(left_[k]) && j.contains(right_[k]);
        break;
      case Theta::two_sided:
        ok = j.contains(two_[k]);
        break;
    }
    if (!ok) {
      // e is its own power sequence, so exponent 1 is in the periodic part
      if (auto w = multiplier_failure(*algebra_, j, e, e, 1, theta)) return failed(std::move(*w));
      throw Error("internal: generated ideal escapes J but no basis multiplier does");
    }
  }
  return {};
}

BruteForceDecider::BruteForceDecider(const Algebra& algebra, const Limits& limits) : algebra_(&algebra) {
  const VectorRange range = enumerate_vectors(algebra.dim(), algebra.field(), limits.element_cap);
  trajectories_.reserve(range.size());
  for (const Vector a : range) trajectories_.push_back(power_trajectory(algebra, a));
}

MathieuVerdict BruteForceDecider::decide(const Subspace& j, Theta theta) const {
  require_subspace_of(*algebra_, j);
  for (const PowerTrajectory& t : trajectories_) {
    if (t.element.is_zero()) continue;
    const auto in_j = [&](const Vector& v) { return j.contains(v); };
    if (!std::all_of(t.tail.begin(), t.tail.end(), in_j) || !std::all_of(t.cycle.begin(), t.cycle.end(), in_j)) {
      continue;
    }
    for (std::size_t k = 0; k < t.cycle.size(); ++k) {
      if (auto w = multiplier_failure(*algebra_, j, t.cycle[k], t.element, t.cycle_exponent(k), theta)) {
        return failed(std::move(*w));
      }
    }
  }
  return {};
}

MathieuVerdict is_theta_mathieu_bruteforce(const Algebra& algebra, const Subspace& j, Theta theta,
                                           const Limits& limits) {
  return BruteForceDecider(algebra, limits).decide(j, theta);
}

MathieuVerdict is_theta_mathieu_idempotent(const Algebra& algebra, const Subspace& j, Theta theta,
                                           const Limits& limits) {
  return IdempotentDecider(algebra, limits).decide(j, theta);
}

MathieuVerdict is_module_mathieu(const ModuleSpace& m, const Subspace& n, const Vector& u, Theta theta,
                                 const Limits& limits) {
  return is_theta_mathieu_idempotent(m.algebra(), colon(m, n, u), theta, limits);
}

// ---------------------------------------------------------------- element sets

ElementSet ElementSet::from_members(Field field, std::size_t ambient_dim, std::vector<Vector> members) {
  ElementSet s;
  s.field_ = field;
  s.ambient_dim_ = ambient_dim;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  s.members_ = std::move(members);
  return s;
}

ElementSet ElementSet::from_predicate(Field field, std::size_t ambient_dim, Predicate predicate) {
  if (!predicate) throw InvalidArgument("empty membership predicate");
  ElementSet s;
  s.field_ = field;
  s.ambient_dim_ = ambient_dim;
  s.predicate_ = std::move(predicate);
  return s;
}

const std::vector<Vector>& ElementSet::members() const {
  if (!is_explicit()) throw Unsupported("element set is only available as a membership predicate");
  return members_;
}

bool ElementSet::contains(const Vector& v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("element has the wrong dimension");
  if (predicate_) return predicate_(v);
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool operator==(const ElementSet& lhs, const ElementSet& rhs) {
  return lhs.field_ == rhs.field_ && lhs.ambient_dim_ == rhs.ambient_dim_ && lhs.members() == rhs.members();
}

// ---------------------------------------------------------------- sigma / tau

StableSets::StableSets(ModulePtr module, const Limits& limits)
    : module_(std::move(module)),
      limits_(limits),
      decider_(std::make_shared<const IdempotentDecider>(module_->algebra(), limits)) {}

const StableSets::Verdicts& StableSets::verdicts(const Subspace& j) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(j); it != cache_.end()) return it->second;
  }
  Verdicts v;
  for (Theta t : kAllThetas) {
    const auto k = static_cast<std::size_t>(t);
    v.ideal[k] = is_theta_ideal(module_->algebra(), j, t);
    // ideals are Mathieu; skip the idempotent scan for them
    v.mathieu[k] = v.ideal[k] ? MathieuVerdict{} : decider_->decide(j, t);
  }
  std::lock_guard lock(mutex_);
  return cache_.emplace(j, std::move(v)).first->second;
}

MathieuVerdict StableSets::mathieu(const Subspace& j, Theta theta) const {
  return verdicts(j).mathieu[static_cast<std::size_t>(theta)];
}

bool StableSets::ideal(const Subspace& j, Theta theta) const {
  return verdicts(j).ideal[static_cast<std::size_t>(theta)];
}

bool StableSets::in_sigma(const Subspace& n, const Vector& u, Theta theta) const {
  return ideal(colon(*module_, n, u), theta);
}

bool StableSets::in_tau(const Subspace& n, const Vector& u, Theta theta) const {
  return mathieu(colon(*module_, n, u), theta).is_mathieu;
}

ElementSet StableSets::sigma(const Subspace& n, Theta theta) const { return collect(n, theta, true); }
ElementSet StableSets::tau(const Subspace& n, Theta theta) const { return collect(n, theta, false); }

ThetaSets StableSets::all(const Subspace& n) const {
  const ModuleSpace& m = *module_;
  if (n.ambient_dim() != m.dim()) throw DimensionMismatch("subspace does not live in the module");
  const VectorRange range = enumerate_vectors(m.dim(), m.field(), limits_.element_cap);
  // bit k: sigma for theta k, bit 4+k: tau for theta k
  std::vector<unsigned char> flags(range.size(), 0);
  parallel_for(range.size(), limits_.threads, [&](std::size_t i) {
    const Verdicts& v = verdicts(colon(m, n, range.at(i)));
    unsigned char f = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      if (v.ideal[k]) f |= static_cast<unsigned char>(1U << k);
      if (v.mathieu[k].is_mathieu) f |= static_cast<unsigned char>(1U << (4 + k));
    }
    flags[i] = f;
  });
  ThetaSets out;
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<Vector> s, t;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (flags[i] & (1U << k)) s.push_back(range.at(i));
      if (flags[i] & (1U << (4 + k))) t.push_back(range.at(i));
    }
    out.sigma[k] = ElementSet::from_members(m.field(), m.dim(), std::move(s));
    out.tau[k] = ElementSet::from_members(m.field(), m.dim(), std::move(t));
  }
  return out;
}

ElementSet StableSets::collect(const Subspace& n, Theta theta, bool stable) const {
  const ModuleSpace& m = *module_;
  if (n.ambient_dim() != m.dim()) throw DimensionMismatch("subspace does not live in the module");
  if (saturating_power(m.field().characteristic(), m.dim()) > limits_.element_cap) {
    ModulePtr module = module_;
    std::shared_ptr<const IdempotentDecider> decider = decider_;
    return ElementSet::from_predicate(m.field(), m.dim(), [module, decider, n, theta, stable](const Vector& u) {
      const Subspace j = colon(*module, n, u);
      return stable ? is_theta_ideal(module->algebra(), j, theta) : decider->decide(j, theta).is_mathieu;
    });
  }
  const VectorRange range = enumerate_vectors(m.dim(), m.field(), limits_.element_cap);
  std::vector<char> flags(range.size(), 0);
  parallel_for(range.size(), limits_.threads, [&](std::size_t i) {
    const Vector u = range.at(i);
    flags[i] = stable ? in_sigma(n, u, theta) : in_tau(n, u, theta);
  });
  std::vector<Vector> members;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i]) members.push_back(range.at(i));
  return ElementSet::from_members(m.field(), m.dim(), std::move(members));
}

ElementSet sigma(const ModulePtr& m, const Subspace& n, Theta theta, const Limits& limits) {
  return StableSets(m, limits).sigma(n, theta);
}

ElementSet tau(const ModulePtr& m, const Subspace& n, Theta theta, const Limits& limits) {
  return StableSets(m, limits).tau(n, theta);
}

// ---------------------------------------------------------------- subspace enumeration

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

}  // namespace

std::uint64_t subspace_count(std::size_t dim, Field field) {
  if (!field.is_prime()) throw Unsupported("subspaces of Q^n cannot be enumerated");
  const std::uint64_t p = field.characteristic();
  // binom[k] = [n choose k]_p, via [n,k] = [n-1,k-1] + p^k [n-1,k]
  std::vector<std::uint64_t> binom(dim + 1, 0);
  binom[0] = 1;
  for (std::size_t n = 1; n <= dim; ++n)
    for (std::size_t k = n; k >= 1; --k) binom[k] = sat_add(binom[k - 1], sat_mul(saturating_power(p, k), binom[k]));
  std::uint64_t total = 0;
  for (std::uint64_t b : binom) total = sat_add(total, b);
  return total;
}

std::vector<Subspace> enumerate_subspaces(std::size_t dim, Field field, const Limits& limits) {
  const std::uint64_t count = subspace_count(dim, field);
  if (count > limits.subspace_cap) throw CapExceeded("subspaces of F_p^" + std::to_string(dim), count, limits.subspace_cap);
  const std::uint32_t p = field.characteristic();

  std::vector<Subspace> out;
  out.reserve(count);
  out.push_back(Subspace::zero(field, dim));
  for (std::size_t k = 1; k <= dim; ++k) {
    std::vector<bool> choose(dim, false);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::size_t> pivots;
      for (std::size_t c = 0; c < dim; ++c)
        if (choose[c]) pivots.push_back(c);
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = pivots[r] + 1; c < dim; ++c)
          if (!choose[c]) free.emplace_back(r, c);
      const std::uint64_t fills = saturating_power(p, free.size());
      for (std::uint64_t idx = 0; idx < fills; ++idx) {
        std::vector<Vector> rows(k, Vector(field, dim));
        for (std::size_t r = 0; r < k; ++r) rows[r][pivots[r]] = Scalar::one(field);
        std::uint64_t rest = idx;
        for (std::size_t f = free.size(); f-- > 0;) {
          rows[free[f].first][free[f].second] = Scalar(field, static_cast<std::int64_t>(rest % p));
          rest /= p;
        }
        out.push_back(Subspace::span(field, dim, rows));
      }
    } while (std::prev_permutation(choose.begin(), choose.end()));
  }
  return out;
}

// ---------------------------------------------------------------- stability

StabilityVerdict quasi_stable_algebra(const Algebra& algebra, Theta theta, const Limits& limits) {
  const IdempotentDecider decider(algebra, limits);
  for (const Subspace& j : enumerate_subspaces(algebra.dim(), algebra.field(), limits)) {
    if (j.contains(algebra.unit())) continue;
    MathieuVerdict v = decider.decide(j, theta);
    if (!v.is_mathieu) return StabilityVerdict{false, j, std::nullopt, std::move(v.witness), std::nullopt};
  }
  return {};
}

StabilityVerdict stable_algebra(const Algebra& algebra, Theta theta, const Limits& limits) {
  for (const Subspace& j : enumerate_subspaces(algebra.dim(), algebra.field(), limits)) {
    if (j.contains(algebra.unit())) continue;
    if (auto w = ideal_violation(algebra, j, theta)) {
      return StabilityVerdict{false, j, std::nullopt, std::nullopt, std::move(*w)};
    }
  }
  return {};
}

StabilityVerdict quasi_stable_module(const ModulePtr& m, Theta theta, const Limits& limits) {
  const StableSets sets(m, limits);
  const VectorRange elements = enumerate_vectors(m->dim(), m->field(), limits.element_cap);
  for (const Subspace& n : enumerate_subspaces(m->dim(), m->field(), limits)) {
    for (const Vector u : elements) {
      if (n.contains(u)) continue;
      MathieuVerdict v = sets.mathieu(colon(*m, n, u), theta);
      if (!v.is_mathieu) return StabilityVerdict{false, n, u, std::move(v.witness), std::nullopt};
    }
  }
  return {};
}

StabilityVerdict stable_module(const ModulePtr& m, Theta theta, const Limits& limits) {
  const VectorRange elements = enumerate_vectors(m->dim(), m->field(), limits.element_cap);
  for (const Subspace& n : enumerate_subspaces(m->dim(), m->field(), limits)) {
    for (const Vector u : elements) {
      if (n.contains(u)) continue;
      if (auto w = ideal_violation(m->algebra(), colon(*m, n, u), theta)) {
        return StabilityVerdict{false, n, u, std::nullopt, std::move(*w)};
      }
    }
  }
  return {};
}

bool validate_algebra_stability_witness(const Algebra& algebra, Theta theta, bool quasi, const StabilityVerdict& v) {
  if (v.holds || !v.subspace) return false;
  const Subspace& j = *v.subspace;
  if (j.contains(algebra.unit())) return false;
  if (quasi) return v.mathieu_witness && validate_mathieu_witness(algebra, j, theta, *v.mathieu_witness);
  return v.ideal_witness && validate_ideal_witness(algebra, j, theta, *v.ideal_witness);
}

bool validate_module_stability_witness(const ModuleSpace& m, Theta theta, bool quasi, const StabilityVerdict& v) {
  if (v.holds || !v.subspace || !v.element) return false;
  if (v.subspace->contains(*v.element)) return false;
  const Subspace j = colon(m, *v.subspace, *v.element);
  if (quasi) return v.mathieu_witness && validate_mathieu_witness(m.algebra(), j, theta, *v.mathieu_witness);
  return v.ideal_witness && validate_ideal_witness(m.algebra(), j, theta, *v.ideal_witness);
}

bool is_local(const Algebra& algebra, const Limits& limits) {
  for (const Vector& e : idempotents(algebra, limits))
    if (!e.is_zero() && !(e == algebra.unit())) return false;
  return true;
}

bool is_split_pair(const Algebra& algebra, const Limits& limits) {
  return algebra.dim() == 2 && !is_local(algebra, limits);
}

bool classified_quasi_stable(const Algebra& algebra, const Limits& limits) {
  return is_split_pair(algebra, limits) || is_local(algebra, limits);
}

bool classified_stable(const Algebra& algebra, const Limits& limits) {
  if (algebra.dim() == 1) return true;
  return algebra.field().characteristic() == 2 && is_split_pair(algebra, limits);
}

}  // namespace mathieu
