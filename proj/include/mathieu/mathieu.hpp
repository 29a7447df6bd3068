#pragma once

// Deciders for theta-ideals and theta-Mathieu subspaces, the element sets
// sigma and tau of a module subspace, and (quasi-)stability testers.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mathieu/algebra.hpp"
#include "mathieu/module.hpp"

namespace mathieu {

/// The element x lies in J but multiplier*x (left) or x*multiplier (right)
/// does not.
struct IdealWitness {
  Vector element;
  Vector multiplier;
  bool on_left = true;
};

/// Every power of a lies in J, a^exponent is in the periodic part of the
/// power sequence, and left * a^exponent * right is not in J. A missing
/// multiplier stands for 1.
struct MathieuWitness {
  Vector a;
  std::size_t exponent = 1;
  std::optional<Vector> left;
  std::optional<Vector> right;
};

struct MathieuVerdict {
  bool is_mathieu = true;
  std::optional<MathieuWitness> witness;
};

/// Pre-two-sided ideals are two-sided ideals.
std::optional<IdealWitness> ideal_violation(const Algebra& algebra, const Subspace& j, Theta theta);
bool is_theta_ideal(const Algebra& algebra, const Subspace& j, Theta theta);
bool validate_ideal_witness(const Algebra& algebra, const Subspace& j, Theta theta, const IdealWitness& w);

/// Re-checks a witness from scratch. Over Q only idempotent a can be
/// checked (their power sequence is constant); other a throw Unsupported.
bool validate_mathieu_witness(const Algebra& algebra, const Subspace& j, Theta theta, const MathieuWitness& w);

/// J is theta-Mathieu iff (e)_theta lies in J for every idempotent e in J.
/// The idempotents and the ideals they generate are computed once. The
/// algebra must outlive the decider.
class IdempotentDecider {
 public:
  explicit IdempotentDecider(const Algebra& algebra, const Limits& limits = {});
  /// Caller-supplied idempotent list, e.g. over Q where no scan is possible.
  IdempotentDecider(const Algebra& algebra, std::vector<Vector> idempotents);

  MathieuVerdict decide(const Subspace& j, Theta theta) const;
  const std::vector<Vector>& idempotents() const { return idempotents_; }

 private:
  void prepare();

  const Algebra* algebra_;
  std::vector<Vector> idempotents_;
  std::vector<Subspace> left_;
  std::vector<Subspace> right_;
  std::vector<Subspace> two_;
};

/// Direct use of the definition over a finite field: for every a whose
/// powers all lie in J, test b * a^m * c over the periodic part of the power
/// sequence with b, c running over basis elements (enough by bilinearity).
class BruteForceDecider {
 public:
  explicit BruteForceDecider(const Algebra& algebra, const Limits& limits = {});

  MathieuVerdict decide(const Subspace& j, Theta theta) const;

 private:
  const Algebra* algebra_;
  std::vector<PowerTrajectory> trajectories_;
};

MathieuVerdict is_theta_mathieu_bruteforce(const Algebra& algebra, const Subspace& j, Theta theta,
                                           const Limits& limits = {});
MathieuVerdict is_theta_mathieu_idempotent(const Algebra& algebra, const Subspace& j, Theta theta,
                                           const Limits& limits = {});

/// Verdict for (N:u).
MathieuVerdict is_module_mathieu(const ModuleSpace& m, const Subspace& n, const Vector& u, Theta theta,
                                 const Limits& limits = {});

/// A set of module elements: an explicit sorted list, or only a membership
/// test when the module is too large to enumerate.
class ElementSet {
 public:
  using Predicate = std::function<bool(const Vector&)>;

  static ElementSet from_members(Field field, std::size_t ambient_dim, std::vector<Vector> members);
  static ElementSet from_predicate(Field field, std::size_t ambient_dim, Predicate predicate);

  Field field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  bool is_explicit() const { return !predicate_; }
  /// Explicit sets only.
  const std::vector<Vector>& members() const;
  std::size_t size() const { return members().size(); }
  bool contains(const Vector& v) const;

  /// Explicit sets only.
  friend bool operator==(const ElementSet& lhs, const ElementSet& rhs);

 private:
  Field field_;
  std::size_t ambient_dim_ = 0;
  std::vector<Vector> members_;
  Predicate predicate_;
};

/// sigma and tau of one subspace for every theta, indexed by Theta.
struct ThetaSets {
  std::array<ElementSet, 4> sigma;
  std::array<ElementSet, 4> tau;
};

/// Computes sigma_theta(N) and tau_theta(N) for subspaces of one module.
/// Ideal and Mathieu verdicts are cached per colon space for all four
/// thetas at once, so repeated queries on the same module are cheap.
/// Thread-safe.
class StableSets {
 public:
  explicit StableSets(ModulePtr module, const Limits& limits = {});

  const ModuleSpace& module() const { return *module_; }
  const ModulePtr& module_ptr() const { return module_; }
  const IdempotentDecider& decider() const { return *decider_; }

  /// (N:u) is a theta-ideal; sigma_pre coincides with sigma_two.
  bool in_sigma(const Subspace& n, const Vector& u, Theta theta) const;
  /// (N:u) is theta-Mathieu.
  bool in_tau(const Subspace& n, const Vector& u, Theta theta) const;
  /// Cached verdicts for a subspace of the algebra.
  MathieuVerdict mathieu(const Subspace& j, Theta theta) const;
  bool ideal(const Subspace& j, Theta theta) const;

  /// Sorted member lists when |M| is within the element cap, predicates
  /// otherwise.
  ElementSet sigma(const Subspace& n, Theta theta) const;
  ElementSet tau(const Subspace& n, Theta theta) const;
  /// One pass over M for all thetas; explicit lists only.
  ThetaSets all(const Subspace& n) const;

 private:
  struct Verdicts {
    std::array<bool, 4> ideal;
    std::array<MathieuVerdict, 4> mathieu;
  };
  const Verdicts& verdicts(const Subspace& j) const;
  ElementSet collect(const Subspace& n, Theta theta, bool stable) const;

  ModulePtr module_;
  Limits limits_;
  std::shared_ptr<const IdempotentDecider> decider_;
  mutable std::mutex mutex_;
  // node-based, so references to cached values stay valid
  mutable std::unordered_map<Subspace, Verdicts, SubspaceHash> cache_;
};

ElementSet sigma(const ModulePtr& m, const Subspace& n, Theta theta, const Limits& limits = {});
ElementSet tau(const ModulePtr& m, const Subspace& n, Theta theta, const Limits& limits = {});

/// Number of subspaces of F_p^dim (sum of Gaussian binomials), saturating.
std::uint64_t subspace_count(std::size_t dim, Field field);
/// Every subspace exactly once, grouped by dimension then by pivot profile.
/// Throws CapExceeded when the count exceeds limits.subspace_cap.
std::vector<Subspace> enumerate_subspaces(std::size_t dim, Field field, const Limits& limits = {});

/// Outcome of an exhaustive (quasi-)stability test. On failure `subspace`
/// is the offending J or N; in the module case `element` is the u in N^c
/// outside tau (or sigma), and the witness refers to the colon space (N:u).
struct StabilityVerdict {
  bool holds = true;
  std::optional<Subspace> subspace;
  std::optional<Vector> element;
  std::optional<MathieuWitness> mathieu_witness;
  std::optional<IdealWitness> ideal_witness;
};

/// Every J with 1 not in J is theta-Mathieu.
StabilityVerdict quasi_stable_algebra(const Algebra& algebra, Theta theta, const Limits& limits = {});
/// Every J with 1 not in J is a theta-ideal.
StabilityVerdict stable_algebra(const Algebra& algebra, Theta theta, const Limits& limits = {});
/// N^c is inside tau_theta(N) for every N.
StabilityVerdict quasi_stable_module(const ModulePtr& m, Theta theta, const Limits& limits = {});
/// N^c is inside sigma_theta(N) for every N.
StabilityVerdict stable_module(const ModulePtr& m, Theta theta, const Limits& limits = {});

/// Re-checks a failing verdict of the algebra testers.
bool validate_algebra_stability_witness(const Algebra& algebra, Theta theta, bool quasi, const StabilityVerdict& v);
/// Re-checks a failing verdict of the module testers.
bool validate_module_stability_witness(const ModuleSpace& m, Theta theta, bool quasi, const StabilityVerdict& v);

/// No idempotents besides 0 and 1.
bool is_local(const Algebra& algebra, const Limits& limits = {});
/// Isomorphic to K+K with the componentwise product: dimension 2 and a
/// nontrivial idempotent e (then A = Ke + K(1-e)).
bool is_split_pair(const Algebra& algebra, const Limits& limits = {});
/// The classification of quasi-stable algebras: K+K or local.
bool classified_quasi_stable(const Algebra& algebra, const Limits& limits = {});
/// The classification of stable algebras: A = K, or K = F_2 and A = F_2+F_2.
bool classified_stable(const Algebra& algebra, const Limits& limits = {});

}  // namespace mathieu
