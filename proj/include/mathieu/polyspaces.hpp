#pragma once

// Codimension-one subspaces of polynomial algebras: weighted point
// evaluations N_{B,alpha} and integral conditions N_q.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mathieu/algebra.hpp"
#include "mathieu/exactfield.hpp"

namespace mathieu {

/// Polynomial in `vars` commuting variables, stored as a map from exponent
/// vectors to nonzero coefficients.
class Poly {
 public:
  using Exponent = std::vector<std::uint32_t>;

  Poly() = default;
  Poly(Field field, std::size_t vars);

  static Poly constant(Field field, std::size_t vars, const Scalar& c);
  static Poly variable(Field field, std::size_t vars, std::size_t index);
  static Poly monomial(Field field, Exponent exponent, const Scalar& c);
  /// Univariate, coeffs[k] multiplies z^k.
  static Poly univariate(Field field, std::span<const Scalar> coeffs);

  Field field() const { return field_; }
  std::size_t vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  Scalar coefficient(const Exponent& exponent) const;

  Scalar evaluate(std::span<const Scalar> point) const;
  /// Univariate only: z -> scale*z + shift.
  Poly substitute_affine(const Scalar& scale, const Scalar& shift) const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(const Scalar& c, const Poly& p);
  friend bool operator==(const Poly& lhs, const Poly& rhs) = default;

  std::string to_string() const;

 private:
  void add_term(const Exponent& exponent, const Scalar& c);
  void require_compatible(const Poly& other) const;

  Field field_;
  std::size_t vars_ = 1;
  std::map<Exponent, Scalar> terms_;
};

// ---------------------------------------------------------------- Omega

/// Indices i with alpha_i != 0.
std::vector<std::size_t> support(std::span<const Scalar> alpha);
/// A nonempty subset of the support with zero sum, if any. Throws
/// CapExceeded when the support is larger than support_cap.
std::optional<std::vector<std::size_t>> omega_violation(std::span<const Scalar> alpha, std::size_t support_cap = 20);
/// alpha is in Omega_l: every nonempty subset of the support has nonzero sum.
bool omega_member(std::span<const Scalar> alpha, std::size_t support_cap = 20);

// ---------------------------------------------------------------- N_{B,alpha}

struct EvalConfig {
  /// Distinct points u_1..u_l of K^n.
  std::vector<std::vector<Scalar>> points;
  std::vector<Scalar> alpha;

  Field field() const;
  std::size_t vars() const;
  /// Throws InvalidArgument on repeated points or inconsistent sizes/fields.
  void validate() const;
};

/// (alpha_1 f(u_1), ..., alpha_l f(u_l))
std::vector<Scalar> alpha_f_B(const Poly& f, const EvalConfig& cfg);

/// sum alpha_i f(u_i) = 0
bool nba_member(const Poly& f, const EvalConfig& cfg);
/// (N:f) is an ideal: at most one nonzero entry in alpha_{f,B}.
bool nba_sigma_member(const Poly& f, const EvalConfig& cfg);
/// (N:f) is Mathieu: alpha_{f,B} in Omega_l.
bool nba_tau_member(const Poly& f, const EvalConfig& cfg, std::size_t support_cap = 20);

/// {x in K^l : sum alpha_i x_i = 0}; all of K^l when alpha = 0.
Subspace weight_hyperplane(std::span<const Scalar> alpha);

struct ProductReduction {
  Algebra algebra;
  Subspace hyperplane;
};

/// Evaluation at the l distinct points maps K[z] onto product_algebra(l)
/// and N_{B,alpha} is the preimage of the weight hyperplane.
ProductReduction reduce_to_product_algebra(const EvalConfig& cfg);
/// The points 0, 1, ..., l-1 on the first coordinate line of K^vars.
/// Throws InvalidArgument when F_p has fewer than l elements.
std::vector<std::vector<Scalar>> line_points(std::size_t l, Field field, std::size_t vars = 1);

/// The 2^l coordinate idempotents of K^l (all 0/1 vectors), sorted.
std::vector<Vector> product_idempotents(std::size_t l, Field field);

/// Univariate Lagrange interpolant: 1 at points[i], 0 at the others.
Poly lagrange_basis(std::span<const Scalar> points, std::size_t i);

// ---------------------------------------------------------------- N_q

struct IntegralConfig {
  Scalar a;
  Scalar b;
  Poly q;

  /// Q only, a != b, q univariate.
  void validate() const;
};

/// Exact value of the integral of f*q from a to b, termwise by
/// int_a^b z^k dz = (b^(k+1) - a^(k+1)) / (k+1).
Scalar exact_integral(const Poly& f, const IntegralConfig& cfg);

bool nq_member(const Poly& f, const IntegralConfig& cfg);
/// sigma(N_q) = {0}; throws InvalidArgument for q = 0.
bool nq_sigma_member(const Poly& h, const IntegralConfig& cfg);
/// tau(N_q) = N_q^c together with 0; throws InvalidArgument for q = 0.
bool nq_tau_member(const Poly& h, const IntegralConfig& cfg);

}  // namespace mathieu
