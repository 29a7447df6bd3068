#pragma once

// Finite-dimensional unital associative algebras given by structure constants.

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mathieu/exactfield.hpp"

namespace mathieu {

/// Which side multipliers are applied on. Pre-two-sided Mathieu means left
/// and right Mathieu; pre-two-sided ideals are two-sided ideals.
enum class Theta { left, right, pre_two_sided, two_sided };

inline constexpr std::array<Theta, 4> kAllThetas = {Theta::left, Theta::right, Theta::pre_two_sided,
                                                    Theta::two_sided};

/// "left", "right", "pre", "two".
std::string_view to_string(Theta theta);
/// Accepts the short names plus "pre-two-sided" and "two-sided".
Theta parse_theta(std::string_view text);

/// e_i * e_j = sum_k structure[i][j][k] e_k, with a distinguished unit.
/// Associativity and the unit axioms are checked on construction unless
/// validation is explicitly disabled.
class Algebra {
 public:
  using Structure = std::vector<std::vector<Vector>>;

  Algebra(Field field, std::size_t dim, Structure structure, Vector unit, bool validate = true);

  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vector& unit() const { return unit_; }
  const Structure& structure() const { return structure_; }
  const Vector& basis_product(std::size_t i, std::size_t j) const { return structure_[i][j]; }
  Vector basis_vector(std::size_t i) const { return Vector::unit(field_, dim_, i); }
  Vector zero() const { return Vector(field_, dim_); }

  Vector multiply(const Vector& a, const Vector& b) const;

  /// Matrix of x -> e_i * x.
  const Matrix& left_basis_action(std::size_t i) const { return left_actions_[i]; }
  /// Matrix of x -> x * e_i.
  const Matrix& right_basis_action(std::size_t i) const { return right_actions_[i]; }
  /// Matrix of x -> a * x.
  Matrix left_multiplication(const Vector& a) const;
  /// Matrix of x -> x * a.
  Matrix right_multiplication(const Vector& a) const;

  bool is_commutative() const;

  friend bool operator==(const Algebra& lhs, const Algebra& rhs) {
    return lhs.field_ == rhs.field_ && lhs.dim_ == rhs.dim_ && lhs.unit_ == rhs.unit_ &&
           lhs.structure_ == rhs.structure_;
  }

 private:
  void require_element(const Vector& a) const;
  void validate() const;

  Field field_;
  std::size_t dim_;
  Structure structure_;
  Vector unit_;
  std::vector<Matrix> left_actions_;
  std::vector<Matrix> right_actions_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// The successive powers a, a^2, a^3, ... split into the pre-period and the
/// period. The first element of `cycle` is the first power that repeats.
struct PowerTrajectory {
  Vector element;
  std::vector<Vector> tail;
  std::vector<Vector> cycle;

  /// Exponent of cycle[k].
  std::size_t cycle_exponent(std::size_t k) const { return tail.size() + k + 1; }
  /// a^m for any m >= 1.
  const Vector& power(std::size_t m) const;
};

/// Finite fields only.
PowerTrajectory power_trajectory(const Algebra& algebra, const Vector& a);

/// All e with e*e = e, sorted.
std::vector<Vector> idempotents(const Algebra& algebra, const Limits& limits = {});

/// Works over any field: a is nilpotent iff a^(dim+1) = 0.
bool is_nilpotent(const Algebra& algebra, const Vector& a);
std::vector<Vector> nil_set(const Algebra& algebra, const Limits& limits = {});

/// (a)_theta: Aa, aA, Aa + aA or AaA (the unit makes each contain a).
Subspace theta_ideal_generated(const Algebra& algebra, const Vector& a, Theta theta);

/// The elements whose powers eventually stay in J (finite fields).
std::vector<Vector> radical_of_subspace(const Algebra& algebra, const Subspace& j, const Limits& limits = {});

/// {b : b*a in J}
Subspace algebra_colon(const Algebra& algebra, const Subspace& j, const Vector& a);
/// a^{-1}J = {b : a*b in J}
Subspace algebra_inverse_image(const Algebra& algebra, const Vector& a, const Subspace& j);

/// A unital algebra homomorphism given by its matrix (target_dim x source_dim).
class AlgebraHom {
 public:
  AlgebraHom(AlgebraPtr source, AlgebraPtr target, Matrix matrix, bool validate = true);

  const Algebra& source() const { return *source_; }
  const Algebra& target() const { return *target_; }
  const AlgebraPtr& source_ptr() const { return source_; }
  const AlgebraPtr& target_ptr() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  Vector apply(const Vector& a) const { return matrix_ * a; }
  Subspace preimage(const Subspace& j) const;
  Subspace image(const Subspace& j) const;
  bool is_surjective() const;

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  Matrix matrix_;
};

// Builders. Basis conventions:
//   matrix_algebra     E_ij at index i*n + j
//   upper_triangular   E_ij (i <= j) in row-major order
//   truncated_poly     1, x, ..., x^(k-1)
//   product_algebra    the coordinate idempotents of K^l

Algebra matrix_algebra(std::size_t n, Field field);
/// K^l with the componentwise product; l = 2 gives K+K.
Algebra product_algebra(std::size_t l, Field field);
/// K[x]/(x^k)
Algebra truncated_poly(std::size_t k, Field field);
Algebra upper_triangular(std::size_t n, Field field);
Algebra opposite(const Algebra& algebra);

/// Basis index of E_ij in upper_triangular(n, .).
std::size_t upper_triangular_index(std::size_t n, std::size_t i, std::size_t j);

bool is_two_sided_ideal(const Algebra& algebra, const Subspace& i);

struct QuotientAlgebra {
  AlgebraPtr algebra;
  AlgebraHom projection;
};

/// A/I on the coordinates of the non-pivot columns of I. Throws
/// InvalidArgument if I is not a two-sided ideal.
QuotientAlgebra quotient_algebra(const AlgebraPtr& algebra, const Subspace& ideal);

}  // namespace mathieu
