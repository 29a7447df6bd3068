#include "mathieu/algebra.hpp"

#include <unordered_map>
#include <utility>

namespace mathieu {

std::string_view to_string(Theta theta) {
  switch (theta) {
    case Theta::left:
      return "left";
    case Theta::right:
      return "right";
    case Theta::pre_two_sided:
      return "pre";
    case Theta::two_sided:
      return "two";
  }
  return "?";
}

Theta parse_theta(std::string_view text) {
  if (text == "left") return Theta::left;
  if (text == "right") return Theta::right;
  if (text == "pre" || text == "pre-two-sided") return Theta::pre_two_sided;
  if (text == "two" || text == "two-sided") return Theta::two_sided;
  throw InvalidArgument("unknown theta '" + std::string(text) + "' (expected left|right|pre|two)");
}

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(Field field, std::size_t dim, Structure structure, Vector unit, bool validate_axioms)
    : field_(field), dim_(dim), structure_(std::move(structure)), unit_(std::move(unit)) {
  if (structure_.size() != dim_) throw DimensionMismatch("structure tensor must have dim rows");
  for (const auto& row : structure_) {
    if (row.size() != dim_) throw DimensionMismatch("structure tensor must be dim x dim");
    for (const Vector& v : row) {
      if (v.size() != dim_) throw DimensionMismatch("structure constants must have dim coordinates");
      if (v.field() != field_) throw FieldMismatch("structure constants over " + v.field().name());
    }
  }
  require_element(unit_);

  left_actions_.reserve(dim_);
  right_actions_.reserve(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Matrix left(field_, dim_, dim_);
    Matrix right(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        left(k, j) = structure_[i][j][k];
        right(k, j) = structure_[j][i][k];
      }
    left_actions_.push_back(std::move(left));
    right_actions_.push_back(std::move(right));
  }
  if (validate_axioms) validate();
}

void Algebra::require_element(const Vector& a) const {
  if (a.field() != field_) throw FieldMismatch("element over " + a.field().name() + " in an algebra over " + field_.name());
  if (a.size() != dim_) {
    throw DimensionMismatch("element has " + std::to_string(a.size()) + " coordinates, algebra has dimension " +
                            std::to_string(dim_));
  }
}

void Algebra::validate() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    const Vector ei = basis_vector(i);
    if (multiply(unit_, ei) != ei) throw AxiomViolation("unit * e_" + std::to_string(i) + " != e_" + std::to_string(i));
    if (multiply(ei, unit_) != ei) throw AxiomViolation("e_" + std::to_string(i) + " * unit != e_" + std::to_string(i));
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        const Vector lhs = right_actions_[k] * structure_[i][j];
        const Vector rhs = left_actions_[i] * structure_[j][k];
        if (lhs != rhs) {
          throw AxiomViolation("associativity fails for basis triple (" + std::to_string(i) + ", " +
                               std::to_string(j) + ", " + std::to_string(k) + ")");
        }
      }
}

Vector Algebra::multiply(const Vector& a, const Vector& b) const {
  require_element(a);
  require_element(b);
  Vector out(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j].is_zero()) continue;
      out.add_scaled(a[i] * b[j], structure_[i][j]);
    }
  }
  return out;
}

Matrix Algebra::left_multiplication(const Vector& a) const {
  require_element(a);
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!a[i].is_zero()) m += a[i] * left_actions_[i];
  return m;
}

Matrix Algebra::right_multiplication(const Vector& a) const {
  require_element(a);
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!a[i].is_zero()) m += a[i] * right_actions_[i];
  return m;
}

bool Algebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if (structure_[i][j] != structure_[j][i]) return false;
  return true;
}

// ---------------------------------------------------------------- powers

const Vector& PowerTrajectory::power(std::size_t m) const {
  if (m == 0) throw InvalidArgument("powers are indexed from 1");
  const std::size_t idx = m - 1;
  if (idx < tail.size()) return tail[idx];
  return cycle[(idx - tail.size()) % cycle.size()];
}

PowerTrajectory power_trajectory(const Algebra& algebra, const Vector& a) {
  if (!algebra.field().is_prime()) {
    throw Unsupported("power trajectories need a finite field; over Q the power sequence may never repeat");
  }
  std::unordered_map<Vector, std::size_t, VectorHash> seen;
  std::vector<Vector> powers;
  Vector current = a;
  while (true) {
    auto [it, inserted] = seen.emplace(current, powers.size());
    if (!inserted) {
      const auto start = static_cast<std::ptrdiff_t>(it->second);
      PowerTrajectory out;
      out.element = a;
      out.tail.assign(powers.begin(), powers.begin() + start);
      out.cycle.assign(powers.begin() + start, powers.end());
      return out;
    }
    powers.push_back(current);
    current = algebra.multiply(current, a);
  }
}

std::vector<Vector> idempotents(const Algebra& algebra, const Limits& limits) {
  std::vector<Vector> out;
  for (const Vector e : enumerate_vectors(algebra.dim(), algebra.field(), limits.element_cap)) {
    if (algebra.multiply(e, e) == e) out.push_back(e);
  }
  return out;
}

bool is_nilpotent(const Algebra& algebra, const Vector& a) {
  Vector power = a;
  for (std::size_t m = 1; m <= algebra.dim(); ++m) {
    if (power.is_zero()) return true;
    power = algebra.multiply(power, a);
  }
  return power.is_zero();
}

std::vector<Vector> nil_set(const Algebra& algebra, const Limits& limits) {
  std::vector<Vector> out;
  for (const Vector a : enumerate_vectors(algebra.dim(), algebra.field(), limits.element_cap)) {
    if (is_nilpotent(algebra, a)) out.push_back(a);
  }
  return out;
}

Subspace theta_ideal_generated(const Algebra& algebra, const Vector& a, Theta theta) {
  const std::size_t n = algebra.dim();
  std::vector<Vector> generators;
  const bool left = theta == Theta::left || theta == Theta::pre_two_sided;
  const bool right = theta == Theta::right || theta == Theta::pre_two_sided;
  if (left || right) {
    for (std::size_t i = 0; i < n; ++i) {
      if (left) generators.push_back(algebra.left_basis_action(i) * a);
      if (right) generators.push_back(algebra.right_basis_action(i) * a);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const Vector ba = algebra.left_basis_action(i) * a;
      for (std::size_t j = 0; j < n; ++j) generators.push_back(algebra.right_basis_action(j) * ba);
    }
  }
  return Subspace::span(algebra.field(), n, generators);
}

std::vector<Vector> radical_of_subspace(const Algebra& algebra, const Subspace& j, const Limits& limits) {
  std::vector<Vector> out;
  for (const Vector a : enumerate_vectors(algebra.dim(), algebra.field(), limits.element_cap)) {
    const PowerTrajectory t = power_trajectory(algebra, a);
    bool inside = true;
    for (const Vector& c : t.cycle) {
      if (!j.contains(c)) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(a);
  }
  return out;
}

Subspace algebra_colon(const Algebra& algebra, const Subspace& j, const Vector& a) {
  return linear_preimage(algebra.right_multiplication(a), j);
}

Subspace algebra_inverse_image(const Algebra& algebra, const Vector& a, const Subspace& j) {
  return linear_preimage(algebra.left_multiplication(a), j);
}

// ---------------------------------------------------------------- homomorphisms

AlgebraHom::AlgebraHom(AlgebraPtr source, AlgebraPtr target, Matrix matrix, bool validate)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!source_ || !target_) throw InvalidArgument("algebra homomorphism needs a source and a target");
  if (source_->field() != target_->field() || matrix_.field() != source_->field()) {
    throw FieldMismatch("algebra homomorphism between different fields");
  }
  if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim()) {
    throw DimensionMismatch("homomorphism matrix must be target_dim x source_dim");
  }
  if (!validate) return;
  if (apply(source_->unit()) != target_->unit()) throw AxiomViolation("homomorphism does not preserve the unit");
  for (std::size_t i = 0; i < source_->dim(); ++i)
    for (std::size_t k = 0; k < source_->dim(); ++k) {
      const Vector lhs = apply(source_->basis_product(i, k));
      const Vector rhs = target_->multiply(matrix_.column(i), matrix_.column(k));
      if (lhs != rhs) {
        throw AxiomViolation("homomorphism is not multiplicative on basis pair (" + std::to_string(i) + ", " +
                             std::to_string(k) + ")");
      }
    }
}

Subspace AlgebraHom::preimage(const Subspace& j) const { return linear_preimage(matrix_, j); }

Subspace AlgebraHom::image(const Subspace& j) const {
  std::vector<Vector> images;
  for (const Vector& v : j.basis()) images.push_back(apply(v));
  return Subspace::span(target_->field(), target_->dim(), images);
}

bool AlgebraHom::is_surjective() const { return rref(matrix_.transpose()).rank == target_->dim(); }

// ---------------------------------------------------------------- builders

Algebra matrix_algebra(std::size_t n, Field field) {
  if (n == 0) throw InvalidArgument("matrix algebra needs n >= 1");
  const std::size_t d = n * n;
  Algebra::Structure s(d, std::vector<Vector>(d, Vector(field, d)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) s[i * n + j][j * n + l] = Vector::unit(field, d, i * n + l);
  Vector unit(field, d);
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = Scalar::one(field);
  return Algebra(field, d, std::move(s), std::move(unit));
}

Algebra product_algebra(std::size_t l, Field field) {
  if (l == 0) throw InvalidArgument("product algebra needs at least one factor");
  Algebra::Structure s(l, std::vector<Vector>(l, Vector(field, l)));
  for (std::size_t i = 0; i < l; ++i) s[i][i] = Vector::unit(field, l, i);
  Vector unit(field, l);
  for (std::size_t i = 0; i < l; ++i) unit[i] = Scalar::one(field);
  return Algebra(field, l, std::move(s), std::move(unit));
}

Algebra truncated_poly(std::size_t k, Field field) {
  if (k == 0) throw InvalidArgument("K[x]/(x^k) needs k >= 1");
  Algebra::Structure s(k, std::vector<Vector>(k, Vector(field, k)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; i + j < k; ++j) s[i][j] = Vector::unit(field, k, i + j);
  return Algebra(field, k, std::move(s), Vector::unit(field, k, 0));
}

std::size_t upper_triangular_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j || j >= n) throw InvalidArgument("E_ij is not upper triangular");
  // rows 0..i-1 contribute n, n-1, ..., n-i+1 entries
  return i * n - i * (i - 1) / 2 + (j - i);
}

Algebra upper_triangular(std::size_t n, Field field) {
  if (n == 0) throw InvalidArgument("upper triangular algebra needs n >= 1");
  const std::size_t d = n * (n + 1) / 2;
  Algebra::Structure s(d, std::vector<Vector>(d, Vector(field, d)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t l = j; l < n; ++l) {
        s[upper_triangular_index(n, i, j)][upper_triangular_index(n, j, l)] =
            Vector::unit(field, d, upper_triangular_index(n, i, l));
      }
  Vector unit(field, d);
  for (std::size_t i = 0; i < n; ++i) unit[upper_triangular_index(n, i, i)] = Scalar::one(field);
  return Algebra(field, d, std::move(s), std::move(unit));
}

Algebra opposite(const Algebra& algebra) {
  const std::size_t d = algebra.dim();
  Algebra::Structure s(d, std::vector<Vector>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s[i][j] = algebra.basis_product(j, i);
  return Algebra(algebra.field(), d, std::move(s), algebra.unit(), false);
}

bool is_two_sided_ideal(const Algebra& algebra, const Subspace& ideal) {
  for (const Vector& v : ideal.basis())
    for (std::size_t i = 0; i < algebra.dim(); ++i) {
      if (!ideal.contains(algebra.left_basis_action(i) * v)) return false;
      if (!ideal.contains(algebra.right_basis_action(i) * v)) return false;
    }
  return true;
}

QuotientAlgebra quotient_algebra(const AlgebraPtr& algebra, const Subspace& ideal) {
  const Algebra& a = *algebra;
  if (ideal.field() != a.field() || ideal.ambient_dim() != a.dim()) {
    throw DimensionMismatch("ideal does not live in the algebra");
  }
  if (!is_two_sided_ideal(a, ideal)) throw InvalidArgument("quotient_algebra: subspace is not a two-sided ideal");
  if (ideal.is_full()) throw InvalidArgument("quotient_algebra: quotient by the whole algebra is not unital");

  const std::vector<std::size_t> coords = ideal.non_pivots();
  const std::size_t q = coords.size();
  const Field f = a.field();

  Matrix projection(f, q, a.dim());
  for (std::size_t c = 0; c < a.dim(); ++c) {
    const Vector r = ideal.reduce(Vector::unit(f, a.dim(), c));
    for (std::size_t k = 0; k < q; ++k) projection(k, c) = r[coords[k]];
  }

  Algebra::Structure s(q, std::vector<Vector>(q));
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t l = 0; l < q; ++l) s[k][l] = projection * a.basis_product(coords[k], coords[l]);

  auto quotient = std::make_shared<const Algebra>(f, q, std::move(s), projection * a.unit());
  return QuotientAlgebra{quotient, AlgebraHom(algebra, quotient, std::move(projection))};
}

}  // namespace mathieu
