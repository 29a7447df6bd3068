#pragma once

// Exact scalars over F_p and Q, dense vectors and matrices, and subspaces
// kept in canonical reduced row-echelon form.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "mathieu/error.hpp"

namespace mathieu {

/// Either a prime field F_p (p < 2^31) or the rationals.
class Field {
 public:
  /// The rationals.
  constexpr Field() = default;

  static Field prime(std::uint32_t p);
  static constexpr Field rationals() { return Field{}; }

  constexpr bool is_rational() const { return p_ == 0; }
  constexpr bool is_prime() const { return p_ != 0; }
  /// 0 for Q.
  constexpr std::uint32_t characteristic() const { return p_; }

  std::string name() const;

  friend constexpr bool operator==(Field, Field) = default;

 private:
  explicit constexpr Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime_number(std::uint64_t n);

/// An element of F_p (residue in [0, p)) or of Q (lowest terms, positive
/// denominator; mpq_class canonicalizes on every operation).
class Scalar {
 public:
  /// Rational zero.
  Scalar() = default;
  Scalar(Field field, std::int64_t value);
  Scalar(Field field, const mpq_class& value);

  static Scalar zero(Field field) { return Scalar(field, 0); }
  static Scalar one(Field field) { return Scalar(field, 1); }
  /// Parses "a", "-a" or "a/b"; over F_p the fraction is mapped to a*b^{-1}.
  static Scalar parse(Field field, const std::string& text);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Residue in [0, p); F_p only.
  std::uint32_t residue() const;
  /// Q only.
  const mpq_class& rational() const;

  Scalar inverse() const;
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  /// Residue order over F_p, numeric order over Q.
  friend bool operator<(const Scalar& lhs, const Scalar& rhs);

 private:
  void require_same_field(const Scalar& other) const;

  Field field_;
  std::variant<std::uint32_t, mpq_class> value_ = mpq_class(0);
};

/// A coordinate vector; every entry carries the vector's field tag.
class Vector {
 public:
  Vector() = default;
  Vector(Field field, std::size_t size);
  Vector(Field field, std::vector<Scalar> entries);

  static Vector from_ints(Field field, std::span<const std::int64_t> values);
  static Vector from_ints(Field field, std::initializer_list<std::int64_t> values);
  static Vector unit(Field field, std::size_t size, std::size_t index);

  Field field() const { return field_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool is_zero() const;

  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  /// Callers must keep the field tag of assigned entries.
  Scalar& operator[](std::size_t i) { return entries_[i]; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<Scalar>& entries() const { return entries_; }

  Vector& operator+=(const Vector& rhs);
  Vector& operator-=(const Vector& rhs);
  Vector& operator*=(const Scalar& c);
  /// this += c * rhs
  void add_scaled(const Scalar& c, const Vector& rhs);

  friend Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
  friend Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
  friend Vector operator*(const Scalar& c, Vector v) { return v *= c; }
  Vector operator-() const;

  friend bool operator==(const Vector& lhs, const Vector& rhs);
  /// Lexicographic, first coordinate most significant.
  friend bool operator<(const Vector& lhs, const Vector& rhs);

  std::string to_string() const;

 private:
  void require_compatible(const Vector& other) const;

  Field field_;
  std::vector<Scalar> entries_;
};

struct VectorHash {
  std::size_t operator()(const Vector& v) const noexcept;
};

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(Field field, std::size_t n);
  static Matrix from_rows(Field field, std::size_t cols, std::span<const Vector> rows);
  static Matrix from_columns(Field field, std::size_t rows, std::span<const Vector> cols);
  static Matrix from_ints(Field field, std::initializer_list<std::initializer_list<std::int64_t>> rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;

  Vector operator*(const Vector& v) const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(const Scalar& c, Matrix m);

  friend bool operator==(const Matrix& lhs, const Matrix& rhs);

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RowSpace;

/// A linear subspace of Field^n stored as its canonical RREF basis. Two
/// subspaces are equal as sets iff they compare equal structurally.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Field field, std::size_t ambient_dim);
  static Subspace full(Field field, std::size_t ambient_dim);
  static Subspace span(Field field, std::size_t ambient_dim, std::span<const Vector> vectors);
  static Subspace span(Field field, std::size_t ambient_dim, std::initializer_list<Vector> vectors);

  Field field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_dim_; }

  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Columns without a pivot, ascending; coordinates on a complement.
  std::vector<std::size_t> non_pivots() const;

  /// Remainder of v after clearing every pivot coordinate; linear in v and
  /// zero exactly on the subspace.
  Vector reduce(const Vector& v) const;
  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& lhs, const Subspace& rhs) = default;

 private:
  friend RowSpace rref(const Matrix& matrix);

  Field field_;
  std::size_t ambient_dim_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept;
};

struct RowSpace {
  Subspace space;
  std::size_t rank = 0;
};

/// Canonical row space of a matrix.
RowSpace rref(const Matrix& matrix);

/// {v : matrix * v = 0}
Subspace solve_right_kernel(const Matrix& matrix);

/// {x : map * x in target}
Subspace linear_preimage(const Matrix& map, const Subspace& target);

Subspace subspace_sum(const Subspace& u, const Subspace& v);
/// Zassenhaus intersection.
Subspace subspace_intersect(const Subspace& u, const Subspace& v);
bool subspace_contains(const Subspace& u, const Vector& v);

/// Enumeration caps shared by every exhaustive routine.
struct Limits {
  std::uint64_t element_cap = std::uint64_t{1} << 20;
  std::uint64_t subspace_cap = std::uint64_t{1} << 16;
  std::size_t support_cap = 20;
  /// Worker threads for partitioned scans; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// p^dim, saturating at UINT64_MAX.
std::uint64_t saturating_power(std::uint64_t p, std::size_t dim);

/// All vectors of F_p^dim in lexicographic order, addressable by index.
class VectorRange {
 public:
  VectorRange(Field field, std::size_t dim, std::uint64_t count)
      : field_(field), dim_(dim), count_(count) {}

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Vector;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Vector;

    iterator() = default;
    iterator(const VectorRange* range, std::uint64_t index) : range_(range), index_(index) {}
    Vector operator*() const { return range_->at(index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++index_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    const VectorRange* range_ = nullptr;
    std::uint64_t index_ = 0;
  };

  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::uint64_t size() const { return count_; }
  Vector at(std::uint64_t index) const;
  std::uint64_t index_of(const Vector& v) const;

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, count_); }

 private:
  Field field_;
  std::size_t dim_;
  std::uint64_t count_;
};

/// Throws CapExceeded (with the required count) when p^dim > cap, and
/// Unsupported over Q.
VectorRange enumerate_vectors(std::size_t dim, Field field, std::uint64_t cap);

/// Index of v in the lexicographic enumeration of F_p^n.
std::uint64_t vector_index(const Vector& v);

}  // namespace mathieu
