#include "mathieu/exactfield.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

namespace mathieu {

namespace {

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t mpz_mod_prime(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

// ---------------------------------------------------------------- Field

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (std::uint32_t{1} << 31) || !is_prime_number(p)) {
    throw InvalidArgument("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  }
  return Field(p);
}

std::string Field::name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(Field field, std::int64_t value) : field_(field) {
  if (field.is_prime()) {
    const auto p = static_cast<std::int64_t>(field.characteristic());
    std::int64_t r = value % p;
    if (r < 0) r += p;
    value_ = static_cast<std::uint32_t>(r);
  } else {
    value_ = mpq_class(static_cast<long>(value));
  }
}

Scalar::Scalar(Field field, const mpq_class& value) : field_(field) {
  if (field.is_prime()) {
    const std::uint32_t p = field.characteristic();
    const std::uint32_t den = mpz_mod_prime(value.get_den(), p);
    if (den == 0) {
      throw InvalidArgument("denominator of " + value.get_str() + " vanishes in " + field.name());
    }
    const std::uint32_t num = mpz_mod_prime(value.get_num(), p);
    value_ = static_cast<std::uint32_t>(std::uint64_t{num} * pow_mod(den, p - 2, p) % p);
  } else {
    if (value.get_den() == 0) throw InvalidArgument("zero denominator");
    mpq_class q = value;
    q.canonicalize();
    value_ = std::move(q);
  }
}

Scalar Scalar::parse(Field field, const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw InvalidArgument("not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + text + "'");
  q.canonicalize();
  return Scalar(field, q);
}

bool Scalar::is_zero() const {
  if (field_.is_prime()) return std::get<std::uint32_t>(value_) == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime()) return std::get<std::uint32_t>(value_) == 1 % field_.characteristic();
  return std::get<mpq_class>(value_) == 1;
}

std::uint32_t Scalar::residue() const {
  if (!field_.is_prime()) throw Unsupported("residue() requires a prime field");
  return std::get<std::uint32_t>(value_);
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rational()) throw Unsupported("rational() requires the rational field");
  return std::get<mpq_class>(value_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero");
  Scalar out = *this;
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    out.value_ = pow_mod(std::get<std::uint32_t>(value_), p - 2, p);
  } else {
    out.value_ = mpq_class(1) / std::get<mpq_class>(value_);
  }
  return out;
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(std::get<std::uint32_t>(value_));
  return std::get<mpq_class>(value_).get_str();
}

void Scalar::require_same_field(const Scalar& other) const {
  if (field_ != other.field_) {
    throw FieldMismatch("scalar field mismatch: " + field_.name() + " vs " + other.field_.name());
  }
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (field_.is_prime()) {
    const std::uint32_t v = std::get<std::uint32_t>(value_);
    out.value_ = v == 0 ? 0U : field_.characteristic() - v;
  } else {
    out.value_ = mpq_class(-std::get<mpq_class>(value_));
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_field(rhs);
  if (field_.is_prime()) {
    std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(value_)} + std::get<std::uint32_t>(rhs.value_);
    if (s >= field_.characteristic()) s -= field_.characteristic();
    value_ = static_cast<std::uint32_t>(s);
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_field(rhs);
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    const std::uint32_t a = std::get<std::uint32_t>(value_);
    const std::uint32_t b = std::get<std::uint32_t>(rhs.value_);
    value_ = a >= b ? a - b : a + (p - b);
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_field(rhs);
  if (field_.is_prime()) {
    value_ = static_cast<std::uint32_t>(std::uint64_t{std::get<std::uint32_t>(value_)} *
                                        std::get<std::uint32_t>(rhs.value_) % field_.characteristic());
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same_field(rhs);
  return *this *= rhs.inverse();
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.field_ != rhs.field_) return false;
  if (lhs.field_.is_prime()) return std::get<std::uint32_t>(lhs.value_) == std::get<std::uint32_t>(rhs.value_);
  return std::get<mpq_class>(lhs.value_) == std::get<mpq_class>(rhs.value_);
}

bool operator<(const Scalar& lhs, const Scalar& rhs) {
  lhs.require_same_field(rhs);
  if (lhs.field_.is_prime()) return std::get<std::uint32_t>(lhs.value_) < std::get<std::uint32_t>(rhs.value_);
  return std::get<mpq_class>(lhs.value_) < std::get<mpq_class>(rhs.value_);
}

// ---------------------------------------------------------------- Vector

Vector::Vector(Field field, std::size_t size) : field_(field), entries_(size, Scalar::zero(field)) {}

Vector::Vector(Field field, std::vector<Scalar> entries) : field_(field), entries_(std::move(entries)) {
  for (const Scalar& s : entries_) {
    if (s.field() != field_) throw FieldMismatch("vector entry over " + s.field().name() + " in a vector over " + field_.name());
  }
}

Vector Vector::from_ints(Field field, std::span<const std::int64_t> values) {
  std::vector<Scalar> entries;
  entries.reserve(values.size());
  for (std::int64_t v : values) entries.emplace_back(field, v);
  return Vector(field, std::move(entries));
}

Vector Vector::from_ints(Field field, std::initializer_list<std::int64_t> values) {
  return from_ints(field, std::span<const std::int64_t>(values.begin(), values.size()));
}

Vector Vector::unit(Field field, std::size_t size, std::size_t index) {
  Vector v(field, size);
  v.entries_.at(index) = Scalar::one(field);
  return v;
}

bool Vector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_zero(); });
}

void Vector::require_compatible(const Vector& other) const {
  if (field_ != other.field_) throw FieldMismatch("vector field mismatch: " + field_.name() + " vs " + other.field_.name());
  if (size() != other.size()) {
    throw DimensionMismatch("vector sizes differ: " + std::to_string(size()) + " vs " + std::to_string(other.size()));
  }
}

Vector& Vector::operator+=(const Vector& rhs) {
  require_compatible(rhs);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
  require_compatible(rhs);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

Vector& Vector::operator*=(const Scalar& c) {
  for (Scalar& s : entries_) s *= c;
  return *this;
}

void Vector::add_scaled(const Scalar& c, const Vector& rhs) {
  require_compatible(rhs);
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!rhs.entries_[i].is_zero()) entries_[i] += c * rhs.entries_[i];
  }
}

Vector Vector::operator-() const {
  Vector out = *this;
  for (Scalar& s : out.entries_) s = -s;
  return out;
}

bool operator==(const Vector& lhs, const Vector& rhs) {
  return lhs.field_ == rhs.field_ && lhs.entries_ == rhs.entries_;
}

bool operator<(const Vector& lhs, const Vector& rhs) {
  lhs.require_compatible(rhs);
  return std::lexicographical_compare(lhs.entries_.begin(), lhs.entries_.end(), rhs.entries_.begin(),
                                      rhs.entries_.end());
}

std::string Vector::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out << ',';
    out << entries_[i].to_string();
  }
  out << ')';
  return out.str();
}

std::size_t VectorHash::operator()(const Vector& v) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const Scalar& s : v) {
    std::size_t x;
    if (s.field().is_prime()) {
      x = s.residue();
    } else {
      const mpq_class& q = s.rational();
      x = mpz_get_ui(q.get_num_mpz_t()) * 31 + mpz_get_ui(q.get_den_mpz_t()) + (sgn(q) < 0 ? 17 : 0);
    }
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
  std::size_t h = s.ambient_dim();
  const VectorHash vh;
  for (const Vector& v : s.basis()) h = h * 1099511628211ULL ^ vh(v);
  return h;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_rows(Field field, std::size_t cols, std::span<const Vector> rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("matrix row has wrong length");
    if (rows[r].field() != field) throw FieldMismatch("matrix row over " + rows[r].field().name());
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(Field field, std::size_t rows, std::span<const Vector> cols) {
  Matrix m(field, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DimensionMismatch("matrix column has wrong length");
    if (cols[c].field() != field) throw FieldMismatch("matrix column over " + cols[c].field().name());
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Matrix Matrix::from_ints(Field field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  Matrix m(field, rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionMismatch("ragged matrix literal");
    std::size_t c = 0;
    for (std::int64_t v : row) m(r, c++) = Scalar(field, v);
    ++r;
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(field_, std::vector<Scalar>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.field() != field_) throw FieldMismatch("matrix-vector field mismatch");
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector dimension mismatch");
  Vector out(field_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& m = (*this)(r, c);
      if (!m.is_zero()) out[r] += m * v[c];
    }
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (rhs.field_ != field_) throw FieldMismatch("matrix product field mismatch");
  if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product dimension mismatch");
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Scalar& b = rhs(k, j);
        if (!b.is_zero()) out(i, j) += a * b;
      }
    }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rhs.field_ != field_) throw FieldMismatch("matrix sum field mismatch");
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rhs.field_ != field_) throw FieldMismatch("matrix difference field mismatch");
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix difference dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix operator*(const Scalar& c, Matrix m) {
  for (Scalar& s : m.data_) s *= c;
  return m;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) {
  return lhs.field_ == rhs.field_ && lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.data_ == rhs.data_;
}

// ---------------------------------------------------------------- Subspace

RowSpace rref(const Matrix& matrix) {
  const Field field = matrix.field();
  const std::size_t cols = matrix.cols();
  std::vector<Vector> rows;
  rows.reserve(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) rows.push_back(matrix.row(r));

  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows.size(); ++c) {
    std::size_t found = lead;
    while (found < rows.size() && rows[found][c].is_zero()) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[lead], rows[found]);
    const Scalar inv = rows[lead][c].inverse();
    if (!inv.is_one()) rows[lead] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != lead && !rows[r][c].is_zero()) rows[r].add_scaled(-rows[r][c], rows[lead]);
    }
    pivots.push_back(c);
    ++lead;
  }
  rows.resize(lead);

  RowSpace out;
  out.space.field_ = field;
  out.space.ambient_dim_ = cols;
  out.space.basis_ = std::move(rows);
  out.space.pivots_ = std::move(pivots);
  out.rank = lead;
  return out;
}

Subspace Subspace::zero(Field field, std::size_t ambient_dim) {
  return rref(Matrix(field, 0, ambient_dim)).space;
}

Subspace Subspace::full(Field field, std::size_t ambient_dim) {
  return rref(Matrix::identity(field, ambient_dim)).space;
}

Subspace Subspace::span(Field field, std::size_t ambient_dim, std::span<const Vector> vectors) {
  return rref(Matrix::from_rows(field, ambient_dim, vectors)).space;
}

Subspace Subspace::span(Field field, std::size_t ambient_dim, std::initializer_list<Vector> vectors) {
  return span(field, ambient_dim, std::span<const Vector>(vectors.begin(), vectors.size()));
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < ambient_dim_; ++c) {
    if (k < pivots_.size() && pivots_[k] == c) {
      ++k;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Vector Subspace::reduce(const Vector& v) const {
  if (v.field() != field_) throw FieldMismatch("subspace over " + field_.name() + ", vector over " + v.field().name());
  if (v.size() != ambient_dim_) {
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in ambient dimension " +
                            std::to_string(ambient_dim_));
  }
  Vector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Scalar& lead = r[pivots_[i]];
    if (!lead.is_zero()) r.add_scaled(-lead, basis_[i]);
  }
  return r;
}

bool Subspace::contains(const Vector& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.field_ != field_) throw FieldMismatch("subspace field mismatch");
  if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("subspace ambient dimension mismatch");
  if (other.dim() > dim()) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(), [this](const Vector& v) { return contains(v); });
}

Subspace solve_right_kernel(const Matrix& matrix) {
  const RowSpace reduced = rref(matrix);
  const Subspace& rs = reduced.space;
  std::vector<Vector> generators;
  for (std::size_t free : rs.non_pivots()) {
    Vector v = Vector::unit(matrix.field(), matrix.cols(), free);
    for (std::size_t i = 0; i < rs.dim(); ++i) v[rs.pivots()[i]] = -rs.basis()[i][free];
    generators.push_back(std::move(v));
  }
  return Subspace::span(matrix.field(), matrix.cols(), generators);
}

Subspace linear_preimage(const Matrix& map, const Subspace& target) {
  if (map.rows() != target.ambient_dim()) throw DimensionMismatch("preimage target has the wrong ambient dimension");
  Matrix reduced(map.field(), map.rows(), map.cols());
  for (std::size_t c = 0; c < map.cols(); ++c) {
    const Vector r = target.reduce(map.column(c));
    for (std::size_t i = 0; i < map.rows(); ++i) reduced(i, c) = r[i];
  }
  return solve_right_kernel(reduced);
}

namespace {

void require_same_ambient(const Subspace& u, const Subspace& v) {
  if (u.field() != v.field()) throw FieldMismatch("subspaces over " + u.field().name() + " and " + v.field().name());
  if (u.ambient_dim() != v.ambient_dim()) {
    throw DimensionMismatch("subspaces in ambient dimensions " + std::to_string(u.ambient_dim()) + " and " +
                            std::to_string(v.ambient_dim()));
  }
}

}  // namespace

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v);
  std::vector<Vector> all = u.basis();
  all.insert(all.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(u.field(), u.ambient_dim(), all);
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v);
  const Field f = u.field();
  const std::size_t n = u.ambient_dim();
  Matrix block(f, u.dim() + v.dim(), 2 * n);
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t c = 0; c < n; ++c) {
      block(i, c) = u.basis()[i][c];
      block(i, n + c) = u.basis()[i][c];
    }
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t c = 0; c < n; ++c) block(u.dim() + i, c) = v.basis()[i][c];

  const RowSpace reduced = rref(block);
  std::vector<Vector> meet;
  for (std::size_t i = 0; i < reduced.rank; ++i) {
    if (reduced.space.pivots()[i] < n) continue;
    const Vector& row = reduced.space.basis()[i];
    meet.emplace_back(f, std::vector<Scalar>(row.begin() + static_cast<std::ptrdiff_t>(n), row.end()));
  }
  return Subspace::span(f, n, meet);
}

bool subspace_contains(const Subspace& u, const Vector& v) { return u.contains(v); }

// ---------------------------------------------------------------- enumeration

std::uint64_t saturating_power(std::uint64_t p, std::size_t dim) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (p != 0 && out > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
    out *= p;
  }
  return out;
}

Vector VectorRange::at(std::uint64_t index) const {
  const std::uint32_t p = field_.characteristic();
  std::vector<Scalar> entries(dim_, Scalar::zero(field_));
  for (std::size_t i = dim_; i-- > 0;) {
    entries[i] = Scalar(field_, static_cast<std::int64_t>(index % p));
    index /= p;
  }
  return Vector(field_, std::move(entries));
}

std::uint64_t VectorRange::index_of(const Vector& v) const {
  if (v.size() != dim_) throw DimensionMismatch("vector outside the enumerated space");
  return vector_index(v);
}

VectorRange enumerate_vectors(std::size_t dim, Field field, std::uint64_t cap) {
  if (!field.is_prime()) throw Unsupported("element enumeration requires a finite field");
  const std::uint64_t count = saturating_power(field.characteristic(), dim);
  if (count > cap) throw CapExceeded("enumerating " + field.name() + "^" + std::to_string(dim), count, cap);
  return VectorRange(field, dim, count);
}

std::uint64_t vector_index(const Vector& v) {
  const std::uint64_t p = v.field().characteristic();
  if (p == 0) throw Unsupported("vector_index requires a finite field");
  std::uint64_t index = 0;
  for (const Scalar& s : v) index = index * p + s.residue();
  return index;
}

}  // namespace mathieu
