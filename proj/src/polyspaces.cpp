#include "mathieu/polyspaces.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace mathieu {

// ---------------------------------------------------------------- Poly

Poly::Poly(Field field, std::size_t vars) : field_(field), vars_(vars) {
  if (vars == 0) throw InvalidArgument("polynomials need at least one variable");
}

Poly Poly::constant(Field field, std::size_t vars, const Scalar& c) {
  Poly p(field, vars);
  p.add_term(Exponent(vars, 0), c);
  return p;
}

Poly Poly::variable(Field field, std::size_t vars, std::size_t index) {
  if (index >= vars) throw InvalidArgument("variable index out of range");
  Exponent e(vars, 0);
  e[index] = 1;
  Poly p(field, vars);
  p.add_term(e, Scalar::one(field));
  return p;
}

Poly Poly::monomial(Field field, Exponent exponent, const Scalar& c) {
  Poly p(field, exponent.size());
  p.add_term(exponent, c);
  return p;
}

Poly Poly::univariate(Field field, std::span<const Scalar> coeffs) {
  Poly p(field, 1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term({static_cast<std::uint32_t>(k)}, coeffs[k]);
  return p;
}

void Poly::require_compatible(const Poly& other) const {
  if (field_ != other.field_) throw FieldMismatch("polynomials over different fields");
  if (vars_ != other.vars_) throw DimensionMismatch("polynomials in different numbers of variables");
}

void Poly::add_term(const Exponent& exponent, const Scalar& c) {
  if (exponent.size() != vars_) throw DimensionMismatch("exponent length differs from the variable count");
  if (c.field() != field_) throw FieldMismatch("coefficient over " + c.field().name());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int Poly::degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (std::uint32_t k : e) d += static_cast<int>(k);
    best = std::max(best, d);
  }
  return best;
}

Scalar Poly::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

namespace {

Scalar power(const Scalar& x, std::uint32_t k) {
  Scalar out = Scalar::one(x.field());
  Scalar base = x;
  while (k != 0) {
    if (k & 1U) out *= base;
    base *= base;
    k >>= 1U;
  }
  return out;
}

}  // namespace

Scalar Poly::evaluate(std::span<const Scalar> point) const {
  if (point.size() != vars_) throw DimensionMismatch("point has the wrong number of coordinates");
  Scalar total = Scalar::zero(field_);
  for (const auto& [e, c] : terms_) {
    Scalar term = c;
    for (std::size_t i = 0; i < vars_; ++i)
      if (e[i] != 0) term *= power(point[i], e[i]);
    total += term;
  }
  return total;
}

Poly Poly::substitute_affine(const Scalar& scale, const Scalar& shift) const {
  if (vars_ != 1) throw Unsupported("affine substitution is univariate only");
  const Poly linear = Poly::univariate(field_, std::vector<Scalar>{shift, scale});
  Poly out(field_, 1);
  Poly running = Poly::constant(field_, 1, Scalar::one(field_));
  std::uint32_t reached = 0;
  for (const auto& [e, c] : terms_) {
    while (reached < e[0]) {
      running = running * linear;
      ++reached;
    }
    out += c * running;
  }
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  require_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  require_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  lhs.require_compatible(rhs);
  Poly out(lhs.field_, lhs.vars_);
  Poly::Exponent e(lhs.vars_);
  for (const auto& [e1, c1] : lhs.terms_)
    for (const auto& [e2, c2] : rhs.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  return out;
}

Poly operator*(const Scalar& c, const Poly& p) {
  Poly out(p.field_, p.vars_);
  for (const auto& [e, k] : p.terms_) out.add_term(e, c * k);
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "(" + it->second.to_string() + ")";
    for (std::size_t i = 0; i < vars_; ++i) {
      if (it->first[i] == 0) continue;
      out += vars_ == 1 ? "*z" : "*z" + std::to_string(i + 1);
      if (it->first[i] > 1) out += "^" + std::to_string(it->first[i]);
    }
  }
  return out;
}

// ---------------------------------------------------------------- Omega

std::vector<std::size_t> support(std::span<const Scalar> alpha) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (!alpha[i].is_zero()) s.push_back(i);
  return s;
}

std::optional<std::vector<std::size_t>> omega_violation(std::span<const Scalar> alpha, std::size_t support_cap) {
  const std::vector<std::size_t> s = support(alpha);
  if (s.empty()) return std::nullopt;
  if (s.size() > support_cap || s.size() >= 64) {
    throw CapExceeded("subset scan of the support", s.size(), support_cap);
  }
  // Gray code walk: one element toggles per step
  const Field field = alpha[s[0]].field();
  Scalar sum = Scalar::zero(field);
  const std::uint64_t subsets = std::uint64_t{1} << s.size();
  for (std::uint64_t step = 1; step < subsets; ++step) {
    const auto bit = static_cast<std::size_t>(__builtin_ctzll(step));
    const std::uint64_t gray = step ^ (step >> 1);
    if (gray & (std::uint64_t{1} << bit)) {
      sum += alpha[s[bit]];
    } else {
      sum -= alpha[s[bit]];
    }
    if (sum.is_zero()) {
      std::vector<std::size_t> subset;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (gray & (std::uint64_t{1} << k)) subset.push_back(s[k]);
      return subset;
    }
  }
  return std::nullopt;
}

bool omega_member(std::span<const Scalar> alpha, std::size_t support_cap) {
  return !omega_violation(alpha, support_cap).has_value();
}

// ---------------------------------------------------------------- N_{B,alpha}

Field EvalConfig::field() const {
  if (alpha.empty()) throw InvalidArgument("evaluation config needs at least one point");
  return alpha[0].field();
}

std::size_t EvalConfig::vars() const {
  if (points.empty()) throw InvalidArgument("evaluation config needs at least one point");
  return points[0].size();
}

void EvalConfig::validate() const {
  if (points.empty()) throw InvalidArgument("evaluation config needs at least one point");
  if (points.size() != alpha.size()) {
    throw InvalidArgument("evaluation config has " + std::to_string(points.size()) + " points but " +
                          std::to_string(alpha.size()) + " weights");
  }
  const Field f = field();
  const std::size_t n = vars();
  if (n == 0) throw InvalidArgument("points need at least one coordinate");
  for (const Scalar& a : alpha)
    if (a.field() != f) throw FieldMismatch("weights over different fields");
  for (const auto& u : points) {
    if (u.size() != n) throw DimensionMismatch("points have different numbers of coordinates");
    for (const Scalar& x : u)
      if (x.field() != f) throw FieldMismatch("point coordinate over " + x.field().name());
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) {
        throw InvalidArgument("points u_" + std::to_string(i + 1) + " and u_" + std::to_string(j + 1) + " coincide");
      }
}

std::vector<Scalar> alpha_f_B(const Poly& f, const EvalConfig& cfg) {
  cfg.validate();
  if (f.field() != cfg.field()) throw FieldMismatch("polynomial and config over different fields");
  std::vector<Scalar> out;
  out.reserve(cfg.alpha.size());
  for (std::size_t i = 0; i < cfg.alpha.size(); ++i) out.push_back(cfg.alpha[i] * f.evaluate(cfg.points[i]));
  return out;
}

bool nba_member(const Poly& f, const EvalConfig& cfg) {
  Scalar total = Scalar::zero(cfg.field());
  for (const Scalar& x : alpha_f_B(f, cfg)) total += x;
  return total.is_zero();
}

bool nba_sigma_member(const Poly& f, const EvalConfig& cfg) { return support(alpha_f_B(f, cfg)).size() <= 1; }

bool nba_tau_member(const Poly& f, const EvalConfig& cfg, std::size_t support_cap) {
  return omega_member(alpha_f_B(f, cfg), support_cap);
}

Subspace weight_hyperplane(std::span<const Scalar> alpha) {
  if (alpha.empty()) throw InvalidArgument("empty weight vector");
  const Field f = alpha[0].field();
  const Vector row(f, std::vector<Scalar>(alpha.begin(), alpha.end()));
  if (row.is_zero()) return Subspace::full(f, alpha.size());
  return solve_right_kernel(Matrix::from_rows(f, alpha.size(), std::span<const Vector>(&row, 1)));
}

ProductReduction reduce_to_product_algebra(const EvalConfig& cfg) {
  cfg.validate();
  const Field f = cfg.field();
  if (!f.is_prime()) throw Unsupported("the product-algebra reduction is decided over F_p");
  return ProductReduction{product_algebra(cfg.alpha.size(), f), weight_hyperplane(cfg.alpha)};
}

std::vector<std::vector<Scalar>> line_points(std::size_t l, Field field, std::size_t vars) {
  if (field.is_prime() && l > field.characteristic()) {
    throw InvalidArgument("not enough distinct points: F_" + std::to_string(field.characteristic()) + " has fewer than " +
                          std::to_string(l) + " elements");
  }
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<Scalar> u(vars, Scalar::zero(field));
    u[0] = Scalar(field, static_cast<std::int64_t>(i));
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<Vector> product_idempotents(std::size_t l, Field field) {
  if (l >= 32) throw CapExceeded("coordinate idempotents", std::uint64_t{1} << std::min<std::size_t>(l, 63), 1U << 31);
  std::vector<Vector> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
    Vector e(field, l);
    for (std::size_t i = 0; i < l; ++i)
      if (mask & (std::uint64_t{1} << i)) e[i] = Scalar::one(field);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poly lagrange_basis(std::span<const Scalar> points, std::size_t i) {
  if (i >= points.size()) throw InvalidArgument("interpolation index out of range");
  const Field f = points[i].field();
  Poly out = Poly::constant(f, 1, Scalar::one(f));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j == i) continue;
    const Scalar denom = points[i] - points[j];
    if (denom.is_zero()) throw InvalidArgument("interpolation points must be distinct");
    const Scalar inv = denom.inverse();
    out = out * Poly::univariate(f, std::vector<Scalar>{-points[j] * inv, inv});
  }
  return out;
}

// ---------------------------------------------------------------- N_q

void IntegralConfig::validate() const {
  if (!a.field().is_rational() || !b.field().is_rational() || !q.field().is_rational()) {
    throw Unsupported("integral subspaces are defined over Q");
  }
  if (a == b) throw InvalidArgument("integration endpoints must differ");
  if (q.vars() != 1) throw InvalidArgument("the weight q must be univariate");
}

Scalar exact_integral(const Poly& f, const IntegralConfig& cfg) {
  cfg.validate();
  if (f.vars() != 1) throw InvalidArgument("exact_integral is univariate");
  const Poly product = f * cfg.q;
  const Field field = Field::rationals();
  Scalar total = Scalar::zero(field);
  for (const auto& [e, c] : product.terms()) {
    const std::uint32_t k1 = e[0] + 1;
    total += c * (power(cfg.b, k1) - power(cfg.a, k1)) / Scalar(field, static_cast<std::int64_t>(k1));
  }
  return total;
}

bool nq_member(const Poly& f, const IntegralConfig& cfg) { return exact_integral(f, cfg).is_zero(); }

namespace {

void require_nonzero_weight(const IntegralConfig& cfg) {
  cfg.validate();
  if (cfg.q.is_zero()) throw InvalidArgument("q = 0 gives N_q = Q[z]; sigma and tau are then the whole algebra");
}

}  // namespace

bool nq_sigma_member(const Poly& h, const IntegralConfig& cfg) {
  require_nonzero_weight(cfg);
  return h.is_zero();
}

bool nq_tau_member(const Poly& h, const IntegralConfig& cfg) {
  require_nonzero_weight(cfg);
  return h.is_zero() || !nq_member(h, cfg);
}

}  // namespace mathieu
