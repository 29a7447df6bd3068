#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mathieu/mathieu.hpp"
#include "mathieu/polyspaces.hpp"
#include "oracles.hpp"

using namespace mathieu;

namespace {

const Field Q = Field::rationals();

Scalar q(const char* s) { return Scalar::parse(Q, s); }
Scalar qi(std::int64_t x) { return Scalar(Q, x); }
std::vector<Scalar> qs(std::initializer_list<std::int64_t> xs) {
  std::vector<Scalar> out;
  for (auto x : xs) out.push_back(qi(x));
  return out;
}

Poly z() { return Poly::variable(Q, 1, 0); }
Poly one() { return Poly::constant(Q, 1, qi(1)); }

EvalConfig config01(std::vector<Scalar> alpha) {
  return EvalConfig{{{qi(0)}, {qi(1)}}, std::move(alpha)};
}

IntegralConfig unit_interval(Poly weight) { return IntegralConfig{qi(0), qi(1), std::move(weight)}; }

Poly random_poly(std::mt19937_64& rng, int max_degree, std::size_t vars = 1) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  Poly p(Q, vars);
  const int d = deg(rng);
  for (int k = 0; k <= d; ++k) {
    Poly::Exponent e(vars, 0);
    std::uniform_int_distribution<std::size_t> pick(0, vars - 1);
    for (int step = 0; step < k; ++step) ++e[pick(rng)];
    p += Poly::monomial(Q, e, oracle::random_rational(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const Poly p = z() * z() - one();
  CHECK(p.degree() == 2);
  CHECK(Poly(Q, 1).degree() == -1);
  CHECK(p.evaluate(qs({3})) == qi(8));
  CHECK((p - p).is_zero());
  CHECK((z() + one()) * (z() - one()) == p);
  CHECK(p.substitute_affine(qi(2), qi(1)).evaluate(qs({1})) == qi(8));
  const Poly xy = Poly::variable(Q, 2, 0) * Poly::variable(Q, 2, 1);
  CHECK(xy.evaluate(qs({2, 5})) == qi(10));
  CHECK(xy.degree() == 2);
  CHECK_THROWS_AS(xy + z(), DimensionMismatch);
}

TEST_CASE("Omega membership") {
  CHECK(omega_member(qs({0, 0, 0})));
  CHECK_FALSE(omega_member(qs({1, -1})));
  CHECK(omega_member(qs({1, 1})));
  CHECK_FALSE(omega_member(qs({2, 3, -5})));
  CHECK(omega_member(qs({1, 2, 4, 8})));
  const auto w = omega_violation(qs({0, 1, 2, -3}));
  REQUIRE(w);
  CHECK(*w == std::vector<std::size_t>{1, 2, 3});
  std::vector<Scalar> wide(21, qi(1));
  CHECK_THROWS_AS(omega_member(wide), CapExceeded);
  CHECK(omega_member(wide, 21));

  // over F_p: (1, 2) sums to zero in F_3
  const Field f3 = Field::prime(3);
  CHECK_FALSE(omega_member(std::vector<Scalar>{Scalar(f3, 1), Scalar(f3, 2)}));
  CHECK(omega_member(std::vector<Scalar>{Scalar(f3, 1), Scalar(f3, 1)}));

  // against a direct subset scan, and internal consistency with supports
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> small(-2, 2);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Scalar> a;
    for (int i = 0; i < 5; ++i) a.push_back(qi(small(rng)));
    bool expected = true;
    for (unsigned mask = 1; mask < 32; ++mask) {
      Scalar s = qi(0);
      bool nonempty = false;
      for (int i = 0; i < 5; ++i)
        if ((mask >> i) & 1U && !a[i].is_zero()) {
          s += a[i];
          nonempty = true;
        }
      if (nonempty && s.is_zero()) expected = false;
    }
    CHECK(omega_member(a) == expected);
    if (support(a).size() <= 1) CHECK(omega_member(a));
  }
}

TEST_CASE("alpha_{f,B} and N_{B,alpha} predicates") {
  const EvalConfig c11 = config01(qs({1, 1}));
  CHECK(alpha_f_B(one(), c11) == qs({1, 1}));
  CHECK(alpha_f_B(z(), c11) == qs({0, 1}));
  CHECK(alpha_f_B(z() * (z() - one()), c11) == qs({0, 0}));

  const Poly vanish = z() * (z() - one());
  CHECK(nba_sigma_member(vanish, c11));
  CHECK(nba_tau_member(vanish, c11));

  const EvalConfig c1m = config01(qs({1, -1}));
  CHECK_FALSE(nba_tau_member(one(), c1m));
  CHECK(nba_member(one(), c1m));
  CHECK(nba_tau_member(one(), c11));
  CHECK_FALSE(nba_sigma_member(one(), c11));

  CHECK_THROWS_AS(alpha_f_B(one(), EvalConfig{{{qi(0)}, {qi(0)}}, qs({1, 1})}), InvalidArgument);
  CHECK_THROWS_AS(alpha_f_B(one(), EvalConfig{{{qi(0)}}, qs({1, 1})}), InvalidArgument);
}

TEST_CASE("property: colon identity and zero sets on sampled polynomials") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t vars = 1 + trial % 2;
    const std::size_t l = 1 + trial % 4;
    EvalConfig cfg;
    while (cfg.points.size() < l) {
      std::vector<Scalar> u;
      for (std::size_t k = 0; k < vars; ++k) u.push_back(qi(coord(rng)));
      if (std::find(cfg.points.begin(), cfg.points.end(), u) == cfg.points.end()) cfg.points.push_back(u);
    }
    for (std::size_t i = 0; i < l; ++i) cfg.alpha.push_back(trial % 3 == 0 && i == 0 ? qi(0) : oracle::random_rational(rng));
    const Poly f = random_poly(rng, 6, vars);
    const EvalConfig shifted{cfg.points, alpha_f_B(f, cfg)};
    for (int k = 0; k < 15; ++k) {
      const Poly g = random_poly(rng, 6, vars);
      // (N:f) = N_{B, alpha_f}
      CHECK(nba_member(f * g, cfg) == nba_member(g, shifted));
      // Z_alpha(B) = N cap sigma
      bool vanishes = true;
      for (std::size_t i : support(cfg.alpha)) vanishes = vanishes && g.evaluate(cfg.points[i]).is_zero();
      CHECK((nba_member(g, cfg) && nba_sigma_member(g, cfg)) == vanishes);
    }
  }
}

TEST_CASE("sigma of N_{B,alpha} is not closed under addition") {
  // alpha = (1, 1, 1) on 0, 1, 2; Lagrange interpolants are each in sigma
  const std::vector<Scalar> pts = qs({0, 1, 2});
  const EvalConfig cfg{{{qi(0)}, {qi(1)}, {qi(2)}}, qs({1, 1, 1})};
  const Poly l0 = lagrange_basis(pts, 0);
  const Poly l1 = lagrange_basis(pts, 1);
  CHECK(nba_sigma_member(l0, cfg));
  CHECK(nba_sigma_member(l1, cfg));
  CHECK_FALSE(nba_sigma_member(l0 + l1, cfg));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(lagrange_basis(pts, i).evaluate(std::vector<Scalar>{pts[j]}) == qi(i == j ? 1 : 0));
}

TEST_CASE("product-algebra reduction") {
  const Field f3 = Field::prime(3);
  auto cfg = [&](std::vector<std::int64_t> a) {
    EvalConfig c{line_points(a.size(), f3), {}};
    for (auto x : a) c.alpha.push_back(Scalar(f3, x));
    return c;
  };
  const ProductReduction r11 = reduce_to_product_algebra(cfg({1, 1}));
  const ProductReduction r12 = reduce_to_product_algebra(cfg({1, 2}));
  for (Theta t : kAllThetas) {
    CHECK(is_theta_mathieu_idempotent(r11.algebra, r11.hyperplane, t).is_mathieu);
    CHECK_FALSE(is_theta_mathieu_idempotent(r12.algebra, r12.hyperplane, t).is_mathieu);
  }
  const ProductReduction r1 = reduce_to_product_algebra(cfg({2}));
  CHECK(r1.hyperplane.is_zero());
  CHECK(is_theta_ideal(r1.algebra, r1.hyperplane, Theta::two_sided));
  CHECK_THROWS_AS(line_points(4, f3), InvalidArgument);

  // exhaustive agreement for l <= 3, p <= 5
  for (std::uint32_t p : {2U, 3U, 5U}) {
    const Field f = Field::prime(p);
    for (std::size_t l = 1; l <= 3 && l <= p; ++l) {
      const Algebra a = product_algebra(l, f);
      const IdempotentDecider dec(a);
      for (const Vector alpha : enumerate_vectors(l, f, 1 << 20)) {
        const Subspace h = weight_hyperplane(alpha.entries());
        for (Theta t : kAllThetas) CHECK(dec.decide(h, t).is_mathieu == omega_member(alpha.entries()));
        CHECK(is_theta_ideal(a, h, Theta::left) == (support(alpha.entries()).size() <= 1));
      }
    }
  }
}

TEST_CASE("rational route: supplied idempotents decide the hyperplane over Q") {
  const Algebra a = product_algebra(3, Q);
  const IdempotentDecider dec(a, product_idempotents(3, Q));
  CHECK(dec.idempotents().size() == 8);
  CHECK(dec.decide(weight_hyperplane(qs({1, 1, 1})), Theta::left).is_mathieu);
  const MathieuVerdict bad = dec.decide(weight_hyperplane(qs({1, -1, 5})), Theta::left);
  CHECK_FALSE(bad.is_mathieu);
  CHECK(validate_mathieu_witness(a, weight_hyperplane(qs({1, -1, 5})), Theta::left, *bad.witness));
  CHECK_THROWS_AS(IdempotentDecider(a, std::vector<Vector>{Vector::from_ints(Q, {2, 0, 0})}), InvalidArgument);
}

TEST_CASE("exact integration") {
  CHECK(exact_integral(one(), unit_interval(one())) == qi(1));
  CHECK(exact_integral(z(), unit_interval(one())) == q("1/2"));
  CHECK(exact_integral(z() - Poly::constant(Q, 1, q("1/2")), unit_interval(one())).is_zero());
  CHECK(exact_integral(z() * z(), IntegralConfig{qi(-1), qi(2), one()}) == qi(3));
  CHECK_THROWS_AS(exact_integral(one(), IntegralConfig{qi(1), qi(1), one()}), InvalidArgument);

  // product-then-antiderivative against a change of variables to [0, 1]
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Poly f = random_poly(rng, 7);
    const Poly w = random_poly(rng, 5);
    Scalar a = oracle::random_rational(rng);
    Scalar b = oracle::random_rational(rng);
    if (a == b) b += qi(1);
    const Scalar direct = exact_integral(f, IntegralConfig{a, b, w});
    // z = (b - a) t + a, dz = (b - a) dt
    const Poly ft = f.substitute_affine(b - a, a);
    const Poly wt = w.substitute_affine(b - a, a);
    const Scalar moved = (b - a) * exact_integral(ft, unit_interval(wt));
    CHECK(direct == moved);
    // reversing the endpoints flips the sign
    CHECK(exact_integral(f, IntegralConfig{b, a, w}) == -direct);
  }
}

TEST_CASE("N_q predicates") {
  const IntegralConfig cfg = unit_interval(one());
  CHECK(nq_sigma_member(Poly(Q, 1), cfg));
  CHECK(nq_tau_member(Poly(Q, 1), cfg));
  CHECK(nq_tau_member(one(), cfg));
  CHECK_FALSE(nq_sigma_member(one(), cfg));
  const Poly centered = z() - Poly::constant(Q, 1, q("1/2"));
  CHECK(nq_member(centered, cfg));
  CHECK_FALSE(nq_tau_member(centered, cfg));
  CHECK_THROWS_AS(nq_tau_member(one(), unit_interval(Poly(Q, 1))), InvalidArgument);
  CHECK_THROWS_AS(nq_sigma_member(one(), unit_interval(Poly(Q, 1))), InvalidArgument);

  // positivity: the integral of q^2 over a < b is positive
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Poly w = random_poly(rng, 6);
    if (w.is_zero()) continue;
    CHECK(qi(0) < exact_integral(w, IntegralConfig{qi(-1), q("3/2"), w}));
  }
}
