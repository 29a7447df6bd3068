#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "mathieu/mathieu.hpp"
#include "oracles.hpp"

using namespace mathieu;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

Vector v(Field f, std::initializer_list<std::int64_t> xs) { return Vector::from_ints(f, xs); }
AlgebraPtr share(Algebra a) { return std::make_shared<const Algebra>(std::move(a)); }

/// Trace-zero matrices in M_2: y11 + y22 = 0.
Subspace trace_zero(Field f) {
  return Subspace::span(f, 4, {v(f, {0, 1, 0, 0}), v(f, {0, 0, 1, 0}), v(f, {1, 0, 0, -1})});
}

std::vector<Algebra> small_zoo() {
  return {product_algebra(1, F2),  product_algebra(2, F2), product_algebra(2, F3), truncated_poly(2, F2),
          truncated_poly(3, F2), truncated_poly(2, F3),  upper_triangular(2, F2), matrix_algebra(2, F2)};
}

}  // namespace

TEST_CASE("theta-ideal examples") {
  const Algebra m2 = matrix_algebra(2, F2);
  for (Theta t : kAllThetas) {
    CHECK(is_theta_ideal(m2, Subspace::zero(F2, 4), t));
    CHECK(is_theta_ideal(m2, Subspace::full(F2, 4), t));
  }
  const Algebra m3 = matrix_algebra(2, F3);
  CHECK_FALSE(is_theta_ideal(m3, trace_zero(F3), Theta::left));
  CHECK_FALSE(is_theta_ideal(m3, trace_zero(F3), Theta::right));

  const Subspace e11 = Subspace::span(F2, 4, {v(F2, {1, 0, 0, 0})});
  const auto w = ideal_violation(m2, e11, Theta::left);
  REQUIRE(w);
  CHECK(validate_ideal_witness(m2, e11, Theta::left, *w));
  // a right-side witness does not certify a left failure
  IdealWitness flipped = *w;
  flipped.on_left = false;
  CHECK_FALSE(validate_ideal_witness(m2, e11, Theta::left, flipped));
}

TEST_CASE("Mathieu examples, both deciders") {
  const Algebra m3 = matrix_algebra(2, F3);
  const Algebra m2 = matrix_algebra(2, F2);
  const Algebra t2 = truncated_poly(2, F2);
  const Subspace x = Subspace::span(F2, 2, {v(F2, {0, 1})});
  for (Theta t : kAllThetas) {
    CHECK(is_theta_mathieu_bruteforce(m3, trace_zero(F3), t).is_mathieu);
    CHECK(is_theta_mathieu_idempotent(m3, trace_zero(F3), t).is_mathieu);
    const MathieuVerdict b2 = is_theta_mathieu_bruteforce(m2, trace_zero(F2), t);
    const MathieuVerdict i2 = is_theta_mathieu_idempotent(m2, trace_zero(F2), t);
    CHECK_FALSE(b2.is_mathieu);
    CHECK_FALSE(i2.is_mathieu);
    REQUIRE(b2.witness);
    REQUIRE(i2.witness);
    CHECK(validate_mathieu_witness(m2, trace_zero(F2), t, *b2.witness));
    CHECK(validate_mathieu_witness(m2, trace_zero(F2), t, *i2.witness));
    CHECK(is_theta_mathieu_bruteforce(t2, x, t).is_mathieu);
    CHECK(is_theta_mathieu_idempotent(t2, x, t).is_mathieu);
  }
  const Subspace e11 = Subspace::span(F2, 4, {v(F2, {1, 0, 0, 0})});
  const MathieuVerdict w = is_theta_mathieu_idempotent(m2, e11, Theta::left);
  CHECK_FALSE(w.is_mathieu);
  REQUIRE(w.witness);
  CHECK(w.witness->a == v(F2, {1, 0, 0, 0}));
  CHECK(w.witness->left.has_value());
  CHECK_FALSE(w.witness->right.has_value());
}

TEST_CASE("witness validation rejects tampered witnesses") {
  const Algebra m2 = matrix_algebra(2, F2);
  const Subspace j = trace_zero(F2);
  MathieuWitness w = *is_theta_mathieu_idempotent(m2, j, Theta::two_sided).witness;
  REQUIRE(validate_mathieu_witness(m2, j, Theta::two_sided, w));
  MathieuWitness no_mult = w;
  no_mult.left.reset();
  no_mult.right.reset();
  CHECK_FALSE(validate_mathieu_witness(m2, j, Theta::two_sided, no_mult));
  MathieuWitness outside = w;
  outside.a = v(F2, {1, 0, 0, 0});
  CHECK_FALSE(validate_mathieu_witness(m2, j, Theta::two_sided, outside));
  MathieuWitness wrong_side = w;
  wrong_side.left = m2.unit();
  wrong_side.right = m2.unit();
  CHECK_FALSE(validate_mathieu_witness(m2, j, Theta::left, wrong_side));
}

TEST_CASE("property: deciders agree with the literal definition") {
  // every subspace of each small algebra, all four thetas
  for (const Algebra& a : small_zoo()) {
    const BruteForceDecider brute(a);
    const IdempotentDecider idem(a);
    for (const Subspace& j : enumerate_subspaces(a.dim(), a.field())) {
      const auto members = oracle::members(j);
      for (Theta t : kAllThetas) {
        const MathieuVerdict b = brute.decide(j, t);
        const MathieuVerdict i = idem.decide(j, t);
        CHECK(b.is_mathieu == i.is_mathieu);
        if (a.dim() <= 3) CHECK(b.is_mathieu == oracle::is_mathieu(a, members, t));
        if (!b.is_mathieu) CHECK(validate_mathieu_witness(a, j, t, *b.witness));
        if (!i.is_mathieu) CHECK(validate_mathieu_witness(a, j, t, *i.witness));
        CHECK(is_theta_ideal(a, j, t) == oracle::is_ideal(a, members, t));
        // ideals are Mathieu
        if (is_theta_ideal(a, j, t)) CHECK(i.is_mathieu);
        // proper J containing 1 is never Mathieu
        if (j.contains(a.unit()) && !j.is_full()) CHECK_FALSE(i.is_mathieu);
        // pre-two-sided is left and right
        if (t == Theta::pre_two_sided) {
          CHECK(i.is_mathieu == (idem.decide(j, Theta::left).is_mathieu && idem.decide(j, Theta::right).is_mathieu));
        }
      }
    }
  }
}

TEST_CASE("Mathieu status transfers to quotients") {
  auto a = share(truncated_poly(3, F2));
  const Subspace x2 = Subspace::span(F2, 3, {v(F2, {0, 0, 1})});
  const QuotientAlgebra q = quotient_algebra(a, x2);
  for (const Subspace& jb : enumerate_subspaces(q.algebra->dim(), F2)) {
    const Subspace j = q.projection.preimage(jb);
    for (Theta t : kAllThetas)
      CHECK(is_theta_mathieu_idempotent(*a, j, t).is_mathieu == is_theta_mathieu_idempotent(*q.algebra, jb, t).is_mathieu);
  }
}

TEST_CASE("subspace enumeration") {
  CHECK(enumerate_subspaces(2, F2).size() == 5);
  CHECK(enumerate_subspaces(1, F3).size() == 2);
  CHECK(enumerate_subspaces(3, F2).size() == 16);
  CHECK(subspace_count(4, F3) == 212);
  CHECK(subspace_count(4, F2) == 67);
  const auto all = enumerate_subspaces(4, F3);
  CHECK(all.size() == 212);
  CHECK(std::set<std::vector<Vector>>(
            [&] {
              std::set<std::vector<Vector>> s;
              for (const auto& x : all) s.insert(x.basis());
              return s;
            }())
            .size() == 212);
  Limits tight;
  tight.subspace_cap = 10;
  CHECK_THROWS_AS(enumerate_subspaces(3, F2, tight), CapExceeded);
}

TEST_CASE("module-level Mathieu tests") {
  auto m2 = share(matrix_algebra(2, F2));
  const ModulePtr k2 = standard_module(m2, 2);
  const Subspace line = Subspace::span(F2, 2, {v(F2, {1, 0})});
  for (Theta t : kAllThetas) {
    CHECK(is_module_mathieu(*k2, line, k2->zero(), t).is_mathieu);
    CHECK_FALSE(is_module_mathieu(*k2, line, v(F2, {0, 1}), t).is_mathieu);
    CHECK(is_module_mathieu(*k2, Subspace::full(F2, 2), v(F2, {0, 1}), t).is_mathieu);
  }
}

TEST_CASE("sigma and tau examples") {
  auto m2 = share(matrix_algebra(2, F2));
  const ModulePtr k2 = standard_module(m2, 2);
  const Subspace zero = Subspace::zero(F2, 2);
  const Subspace full = Subspace::full(F2, 2);
  for (Theta t : kAllThetas) {
    CHECK(sigma(k2, full, t).size() == 4);
    CHECK(tau(k2, full, t).size() == 4);
  }
  CHECK(tau(k2, zero, Theta::right).members() == std::vector<Vector>{v(F2, {0, 0})});
  CHECK(tau(k2, zero, Theta::left).size() == 4);

  // predicate mode past the element cap
  Limits small;
  small.element_cap = 16;
  auto m3 = share(matrix_algebra(2, F3));
  // the algebra itself is past the cap, so no decider can be built
  const ModulePtr reg = regular_module(m3);
  CHECK_THROWS_AS(tau(reg, Subspace::zero(F3, 4), Theta::left, small), CapExceeded);
  Limits mid;
  mid.element_cap = 27;
  auto t3 = share(truncated_poly(3, F3));
  const ModulePtr big = direct_sum(regular_module(t3), regular_module(t3));
  const ElementSet pred = tau(big, Subspace::zero(F3, 6), Theta::left, mid);
  CHECK_FALSE(pred.is_explicit());
  CHECK(pred.contains(big->zero()));
  CHECK_THROWS_AS(pred.members(), Unsupported);
}

TEST_CASE("property: sigma/tau laws on random module subspaces") {
  std::mt19937_64 rng(33);
  std::vector<ModulePtr> mods;
  for (Field f : {F2, F3}) {
    mods.push_back(standard_module(share(matrix_algebra(2, f)), 2));
    mods.push_back(regular_module(share(truncated_poly(2, f))));
    mods.push_back(triangular_standard_module(share(upper_triangular(2, f)), 2));
    mods.push_back(regular_module(share(upper_triangular(2, f))));
    mods.push_back(right_regular_module(share(upper_triangular(2, f))));
  }
  mods.push_back(regular_module(share(matrix_algebra(2, F2))));
  for (const ModulePtr& m : mods) {
    const StableSets sets(m);
    const Field f = m->field();
    for (int trial = 0; trial < 5; ++trial) {
      const Subspace n = oracle::random_subspace(f, m->dim(), rng);
      const Subspace n2 = oracle::random_subspace(f, m->dim(), rng);
      const Subspace meet = subspace_intersect(n, n2);
      const Subspace in = max_submodule(*m, n);
      for (Theta t : kAllThetas) {
        const ElementSet s = sets.sigma(n, t);
        const ElementSet q = sets.tau(n, t);
        const ElementSet s2 = sets.sigma(n2, t);
        const ElementSet q2 = sets.tau(n2, t);
        const ElementSet sm = sets.sigma(meet, t);
        const ElementSet qm = sets.tau(meet, t);
        CHECK(s.contains(m->zero()));
        for (const Vector& u : s.members()) CHECK(q.contains(u));
        for (const Vector& u : q.members())
          for (std::uint32_t c = 0; c < f.characteristic(); ++c) CHECK(q.contains(Scalar(f, c) * u));
        if (t == Theta::left) {
          for (const Vector& u : s.members())
            for (std::size_t i = 0; i < m->algebra().dim(); ++i) CHECK(s.contains(m->action(i) * u));
        }
        // N cap sigma = N cap tau = I_N
        for (const Vector u : enumerate_vectors(m->dim(), f, 1 << 20)) {
          if (!n.contains(u)) continue;
          CHECK(s.contains(u) == in.contains(u));
          CHECK(q.contains(u) == in.contains(u));
        }
        // finite intersections
        for (const Vector& u : s.members())
          if (s2.contains(u)) CHECK(sm.contains(u));
        for (const Vector& u : q.members())
          if (q2.contains(u)) CHECK(qm.contains(u));
        // sigma_pre = sigma_two
        if (t == Theta::pre_two_sided) CHECK(s == sets.sigma(n, Theta::two_sided));
        // submodule iff N inside tau; left case forces tau = M
        bool inside = true;
        for (const Vector& b : n.basis()) inside = inside && q.contains(b);
        bool all_of_n = true;
        for (const Vector u : enumerate_vectors(m->dim(), f, 1 << 20))
          if (n.contains(u) && !q.contains(u)) all_of_n = false;
        CHECK(all_of_n == is_submodule(*m, n));
        if (t == Theta::left && is_submodule(*m, n)) {
          CHECK(q.size() == saturating_power(f.characteristic(), m->dim()));
        }
        // (tau(N):u) = tau_A((N:u)) as subsets of A
        const Vector u = oracle::random_vector(f, m->dim(), rng);
        const ModulePtr reg = regular_module(m->algebra_ptr());
        const ElementSet qa = tau(reg, colon(*m, n, u), t);
        for (const Vector a : enumerate_vectors(m->algebra().dim(), f, 1 << 20))
          CHECK(q.contains(act(*m, a, u)) == qa.contains(a));
      }
    }
  }
}

TEST_CASE("irreducibility criterion via sigma") {
  // K^2 over M_2 is irreducible, K^2 over upper triangular is not
  auto check = [](const ModulePtr& m) {
    bool all = true;
    for (const Subspace& n : enumerate_subspaces(m->dim(), m->field())) {
      if (n.is_full()) continue;
      const ElementSet s = sigma(m, n, Theta::left);
      for (const Vector& u : s.members())
        if (!u.is_zero() && n.contains(u)) all = false;
    }
    return all;
  };
  CHECK(check(standard_module(share(matrix_algebra(2, F3)), 2)));
  CHECK_FALSE(check(triangular_standard_module(share(upper_triangular(2, F3)), 2)));
}

TEST_CASE("quasi-stable and stable algebras") {
  const Limits lim;
  for (Theta t : kAllThetas) {
    CHECK(quasi_stable_algebra(product_algebra(2, F2), t).holds);
    CHECK(quasi_stable_algebra(truncated_poly(3, F3), t).holds);
    const StabilityVerdict m2 = quasi_stable_algebra(matrix_algebra(2, F2), t);
    CHECK_FALSE(m2.holds);
    CHECK(validate_algebra_stability_witness(matrix_algebra(2, F2), t, true, m2));

    CHECK(stable_algebra(product_algebra(1, F2), t).holds);
    CHECK(stable_algebra(product_algebra(2, F2), t).holds);
    const StabilityVerdict s33 = stable_algebra(product_algebra(2, F3), t);
    CHECK_FALSE(s33.holds);
    CHECK(validate_algebra_stability_witness(product_algebra(2, F3), t, false, s33));
  }
  // the witness for F_3+F_3 is the line through (1, 2)
  CHECK(*stable_algebra(product_algebra(2, F3), Theta::left).subspace ==
        Subspace::span(F3, 2, {v(F3, {1, 2})}));

  for (const Algebra& a : small_zoo()) {
    const bool qs = quasi_stable_algebra(a, Theta::left).holds;
    CHECK(qs == classified_quasi_stable(a));
    CHECK(stable_algebra(a, Theta::two_sided).holds == classified_stable(a));
    // algebra and regular-module definitions agree
    auto ap = share(a);
    for (Theta t : kAllThetas) {
      CHECK(quasi_stable_module(regular_module(ap), t).holds == quasi_stable_algebra(a, t).holds);
      CHECK(stable_module(regular_module(ap), t).holds == stable_algebra(a, t).holds);
    }
  }
}

TEST_CASE("quasi-stable modules satisfy tau(N) = I_N union N^c") {
  auto t2 = share(truncated_poly(2, F3));
  const ModulePtr m = direct_sum(regular_module(t2), regular_module(t2));
  for (Theta t : kAllThetas) {
    const StabilityVerdict v = quasi_stable_module(m, t);
    CHECK(v.holds);
    const StableSets sets(m);
    for (const Subspace& n : enumerate_subspaces(m->dim(), F3)) {
      const Subspace in = max_submodule(*m, n);
      const ElementSet q = sets.tau(n, t);
      for (const Vector u : enumerate_vectors(m->dim(), F3, 1 << 20))
        CHECK(q.contains(u) == (in.contains(u) || !n.contains(u)));
    }
  }
  // K^2 over M_2(F_2) is not quasi-stable, and the witness re-validates
  auto m2 = share(matrix_algebra(2, F2));
  const ModulePtr k2 = standard_module(m2, 2);
  const StabilityVerdict bad = quasi_stable_module(k2, Theta::right);
  CHECK_FALSE(bad.holds);
  CHECK(validate_module_stability_witness(*k2, Theta::right, true, bad));
}
