#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mathieu/exactfield.hpp"
#include "oracles.hpp"

using namespace mathieu;

namespace {
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field Q = Field::rationals();
}  // namespace

TEST_CASE("scalars reduce into canonical form") {
  CHECK(Scalar(F3, -1).residue() == 2);
  CHECK(Scalar(F3, 7).residue() == 1);
  CHECK(Scalar::parse(F3, "1/2").residue() == 2);
  CHECK(Scalar(Q, mpq_class(4, -6)).to_string() == "-2/3");
  CHECK(Scalar::parse(Q, "6/4").to_string() == "3/2");
  CHECK_THROWS_AS(Scalar::parse(Q, "1/0"), InvalidArgument);
  CHECK_THROWS_AS(Scalar(F3, 1) + Scalar(F2, 1), FieldMismatch);
  CHECK_THROWS_AS(Scalar(F3, 0).inverse(), Error);
  CHECK_THROWS_AS(Field::prime(4), InvalidArgument);
}

TEST_CASE("field inverses") {
  const Field f7 = Field::prime(7);
  for (int x = 1; x < 7; ++x) CHECK((Scalar(f7, x) * Scalar(f7, x).inverse()).is_one());
  const Scalar q = Scalar::parse(Q, "-5/7");
  CHECK((q * q.inverse()).is_one());
}

TEST_CASE("rref examples") {
  const RowSpace id = rref(Matrix::identity(F2, 2));
  CHECK(id.rank == 2);
  CHECK(id.space.basis() == std::vector<Vector>{Vector::from_ints(F2, {1, 0}), Vector::from_ints(F2, {0, 1})});

  CHECK(rref(Matrix(F2, 2, 2)).rank == 0);
  CHECK(rref(Matrix(F2, 2, 2)).space.basis().empty());

  const RowSpace ones = rref(Matrix::from_ints(F2, {{1, 1}, {1, 1}}));
  CHECK(ones.rank == 1);
  CHECK(ones.space.basis() == std::vector<Vector>{Vector::from_ints(F2, {1, 1})});
}

TEST_CASE("right kernels") {
  CHECK(solve_right_kernel(Matrix::identity(F3, 3)).is_zero());
  CHECK(solve_right_kernel(Matrix(F3, 2, 2)).is_full());
  const Subspace k = solve_right_kernel(Matrix::from_ints(F3, {{1, 1}}));
  CHECK(k == Subspace::span(F3, 2, {Vector::from_ints(F3, {1, 2})}));
}

TEST_CASE("sum and intersection examples") {
  const Subspace x = Subspace::span(F2, 2, {Vector::from_ints(F2, {1, 0})});
  const Subspace y = Subspace::span(F2, 2, {Vector::from_ints(F2, {0, 1})});
  const Subspace d = Subspace::span(F2, 2, {Vector::from_ints(F2, {1, 1})});
  CHECK(subspace_sum(x, Subspace::zero(F2, 2)) == x);
  CHECK(subspace_intersect(x, y).is_zero());
  CHECK(subspace_sum(x, d).is_full());
  CHECK_THROWS_AS(subspace_sum(x, Subspace::zero(F2, 3)), DimensionMismatch);
}

TEST_CASE("vector enumeration") {
  auto one = enumerate_vectors(1, F2, 1 << 20);
  CHECK(one.size() == 2);
  CHECK(one.at(0) == Vector::from_ints(F2, {0}));
  CHECK(one.at(1) == Vector::from_ints(F2, {1}));
  CHECK(enumerate_vectors(2, F2, 1 << 20).size() == 4);

  auto r = enumerate_vectors(3, F3, 1 << 20);
  CHECK(r.size() == 27);
  CHECK(r.at(0) == Vector::from_ints(F3, {0, 0, 0}));
  CHECK(r.at(26) == Vector::from_ints(F3, {2, 2, 2}));
  std::set<Vector> seen(r.begin(), r.end());
  CHECK(seen.size() == 27);
  Vector prev = r.at(0);
  for (std::uint64_t i = 1; i < r.size(); ++i) {
    CHECK(prev < r.at(i));
    CHECK(vector_index(r.at(i)) == i);
    prev = r.at(i);
  }

  try {
    enumerate_vectors(21, F2, 1 << 20);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.required() == (std::uint64_t{1} << 21));
  }
  CHECK_THROWS_AS(enumerate_vectors(2, Q, 100), Unsupported);
}

TEST_CASE("linear preimage") {
  // x -> (x1, 0); preimage of span{e2} is span{e2}
  const Matrix m = Matrix::from_ints(F3, {{1, 0}, {0, 0}});
  const Subspace target = Subspace::span(F3, 2, {Vector::from_ints(F3, {0, 1})});
  CHECK(linear_preimage(m, target) == target);
  CHECK(linear_preimage(m, Subspace::full(F3, 2)).is_full());
}

TEST_CASE("property: rref, sums and intersections against span enumeration") {
  std::mt19937_64 rng(7);
  for (Field f : {F2, F3}) {
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t n = 1 + trial % 4;
      const Subspace u = oracle::random_subspace(f, n, rng);
      const Subspace v = oracle::random_subspace(f, n, rng);

      CHECK(Subspace::span(f, n, u.basis()) == u);

      const Subspace s = subspace_sum(u, v);
      const Subspace i = subspace_intersect(u, v);
      CHECK(s.contains(u));
      CHECK(u.contains(i));
      CHECK(s.dim() + i.dim() == u.dim() + v.dim());

      const auto mu = oracle::members(u);
      const auto mv = oracle::members(v);
      std::set<Vector> both;
      std::set_intersection(mu.begin(), mu.end(), mv.begin(), mv.end(), std::inserter(both, both.end()));
      CHECK(oracle::members(i) == both);

      for (const Vector& x : oracle::all_vectors(f, n)) {
        CHECK(u.contains(x) == (mu.count(x) > 0));
        CHECK(u.reduce(x).is_zero() == (mu.count(x) > 0));
      }
      CHECK((u == v) == (mu == mv));
    }
  }
}

TEST_CASE("property: rational rref keeps canonical basis") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> gens;
    for (int g = 0; g < 3; ++g) {
      std::vector<Scalar> e;
      for (int k = 0; k < 4; ++k) e.push_back(oracle::random_rational(rng));
      gens.emplace_back(Q, e);
    }
    const Subspace s = Subspace::span(Q, 4, gens);
    for (const Vector& g : gens) CHECK(s.contains(g));
    for (std::size_t r = 0; r < s.dim(); ++r) {
      CHECK(s.basis()[r][s.pivots()[r]].is_one());
      for (std::size_t o = 0; o < s.dim(); ++o)
        if (o != r) CHECK(s.basis()[o][s.pivots()[r]].is_zero());
    }
    // a different generating set for the same space gives the same basis
    std::vector<Vector> mixed{gens[0] + gens[1], gens[1], gens[2] - gens[0]};
    CHECK(Subspace::span(Q, 4, mixed) == s);
  }
}
