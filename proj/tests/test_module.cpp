#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "mathieu/mathieu.hpp"
#include "mathieu/module.hpp"
#include "oracles.hpp"

using namespace mathieu;

namespace {

const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

Vector v(Field f, std::initializer_list<std::int64_t> xs) { return Vector::from_ints(f, xs); }

AlgebraPtr share(Algebra a) { return std::make_shared<const Algebra>(std::move(a)); }

std::vector<ModulePtr> module_zoo() {
  std::vector<ModulePtr> out;
  for (Field f : {F2, F3}) {
    auto m2 = share(matrix_algebra(2, f));
    out.push_back(standard_module(m2, 2));
    out.push_back(regular_module(share(truncated_poly(2, f))));
    out.push_back(regular_module(share(product_algebra(2, f))));
    auto ut = share(upper_triangular(2, f));
    out.push_back(triangular_standard_module(ut, 2));
    out.push_back(regular_module(ut));
    out.push_back(right_regular_module(ut));
    out.push_back(direct_sum(regular_module(share(truncated_poly(2, f))), regular_module(share(truncated_poly(2, f)))));
  }
  out.push_back(regular_module(share(matrix_algebra(2, F2))));
  out.push_back(direct_sum(standard_module(share(matrix_algebra(2, F2)), 2), standard_module(share(matrix_algebra(2, F2)), 2)));
  return out;
}

}  // namespace

TEST_CASE("actions") {
  auto m2 = share(matrix_algebra(2, F2));
  const ModulePtr k2 = standard_module(m2, 2);
  const Vector e11 = v(F2, {1, 0, 0, 0});
  CHECK(act(*k2, e11, v(F2, {0, 1})) == v(F2, {0, 0}));
  CHECK(act(*k2, e11, v(F2, {1, 1})) == v(F2, {1, 0}));
  CHECK(act(*k2, m2->unit(), v(F2, {1, 1})) == v(F2, {1, 1}));
  CHECK(act(*k2, m2->zero(), v(F2, {1, 1})) == v(F2, {0, 0}));
}

TEST_CASE("module validation") {
  auto m2 = share(matrix_algebra(2, F2));
  std::vector<Matrix> actions = standard_module(m2, 2)->actions();
  std::swap(actions[1], actions[2]);  // transpose action: not a left module
  CHECK_THROWS_AS(ModuleSpace(m2, 2, actions), AxiomViolation);
  actions.pop_back();
  CHECK_THROWS_AS(ModuleSpace(m2, 2, actions), DimensionMismatch);
  for (const ModulePtr& m : module_zoo()) CHECK_NOTHROW(ModuleSpace(m->algebra_ptr(), m->dim(), m->actions()));
}

TEST_CASE("colon spaces") {
  auto m2 = share(matrix_algebra(2, F2));
  const ModulePtr k2 = standard_module(m2, 2);
  const Subspace zero = Subspace::zero(F2, 2);
  CHECK(colon(*k2, zero, k2->zero()).is_full());
  const Subspace c = colon(*k2, zero, v(F2, {1, 0}));
  CHECK(c.dim() == 2);
  // first column zero: E12, E22
  CHECK(c == Subspace::span(F2, 4, {v(F2, {0, 1, 0, 0}), v(F2, {0, 0, 0, 1})}));
}

TEST_CASE("inverse images") {
  auto m2 = share(matrix_algebra(2, F2));
  const ModulePtr k2 = standard_module(m2, 2);
  const Subspace line = Subspace::span(F2, 2, {v(F2, {1, 0})});
  CHECK(inverse_image(*k2, m2->unit(), line) == line);
  CHECK(inverse_image(*k2, m2->zero(), line).is_full());
  CHECK(inverse_image(*k2, v(F2, {1, 0, 0, 0}), line).is_full());
}

TEST_CASE("maximum submodules") {
  auto m2 = share(matrix_algebra(2, F2));
  const ModulePtr k2 = standard_module(m2, 2);
  CHECK(max_submodule(*k2, Subspace::span(F2, 2, {v(F2, {1, 0})})).is_zero());
  CHECK(max_submodule(*k2, Subspace::full(F2, 2)).is_full());

  // algebra as module over itself, N = H_X with X = E11 over F_5
  const Field f5 = Field::prime(5);
  auto m25 = share(matrix_algebra(2, f5));
  const ModulePtr reg = regular_module(m25);
  // Tr(Y E11) = y11
  const Subspace hx = Subspace::span(f5, 4, {v(f5, {0, 1, 0, 0}), v(f5, {0, 0, 1, 0}), v(f5, {0, 0, 0, 1})});
  // {Y : Y E11 = 0} = first column zero
  const Subspace ann = Subspace::span(f5, 4, {v(f5, {0, 1, 0, 0}), v(f5, {0, 0, 0, 1})});
  CHECK(max_submodule(*reg, hx) == ann);
}

TEST_CASE("property: module operations against element-set oracles") {
  std::mt19937_64 rng(21);
  for (const ModulePtr& m : module_zoo()) {
    for (int trial = 0; trial < 8; ++trial) {
      const Subspace n = oracle::random_subspace(m->field(), m->dim(), rng);
      const auto nm = oracle::members(n);
      const Vector u = oracle::random_vector(m->field(), m->dim(), rng);
      const Vector a = oracle::random_vector(m->field(), m->algebra().dim(), rng);

      CHECK(oracle::members(colon(*m, n, u)) == oracle::colon(*m, nm, u));

      std::set<Vector> inv;
      for (const Vector& x : oracle::all_vectors(m->field(), m->dim()))
        if (nm.count(oracle::naive_act(*m, a, x))) inv.insert(x);
      CHECK(oracle::members(inverse_image(*m, a, n)) == inv);

      const Subspace big = max_submodule(*m, n);
      CHECK(oracle::members(big) == oracle::max_submodule(*m, nm));
      CHECK(n.contains(big));
      CHECK(is_submodule(*m, big));
      CHECK(is_submodule(*m, n) == oracle::invariant(*m, nm));

      // (N:au) = ((N:u):a) with the outer colon in the algebra
      CHECK(colon(*m, n, act(*m, a, u)) == algebra_colon(m->algebra(), colon(*m, n, u), a));

      // intersections commute with colons
      const Subspace n2 = oracle::random_subspace(m->field(), m->dim(), rng);
      CHECK(colon(*m, subspace_intersect(n, n2), u) == subspace_intersect(colon(*m, n, u), colon(*m, n2, u)));
    }
  }
}

TEST_CASE("quotient modules") {
  auto t2 = share(truncated_poly(2, F2));
  const ModulePtr reg = regular_module(t2);
  const QuotientModule by_zero = quotient_module(reg, Subspace::zero(F2, 2));
  CHECK(by_zero.module->dim() == 2);
  CHECK(by_zero.module->actions() == reg->actions());
  CHECK(quotient_module(reg, Subspace::full(F2, 2)).module->dim() == 0);

  const QuotientModule q = quotient_module(reg, Subspace::span(F2, 2, {v(F2, {0, 1})}));
  CHECK(q.module->dim() == 1);
  CHECK(q.module->action(1).is_zero());
  CHECK(q.module->action(0) == Matrix::identity(F2, 1));

  CHECK_THROWS_AS(quotient_module(reg, Subspace::span(F2, 2, {v(F2, {1, 1})})), InvalidArgument);

  // the projection intertwines actions (checked by ModuleHom) and has kernel V
  std::mt19937_64 rng(4);
  for (const ModulePtr& m : module_zoo()) {
    const Subspace v0 = submodule_generated(*m, std::vector<Vector>{oracle::random_vector(m->field(), m->dim(), rng)});
    const QuotientModule qm = quotient_module(m, v0);
    CHECK(pullback_subspace(qm.projection, Subspace::zero(m->field(), qm.module->dim())) == v0);
    CHECK(qm.module->dim() + v0.dim() == m->dim());
  }
}

TEST_CASE("pullbacks and homomorphisms") {
  auto m2 = share(matrix_algebra(2, F2));
  const ModulePtr k2 = standard_module(m2, 2);
  const ModuleHom id = ModuleHom::identity(k2);
  const Subspace h = Subspace::span(F2, 2, {v(F2, {1, 1})});
  CHECK(pullback_subspace(id, h) == h);
  const ModuleHom zero(k2, k2, Matrix(F2, 2, 2));
  CHECK(pullback_subspace(zero, h).is_full());

  // span{e1} embedded into K^2 over K (1-dimensional algebra)
  auto k = share(product_algebra(1, F2));
  auto line = std::make_shared<const ModuleSpace>(k, 1, std::vector<Matrix>{Matrix::identity(F2, 1)});
  auto plane = std::make_shared<const ModuleSpace>(k, 2, std::vector<Matrix>{Matrix::identity(F2, 2)});
  const ModuleHom embed(line, plane, Matrix::from_ints(F2, {{1}, {0}}));
  CHECK(pullback_subspace(embed, Subspace::span(F2, 2, {v(F2, {0, 1})})).is_zero());

  CHECK_THROWS_AS(ModuleHom(k2, k2, Matrix::from_ints(F2, {{1, 0}, {0, 0}})), AxiomViolation);

  // Hom(K^2, K^2) over M_2 is the scalars; over K it is all 2x2 matrices
  CHECK(hom_space_basis(*k2, *k2).size() == 1);
  CHECK(hom_space_basis(*plane, *plane).size() == 4);

  std::mt19937_64 rng(8);
  for (const ModulePtr& m : module_zoo()) {
    for (const Matrix& phi : hom_space_basis(*m, *m)) CHECK_NOTHROW(ModuleHom(m, m, phi));
    const Subspace hh = oracle::random_subspace(m->field(), m->dim(), rng);
    const Vector u = oracle::random_vector(m->field(), m->dim(), rng);
    for (const Matrix& phi : hom_space_basis(*m, *m)) {
      const ModuleHom f(m, m, phi);
      // (H : phi(u)) = (phi^{-1}(H) : u)
      CHECK(colon(*m, hh, f.apply(u)) == colon(*m, pullback_subspace(f, hh), u));
    }
  }
}

TEST_CASE("submodules as modules") {
  auto t3 = share(truncated_poly(3, F3));
  const ModulePtr reg = regular_module(t3);
  const Subspace xs = Subspace::span(F3, 3, {v(F3, {0, 1, 0}), v(F3, {0, 0, 1})});
  const ModulePtr sub = submodule(reg, xs);
  CHECK(sub->dim() == 2);
  // x acts on (x, x^2) as the shift
  CHECK(sub->action(1) == Matrix::from_ints(F3, {{0, 0}, {1, 0}}));
  CHECK_THROWS_AS(submodule(reg, Subspace::span(F3, 3, {v(F3, {1, 1, 0})})), InvalidArgument);
}
