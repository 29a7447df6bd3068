#include "mathieu/module.hpp"

#include <utility>

namespace mathieu {

ModuleSpace::ModuleSpace(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> actions, bool validate_axioms)
    : algebra_(std::move(algebra)), dim_(dim), actions_(std::move(actions)) {
  if (!algebra_) throw InvalidArgument("module needs an algebra");
  if (actions_.size() != algebra_->dim()) {
    throw DimensionMismatch("module needs one action matrix per algebra basis element (" +
                            std::to_string(algebra_->dim()) + "), got " + std::to_string(actions_.size()));
  }
  for (const Matrix& m : actions_) {
    if (m.field() != algebra_->field()) throw FieldMismatch("action matrix over " + m.field().name());
    if (m.rows() != dim_ || m.cols() != dim_) throw DimensionMismatch("action matrices must be dim x dim");
  }
  if (validate_axioms) validate();
}

void ModuleSpace::validate() const {
  const Algebra& a = *algebra_;
  if (!(action_of(a.unit()) == Matrix::identity(field(), dim_))) {
    throw AxiomViolation("the unit does not act as the identity");
  }
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (!(actions_[i] * actions_[j] == action_of(a.basis_product(i, j)))) {
        throw AxiomViolation("action is not multiplicative on basis pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
      }
    }
}

Matrix ModuleSpace::action_of(const Vector& a) const {
  if (a.size() != algebra_->dim()) throw DimensionMismatch("algebra element has the wrong dimension");
  if (a.field() != field()) throw FieldMismatch("algebra element over " + a.field().name());
  Matrix m(field(), dim_, dim_);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) m += a[i] * actions_[i];
  return m;
}

Vector ModuleSpace::act(const Vector& a, const Vector& u) const {
  if (a.size() != algebra_->dim()) throw DimensionMismatch("algebra element has the wrong dimension");
  if (u.size() != dim_) throw DimensionMismatch("module element has the wrong dimension");
  Vector out(field(), dim_);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) out.add_scaled(a[i], actions_[i] * u);
  return out;
}

Vector act(const ModuleSpace& m, const Vector& a, const Vector& u) { return m.act(a, u); }

// ---------------------------------------------------------------- homs

ModuleHom::ModuleHom(ModulePtr source, ModulePtr target, Matrix matrix, bool validate)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!source_ || !target_) throw InvalidArgument("module homomorphism needs a source and a target");
  if (!(source_->algebra() == target_->algebra())) {
    throw InvalidArgument("module homomorphism between modules over different algebras");
  }
  if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim()) {
    throw DimensionMismatch("homomorphism matrix must be target_dim x source_dim");
  }
  if (!validate) return;
  for (std::size_t i = 0; i < source_->algebra().dim(); ++i) {
    if (!(matrix_ * source_->action(i) == target_->action(i) * matrix_)) {
      throw AxiomViolation("map does not commute with the action of e_" + std::to_string(i));
    }
  }
}

ModuleHom ModuleHom::identity(const ModulePtr& module) {
  return ModuleHom(module, module, Matrix::identity(module->field(), module->dim()), false);
}

// ---------------------------------------------------------------- colon spaces

Subspace colon(const ModuleSpace& m, const Subspace& n, const Vector& u) {
  if (n.ambient_dim() != m.dim()) throw DimensionMismatch("subspace does not live in the module");
  std::vector<Vector> columns;
  columns.reserve(m.algebra().dim());
  for (const Matrix& act : m.actions()) columns.push_back(act * u);
  return linear_preimage(Matrix::from_columns(m.field(), m.dim(), columns), n);
}

Subspace inverse_image(const ModuleSpace& m, const Vector& a, const Subspace& n) {
  if (n.ambient_dim() != m.dim()) throw DimensionMismatch("subspace does not live in the module");
  return linear_preimage(m.action_of(a), n);
}

bool is_submodule(const ModuleSpace& m, const Subspace& n) {
  for (const Vector& v : n.basis())
    for (const Matrix& act : m.actions())
      if (!n.contains(act * v)) return false;
  return true;
}

Subspace submodule_generated(const ModuleSpace& m, std::span<const Vector> generators) {
  std::vector<Vector> spanning;
  for (const Vector& g : generators)
    for (const Matrix& act : m.actions()) spanning.push_back(act * g);
  // the unit is a combination of basis elements, so the generators are included
  return Subspace::span(m.field(), m.dim(), spanning);
}

Subspace max_submodule(const ModuleSpace& m, const Subspace& n) {
  if (n.ambient_dim() != m.dim()) throw DimensionMismatch("subspace does not live in the module");
  Subspace current = n;
  while (true) {
    Subspace next = current;
    for (const Matrix& act : m.actions()) next = subspace_intersect(next, linear_preimage(act, current));
    if (next == current) return current;
    current = std::move(next);
  }
}

QuotientModule quotient_module(const ModulePtr& m, const Subspace& v) {
  if (v.ambient_dim() != m->dim()) throw DimensionMismatch("subspace does not live in the module");
  if (!is_submodule(*m, v)) throw InvalidArgument("quotient_module: subspace is not a submodule");
  const std::vector<std::size_t> coords = v.non_pivots();
  const std::size_t q = coords.size();
  const Field f = m->field();

  Matrix projection(f, q, m->dim());
  for (std::size_t c = 0; c < m->dim(); ++c) {
    const Vector r = v.reduce(Vector::unit(f, m->dim(), c));
    for (std::size_t k = 0; k < q; ++k) projection(k, c) = r[coords[k]];
  }
  // lift: coordinate k of M/V is the class of e_{coords[k]}
  Matrix lift(f, m->dim(), q);
  for (std::size_t k = 0; k < q; ++k) lift(coords[k], k) = Scalar::one(f);

  std::vector<Matrix> actions;
  actions.reserve(m->actions().size());
  for (const Matrix& act : m->actions()) actions.push_back(projection * act * lift);
  auto quotient = std::make_shared<const ModuleSpace>(m->algebra_ptr(), q, std::move(actions));
  return QuotientModule{quotient, ModuleHom(m, quotient, std::move(projection))};
}

Subspace pullback_subspace(const ModuleHom& phi, const Subspace& h) {
  if (h.ambient_dim() != phi.target().dim()) throw DimensionMismatch("subspace does not live in the target");
  return linear_preimage(phi.matrix(), h);
}

std::vector<Matrix> hom_space_basis(const ModuleSpace& source, const ModuleSpace& target) {
  if (!(source.algebra() == target.algebra())) throw InvalidArgument("modules over different algebras");
  const Field f = source.field();
  const std::size_t m = source.dim();
  const std::size_t n = target.dim();
  // unknown phi(r, c) sits at index r*m + c; one equation per entry of
  // phi*S_i - T_i*phi
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < source.algebra().dim(); ++i) {
    const Matrix& s = source.action(i);
    const Matrix& t = target.action(i);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        Vector eq(f, n * m);
        for (std::size_t k = 0; k < m; ++k) eq[r * m + k] += s(k, c);
        for (std::size_t k = 0; k < n; ++k) eq[k * m + c] -= t(r, k);
        if (!eq.is_zero()) rows.push_back(std::move(eq));
      }
  }
  const Subspace kernel = rows.empty() ? Subspace::full(f, n * m)
                                       : solve_right_kernel(Matrix::from_rows(f, n * m, rows));
  std::vector<Matrix> out;
  for (const Vector& v : kernel.basis()) {
    Matrix phi(f, n, m);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < m; ++c) phi(r, c) = v[r * m + c];
    out.push_back(std::move(phi));
  }
  return out;
}

// ---------------------------------------------------------------- builders

ModulePtr regular_module(const AlgebraPtr& algebra) {
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < algebra->dim(); ++i) actions.push_back(algebra->left_basis_action(i));
  return std::make_shared<const ModuleSpace>(algebra, algebra->dim(), std::move(actions), false);
}

ModulePtr right_regular_module(const AlgebraPtr& algebra) {
  auto op = std::make_shared<const Algebra>(opposite(*algebra));
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < algebra->dim(); ++i) actions.push_back(algebra->right_basis_action(i));
  return std::make_shared<const ModuleSpace>(op, algebra->dim(), std::move(actions), false);
}

ModulePtr standard_module(const AlgebraPtr& matrix_algebra, std::size_t n) {
  if (matrix_algebra->dim() != n * n) throw DimensionMismatch("standard_module expects matrix_algebra(n)");
  const Field f = matrix_algebra->field();
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix e(f, n, n);
      e(i, j) = Scalar::one(f);
      actions.push_back(std::move(e));
    }
  return std::make_shared<const ModuleSpace>(matrix_algebra, n, std::move(actions));
}

ModulePtr triangular_standard_module(const AlgebraPtr& upper, std::size_t n) {
  if (upper->dim() != n * (n + 1) / 2) throw DimensionMismatch("expects upper_triangular(n)");
  const Field f = upper->field();
  std::vector<Matrix> actions(upper->dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Matrix e(f, n, n);
      e(i, j) = Scalar::one(f);
      actions[upper_triangular_index(n, i, j)] = std::move(e);
    }
  return std::make_shared<const ModuleSpace>(upper, n, std::move(actions));
}

ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b) {
  if (!(a->algebra() == b->algebra())) throw InvalidArgument("direct sum of modules over different algebras");
  const Field f = a->field();
  const std::size_t da = a->dim();
  const std::size_t d = da + b->dim();
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < a->algebra().dim(); ++i) {
    Matrix m(f, d, d);
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < da; ++c) m(r, c) = a->action(i)(r, c);
    for (std::size_t r = 0; r < b->dim(); ++r)
      for (std::size_t c = 0; c < b->dim(); ++c) m(da + r, da + c) = b->action(i)(r, c);
    actions.push_back(std::move(m));
  }
  return std::make_shared<const ModuleSpace>(a->algebra_ptr(), d, std::move(actions), false);
}

ModulePtr submodule(const ModulePtr& m, const Subspace& v) {
  if (!is_submodule(*m, v)) throw InvalidArgument("submodule: subspace is not action-invariant");
  const Field f = m->field();
  const std::size_t k = v.dim();
  std::vector<Matrix> actions;
  for (const Matrix& act : m->actions()) {
    Matrix restricted(f, k, k);
    for (std::size_t c = 0; c < k; ++c) {
      const Vector image = act * v.basis()[c];
      // in RREF, the coordinate on basis row r is the entry at its pivot
      for (std::size_t r = 0; r < k; ++r) restricted(r, c) = image[v.pivots()[r]];
    }
    actions.push_back(std::move(restricted));
  }
  return std::make_shared<const ModuleSpace>(m->algebra_ptr(), k, std::move(actions), false);
}

}  // namespace mathieu
