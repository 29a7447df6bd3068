#pragma once

// Left modules over an Algebra, given by one action matrix per basis element.
// Right modules are left modules over opposite(A).

#include <cstddef>
#include <memory>
#include <vector>

#include "mathieu/algebra.hpp"
#include "mathieu/exactfield.hpp"

namespace mathieu {

class ModuleSpace {
 public:
  /// actions[i] is the matrix of u -> e_i * u. The unit must act as the
  /// identity and actions must be multiplicative; both are checked unless
  /// validation is disabled.
  ModuleSpace(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> actions, bool validate = true);

  const Algebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  Field field() const { return algebra_->field(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& actions() const { return actions_; }
  const Matrix& action(std::size_t i) const { return actions_[i]; }
  Vector zero() const { return Vector(field(), dim_); }

  /// Matrix of u -> a * u.
  Matrix action_of(const Vector& a) const;
  Vector act(const Vector& a, const Vector& u) const;

 private:
  void validate() const;

  AlgebraPtr algebra_;
  std::size_t dim_;
  std::vector<Matrix> actions_;
};

using ModulePtr = std::shared_ptr<const ModuleSpace>;

class ModuleHom {
 public:
  /// matrix is target_dim x source_dim and must commute with every action.
  ModuleHom(ModulePtr source, ModulePtr target, Matrix matrix, bool validate = true);

  static ModuleHom identity(const ModulePtr& module);

  const ModuleSpace& source() const { return *source_; }
  const ModuleSpace& target() const { return *target_; }
  const ModulePtr& source_ptr() const { return source_; }
  const ModulePtr& target_ptr() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  Vector apply(const Vector& u) const { return matrix_ * u; }

 private:
  ModulePtr source_;
  ModulePtr target_;
  Matrix matrix_;
};

Vector act(const ModuleSpace& m, const Vector& a, const Vector& u);

/// (N:u) = {a in A : a*u in N}
Subspace colon(const ModuleSpace& m, const Subspace& n, const Vector& u);
/// a^{-1}N = {v in M : a*v in N}
Subspace inverse_image(const ModuleSpace& m, const Vector& a, const Subspace& n);

bool is_submodule(const ModuleSpace& m, const Subspace& n);
/// Smallest submodule containing the given vectors.
Subspace submodule_generated(const ModuleSpace& m, std::span<const Vector> generators);
/// I_N, the largest submodule inside N.
Subspace max_submodule(const ModuleSpace& m, const Subspace& n);

struct QuotientModule {
  ModulePtr module;
  ModuleHom projection;
};

/// M/V on the coordinates of the non-pivot columns of V. Throws
/// InvalidArgument if V is not a submodule.
QuotientModule quotient_module(const ModulePtr& m, const Subspace& v);

/// phi^{-1}(H)
Subspace pullback_subspace(const ModuleHom& phi, const Subspace& h);

/// Basis of Hom_A(M, N) as target_dim x source_dim matrices.
std::vector<Matrix> hom_space_basis(const ModuleSpace& source, const ModuleSpace& target);

// Builders.

/// A acting on itself by left multiplication.
ModulePtr regular_module(const AlgebraPtr& algebra);
/// A as a right A-module, i.e. a left module over opposite(A).
ModulePtr right_regular_module(const AlgebraPtr& algebra);
/// K^n over matrix_algebra(n) by matrix-vector product.
ModulePtr standard_module(const AlgebraPtr& matrix_algebra, std::size_t n);
/// K^n over upper_triangular(n).
ModulePtr triangular_standard_module(const AlgebraPtr& upper_triangular, std::size_t n);
ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b);
/// The submodule V as a module in the coordinates of V's canonical basis.
ModulePtr submodule(const ModulePtr& m, const Subspace& v);

}  // namespace mathieu
