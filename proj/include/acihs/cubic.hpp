#pragma once

#include <functional>
#include <vector>

#include "acihs/linalg.hpp"
#include "acihs/poly.hpp"

namespace acihs::cubic {

using Point = std::vector<cplx>;

/// p : C^g -> g x g symmetric complex matrices. The callable must be pure.
struct PeriodSampler {
  int g = 0;
  double h = 1e-4;
  std::function<CMatrix(const Point&)> eval;
};

/// T(i, j, k) = d p_jk / d b_i.
class CubicTensor {
 public:
  CubicTensor() = default;
  CubicTensor(int g, double h) : g_(g), h_(h), t_(static_cast<std::size_t>(g * g * g), 0.0) {}

  int g() const noexcept { return g_; }
  double h() const noexcept { return h_; }
  cplx& operator()(int i, int j, int k) { return t_[index(i, j, k)]; }
  cplx operator()(int i, int j, int k) const { return t_[index(i, j, k)]; }
  double max_abs() const;

 private:
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>((i * g_ + j) * g_ + k);
  }
  int g_ = 0;
  double h_ = 0.0;
  std::vector<cplx> t_;
};

/// Central differences along b0 +- h e_i. With `imaginary_axis` the stencil
/// runs along i*h*e_i and the quotient is divided by i (same derivative for
/// holomorphic samplers). Throws SamplerFailure, AsymmetricPeriodMatrix.
CubicTensor period_tensor(const PeriodSampler& s, const Point& b0, double h, bool imaginary_axis = false);

/// max |T_ijk - T_jik|.
double cubic_defect(const CubicTensor& t);

/// Average over all permutations of (i, j, k).
CubicTensor symmetrized(const CubicTensor& t);

/// Relabels the base coordinates: out(i,j,k) = t(perm[i], perm[j], perm[k]).
CubicTensor permuted(const CubicTensor& t, const std::vector<int>& perm);

/// Finite-difference Hessian of F with the symmetric four-point stencil.
PeriodSampler hessian_sampler(std::function<cplx(const Point&)> f, int g, double h);

/// p(b) = [[b_2, 0], [0, b_1]], not the Hessian of anything; defect 1.
PeriodSampler skew_sampler();

/// True iff P is symmetric within `sym_tol` and Im P is positive definite
/// (smallest eigenvalue > `pd_tol`).
bool siegel_check(const CMatrix& p, double sym_tol = 1e-10, double pd_tol = 1e-10);

// ---------------------------------------------------------------------------

/// Sparse multivariate polynomial sum c * b^e.
class MultiPolynomial {
 public:
  struct Term {
    cplx c;
    std::vector<int> e;
  };

  MultiPolynomial() = default;
  MultiPolynomial(int nvars, std::vector<Term> terms);

  int nvars() const noexcept { return n_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  /// Largest exponent of a single variable.
  int max_partial_degree() const;
  int total_degree() const;

  cplx operator()(const Point& b) const;
  MultiPolynomial derivative(int var) const;
  /// Exact Hessian matrix at b.
  CMatrix hessian(const Point& b) const;

 private:
  int n_ = 0;
  std::vector<Term> terms_;
};

/// Exact Hessian of a polynomial prepotential.
PeriodSampler polynomial_hessian_sampler(const MultiPolynomial& f, double h = 1e-4);

}  // namespace acihs::cubic
