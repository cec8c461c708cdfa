#pragma once

#include <span>
#include <vector>

#include "acihs/linalg.hpp"
#include "acihs/poly.hpp"

namespace acihs::polymat {

/// r x r matrix of polynomials of degree <= d, i.e. an element of M_r(d).
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int r, int d);
  /// A(x) = sum_k coeffs[k] x^k; d = coeffs.size() - 1.
  static PolyMatrix from_coefficients(std::span<const CMatrix> coeffs);

  int rank() const noexcept { return r_; }
  /// Declared degree bound d.
  int degree_bound() const noexcept { return d_; }
  /// Largest entry degree actually present.
  int degree(double rel_floor = kDefaultTrimFloor) const;

  const ComplexPolynomial& at(int i, int j) const { return e_.at(index(i, j)); }
  /// Throws DegreeTooHigh if deg p > d.
  void set(int i, int j, ComplexPolynomial p);

  CMatrix coefficient(int k) const;
  CMatrix evaluate(cplx x) const;
  ComplexPolynomial trace() const;

  /// g A g^{-1} for a constant invertible g.
  PolyMatrix conjugated(const CMatrix& g) const;
  /// Same entries with a larger declared degree bound.
  PolyMatrix with_degree_bound(int d) const;

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const PolyMatrix& a, cplx s);

  static PolyMatrix identity(int r);

 private:
  std::size_t index(int i, int j) const;
  int r_ = 0;
  int d_ = 0;
  std::vector<ComplexPolynomial> e_;
};

/// Max coefficient distance between two matrices of equal rank.
double distance(const PolyMatrix& a, const PolyMatrix& b);
/// Max coefficient magnitude.
double norm(const PolyMatrix& a);

/// Coefficients of P(x, y) = y^r + b_1(x) y^{r-1} + ... + b_r(x) = det(yI - A(x)).
struct CharPoly {
  int r = 0;
  int d = 0;
  /// b[i-1] = b_i, deg b_i <= i*d.
  std::vector<ComplexPolynomial> b;

  /// b_i for 0 <= i <= r, with b_0 = 1.
  ComplexPolynomial coeff(int i) const;
  cplx operator()(cplx x, cplx y) const;
  cplx dx(cplx x, cplx y) const;
  cplx dy(cplx x, cplx y) const;
  /// P(x, .) as a polynomial in y, ascending.
  ComplexPolynomial in_y(cplx x) const;
  /// beta_r, defined by (-1)^{r+1} beta_r = [x^{dr-1}] det A(x).
  cplx beta() const;
  /// Checks deg b_i <= i*d.
  bool degrees_ok(double rel_floor = kDefaultTrimFloor) const;
};

/// Relative coefficient distance: max_i ||b_i - c_i|| / max(1, ||b_i||).
double distance(const CharPoly& a, const CharPoly& b);

/// The characteristic polynomial together with the adjugate expansion
/// adj(yI - A) = sum_{k=1}^r M_k y^{r-k}; d b_k = -tr(M_k dA).
struct CharPolyExpansion {
  CharPoly poly;
  std::vector<PolyMatrix> adjugate;
};

/// Faddeev-LeVerrier recursion over C[x].
CharPolyExpansion char_poly_expansion(const PolyMatrix& a);
CharPoly char_poly(const PolyMatrix& a);

/// deg(K) r(r-1)/2 + r(g-1) + 1.
int spectral_genus(int r, int deg_k, int g_base);

/// Splitting degrees floor((d-i)/n), i = 0..n-1, of the direct image of O(d)
/// under the n-fold cyclic cover z = w^n of P^1.
std::vector<int> direct_image_splitting(int n, int d);

/// k x k matrix with z in the upper-right corner and ones on the subdiagonal;
/// its k-th power is z I.
PolyMatrix ramification_matrix(int k);

}  // namespace acihs::polymat
