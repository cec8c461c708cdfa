#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace acihs {

using cplx = std::complex<double>;

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = -1;

/// Relative magnitude floor used when deciding the degree of a polynomial:
/// coefficients below `floor * max|c|` at the top end do not count.
inline constexpr double kDefaultTrimFloor = 1e-12;

/// Dense univariate polynomial over C, coefficients in ascending degree order.
///
/// Storage is never silently truncated; `degree()` and `trimmed()` apply the
/// relative magnitude floor on demand. Arithmetic drops trailing exact zeros
/// only.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<cplx> coefficients);
  ComplexPolynomial(std::initializer_list<cplx> coefficients);

  static ComplexPolynomial constant(cplx c);
  static ComplexPolynomial monomial(int k, cplx c = 1.0);
  /// Monic polynomial prod_i (t - roots[i]).
  static ComplexPolynomial from_roots(std::span<const cplx> roots);

  const std::vector<cplx>& coefficients() const noexcept { return c_; }
  /// Coefficient of t^k; zero outside the stored range.
  cplx coeff(int k) const noexcept;
  void set_coeff(int k, cplx value);
  std::size_t size() const noexcept { return c_.size(); }

  int degree(double rel_floor = kDefaultTrimFloor) const noexcept;
  bool is_zero(double rel_floor = kDefaultTrimFloor) const noexcept {
    return degree(rel_floor) == kZeroDegree;
  }
  /// Coefficient at degree(rel_floor); zero for the zero polynomial.
  cplx leading(double rel_floor = kDefaultTrimFloor) const noexcept;
  /// Max coefficient magnitude.
  double norm() const noexcept;
  ComplexPolynomial trimmed(double rel_floor = kDefaultTrimFloor) const;

  cplx operator()(cplx t) const noexcept;
  ComplexPolynomial derivative() const;
  /// Coefficients of p(x0 + z) as a polynomial in z.
  ComplexPolynomial taylor_shift(cplx x0) const;

  ComplexPolynomial operator-() const;
  ComplexPolynomial& operator+=(const ComplexPolynomial& rhs);
  ComplexPolynomial& operator-=(const ComplexPolynomial& rhs);
  ComplexPolynomial& operator*=(const ComplexPolynomial& rhs);
  ComplexPolynomial& operator*=(cplx s);

  friend ComplexPolynomial operator+(ComplexPolynomial a, const ComplexPolynomial& b) { return a += b; }
  friend ComplexPolynomial operator-(ComplexPolynomial a, const ComplexPolynomial& b) { return a -= b; }
  friend ComplexPolynomial operator*(ComplexPolynomial a, const ComplexPolynomial& b) { return a *= b; }
  friend ComplexPolynomial operator*(ComplexPolynomial a, cplx s) { return a *= s; }
  friend ComplexPolynomial operator*(cplx s, ComplexPolynomial a) { return a *= s; }

 private:
  void drop_exact_zeros();
  std::vector<cplx> c_;
};

/// Max-norm of the coefficient difference.
double distance(const ComplexPolynomial& a, const ComplexPolynomial& b);

struct DivisionResult {
  ComplexPolynomial quotient;
  ComplexPolynomial remainder;
  /// Max coefficient magnitude of the remainder.
  double residual = 0.0;
};

/// Long division num = q*den + rem. Throws DivisionByZeroPolynomial.
DivisionResult divide(const ComplexPolynomial& num, const ComplexPolynomial& den,
                      double rel_floor = kDefaultTrimFloor);

/// Quotient of a division that is expected to be exact. The remainder is not
/// dropped silently: its size is returned in `residual`.
DivisionResult exact_divide(const ComplexPolynomial& num, const ComplexPolynomial& den,
                            double rel_floor = kDefaultTrimFloor);

/// Interpolating polynomial of degree <= nodes.size()-1. Throws DuplicateNodes.
ComplexPolynomial lagrange_interpolate(std::span<const cplx> nodes, std::span<const cplx> values,
                                       double node_tol = 1e-12);

/// Degree nodes.size() polynomial with F(nodes[i]) = values[i] and leading
/// coefficient `leading` (the value "at infinity"):
///   F(x) = sum_i F(a_i) prod_{j!=i} (x-a_j)/(a_i-a_j) + F(inf) prod_j (x-a_j).
ComplexPolynomial lagrange_interpolate_with_infinity(std::span<const cplx> nodes,
                                                     std::span<const cplx> values, cplx leading,
                                                     double node_tol = 1e-12);

/// Degree of a numerical gcd computed by Euclidean remainders; a remainder
/// whose norm falls below `rel_cutoff` (inputs normalized to unit max-norm)
/// terminates the sequence.
int gcd_degree(const ComplexPolynomial& f, const ComplexPolynomial& g, double rel_cutoff = 1e-8);

/// True iff gcd(f, f') is constant. Requires deg f >= 1.
bool squarefree(const ComplexPolynomial& f, double rel_cutoff = 1e-8);

/// All deg f roots: eigenvalues of the balanced companion matrix, each followed
/// by two Newton steps. Throws IllConditioned when a root cannot be polished to
/// |f(z)| <= tol * sum_k |a_k||z|^k.
std::vector<cplx> roots(const ComplexPolynomial& f, double tol = 1e-8);

/// Sort lexicographically by (real, imag).
void sort_lex(std::vector<cplx>& values);

/// Max pointwise distance under the best matching of two equal-size
/// multisets (exhaustive for size <= 8, greedy beyond).
double multiset_distance(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace acihs
