#include "acihs/polymat.hpp"

#include <algorithm>
#include <cmath>

#include "acihs/errors.hpp"

namespace acihs::polymat {

PolyMatrix::PolyMatrix(int r, int d) : r_(r), d_(d) {
  if (r < 1) throw InvalidArgument("matrix rank must be positive");
  if (d < 0) throw InvalidArgument("degree bound must be non-negative");
  e_.resize(static_cast<std::size_t>(r) * static_cast<std::size_t>(r));
}

PolyMatrix PolyMatrix::from_coefficients(std::span<const CMatrix> coeffs) {
  if (coeffs.empty()) throw InvalidArgument("need at least one coefficient matrix");
  const int r = static_cast<int>(coeffs.front().rows());
  PolyMatrix a(r, static_cast<int>(coeffs.size()) - 1);
  for (const auto& c : coeffs)
    if (c.rows() != r || c.cols() != r) throw InvalidArgument("coefficient matrices must be square of equal size");
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      std::vector<cplx> v(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) v[k] = coeffs[k](i, j);
      a.e_[a.index(i, j)] = ComplexPolynomial(std::move(v));
    }
  return a;
}

std::size_t PolyMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= r_ || j >= r_) throw InvalidArgument("matrix index out of range");
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(r_) + static_cast<std::size_t>(j);
}

int PolyMatrix::degree(double rel_floor) const {
  // Floor relative to the whole matrix, not per entry.
  const double floor = rel_floor * norm(*this);
  int deg = kZeroDegree;
  for (const auto& p : e_)
    for (int k = static_cast<int>(p.size()) - 1; k > deg; --k)
      if (std::abs(p.coeff(k)) > floor) {
        deg = k;
        break;
      }
  return deg;
}

void PolyMatrix::set(int i, int j, ComplexPolynomial p) {
  if (static_cast<int>(p.size()) - 1 > d_ && p.degree() > d_)
    throw DegreeTooHigh("entry degree " + std::to_string(p.degree()) + " exceeds bound " + std::to_string(d_));
  e_[index(i, j)] = std::move(p);
}

CMatrix PolyMatrix::coefficient(int k) const {
  CMatrix m(r_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) m(i, j) = e_[index(i, j)].coeff(k);
  return m;
}

CMatrix PolyMatrix::evaluate(cplx x) const {
  CMatrix m(r_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) m(i, j) = e_[index(i, j)](x);
  return m;
}

ComplexPolynomial PolyMatrix::trace() const {
  ComplexPolynomial t;
  for (int i = 0; i < r_; ++i) t += e_[index(i, i)];
  return t;
}

PolyMatrix PolyMatrix::conjugated(const CMatrix& g) const {
  if (g.rows() != r_ || g.cols() != r_) throw InvalidArgument("conjugating matrix has the wrong size");
  Eigen::FullPivLU<CMatrix> lu(g);
  if (!lu.isInvertible()) throw InvalidArgument("conjugating matrix is singular");
  const CMatrix ginv = lu.inverse();
  std::vector<CMatrix> coeffs;
  for (int k = 0; k <= d_; ++k) coeffs.push_back(g * coefficient(k) * ginv);
  return from_coefficients(coeffs);
}

PolyMatrix PolyMatrix::with_degree_bound(int d) const {
  if (d < degree(0.0)) throw DegreeTooHigh("new bound is below the current degree");
  PolyMatrix a = *this;
  a.d_ = d;
  return a;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.r_ != b.r_) throw InvalidArgument("rank mismatch");
  PolyMatrix c(a.r_, std::max(a.d_, b.d_));
  for (std::size_t k = 0; k < c.e_.size(); ++k) c.e_[k] = a.e_[k] + b.e_[k];
  return c;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.r_ != b.r_) throw InvalidArgument("rank mismatch");
  PolyMatrix c(a.r_, std::max(a.d_, b.d_));
  for (std::size_t k = 0; k < c.e_.size(); ++k) c.e_[k] = a.e_[k] - b.e_[k];
  return c;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.r_ != b.r_) throw InvalidArgument("rank mismatch");
  const int r = a.r_;
  PolyMatrix c(r, a.d_ + b.d_);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      ComplexPolynomial s;
      for (int k = 0; k < r; ++k) s += a.at(i, k) * b.at(k, j);
      c.e_[c.index(i, j)] = std::move(s);
    }
  return c;
}

PolyMatrix operator*(const PolyMatrix& a, cplx s) {
  PolyMatrix c = a;
  for (auto& p : c.e_) p *= s;
  return c;
}

PolyMatrix PolyMatrix::identity(int r) {
  PolyMatrix a(r, 0);
  for (int i = 0; i < r; ++i) a.e_[a.index(i, i)] = ComplexPolynomial::constant(1.0);
  return a;
}

double distance(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rank() != b.rank()) throw InvalidArgument("rank mismatch");
  double d = 0.0;
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) d = std::max(d, acihs::distance(a.at(i, j), b.at(i, j)));
  return d;
}

double norm(const PolyMatrix& a) {
  double n = 0.0;
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) n = std::max(n, a.at(i, j).norm());
  return n;
}

// ---------------------------------------------------------------------------

ComplexPolynomial CharPoly::coeff(int i) const {
  if (i == 0) return ComplexPolynomial::constant(1.0);
  if (i < 0 || i > r) throw InvalidArgument("char poly index out of range");
  return b[static_cast<std::size_t>(i - 1)];
}

cplx CharPoly::operator()(cplx x, cplx y) const {
  cplx acc = 1.0;
  for (int i = 1; i <= r; ++i) acc = acc * y + b[static_cast<std::size_t>(i - 1)](x);
  return acc;
}

cplx CharPoly::dx(cplx x, cplx y) const {
  cplx acc = 0.0;
  for (int i = 1; i <= r; ++i) acc = acc * y + b[static_cast<std::size_t>(i - 1)].derivative()(x);
  return acc;
}

cplx CharPoly::dy(cplx x, cplx y) const { return in_y(x).derivative()(y); }

ComplexPolynomial CharPoly::in_y(cplx x) const {
  std::vector<cplx> c(static_cast<std::size_t>(r) + 1);
  c[static_cast<std::size_t>(r)] = 1.0;
  for (int i = 1; i <= r; ++i) c[static_cast<std::size_t>(r - i)] = b[static_cast<std::size_t>(i - 1)](x);
  return ComplexPolynomial(std::move(c));
}

cplx CharPoly::beta() const {
  // det A = (-1)^r b_r, so (-1)^{r+1} beta = (-1)^r [x^{dr-1}] b_r.
  if (r < 1 || d < 1) return 0.0;
  return -b[static_cast<std::size_t>(r - 1)].coeff(d * r - 1);
}

bool CharPoly::degrees_ok(double rel_floor) const {
  for (int i = 1; i <= r; ++i)
    if (b[static_cast<std::size_t>(i - 1)].degree(rel_floor) > i * d) return false;
  return true;
}

double distance(const CharPoly& a, const CharPoly& b) {
  if (a.r != b.r) throw InvalidArgument("char polys of different rank");
  double d = 0.0;
  for (int i = 1; i <= a.r; ++i) {
    const auto& p = a.b[static_cast<std::size_t>(i - 1)];
    const auto& q = b.b[static_cast<std::size_t>(i - 1)];
    d = std::max(d, acihs::distance(p, q) / std::max(1.0, p.norm()));
  }
  return d;
}

CharPolyExpansion char_poly_expansion(const PolyMatrix& a) {
  const int r = a.rank();
  const int d = a.degree_bound();
  CharPolyExpansion out;
  out.poly.r = r;
  out.poly.d = d;
  // M_1 = I, b_k = -tr(A M_k)/k, M_{k+1} = A M_k + b_k I.
  PolyMatrix m = PolyMatrix::identity(r);
  for (int k = 1; k <= r; ++k) {
    out.adjugate.push_back(m);
    const PolyMatrix am = a * m;
    ComplexPolynomial bk = am.trace() * cplx(-1.0 / k);
    out.poly.b.push_back(bk);
    if (k < r) {
      PolyMatrix next = am;
      for (int i = 0; i < r; ++i) next.set(i, i, next.at(i, i) + bk);
      m = std::move(next);
    }
  }
  return out;
}

CharPoly char_poly(const PolyMatrix& a) { return char_poly_expansion(a).poly; }

int spectral_genus(int r, int deg_k, int g_base) {
  if (r < 1) throw InvalidArgument("r must be at least 1");
  return deg_k * r * (r - 1) / 2 + r * (g_base - 1) + 1;
}

std::vector<int> direct_image_splitting(int n, int d) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    const int num = d - i;
    // Floor division, also for negative numerators.
    int q = num / n;
    if (num % n != 0 && num < 0) --q;
    out.push_back(q);
  }
  return out;
}

PolyMatrix ramification_matrix(int k) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  PolyMatrix p(k, 1);
  p.set(0, k - 1, ComplexPolynomial::monomial(1));
  for (int i = 1; i < k; ++i) p.set(i, i - 1, ComplexPolynomial::constant(1.0));
  if (k == 1) return p;
  PolyMatrix pk = p;
  for (int i = 1; i < k; ++i) pk = pk * p;
  PolyMatrix expect(k, 1);
  for (int i = 0; i < k; ++i) expect.set(i, i, ComplexPolynomial::monomial(1));
  if (distance(pk, expect) != 0.0) throw IllConditioned("ramification matrix power check failed");
  return p;
}

}  // namespace acihs::polymat
