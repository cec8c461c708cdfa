#include "acihs/normal_form.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "acihs/errors.hpp"

namespace acihs::polymat {

namespace {

void check_regular_nilpotent(const CMatrix& ad, double tol) {
  const int r = static_cast<int>(ad.rows());
  Eigen::JacobiSVD<CMatrix> svd(ad);
  const auto& s = svd.singularValues();
  const double top = s(0);
  if (!(top > 0.0)) throw LeadingNotRegularNilpotent("leading coefficient is zero");
  if (s(r - 1) > tol * top) throw LeadingNotRegularNilpotent("leading coefficient is invertible");
  if (s(r - 2) <= tol * top) throw LeadingNotRegularNilpotent("leading coefficient has rank below r-1");
  CMatrix p = CMatrix::Identity(r, r);
  for (int i = 0; i < r; ++i) p = p * ad;
  if (max_abs(p) > tol * std::pow(top, r) * r) throw LeadingNotRegularNilpotent("leading coefficient is not nilpotent");
}

}  // namespace

NormalForm normal_form(const PolyMatrix& a, const NormalFormOptions& opt) {
  const int r = a.rank();
  if (r < 2) throw InvalidArgument("normal form needs r >= 2");
  const int d = a.degree();
  if (d < 1) throw InvalidArgument("normal form needs degree >= 1");
  const CMatrix ad = a.coefficient(d);
  check_regular_nilpotent(ad, opt.nilpotent_tol);

  // Cyclic vector: the top right singular vector of A_d^{r-1}.
  CMatrix top = CMatrix::Identity(r, r);
  for (int i = 0; i < r - 1; ++i) top = top * ad;
  Eigen::JacobiSVD<CMatrix> svd(top, Eigen::ComputeFullV);
  CMatrix basis(r, r);
  basis.col(0) = svd.matrixV().col(0);
  for (int k = 1; k < r; ++k) basis.col(k) = ad * basis.col(k - 1);
  Eigen::FullPivLU<CMatrix> lu(basis);
  if (!lu.isInvertible()) throw LeadingNotRegularNilpotent("no cyclic vector found");
  const CMatrix g1 = lu.inverse();

  const PolyMatrix a1 = a.conjugated(g1);
  const CVector rc = a1.coefficient(d - 1).col(r - 1);
  const cplx beta = rc(0);
  if (std::abs(beta) <= opt.beta_tol * std::max(1.0, norm(a1)))
    throw BetaZero("first entry of the last column of A_{d-1} vanishes");

  // (I + N) R = beta e_1 with N = sum_{k>=1} c_k J^k.
  std::vector<cplx> c(static_cast<std::size_t>(r), 0.0);
  for (int i = 1; i < r; ++i) {
    cplx acc = -rc(i);
    for (int k = 1; k < i; ++k) acc -= c[static_cast<std::size_t>(k)] * rc(i - k);
    c[static_cast<std::size_t>(i)] = acc / beta;
  }
  CMatrix unip = CMatrix::Identity(r, r);
  for (int i = 1; i < r; ++i)
    for (int k = 1; k <= i; ++k) unip(i, i - k) += c[static_cast<std::size_t>(k)];

  NormalForm out;
  out.g = unip * g1;
  out.a = a.conjugated(out.g);
  out.beta = beta;
  return out;
}

PolyMatrix mumford_matrix(const mumford::MumfordTriple& m) {
  const int d = std::max({m.U.degree(), m.V.degree(), m.W.degree(), 0});
  PolyMatrix a(2, d);
  a.set(0, 0, m.V);
  a.set(0, 1, m.U);
  a.set(1, 0, m.W);
  a.set(1, 1, -m.V);
  return a;
}

mumford::MumfordTriple theta_complement_normalize(const PolyMatrix& a, const NormalFormOptions& opt) {
  if (a.rank() != 2) throw InvalidArgument("theta_complement_normalize needs a 2x2 matrix");
  const double scale = std::max(1.0, norm(a));
  if (a.trace().norm() > 1e-10 * scale) throw InvalidArgument("matrix must be traceless");
  const int d = a.degree();
  const ComplexPolynomial f = -char_poly(a).coeff(2);
  if (f.degree() != 2 * d - 1 || std::abs(f.leading() - cplx(1.0)) > 1e-10)
    throw InvalidArgument("-det A must be monic of degree 2d-1");
  const NormalForm nf = normal_form(a, opt);
  mumford::MumfordTriple m;
  const ComplexPolynomial v = (nf.a.at(0, 0) - nf.a.at(1, 1)) * cplx(0.5);
  m.U = nf.a.at(0, 1).trimmed();
  m.V = v.trimmed();
  m.W = nf.a.at(1, 0).trimmed();
  return m;
}

}  // namespace acihs::polymat
