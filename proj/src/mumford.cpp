#include "acihs/mumford.hpp"

#include <algorithm>
#include <cmath>

#include "acihs/errors.hpp"

namespace acihs::mumford {

namespace {

bool is_monic(const ComplexPolynomial& f) { return std::abs(f.leading() - cplx(1.0)) <= 1e-12; }

// sum |a_k| |t|^k, the natural scale of f(t).
double eval_scale(const ComplexPolynomial& f, cplx t) {
  double s = 0.0, tk = 1.0;
  for (const cplx c : f.coefficients()) {
    s += std::abs(c) * tk;
    tk *= std::abs(t);
  }
  return s;
}

ComplexPolynomial linear(cplx root) { return ComplexPolynomial{-root, 1.0}; }

}  // namespace

HyperellipticModel HyperellipticModel::from_polynomial(ComplexPolynomial f) {
  const int deg = f.degree();
  if (deg < 3 || deg % 2 == 0) throw SingularCurve("f must have odd degree >= 3");
  if (!is_monic(f)) throw SingularCurve("f must be monic");
  if (!squarefree(f)) throw SingularCurve("f has a repeated root");
  HyperellipticModel m;
  m.f_ = f.trimmed();
  m.smooth_ = true;
  return m;
}

HyperellipticModel HyperellipticModel::factored(ComplexPolynomial f1, ComplexPolynomial f2) {
  HyperellipticModel m;
  m.f_ = f1 * f2;
  m.f1_ = std::move(f1);
  m.f2_ = std::move(f2);
  m.factored_ = true;
  const int deg = m.f_.degree();
  m.smooth_ = deg >= 1 && deg % 2 == 1 && is_monic(m.f_) && squarefree(m.f_);
  return m;
}

int HyperellipticModel::genus() const {
  const int deg = f_.degree();
  return deg < 1 ? 0 : (deg - 1) / 2;
}

MumfordTriple triple_from_divisor(std::span<const DivisorPoint> points, const HyperellipticModel& model,
                                  double tol, double* division_residual) {
  const ComplexPolynomial& f = model.f();
  const int n = model.genus();
  if (static_cast<int>(points.size()) != n)
    throw InvalidArgument("divisor must have " + std::to_string(n) + " points, got " +
                          std::to_string(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!std::isfinite(std::abs(p.t)) || !std::isfinite(std::abs(p.s)))
      throw InvalidArgument("divisor points must be finite");
    const double scale = eval_scale(f, p.t) + std::norm(p.s);
    if (std::abs(p.s * p.s - f(p.t)) > tol * std::max(1.0, scale))
      throw PointNotOnCurve("point " + std::to_string(i) + " has s^2 != f(t)");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(points[j].t - p.t) <= tol * std::max(1.0, std::abs(p.t)))
        throw ThetaDivisorDegenerate(std::abs(points[j].s + p.s) <= tol * std::max(1.0, std::abs(p.s))
                                         ? "divisor contains a point and its conjugate"
                                         : "repeated t in divisor");
    }
  }
  std::vector<cplx> ts, ss;
  for (const auto& p : points) {
    ts.push_back(p.t);
    ss.push_back(p.s);
  }
  MumfordTriple m;
  m.U = ComplexPolynomial::from_roots(ts);
  m.V = ts.empty() ? ComplexPolynomial{} : lagrange_interpolate(ts, ss);
  const DivisionResult q = exact_divide(f - m.V * m.V, m.U);
  m.W = q.quotient;
  if (division_residual) *division_residual = q.residual / std::max(1.0, f.norm());
  return m;
}

std::vector<DivisorPoint> divisor_from_triple(const MumfordTriple& m, double sep_tol) {
  const int deg = m.U.degree();
  if (deg < 0) throw InvalidArgument("U must be nonzero");
  if (deg == 0) return {};
  std::vector<cplx> ts = roots(m.U);
  double scale = 1.0;
  for (const cplx t : ts) scale = std::max(scale, std::abs(t));
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(ts[i] - ts[j]) <= sep_tol * scale) throw ConfluentDivisor("U has a repeated root");
  sort_lex(ts);
  std::vector<DivisorPoint> out;
  for (const cplx t : ts) out.push_back({t, m.V(t)});
  return out;
}

double verify_pell(const MumfordTriple& m, const HyperellipticModel& model) {
  const ComplexPolynomial r = m.V * m.V + m.U * m.W - model.f();
  const double nf = model.f().norm();
  return nf == 0.0 ? r.norm() : r.norm() / nf;
}

std::pair<MumfordTriple, HyperellipticModel> triple_from_phase(const confocal::PhasePoint& p,
                                                               const confocal::ConfocalFamily& fam) {
  if (p.x.size() != fam.dim() || p.y.size() != fam.dim())
    throw InvalidArgument("phase point dimension does not match the number of axes");
  if (!p.constrained) throw InvalidArgument("triple_from_phase needs a constrained point");
  const std::size_t m = fam.dim();
  const std::vector<double> F = confocal::uhlenbeck_integrals(p, fam);
  ComplexPolynomial f1 = ComplexPolynomial::constant(1.0);
  for (std::size_t k = 0; k < m; ++k) f1 *= linear(fam.axis(k));

  MumfordTriple t;
  ComplexPolynomial f2;
  t.W = f1;
  const cplx i(0.0, 1.0);
  for (std::size_t k = 0; k < m; ++k) {
    ComplexPolynomial others = ComplexPolynomial::constant(1.0);
    for (std::size_t l = 0; l < m; ++l)
      if (l != k) others *= linear(fam.axis(l));
    t.U += others * cplx(p.x[k] * p.x[k]);
    t.V += others * (i * p.x[k] * p.y[k]);
    t.W += others * cplx(p.y[k] * p.y[k]);
    f2 += others * cplx(F[k]);
  }
  return {std::move(t), HyperellipticModel::factored(std::move(f1), std::move(f2))};
}

double divisor_distance(std::span<const DivisorPoint> a, std::span<const DivisorPoint> b) {
  if (a.size() != b.size()) throw InvalidArgument("divisors differ in size");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i].t - b[i].t) + std::abs(a[i].s - b[i].s));
  return d;
}

}  // namespace acihs::mumford
