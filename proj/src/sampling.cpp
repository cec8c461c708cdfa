#include "acihs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/SVD>

#include "acihs/errors.hpp"

namespace acihs::sampling {

std::vector<double> axes(Rng& rng, std::size_t m) {
  std::vector<double> a(m);
  double acc = rng.uniform(0.5, 1.5);
  for (auto& v : a) {
    v = acc;
    acc += rng.uniform(0.3, 1.3);
  }
  return a;
}

confocal::PhasePoint phase_point(Rng& rng, std::size_t m) {
  std::vector<double> x(m), y(m);
  for (auto& v : x) v = rng.normal();
  for (auto& v : y) v = rng.normal();
  return confocal::project_to_sphere_bundle(std::move(x), std::move(y));
}

confocal::GeodesicState ellipsoid_state(Rng& rng, const confocal::ConfocalFamily& fam) {
  const std::size_t m = fam.dim();
  std::vector<double> x(m), v(m), n(m);
  double q = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    x[k] = rng.normal();
    q += x[k] * x[k] / fam.axis(k);
  }
  for (auto& c : x) c /= std::sqrt(q);
  double nn = 0.0, nv = 0.0, vv = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    n[k] = x[k] / fam.axis(k);
    v[k] = rng.normal();
    nn += n[k] * n[k];
    nv += n[k] * v[k];
  }
  for (std::size_t k = 0; k < m; ++k) {
    v[k] -= nv / nn * n[k];
    vv += v[k] * v[k];
  }
  for (auto& c : v) c /= std::sqrt(vv);
  return {std::move(x), std::move(v)};
}

std::vector<cplx> separated_points(Rng& rng, std::size_t count, double radius, double min_sep, bool real) {
  std::vector<cplx> pts;
  for (int attempt = 0; pts.size() < count; ++attempt) {
    if (attempt > 100000) throw InvalidArgument("cannot place separated points; lower min_sep");
    cplx z;
    if (real) {
      z = rng.uniform(-radius, radius);
    } else {
      const double rad = radius * std::sqrt(rng.uniform());
      z = std::polar(rad, rng.uniform(0.0, 2.0 * M_PI));
    }
    bool ok = true;
    for (const cplx p : pts) ok = ok && std::abs(p - z) >= min_sep;
    if (ok) pts.push_back(z);
  }
  return pts;
}

mumford::HyperellipticModel hyperelliptic(Rng& rng, int n) {
  const auto roots = separated_points(rng, static_cast<std::size_t>(2 * n + 1), 1.5, 0.3);
  return mumford::HyperellipticModel::from_polynomial(ComplexPolynomial::from_roots(roots));
}

std::vector<mumford::DivisorPoint> divisor(Rng& rng, const mumford::HyperellipticModel& model) {
  const int n = model.genus();
  std::vector<mumford::DivisorPoint> pts;
  while (static_cast<int>(pts.size()) < n) {
    const cplx t = std::polar(1.2 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * M_PI));
    bool ok = std::abs(model.f()(t)) > 1e-2;
    for (const auto& p : pts) ok = ok && std::abs(p.t - t) >= 0.25;
    if (!ok) continue;
    const cplx s = std::sqrt(model.f()(t));
    pts.push_back({t, rng.coin() ? s : -s});
  }
  return pts;
}

polymat::PolyMatrix poly_matrix(Rng& rng, int r, int d, double sigma) {
  std::vector<CMatrix> coeffs;
  for (int k = 0; k <= d; ++k) {
    CMatrix c(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) c(i, j) = rng.cnormal(sigma);
    coeffs.push_back(std::move(c));
  }
  return polymat::PolyMatrix::from_coefficients(coeffs);
}

polymat::PolyMatrix normal_form_matrix(Rng& rng, int r, int d) {
  std::vector<CMatrix> coeffs;
  for (int k = 0; k <= d; ++k) {
    CMatrix c(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) c(i, j) = rng.cnormal(0.5);
    coeffs.push_back(std::move(c));
  }
  CMatrix& top = coeffs[static_cast<std::size_t>(d)];
  top.setZero();
  for (int i = 1; i < r; ++i) top(i, i - 1) = 1.0;
  CMatrix& next = coeffs[static_cast<std::size_t>(d - 1)];
  next.col(r - 1).setZero();
  next(0, r - 1) = std::polar(rng.uniform(0.5, 1.5), rng.uniform(0.0, 2.0 * M_PI));
  return polymat::PolyMatrix::from_coefficients(coeffs);
}

CMatrix invertible(Rng& rng, int r, double max_cond) {
  for (;;) {
    CMatrix g(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) g(i, j) = rng.cnormal();
    Eigen::JacobiSVD<CMatrix> svd(g);
    const auto& s = svd.singularValues();
    if (s(r - 1) > 0.0 && s(0) / s(r - 1) < max_cond) return g;
  }
}

polymat::ResidueTuple sum_zero_tuple(Rng& rng, int r, const std::vector<cplx>& divisor, double scale) {
  const int d = static_cast<int>(divisor.size()) - 2;
  auto t = polymat::residue_embed(poly_matrix(rng, r, d), divisor);
  double big = 0.0;
  for (const auto& m : t.matrices) big = std::max(big, max_abs(m));
  if (big > 0.0)
    for (auto& m : t.matrices) m *= scale / big;
  return t;
}

cubic::MultiPolynomial prepotential(Rng& rng, int g, int max_partial) {
  std::vector<cubic::MultiPolynomial::Term> terms;
  std::vector<int> e(static_cast<std::size_t>(g), 0);
  // Odometer over the box [0, max_partial]^g.
  std::function<void(int)> fill = [&](int v) {
    if (v == g) {
      terms.push_back({rng.normal(0.5), e});
      return;
    }
    for (int k = 0; k <= max_partial; ++k) {
      e[static_cast<std::size_t>(v)] = k;
      fill(v + 1);
    }
  };
  fill(0);
  return cubic::MultiPolynomial(g, std::move(terms));
}

}  // namespace acihs::sampling
