#include "acihs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "acihs/errors.hpp"

namespace acihs::polymat {

namespace {

// Sylvester matrix of p (degree r) and q (degree r-1), both ascending, taken
// at their nominal degrees.
CMatrix sylvester(const std::vector<cplx>& p, const std::vector<cplx>& q) {
  const int m = static_cast<int>(p.size()) - 1;
  const int n = static_cast<int>(q.size()) - 1;
  const int size = m + n;
  CMatrix s = CMatrix::Zero(size, size);
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) s(row, row + k) = p[static_cast<std::size_t>(m - k)];
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k) s(n + row, row + k) = q[static_cast<std::size_t>(n - k)];
  return s;
}

cplx discriminant_at(const CharPoly& b, cplx x) {
  std::vector<cplx> p(static_cast<std::size_t>(b.r) + 1), q(static_cast<std::size_t>(b.r));
  p[static_cast<std::size_t>(b.r)] = 1.0;
  for (int i = 1; i <= b.r; ++i) p[static_cast<std::size_t>(b.r - i)] = b.coeff(i)(x);
  for (int k = 1; k <= b.r; ++k) q[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * p[static_cast<std::size_t>(k)];
  if (b.r == 1) return 1.0;
  return sylvester(p, q).determinant();
}

std::vector<cplx> interpolate_on_circle(const CharPoly& b, int n, double rho) {
  // c_k = (1/n) sum_s v_s w^{-sk} / rho^k
  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    v[static_cast<std::size_t>(s)] = discriminant_at(b, std::polar(rho, 2.0 * std::numbers::pi * s / n));
  std::vector<cplx> c(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (int s = 0; s < n; ++s) acc += v[static_cast<std::size_t>(s)] * std::polar(1.0, -2.0 * std::numbers::pi * s * k / n);
    c[static_cast<std::size_t>(k)] = acc / (static_cast<double>(n) * std::pow(rho, k));
  }
  return c;
}

// sum over monomials of |coefficient| |x|^a |y|^b for P and its partials.
struct Scales {
  double p = 0.0, px = 0.0, py = 0.0;
};

Scales natural_scales(const CharPoly& b, cplx x, cplx y) {
  Scales s;
  const double ax = std::abs(x), ay = std::abs(y);
  for (int i = 0; i <= b.r; ++i) {
    const ComplexPolynomial bi = b.coeff(i);
    const int ypow = b.r - i;
    for (int k = 0; k < static_cast<int>(bi.size()); ++k) {
      const double c = std::abs(bi.coeff(k));
      s.p += c * std::pow(ax, k) * std::pow(ay, ypow);
      if (k > 0) s.px += c * k * std::pow(ax, k - 1) * std::pow(ay, ypow);
      if (ypow > 0) s.py += c * ypow * std::pow(ax, k) * std::pow(ay, ypow - 1);
    }
  }
  return s;
}

bool singular_at(const CharPoly& b, cplx x, cplx y, double tol) {
  const Scales s = natural_scales(b, x, y);
  return std::abs(b(x, y)) <= tol * std::max(1.0, s.p) && std::abs(b.dx(x, y)) <= tol * std::max(1.0, s.px) &&
         std::abs(b.dy(x, y)) <= tol * std::max(1.0, s.py);
}

std::optional<SingularPoint> singular_over(const CharPoly& b, cplx x, double tol) {
  const ComplexPolynomial py = b.in_y(x).derivative();
  std::vector<cplx> ys;
  if (py.degree() >= 1) ys = roots(py, 1e-6);
  // Multiple roots of P(x, .) are also candidates; they catch what roots of P_y miss.
  const ComplexPolynomial p = b.in_y(x);
  for (const cplx y : roots(p, 1e-6)) ys.push_back(y);
  for (const cplx y : ys)
    if (singular_at(b, x, y, tol)) return SingularPoint{x, y};
  return std::nullopt;
}

}  // namespace

ComplexPolynomial y_discriminant(const CharPoly& b, double rel_tol) {
  if (b.r < 1) throw InvalidArgument("char poly has rank zero");
  const int n = std::max(1, b.d * b.r * (b.r - 1) + 1);
  const std::vector<cplx> c1 = interpolate_on_circle(b, n, 1.0);
  const std::vector<cplx> c2 = interpolate_on_circle(b, n, 1.1);
  double big = 0.0, diff = 0.0;
  for (int k = 0; k < n; ++k) {
    big = std::max(big, std::abs(c1[static_cast<std::size_t>(k)]));
    diff = std::max(diff, std::abs(c1[static_cast<std::size_t>(k)] - c2[static_cast<std::size_t>(k)]));
  }
  if (big > 0.0 && diff > rel_tol * big)
    throw IllConditioned("discriminant interpolation lost accuracy (relative disagreement " + std::to_string(diff / big) +
                         ")");
  // Exact zeros where interpolation noise sits below the accuracy floor.
  std::vector<cplx> c = c1;
  for (auto& v : c)
    if (std::abs(v) <= 1e-13 * big) v = 0.0;
  return ComplexPolynomial(std::move(c));
}

SmoothnessReport spectral_smooth_affine(const CharPoly& b, double tol) {
  SmoothnessReport rep;
  rep.discriminant = y_discriminant(b);
  const int deg = rep.discriminant.degree(1e-10);
  if (deg == kZeroDegree) {
    // Every fiber has a repeated root: a multiple component, singular along it.
    for (const cplx x : {cplx(0.0), cplx(0.5), cplx(-0.7, 0.3)})
      if (auto w = singular_over(b, x, tol)) {
        rep.smooth = false;
        rep.witness = w;
        return rep;
      }
    throw IllConditioned("discriminant vanishes identically but no singular point was located");
  }
  if (deg == 0) return rep;
  std::vector<cplx> xs = roots(rep.discriminant.trimmed(1e-10), 1e-6);
  // Singular points give multiple discriminant roots that scatter under
  // rounding; the cluster mean is far more accurate than its members.
  std::vector<bool> used(xs.size(), false);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (used[i]) continue;
    std::vector<cplx> cluster{xs[i]};
    used[i] = true;
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!used[j] && std::abs(xs[j] - xs[i]) <= 1e-2 * std::max(1.0, std::abs(xs[i]))) {
        cluster.push_back(xs[j]);
        used[j] = true;
      }
    cplx mean = 0.0;
    for (const cplx x : cluster) mean += x;
    mean /= static_cast<double>(cluster.size());
    std::vector<cplx> candidates{mean};
    if (cluster.size() > 1) candidates.insert(candidates.end(), cluster.begin(), cluster.end());
    for (const cplx x : candidates)
      if (auto w = singular_over(b, x, tol)) {
        rep.smooth = false;
        rep.witness = w;
        return rep;
      }
  }
  return rep;
}

namespace {

// Truncated product of ascending series.
std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t len) {
  std::vector<cplx> c(len, 0.0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

BranchExpansion branch_expansion(const CharPoly& b, cplx x0, int order, double ram_tol) {
  if (order < 0) throw InvalidArgument("expansion order must be non-negative");
  const std::size_t len = static_cast<std::size_t>(order) + 1;
  // Shifted coefficients b_i(x0 + z), truncated.
  std::vector<std::vector<cplx>> shifted;
  for (int i = 0; i <= b.r; ++i) {
    std::vector<cplx> c = b.coeff(i).taylor_shift(x0).coefficients();
    c.resize(std::max(c.size(), len), 0.0);
    shifted.push_back(std::move(c));
  }
  const ComplexPolynomial fiber = b.in_y(x0);
  std::vector<cplx> ys = fiber.degree() >= 1 ? roots(fiber) : std::vector<cplx>{};
  sort_lex(ys);
  double yscale = 1.0;
  for (const cplx y : ys) yscale = std::max(yscale, std::abs(y));
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(ys[i] - ys[j]) <= ram_tol * yscale)
        throw RamifiedFiber("fiber over x0 has a repeated root; only unramified fibers are expanded");

  BranchExpansion out;
  out.x0 = x0;
  out.order = order;
  for (const cplx y0 : ys) {
    const cplx slope = b.dy(x0, y0);
    const Scales s = natural_scales(b, x0, y0);
    if (std::abs(slope) <= ram_tol * std::max(1.0, s.py))
      throw RamifiedFiber("P_y vanishes on the fiber over x0");
    std::vector<cplx> y(len, 0.0);
    y[0] = y0;
    for (std::size_t m = 1; m < len; ++m) {
      // Horner in y over truncated series: P = ((1*y + b1) y + b2) ...
      std::vector<cplx> acc(len, 0.0);
      acc[0] = 1.0;
      for (int i = 1; i <= b.r; ++i) {
        acc = series_mul(acc, y, len);
        for (std::size_t k = 0; k < len; ++k) acc[k] += shifted[static_cast<std::size_t>(i)][k];
      }
      y[m] = -acc[m] / slope;
    }
    out.sheets.emplace_back(std::move(y));
  }
  return out;
}

std::vector<cplx> branch_residue_hamiltonians(const CharPoly& b, cplx x0, int j, double ram_tol) {
  if (j < 1) throw InvalidArgument("j must be positive");
  const BranchExpansion e = branch_expansion(b, x0, j + 2, ram_tol);
  std::vector<cplx> out;
  for (const auto& s : e.sheets) out.push_back(s.coeff(j - 1));
  return out;
}

}  // namespace acihs::polymat
