#include "acihs/residue.hpp"

#include <algorithm>
#include <cmath>

#include "acihs/errors.hpp"

namespace acihs::polymat {

CMatrix ResidueTuple::sum() const {
  const int r = rank();
  CMatrix s = CMatrix::Zero(r, r);
  for (const auto& m : matrices) s += m;
  return s;
}

namespace {

void check_points(std::span<const cplx> pts, double tol) {
  double scale = 1.0;
  for (const cplx a : pts) {
    if (!std::isfinite(std::abs(a))) throw InvalidArgument("divisor points must be finite");
    scale = std::max(scale, std::abs(a));
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(pts[i] - pts[j]) <= tol * scale) throw DuplicatePoints("divisor points must be distinct");
}

// prod_{j != i} (a_i - a_j)
cplx node_weight(std::span<const cplx> pts, std::size_t i) {
  cplx w = 1.0;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != i) w *= pts[i] - pts[j];
  return w;
}

// prod_{j != i} (x - a_j)
ComplexPolynomial basis_poly(std::span<const cplx> pts, std::size_t i) {
  std::vector<cplx> roots;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != i) roots.push_back(pts[j]);
  return ComplexPolynomial::from_roots(roots);
}

void check_shape(const ResidueTuple& t) {
  if (t.matrices.size() != t.points.size()) throw InvalidArgument("residue tuple points/matrices size mismatch");
  if (t.matrices.empty()) throw InvalidArgument("empty residue tuple");
  const auto r = t.matrices.front().rows();
  for (const auto& m : t.matrices)
    if (m.rows() != r || m.cols() != r) throw InvalidArgument("residue matrices must be square of equal size");
  if (t.mode == EmbedMode::last_at_infinity && (t.leading.rows() != r || t.leading.cols() != r))
    throw InvalidArgument("last-at-infinity tuple needs a leading coefficient");
}

double largest(const ResidueTuple& t) {
  double s = 0.0;
  for (const auto& m : t.matrices) s = std::max(s, max_abs(m));
  return s;
}

}  // namespace

ResidueTuple residue_embed(const PolyMatrix& a, std::span<const cplx> divisor, EmbedMode mode, double point_tol) {
  check_points(divisor, point_tol);
  const int m = static_cast<int>(divisor.size());
  const int deg = a.degree();
  ResidueTuple t;
  t.mode = mode;
  t.points.assign(divisor.begin(), divisor.end());
  if (mode == EmbedMode::all_finite) {
    if (m < 2) throw InvalidArgument("all-finite embedding needs at least two points");
    if (deg > m - 2)
      throw DegreeTooHigh("deg A = " + std::to_string(deg) + " exceeds m-2 = " + std::to_string(m - 2));
  } else {
    if (m < 1) throw InvalidArgument("last-at-infinity embedding needs at least one finite point");
    if (deg > m) throw DegreeTooHigh("deg A = " + std::to_string(deg) + " exceeds d = " + std::to_string(m));
  }
  for (std::size_t i = 0; i < divisor.size(); ++i) t.matrices.push_back(a.evaluate(divisor[i]) / node_weight(divisor, i));
  if (mode == EmbedMode::last_at_infinity) {
    t.leading = a.coefficient(m);
    t.at_infinity = -t.sum();
  }
  return t;
}

PolyMatrix residue_reconstruct(const ResidueTuple& t, double tol) {
  check_shape(t);
  const int r = t.rank();
  const std::size_t m = t.size();
  check_points(t.points, 1e-12);
  const double scale = std::max(largest(t), 1e-300);
  if (t.mode == EmbedMode::all_finite) {
    const double s = max_abs(t.sum());
    if (s > tol * scale)
      throw ResidueSumNonzero("sum of residues is " + std::to_string(s) + " relative to " + std::to_string(scale));
    if (m < 2) throw InvalidArgument("all-finite tuple needs at least two points");
  } else if (t.at_infinity.size() != 0) {
    const double s = max_abs(t.at_infinity + t.sum());
    if (s > tol * std::max(scale, max_abs(t.at_infinity)))
      throw ResidueSumNonzero("residue at infinity does not balance the finite residues");
  }
  const int d = t.mode == EmbedMode::all_finite ? static_cast<int>(m) - 2 : static_cast<int>(m);
  PolyMatrix a(r, d);
  std::vector<cplx> vals(m);
  std::vector<cplx> weights(m);
  for (std::size_t i = 0; i < m; ++i) weights[i] = node_weight(t.points, i);
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q) {
      for (std::size_t i = 0; i < m; ++i) vals[i] = t.matrices[i](p, q) * weights[i];
      if (t.mode == EmbedMode::all_finite) {
        // The top coefficient is the residue sum, already checked to vanish.
        ComplexPolynomial e = lagrange_interpolate(t.points, vals);
        std::vector<cplx> c = e.coefficients();
        if (c.size() > m - 1) c.resize(m - 1);
        a.set(p, q, ComplexPolynomial(std::move(c)));
      } else {
        a.set(p, q, lagrange_interpolate_with_infinity(t.points, vals, t.leading(p, q)));
      }
    }
  return a;
}

PolyMatrix residue_interpolate(const ResidueTuple& t) {
  check_shape(t);
  const int r = t.rank();
  const std::size_t m = t.size();
  const int d = t.mode == EmbedMode::all_finite ? static_cast<int>(m) - 1 : static_cast<int>(m);
  std::vector<CMatrix> coeffs(static_cast<std::size_t>(d) + 1, CMatrix::Zero(r, r));
  for (std::size_t i = 0; i < m; ++i) {
    const ComplexPolynomial w = basis_poly(t.points, i);
    for (int k = 0; k <= w.degree(0.0); ++k) coeffs[static_cast<std::size_t>(k)] += w.coeff(k) * t.matrices[i];
  }
  if (t.mode == EmbedMode::last_at_infinity) {
    const ComplexPolynomial w = ComplexPolynomial::from_roots(t.points);
    for (int k = 0; k <= w.degree(0.0); ++k) coeffs[static_cast<std::size_t>(k)] += w.coeff(k) * t.leading;
  }
  return PolyMatrix::from_coefficients(coeffs);
}

cplx trace_pair(std::span<const CMatrix> jet, const ResidueTuple& t) {
  if (jet.size() != t.size()) throw InvalidArgument("jet and tuple differ in length");
  cplx s = 0.0;
  for (std::size_t i = 0; i < jet.size(); ++i) s += (jet[i] * t.matrices[i]).trace();
  return s;
}

// ---------------------------------------------------------------------------

TupleGradient fd_gradient(const Functional& f, const ResidueTuple& t, double rel_h) {
  const double h = rel_h * std::max(1.0, largest(t));
  const int r = t.rank();
  TupleGradient g(t.size(), CMatrix::Zero(r, r));
  ResidueTuple q = t;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (int p = 0; p < r; ++p)
      for (int s = 0; s < r; ++s) {
        const cplx orig = t.matrices[i](p, s);
        q.matrices[i](p, s) = orig + h;
        const cplx fp = f.value(q);
        q.matrices[i](p, s) = orig - h;
        const cplx fm = f.value(q);
        q.matrices[i](p, s) = orig;
        // dF = tr(G dR) = sum G_sp dR_ps
        g[i](s, p) = (fp - fm) / (2.0 * h);
      }
  return g;
}

TupleGradient gradient(const Functional& f, const ResidueTuple& t, double rel_h) {
  return f.gradient ? f.gradient(t) : fd_gradient(f, t, rel_h);
}

cplx kk_bracket(const TupleGradient& df, const TupleGradient& dg, const ResidueTuple& t) {
  if (df.size() != t.size() || dg.size() != t.size()) throw InvalidArgument("gradient length mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += (t.matrices[i] * (df[i] * dg[i] - dg[i] * df[i])).trace();
  return s;
}

cplx kk_bracket(const Functional& f, const Functional& g, const ResidueTuple& t, double rel_h) {
  return kk_bracket(gradient(f, t, rel_h), gradient(g, t, rel_h), t);
}

Functional linear_functional(std::size_t factor, CMatrix x) {
  Functional f;
  f.name = "linear[" + std::to_string(factor) + "]";
  f.value = [factor, x](const ResidueTuple& t) { return (t.matrices.at(factor) * x).trace(); };
  f.gradient = [factor, x](const ResidueTuple& t) {
    TupleGradient g(t.size(), CMatrix::Zero(t.rank(), t.rank()));
    g.at(factor) = x;
    return g;
  };
  return f;
}

namespace {

CMatrix matrix_power(const CMatrix& a, int k) {
  CMatrix p = CMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) p = p * a;
  return p;
}

}  // namespace

Functional casimir(std::size_t factor, int k) {
  if (k < 1) throw InvalidArgument("Casimir power must be positive");
  Functional f;
  f.name = "casimir[" + std::to_string(factor) + "," + std::to_string(k) + "]";
  f.value = [factor, k](const ResidueTuple& t) { return matrix_power(t.matrices.at(factor), k).trace(); };
  f.gradient = [factor, k](const ResidueTuple& t) {
    TupleGradient g(t.size(), CMatrix::Zero(t.rank(), t.rank()));
    g.at(factor) = static_cast<double>(k) * matrix_power(t.matrices.at(factor), k - 1);
    return g;
  };
  return f;
}

Functional trace_power(cplx x0, int k) {
  if (k < 1) throw InvalidArgument("trace power must be positive");
  Functional f;
  f.name = "trace_power";
  f.value = [x0, k](const ResidueTuple& t) { return matrix_power(residue_interpolate(t).evaluate(x0), k).trace(); };
  f.gradient = [x0, k](const ResidueTuple& t) {
    const CMatrix ak = static_cast<double>(k) * matrix_power(residue_interpolate(t).evaluate(x0), k - 1);
    TupleGradient g;
    for (std::size_t i = 0; i < t.size(); ++i) g.push_back(basis_poly(t.points, i)(x0) * ak);
    return g;
  };
  return f;
}

Functional spectral_functional(int i, int j, bool analytic) {
  if (i < 1 || j < 0) throw InvalidArgument("spectral functional needs i >= 1, j >= 0");
  Functional f;
  f.name = "H[" + std::to_string(i) + "," + std::to_string(j) + "]";
  f.value = [i, j](const ResidueTuple& t) {
    if (i > t.rank()) throw InvalidArgument("spectral functional index i exceeds the rank");
    return char_poly(residue_interpolate(t)).coeff(i).coeff(j);
  };
  if (analytic) {
    f.gradient = [i, j](const ResidueTuple& t) {
      if (i > t.rank()) throw InvalidArgument("spectral functional index i exceeds the rank");
      const CharPolyExpansion e = char_poly_expansion(residue_interpolate(t));
      const PolyMatrix& mi = e.adjugate[static_cast<std::size_t>(i - 1)];
      const int r = t.rank();
      TupleGradient g;
      for (std::size_t k = 0; k < t.size(); ++k) {
        const ComplexPolynomial w = basis_poly(t.points, k);
        // -[x^j] (M_i(x) w_k(x))
        CMatrix gk(r, r);
        for (int p = 0; p < r; ++p)
          for (int q = 0; q < r; ++q) gk(p, q) = -(mi.at(p, q) * w).coeff(j);
        g.push_back(std::move(gk));
      }
      return g;
    };
  }
  return f;
}

// ---------------------------------------------------------------------------

double leaf_distance(const ResidueTuple& a, const ResidueTuple& b) {
  if (a.size() != b.size()) throw InvalidArgument("tuples differ in length");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ea = eigenvalues(a.matrices[i]);
    const auto eb = eigenvalues(b.matrices[i]);
    d = std::max(d, multiset_distance(ea, eb));
  }
  return d;
}

namespace {

ResidueTuple advance(const ResidueTuple& t, double h, const TupleGradient& k) {
  ResidueTuple q = t;
  for (std::size_t i = 0; i < t.size(); ++i) q.matrices[i] += h * k[i];
  return q;
}

// R_i' = [grad_i H, R_i]
TupleGradient kk_field(const Functional& h, const ResidueTuple& t, double rel_h) {
  const TupleGradient g = gradient(h, t, rel_h);
  TupleGradient v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = g[i] * t.matrices[i] - t.matrices[i] * g[i];
  return v;
}

}  // namespace

KKTrajectory kk_flow(const Functional& h, const ResidueTuple& t0, const KKFlowOptions& opt) {
  check_shape(t0);
  if (!(opt.dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (opt.steps < 0) throw InvalidArgument("steps must be non-negative");
  const int every = std::max(1, opt.record_every);
  const CharPoly c0 = char_poly(residue_interpolate(t0));
  KKTrajectory out;
  out.steps.push_back(0);
  out.tuples.push_back(t0);
  out.charpoly_drift.push_back(0.0);
  out.leaf_drift.push_back(0.0);
  ResidueTuple t = t0;
  CharPoly prev = c0;
  const double dt = opt.dt;
  for (int s = 1; s <= opt.steps; ++s) {
    const TupleGradient k1 = kk_field(h, t, opt.rel_h);
    const TupleGradient k2 = kk_field(h, advance(t, 0.5 * dt, k1), opt.rel_h);
    const TupleGradient k3 = kk_field(h, advance(t, 0.5 * dt, k2), opt.rel_h);
    const TupleGradient k4 = kk_field(h, advance(t, dt, k3), opt.rel_h);
    for (std::size_t i = 0; i < t.size(); ++i) t.matrices[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (t.mode == EmbedMode::last_at_infinity) t.at_infinity = -t.sum();
    const CharPoly c = char_poly(residue_interpolate(t));
    const double step_drift = distance(prev, c);
    if (step_drift > opt.max_step_drift)
      throw StepRejected("char poly moved by " + std::to_string(step_drift) + " in one step; reduce dt");
    prev = c;
    const double cd = distance(c0, c);
    const double ld = leaf_distance(t0, t);
    out.max_charpoly_drift = std::max(out.max_charpoly_drift, cd);
    out.max_leaf_drift = std::max(out.max_leaf_drift, ld);
    if (s % every == 0 || s == opt.steps) {
      out.steps.push_back(s);
      out.tuples.push_back(t);
      out.charpoly_drift.push_back(cd);
      out.leaf_drift.push_back(ld);
    }
  }
  return out;
}

}  // namespace acihs::polymat
