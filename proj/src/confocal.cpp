#include "acihs/confocal.hpp"

#include <algorithm>
#include <cmath>

#include "acihs/errors.hpp"

namespace acihs::confocal {

ConfocalFamily::ConfocalFamily(std::vector<double> axes, double gap_tol) : axes_(std::move(axes)) {
  if (axes_.size() < 2) throw InvalidArgument("a confocal family needs at least two axes");
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    if (!(axes_[k] > 0.0)) throw InvalidArgument("axes must be positive");
    if (k > 0 && !(axes_[k] - axes_[k - 1] > gap_tol * std::max(1.0, axes_[k])))
      throw InvalidArgument("axes must be strictly increasing and distinct");
  }
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_sizes(std::size_t nx, std::size_t ny, const ConfocalFamily& fam) {
  if (nx != fam.dim() || ny != fam.dim())
    throw InvalidArgument("phase point dimension does not match the number of axes");
}

}  // namespace

PhasePoint make_constrained(std::vector<double> x, std::vector<double> y, double ctol) {
  if (x.size() != y.size()) throw InvalidArgument("x and y differ in length");
  PhasePoint p{std::move(x), std::move(y), false};
  if (std::abs(sphere_residual(p)) > ctol || std::abs(orthogonality_residual(p)) > ctol)
    throw InvalidArgument("point is not on the sphere bundle (sum x^2 = 1, sum x*y = 0)");
  p.constrained = true;
  return p;
}

PhasePoint project_to_sphere_bundle(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) throw InvalidArgument("x and y differ in length");
  const double nx = std::sqrt(dot(x, x));
  if (nx == 0.0) throw InvalidArgument("cannot project x = 0 onto the sphere");
  for (double& v : x) v /= nx;
  const double c = dot(x, y);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= c * x[i];
  return PhasePoint{std::move(x), std::move(y), true};
}

double sphere_residual(const PhasePoint& p) { return dot(p.x, p.x) - 1.0; }
double orthogonality_residual(const PhasePoint& p) { return dot(p.x, p.y); }

template <class T>
std::vector<T> uhlenbeck_integrals(const BasicPhasePoint<T>& p, const ConfocalFamily& fam) {
  check_sizes(p.x.size(), p.y.size(), fam);
  const std::size_t m = fam.dim();
  std::vector<T> f(m);
  for (std::size_t k = 0; k < m; ++k) {
    T acc = p.x[k] * p.x[k];
    for (std::size_t l = 0; l < m; ++l) {
      if (l == k) continue;
      const T w = p.x[k] * p.y[l] - p.x[l] * p.y[k];
      acc += w * w / (fam.axis(k) - fam.axis(l));
    }
    f[k] = acc;
  }
  return f;
}

template <class T>
ComplexPolynomial tangency_polynomial(const BasicPhasePoint<T>& p, const ConfocalFamily& fam) {
  const std::vector<T> f = uhlenbeck_integrals(p, fam);
  ComplexPolynomial out;
  for (std::size_t k = 0; k < fam.dim(); ++k) {
    ComplexPolynomial term = ComplexPolynomial::constant(cplx(f[k]));
    for (std::size_t l = 0; l < fam.dim(); ++l)
      if (l != k) term *= ComplexPolynomial{fam.axis(l), -1.0};
    out += term;
  }
  return out;
}

template <class T>
std::vector<cplx> tangency_values(const BasicPhasePoint<T>& p, const ConfocalFamily& fam) {
  const ComplexPolynomial poly = tangency_polynomial(p, fam);
  double scale = 1.0;
  for (const double a : fam.axes()) scale = std::max(scale, a);
  // Coefficients carry up to n powers of the axes.
  if (poly.norm() <= 1e-14 * std::pow(scale, static_cast<double>(fam.genus())))
    throw DegenerateLine("tangency polynomial vanishes identically");
  const int deg = poly.degree();
  std::vector<cplx> values = deg >= 1 ? roots(poly) : std::vector<cplx>{};
  sort_lex(values);
  return values;
}

template std::vector<double> uhlenbeck_integrals(const PhasePoint&, const ConfocalFamily&);
template std::vector<cplx> uhlenbeck_integrals(const ComplexPhasePoint&, const ConfocalFamily&);
template ComplexPolynomial tangency_polynomial(const PhasePoint&, const ConfocalFamily&);
template ComplexPolynomial tangency_polynomial(const ComplexPhasePoint&, const ConfocalFamily&);
template std::vector<cplx> tangency_values(const PhasePoint&, const ConfocalFamily&);
template std::vector<cplx> tangency_values(const ComplexPhasePoint&, const ConfocalFamily&);

double neumann_hamiltonian(const PhasePoint& p, const ConfocalFamily& fam) {
  check_sizes(p.x.size(), p.y.size(), fam);
  double h = 0.0;
  for (std::size_t k = 0; k < fam.dim(); ++k) h += 0.5 * (fam.axis(k) * p.x[k] * p.x[k] + p.y[k] * p.y[k]);
  return h;
}

PhaseGradient fd_gradient(const std::function<double(const PhasePoint&)>& f, const PhasePoint& p, double h) {
  PhaseGradient g{std::vector<double>(p.x.size()), std::vector<double>(p.y.size())};
  PhasePoint q = p;
  q.constrained = false;
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    q.x[i] = p.x[i] + h;
    const double fp = f(q);
    q.x[i] = p.x[i] - h;
    const double fm = f(q);
    q.x[i] = p.x[i];
    g.dx[i] = (fp - fm) / (2.0 * h);
  }
  for (std::size_t i = 0; i < p.y.size(); ++i) {
    q.y[i] = p.y[i] + h;
    const double fp = f(q);
    q.y[i] = p.y[i] - h;
    const double fm = f(q);
    q.y[i] = p.y[i];
    g.dy[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Hamiltonian uhlenbeck_hamiltonian(std::size_t k, const ConfocalFamily& fam) {
  if (k >= fam.dim()) throw InvalidArgument("integral index out of range");
  Hamiltonian h;
  h.name = "F" + std::to_string(k + 1);
  h.value = [k, fam](const PhasePoint& p) { return uhlenbeck_integrals(p, fam)[k]; };
  h.gradient = [k, fam](const PhasePoint& p) {
    const std::size_t m = fam.dim();
    PhaseGradient g{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
    g.dx[k] = 2.0 * p.x[k];
    for (std::size_t l = 0; l < m; ++l) {
      if (l == k) continue;
      const double c = 2.0 * (p.x[k] * p.y[l] - p.x[l] * p.y[k]) / (fam.axis(k) - fam.axis(l));
      g.dx[k] += c * p.y[l];
      g.dx[l] -= c * p.y[k];
      g.dy[l] += c * p.x[k];
      g.dy[k] -= c * p.x[l];
    }
    return g;
  };
  return h;
}

Hamiltonian neumann(const ConfocalFamily& fam) {
  Hamiltonian h;
  h.name = "neumann";
  h.value = [fam](const PhasePoint& p) { return neumann_hamiltonian(p, fam); };
  h.gradient = [fam](const PhasePoint& p) {
    PhaseGradient g{p.x, p.y};
    for (std::size_t k = 0; k < fam.dim(); ++k) g.dx[k] *= fam.axis(k);
    return g;
  };
  return h;
}

Hamiltonian from_callable(std::string name, std::function<double(const PhasePoint&)> f, double h) {
  Hamiltonian out;
  out.name = std::move(name);
  out.value = f;
  out.gradient = [f = std::move(f), h](const PhasePoint& p) { return fd_gradient(f, p, h); };
  return out;
}

namespace {

// Canonical bracket {F, G} = (1/s) sum (F_x G_y - F_y G_x).
double canonical_bracket(const PhaseGradient& a, const PhaseGradient& b, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dx.size(); ++i) acc += a.dx[i] * b.dy[i] - a.dy[i] * b.dx[i];
  return acc / s;
}

// {F, C1} and {F, C2} for C1 = sum x^2 - 1, C2 = sum x y.
std::pair<double, double> constraint_brackets(const PhaseGradient& g, const PhasePoint& p, double s) {
  double c1 = 0.0, c2 = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    c1 -= 2.0 * p.x[i] * g.dy[i];
    c2 += g.dx[i] * p.x[i] - g.dy[i] * p.y[i];
  }
  return {c1 / s, c2 / s};
}

// m = {C1, C2} = 2|x|^2 / s.
double constraint_gram(const PhasePoint& p, double s) {
  const double m = 2.0 * dot(p.x, p.x) / s;
  if (std::abs(m) < 1e-12) throw ConstraintDegenerate("constraint Gram matrix is singular (x = 0)");
  return m;
}

}  // namespace

double dirac_bracket(const PhaseGradient& df, const PhaseGradient& dg, const PhasePoint& p, double s) {
  const double m = constraint_gram(p, s);
  const auto [f1, f2] = constraint_brackets(df, p, s);
  const auto [g1, g2] = constraint_brackets(dg, p, s);
  // {F,G} + (1/m) ({F,C1}{C2,G} - {F,C2}{C1,G}), with {C,G} = -{G,C}.
  return canonical_bracket(df, dg, s) + (f1 * (-g2) - f2 * (-g1)) / m;
}

PhaseGradient dirac_vector_field(const Hamiltonian& h, const PhasePoint& p, double s) {
  const PhaseGradient g = h.gradient(p);
  const double m = constraint_gram(p, s);
  const auto [h1, h2] = constraint_brackets(g, p, s);
  // zdot = X_H + (1/m) (X_C1 {C2,H} - X_C2 {C1,H}), with X_C(z) = {z, C}.
  const double k1 = -h2 / m;  // {C2,H}/m
  const double k2 = h1 / m;   // -{C1,H}/m
  const std::size_t n = p.x.size();
  PhaseGradient v{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    // X_C1: xdot = 0, ydot = -2x/s.  X_C2: xdot = x/s, ydot = -y/s.
    v.dx[i] = g.dy[i] / s + k2 * p.x[i] / s;
    v.dy[i] = -g.dx[i] / s + k1 * (-2.0 * p.x[i] / s) + k2 * (-p.y[i] / s);
  }
  return v;
}

namespace {

PhasePoint axpy(const PhasePoint& p, double a, const PhaseGradient& v) {
  PhasePoint q{p.x, p.y, false};
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    q.x[i] += a * v.dx[i];
    q.y[i] += a * v.dy[i];
  }
  return q;
}

double constraint_drift(const PhasePoint& p) {
  return std::max(std::abs(sphere_residual(p)), std::abs(orthogonality_residual(p)));
}

// One Gauss-Newton step onto {C1 = 0, C2 = 0} along the constraint gradients.
PhasePoint project(const PhasePoint& p) {
  const std::size_t n = p.x.size();
  const double xx = dot(p.x, p.x), xy = dot(p.x, p.y), yy = dot(p.y, p.y);
  const double c1 = xx - 1.0, c2 = xy;
  // J = [[2x, 0], [y, x]] (rows over (x, y)); G = J J^T.
  const double g11 = 4.0 * xx, g12 = 2.0 * xy, g22 = yy + xx;
  const double det = g11 * g22 - g12 * g12;
  if (std::abs(det) < 1e-300) throw ConstraintDegenerate("projection Gram matrix is singular");
  const double l1 = (g22 * c1 - g12 * c2) / det;
  const double l2 = (-g12 * c1 + g11 * c2) / det;
  PhasePoint q{p.x, p.y, true};
  for (std::size_t i = 0; i < n; ++i) {
    q.x[i] -= 2.0 * p.x[i] * l1 + p.y[i] * l2;
    q.y[i] -= p.x[i] * l2;
  }
  return q;
}

}  // namespace

PhasePoint dirac_step(const Hamiltonian& h, const PhasePoint& p, const FlowOptions& opt, double* drift) {
  const double dt = opt.dt;
  PhasePoint next;
  if (opt.integrator == Integrator::euler) {
    next = axpy(p, dt, dirac_vector_field(h, p, opt.form_scale));
  } else {
    const PhaseGradient k1 = dirac_vector_field(h, p, opt.form_scale);
    const PhaseGradient k2 = dirac_vector_field(h, axpy(p, 0.5 * dt, k1), opt.form_scale);
    const PhaseGradient k3 = dirac_vector_field(h, axpy(p, 0.5 * dt, k2), opt.form_scale);
    const PhaseGradient k4 = dirac_vector_field(h, axpy(p, dt, k3), opt.form_scale);
    next = PhasePoint{p.x, p.y, false};
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      next.x[i] += dt / 6.0 * (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i]);
      next.y[i] += dt / 6.0 * (k1.dy[i] + 2.0 * k2.dy[i] + 2.0 * k3.dy[i] + k4.dy[i]);
    }
  }
  const double dr = constraint_drift(next);
  if (drift) *drift = dr;
  if (dr > opt.max_drift)
    throw StepRejected("constraint drift " + std::to_string(dr) + " exceeds " + std::to_string(opt.max_drift) +
                       "; reduce dt");
  return project(next);
}

Trajectory dirac_flow(const Hamiltonian& h, const PhasePoint& p0, const FlowOptions& opt) {
  if (!p0.constrained) throw InvalidArgument("dirac_flow needs a constrained start point");
  if (!(opt.dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (opt.steps < 0) throw InvalidArgument("steps must be non-negative");
  const int every = std::max(1, opt.record_every);
  Trajectory out;
  out.steps.push_back(0);
  out.points.push_back(p0);
  out.drifts.push_back(0.0);
  PhasePoint p = p0;
  for (int s = 1; s <= opt.steps; ++s) {
    double dr = 0.0;
    p = dirac_step(h, p, opt, &dr);
    out.max_drift = std::max(out.max_drift, dr);
    if (s % every == 0 || s == opt.steps) {
      out.steps.push_back(s);
      out.points.push_back(p);
      out.drifts.push_back(dr);
    }
  }
  return out;
}

double flow_commutation_defect(const Hamiltonian& h1, const Hamiltonian& h2, const PhasePoint& p, double dt,
                               Integrator integrator, double form_scale) {
  FlowOptions opt;
  opt.dt = dt;
  opt.integrator = integrator;
  opt.form_scale = form_scale;
  const PhasePoint a = dirac_step(h1, dirac_step(h2, p, opt), opt);
  const PhasePoint b = dirac_step(h2, dirac_step(h1, p, opt), opt);
  double d = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    d = std::max(d, std::abs(a.x[i] - b.x[i]));
    d = std::max(d, std::abs(a.y[i] - b.y[i]));
  }
  return d;
}

// ---------------------------------------------------------------------------

double ellipsoid_residual(const std::vector<double>& x, const ConfocalFamily& fam) {
  double g = -1.0;
  for (std::size_t k = 0; k < x.size(); ++k) g += x[k] * x[k] / fam.axis(k);
  return g;
}

namespace {

struct GeoDeriv {
  std::vector<double> dx, dv;
};

GeoDeriv geodesic_field(const std::vector<double>& x, const std::vector<double>& v, const ConfocalFamily& fam) {
  const std::size_t n = x.size();
  double grad2 = 0.0, curv = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double gk = 2.0 * x[k] / fam.axis(k);
    grad2 += gk * gk;
    curv += 2.0 * v[k] * v[k] / fam.axis(k);
  }
  const double mu = -curv / grad2;
  GeoDeriv d{v, std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) d.dv[k] = mu * 2.0 * x[k] / fam.axis(k);
  return d;
}

double normal_velocity(const std::vector<double>& x, const std::vector<double>& v, const ConfocalFamily& fam) {
  double gv = 0.0, g2 = 0.0, v2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double gk = 2.0 * x[k] / fam.axis(k);
    gv += gk * v[k];
    g2 += gk * gk;
    v2 += v[k] * v[k];
  }
  return std::abs(gv) / std::sqrt(g2 * std::max(v2, 1e-300));
}

void project_geodesic(std::vector<double>& x, std::vector<double>& v, const ConfocalFamily& fam) {
  const std::size_t n = x.size();
  std::vector<double> grad(n);
  double g2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    grad[k] = 2.0 * x[k] / fam.axis(k);
    g2 += grad[k] * grad[k];
  }
  const double g = ellipsoid_residual(x, fam);
  for (std::size_t k = 0; k < n; ++k) x[k] -= g * grad[k] / g2;
  g2 = 0.0;
  double gv = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    grad[k] = 2.0 * x[k] / fam.axis(k);
    g2 += grad[k] * grad[k];
    gv += grad[k] * v[k];
  }
  for (std::size_t k = 0; k < n; ++k) v[k] -= gv * grad[k] / g2;
}

}  // namespace

GeodesicTrajectory geodesic_flow(const std::vector<double>& x0, const std::vector<double>& v0,
                                 const ConfocalFamily& fam, double dt, int steps, double max_drift,
                                 int record_every) {
  const std::size_t n = fam.dim();
  if (x0.size() != n || v0.size() != n) throw InvalidArgument("state dimension does not match the axes");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (steps < 0) throw InvalidArgument("steps must be non-negative");
  if (std::abs(ellipsoid_residual(x0, fam)) > 1e-8) throw InvalidArgument("x0 is not on the ellipsoid");
  if (std::sqrt(dot(v0, v0)) == 0.0) throw InvalidArgument("v0 must be nonzero");
  if (normal_velocity(x0, v0, fam) > 1e-8) throw InvalidArgument("v0 is not tangent to the ellipsoid");

  const int every = std::max(1, record_every);
  GeodesicTrajectory out;
  out.steps.push_back(0);
  out.states.push_back({x0, v0});
  out.drifts.push_back(0.0);
  std::vector<double> x = x0, v = v0;
  std::vector<double> xt(n), vt(n);
  for (int s = 1; s <= steps; ++s) {
    const GeoDeriv k1 = geodesic_field(x, v, fam);
    for (std::size_t i = 0; i < n; ++i) {
      xt[i] = x[i] + 0.5 * dt * k1.dx[i];
      vt[i] = v[i] + 0.5 * dt * k1.dv[i];
    }
    const GeoDeriv k2 = geodesic_field(xt, vt, fam);
    for (std::size_t i = 0; i < n; ++i) {
      xt[i] = x[i] + 0.5 * dt * k2.dx[i];
      vt[i] = v[i] + 0.5 * dt * k2.dv[i];
    }
    const GeoDeriv k3 = geodesic_field(xt, vt, fam);
    for (std::size_t i = 0; i < n; ++i) {
      xt[i] = x[i] + dt * k3.dx[i];
      vt[i] = v[i] + dt * k3.dv[i];
    }
    const GeoDeriv k4 = geodesic_field(xt, vt, fam);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += dt / 6.0 * (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i]);
      v[i] += dt / 6.0 * (k1.dv[i] + 2.0 * k2.dv[i] + 2.0 * k3.dv[i] + k4.dv[i]);
    }
    const double dr = std::max(std::abs(ellipsoid_residual(x, fam)), normal_velocity(x, v, fam));
    if (dr > max_drift)
      throw StepRejected("ellipsoid drift " + std::to_string(dr) + " exceeds " + std::to_string(max_drift) +
                         "; reduce dt");
    project_geodesic(x, v, fam);
    out.max_drift = std::max(out.max_drift, dr);
    if (s % every == 0 || s == steps) {
      out.steps.push_back(s);
      out.states.push_back({x, v});
      out.drifts.push_back(dr);
    }
  }
  return out;
}

PhasePoint tangent_line(const GeodesicState& s) {
  const double speed = std::sqrt(dot(s.v, s.v));
  if (speed == 0.0) throw DegenerateLine("zero velocity has no tangent line");
  std::vector<double> u = s.v;
  for (double& c : u) c /= speed;
  std::vector<double> foot = s.x;
  const double along = dot(foot, u);
  for (std::size_t i = 0; i < foot.size(); ++i) foot[i] -= along * u[i];
  return PhasePoint{std::move(u), std::move(foot), true};
}

polymat::ResidueTuple ts_to_nilpotent(const PhasePoint& p, const ConfocalFamily& fam) {
  check_sizes(p.x.size(), p.y.size(), fam);
  if (!p.constrained) throw InvalidArgument("ts_to_nilpotent needs a constrained point");
  polymat::ResidueTuple t;
  t.mode = polymat::EmbedMode::all_finite;
  for (std::size_t i = 0; i < fam.dim(); ++i) {
    const double x = p.x[i], y = p.y[i];
    CMatrix r(2, 2);
    r << x * y, -x * x, y * y, -x * y;
    t.points.emplace_back(fam.axis(i));
    t.matrices.push_back(std::move(r));
  }
  return t;
}

}  // namespace acihs::confocal
