#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "acihs/poly.hpp"
#include "acihs/residue.hpp"

namespace acihs::confocal {

/// Axis parameters a_1 < ... < a_{n+1} of the ellipsoid sum x_k^2/a_k = 1 and
/// its confocal quadrics sum x_k^2/(a_k - lambda) = 1.
class ConfocalFamily {
 public:
  explicit ConfocalFamily(std::vector<double> axes, double gap_tol = 1e-12);

  const std::vector<double>& axes() const noexcept { return axes_; }
  double axis(std::size_t k) const { return axes_.at(k); }
  /// Ambient dimension n+1.
  std::size_t dim() const noexcept { return axes_.size(); }
  /// Number n of tangency values (the genus of the spectral curve).
  std::size_t genus() const noexcept { return axes_.size() - 1; }

 private:
  std::vector<double> axes_;
};

inline constexpr double kConstraintTol = 1e-9;

/// A point (x, y) of phase space. `constrained` marks membership in the
/// tangent bundle of the unit sphere: sum x^2 = 1, sum x*y = 0.
template <class T>
struct BasicPhasePoint {
  std::vector<T> x;
  std::vector<T> y;
  bool constrained = false;
};
using PhasePoint = BasicPhasePoint<double>;
using ComplexPhasePoint = BasicPhasePoint<cplx>;

/// Validates the constraints and returns a constrained point.
PhasePoint make_constrained(std::vector<double> x, std::vector<double> y, double ctol = kConstraintTol);
/// Normalizes x and removes the component of y along x.
PhasePoint project_to_sphere_bundle(std::vector<double> x, std::vector<double> y);

double sphere_residual(const PhasePoint& p);        // sum x^2 - 1
double orthogonality_residual(const PhasePoint& p); // sum x*y

/// F_k = x_k^2 + sum_{l != k} (x_k y_l - x_l y_k)^2 / (a_k - a_l).
template <class T>
std::vector<T> uhlenbeck_integrals(const BasicPhasePoint<T>& p, const ConfocalFamily& fam);

/// sum_k F_k prod_{l != k} (a_l - lambda), a polynomial in lambda whose roots
/// are the parameters of the confocal quadrics tangent to the line through y
/// in direction x.
template <class T>
ComplexPolynomial tangency_polynomial(const BasicPhasePoint<T>& p, const ConfocalFamily& fam);

/// Roots of the tangency polynomial, sorted by (real, imag). Throws
/// DegenerateLine when the polynomial vanishes identically.
template <class T>
std::vector<cplx> tangency_values(const BasicPhasePoint<T>& p, const ConfocalFamily& fam);

/// (1/2) sum a_k x_k^2 + (1/2) sum y_k^2.
double neumann_hamiltonian(const PhasePoint& p, const ConfocalFamily& fam);

// ---------------------------------------------------------------------------
// Constrained Hamiltonian dynamics on the sphere bundle.

struct PhaseGradient {
  std::vector<double> dx;
  std::vector<double> dy;
};

struct Hamiltonian {
  std::string name;
  std::function<double(const PhasePoint&)> value;
  std::function<PhaseGradient(const PhasePoint&)> gradient;
};

/// Central-difference gradient with step h.
PhaseGradient fd_gradient(const std::function<double(const PhasePoint&)>& f, const PhasePoint& p, double h);

Hamiltonian uhlenbeck_hamiltonian(std::size_t k, const ConfocalFamily& fam);
Hamiltonian neumann(const ConfocalFamily& fam);
/// Wraps a user callable; its gradient comes from central differences.
Hamiltonian from_callable(std::string name, std::function<double(const PhasePoint&)> f, double h = 1e-6);

/// Ambient symplectic form `scale * sum dx_k ^ dy_k`, so {x_i, y_j} = delta_ij / scale.
inline constexpr double kDefaultFormScale = 2.0;

/// Dirac bracket of two functions (given by gradients) for the constraint pair
/// C1 = sum x^2 - 1, C2 = sum x*y. Throws ConstraintDegenerate when the
/// constraint Gram matrix is singular.
double dirac_bracket(const PhaseGradient& dF, const PhaseGradient& dG, const PhasePoint& p,
                     double form_scale = kDefaultFormScale);

/// Hamiltonian vector field of H for the Dirac bracket, as (xdot, ydot).
PhaseGradient dirac_vector_field(const Hamiltonian& h, const PhasePoint& p, double form_scale = kDefaultFormScale);

enum class Integrator { rk4, euler };

struct FlowOptions {
  double dt = 1e-3;
  int steps = 1000;
  double form_scale = kDefaultFormScale;
  Integrator integrator = Integrator::rk4;
  /// A step whose pre-projection constraint drift exceeds this is rejected.
  double max_drift = 1e-3;
  /// Keep every k-th point (the last point is always kept).
  int record_every = 1;
};

struct Trajectory {
  std::vector<int> steps;
  std::vector<PhasePoint> points;
  /// Pre-projection constraint drift of the step that produced each point.
  std::vector<double> drifts;
  double max_drift = 0.0;
};

/// One integrator step followed by a Newton projection onto the constraints.
PhasePoint dirac_step(const Hamiltonian& h, const PhasePoint& p, const FlowOptions& opt, double* drift = nullptr);

/// Fixed-step integration of the Dirac vector field. Throws StepRejected.
Trajectory dirac_flow(const Hamiltonian& h, const PhasePoint& p0, const FlowOptions& opt);

/// Max-norm of Phi_1(Phi_2(p)) - Phi_2(Phi_1(p)) for single projected steps of
/// length dt. With first-order steps the leading dt^2 term is the Lie bracket
/// of the two fields, so commuting flows show an O(dt^3) defect.
double flow_commutation_defect(const Hamiltonian& h1, const Hamiltonian& h2, const PhasePoint& p, double dt,
                               Integrator integrator = Integrator::euler,
                               double form_scale = kDefaultFormScale);

// ---------------------------------------------------------------------------
// Geodesics on the ellipsoid sum x_k^2 / a_k = 1.

struct GeodesicState {
  std::vector<double> x;
  std::vector<double> v;
};

struct GeodesicTrajectory {
  std::vector<int> steps;
  std::vector<GeodesicState> states;
  std::vector<double> drifts;
  double max_drift = 0.0;
};

double ellipsoid_residual(const std::vector<double>& x, const ConfocalFamily& fam);

/// RK4 for x'' = mu * grad g with mu keeping the acceleration normal, then a
/// Newton projection of x onto the ellipsoid and of v onto its tangent space.
/// Throws StepRejected when the pre-projection drift exceeds `max_drift`.
GeodesicTrajectory geodesic_flow(const std::vector<double>& x0, const std::vector<double>& v0,
                                 const ConfocalFamily& fam, double dt, int steps, double max_drift = 1e-3,
                                 int record_every = 1);

/// Sphere-bundle point of the tangent line at a geodesic state: unit
/// direction v/|v| and the foot of the perpendicular from the origin.
PhasePoint tangent_line(const GeodesicState& s);

// ---------------------------------------------------------------------------

/// (x_i, y_i) -> [[x_i y_i, -x_i^2], [y_i^2, -x_i y_i]], one rank-one nilpotent
/// per axis, attached to the axis points a_i. On the sphere bundle the sum is
/// [[0, -1], [sum y^2, 0]].
polymat::ResidueTuple ts_to_nilpotent(const PhasePoint& p, const ConfocalFamily& fam);

}  // namespace acihs::confocal
