#pragma once

#include <span>
#include <utility>
#include <vector>

#include "acihs/confocal.hpp"
#include "acihs/poly.hpp"

namespace acihs::mumford {

/// (U, V, W) with V^2 + U W = f.
struct MumfordTriple {
  ComplexPolynomial U;
  ComplexPolynomial V;
  ComplexPolynomial W;
};

/// The curve s^2 = f(t), optionally with the factorization f = f1 * f2.
class HyperellipticModel {
 public:
  /// Validates f: monic, odd degree >= 3, squarefree. Throws SingularCurve.
  static HyperellipticModel from_polynomial(ComplexPolynomial f);
  /// f = f1 * f2 with no smoothness requirement; see is_smooth().
  static HyperellipticModel factored(ComplexPolynomial f1, ComplexPolynomial f2);

  const ComplexPolynomial& f() const noexcept { return f_; }
  const ComplexPolynomial& f1() const noexcept { return f1_; }
  const ComplexPolynomial& f2() const noexcept { return f2_; }
  bool is_factored() const noexcept { return factored_; }
  bool is_smooth() const noexcept { return smooth_; }
  /// n for deg f = 2n+1.
  int genus() const;

 private:
  ComplexPolynomial f_, f1_, f2_;
  bool factored_ = false;
  bool smooth_ = false;
};

struct DivisorPoint {
  cplx t;
  cplx s;
};

/// U = prod (t - t_i), V interpolates s_i at t_i, W = (f - V^2) / U.
/// Needs exactly genus() points. The remainder of the division goes to
/// `division_residual` when given.
/// Throws PointNotOnCurve, ThetaDivisorDegenerate.
MumfordTriple triple_from_divisor(std::span<const DivisorPoint> points, const HyperellipticModel& model,
                                  double tol = 1e-9, double* division_residual = nullptr);

/// t_i = roots of U, s_i = V(t_i), sorted by t. Throws ConfluentDivisor.
std::vector<DivisorPoint> divisor_from_triple(const MumfordTriple& m, double sep_tol = 1e-7);

/// ||V^2 + U W - f|| / ||f|| in the max coefficient norm.
double verify_pell(const MumfordTriple& m, const HyperellipticModel& model);

/// Clears denominators in
///   U = f1 sum x_k^2/(t - a_k),  V = i f1 sum x_k y_k/(t - a_k),
///   W = f1 (1 + sum y_k^2/(t - a_k)),  f2 = f1 sum F_k/(t - a_k),
/// with f1 = prod (t - a_k).
std::pair<MumfordTriple, HyperellipticModel> triple_from_phase(const confocal::PhasePoint& p,
                                                               const confocal::ConfocalFamily& fam);

/// Max over points of |t_a - t_b| + |s_a - s_b|, both lists sorted by t.
double divisor_distance(std::span<const DivisorPoint> a, std::span<const DivisorPoint> b);

}  // namespace acihs::mumford
