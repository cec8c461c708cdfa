#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "acihs/linalg.hpp"
#include "acihs/polymat.hpp"

namespace acihs::polymat {

enum class EmbedMode {
  /// m = d+2 distinct finite points; form A(x) dx / prod_j (x - a_j).
  all_finite,
  /// d finite points plus infinity taken twice; form A(x) dx / prod_{j<=d} (x - a_j).
  last_at_infinity,
};

/// Residues (R_1, ..., R_m) of a matrix-valued meromorphic 1-form at marked
/// points, an element of gl_r^m.
///
/// In `last_at_infinity` mode the doubled point at infinity carries the pair
/// (leading coefficient A_d, residue R_inf), and R_inf = -sum R_i.
struct ResidueTuple {
  std::vector<cplx> points;
  std::vector<CMatrix> matrices;
  EmbedMode mode = EmbedMode::all_finite;
  CMatrix leading;      // last_at_infinity only
  CMatrix at_infinity;  // last_at_infinity only

  int rank() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows()); }
  std::size_t size() const noexcept { return matrices.size(); }
  CMatrix sum() const;
};

/// Throws DuplicatePoints, and DegreeTooHigh when deg A > m-2 in all-finite mode
/// (or deg A > d in last-at-infinity mode, d = number of finite points).
ResidueTuple residue_embed(const PolyMatrix& a, std::span<const cplx> divisor,
                           EmbedMode mode = EmbedMode::all_finite, double point_tol = 1e-12);

/// Inverse of residue_embed. Throws ResidueSumNonzero when the residue theorem
/// fails beyond `tol` (relative to the largest residue).
PolyMatrix residue_reconstruct(const ResidueTuple& t, double tol = 1e-10);

/// A(x) = sum_i R_i prod_{j != i}(x - a_j) for any tuple, with no sum check.
/// The x^{m-1} coefficient equals sum R_i, so on sum-zero tuples this agrees
/// with residue_reconstruct. This is the extension used by the spectral
/// functionals off the constraint surface.
PolyMatrix residue_interpolate(const ResidueTuple& t);

/// sum_i tr(A_i R_i).
cplx trace_pair(std::span<const CMatrix> jet, const ResidueTuple& t);

// ---------------------------------------------------------------------------
// Product Kostant-Kirillov structure, pairing <xi, X> = tr(xi X).

/// Per-factor gradients: dF = sum_i tr(grad[i] dR_i).
using TupleGradient = std::vector<CMatrix>;

struct Functional {
  std::string name;
  std::function<cplx(const ResidueTuple&)> value;
  /// Optional analytic gradient; central differences are used when empty.
  std::function<TupleGradient(const ResidueTuple&)> gradient;
};

/// Central differences of a holomorphic functional, step rel_h * max(1, |R|).
TupleGradient fd_gradient(const Functional& f, const ResidueTuple& t, double rel_h = 1e-6);
/// Analytic gradient when available, else fd_gradient.
TupleGradient gradient(const Functional& f, const ResidueTuple& t, double rel_h = 1e-6);

/// sum_i tr(R_i [dF_i, dG_i]).
cplx kk_bracket(const TupleGradient& df, const TupleGradient& dg, const ResidueTuple& t);
cplx kk_bracket(const Functional& f, const Functional& g, const ResidueTuple& t, double rel_h = 1e-6);

/// tr(R_factor X).
Functional linear_functional(std::size_t factor, CMatrix x);
/// tr(R_factor^k), a Casimir.
Functional casimir(std::size_t factor, int k);
/// tr(A(x0)^k) with A = residue_interpolate(t).
Functional trace_power(cplx x0, int k);
/// H_{i,j}(t) = [x^j] b_i(residue_interpolate(t)). The analytic gradient uses
/// d b_i = -tr(M_i dA) from the adjugate expansion; `analytic = false` leaves
/// it to central differences.
Functional spectral_functional(int i, int j, bool analytic = true);

struct KKFlowOptions {
  double dt = 1e-3;
  int steps = 1000;
  double rel_h = 1e-6;
  /// Per-step relative char-poly drift above this rejects the step.
  double max_step_drift = 1e-3;
  int record_every = 1;
};

struct KKTrajectory {
  std::vector<int> steps;
  std::vector<ResidueTuple> tuples;
  /// Relative char-poly coefficient distance to the initial tuple.
  std::vector<double> charpoly_drift;
  /// Max eigenvalue displacement over all factors relative to the initial tuple.
  std::vector<double> leaf_drift;
  double max_charpoly_drift = 0.0;
  double max_leaf_drift = 0.0;
};

/// RK4 for the Hamiltonian field R_i' = [dH_i, R_i], so that dF/dt = {F, H}.
/// Throws StepRejected.
KKTrajectory kk_flow(const Functional& h, const ResidueTuple& t0, const KKFlowOptions& opt);

/// Largest eigenvalue displacement between corresponding factors.
double leaf_distance(const ResidueTuple& a, const ResidueTuple& b);

}  // namespace acihs::polymat
