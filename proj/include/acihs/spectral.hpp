#pragma once

#include <optional>
#include <vector>

#include "acihs/polymat.hpp"

namespace acihs::polymat {

/// Res_y(P, dP/dy) as a polynomial in x, degree <= d r (r-1). Evaluated on two
/// circles of roots of unity and interpolated; throws IllConditioned when the
/// two interpolants disagree beyond `rel_tol`.
ComplexPolynomial y_discriminant(const CharPoly& b, double rel_tol = 1e-6);

struct SingularPoint {
  cplx x;
  cplx y;
};

struct SmoothnessReport {
  bool smooth = true;
  /// Set when smooth is false.
  std::optional<SingularPoint> witness;
  ComplexPolynomial discriminant;
};

/// True iff P = P_x = P_y = 0 has no affine solution. Candidate x values are
/// the roots of the y-discriminant; a candidate (x, y) counts as singular when
/// all three values are below `tol` times their natural scale.
SmoothnessReport spectral_smooth_affine(const CharPoly& b, double tol = 1e-6);

/// Truncated branch series y(z), z = x - x0, one per sheet of an unramified fiber.
struct BranchExpansion {
  cplx x0;
  int order = 0;
  /// sheets[s].coeff(m) = [z^m] y_s(z), sheets sorted by y_s(0).
  std::vector<ComplexPolynomial> sheets;
};

/// Implicit-function recursion: c_m = -[z^m] P(x0 + z, y_{m-1}(z)) / P_y(x0, y0).
/// Throws RamifiedFiber when two roots of P(x0, .) lie within `ram_tol`
/// (relative); near a branch point they separate only like sqrt(eps).
BranchExpansion branch_expansion(const CharPoly& b, cplx x0, int order, double ram_tol = 1e-6);

/// phi^j per sheet: [z^{j-1}] y(z), expanded to depth j + 2.
std::vector<cplx> branch_residue_hamiltonians(const CharPoly& b, cplx x0, int j, double ram_tol = 1e-6);

}  // namespace acihs::polymat
