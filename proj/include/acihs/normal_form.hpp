#pragma once

#include "acihs/mumford.hpp"
#include "acihs/polymat.hpp"

namespace acihs::polymat {

struct NormalFormOptions {
  /// Relative singular-value threshold for the regular-nilpotent test.
  double nilpotent_tol = 1e-8;
  /// |beta| below this (relative to the size of A) raises BetaZero.
  double beta_tol = 1e-10;
};

struct NormalForm {
  PolyMatrix a;
  /// a = g A g^{-1}.
  CMatrix g;
  cplx beta;
};

/// Conjugates A so that the leading coefficient is J (ones on the first
/// subdiagonal) and the last column of A_{d-1} is (beta, 0, ..., 0).
/// Throws LeadingNotRegularNilpotent, BetaZero.
NormalForm normal_form(const PolyMatrix& a, const NormalFormOptions& opt = {});

/// r = 2 case for A = [[V, U], [W, -V]] with -det A = V^2 + U W monic of degree
/// 2d - 1. Returns the conjugate with W monic of degree d, U monic of degree
/// d - 1 and deg V <= d - 2.
mumford::MumfordTriple theta_complement_normalize(const PolyMatrix& a, const NormalFormOptions& opt = {});

/// [[V, U], [W, -V]].
PolyMatrix mumford_matrix(const mumford::MumfordTriple& m);

}  // namespace acihs::polymat
