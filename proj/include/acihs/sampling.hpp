#pragma once

#include <vector>

#include "acihs/confocal.hpp"
#include "acihs/cubic.hpp"
#include "acihs/mumford.hpp"
#include "acihs/polymat.hpp"
#include "acihs/residue.hpp"
#include "acihs/rng.hpp"

// Random instance generators shared by the CLI, the acceptance suite and the
// property tests. All draws are unit scale.
namespace acihs::sampling {

/// m increasing axes with gaps in [0.3, 1.3], starting near 1.
std::vector<double> axes(Rng& rng, std::size_t m);

/// Gaussian (x, y) projected onto the sphere bundle.
confocal::PhasePoint phase_point(Rng& rng, std::size_t m);

/// Point on the ellipsoid with a unit tangent velocity.
confocal::GeodesicState ellipsoid_state(Rng& rng, const confocal::ConfocalFamily& fam);

/// `count` complex points in the disc of the given radius, pairwise at least
/// `min_sep` apart (real points when `real` is set).
std::vector<cplx> separated_points(Rng& rng, std::size_t count, double radius, double min_sep, bool real = false);

/// Monic f = prod (t - e_k) of degree 2n+1 with separated roots.
mumford::HyperellipticModel hyperelliptic(Rng& rng, int n);

/// n points on s^2 = f with separated t away from the roots of f.
std::vector<mumford::DivisorPoint> divisor(Rng& rng, const mumford::HyperellipticModel& model);

/// Entries with Gaussian coefficients of degree <= d.
polymat::PolyMatrix poly_matrix(Rng& rng, int r, int d, double sigma = 1.0);

/// A_d = J, last column of A_{d-1} = (beta, 0, ..., 0) with |beta| in [0.5, 1.5],
/// everything else Gaussian.
polymat::PolyMatrix normal_form_matrix(Rng& rng, int r, int d);

/// Gaussian matrix with condition number below `max_cond`.
CMatrix invertible(Rng& rng, int r, double max_cond = 50.0);

/// Residues of a random A of degree m-2 on the given divisor (sum zero),
/// rescaled so the largest residue entry has magnitude `scale`.
polymat::ResidueTuple sum_zero_tuple(Rng& rng, int r, const std::vector<cplx>& divisor, double scale = 1.0);

/// Random polynomial with every partial degree <= max_partial and real
/// Gaussian coefficients, dense in the monomial box.
cubic::MultiPolynomial prepotential(Rng& rng, int g, int max_partial);

}  // namespace acihs::sampling
