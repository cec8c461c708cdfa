#include <doctest.h>

#include "acihs/errors.hpp"
#include "acihs/normal_form.hpp"
#include "acihs/polymat.hpp"
#include "acihs/rng.hpp"
#include "acihs/sampling.hpp"
#include "support.hpp"

using namespace acihs;
using polymat::PolyMatrix;
using P = ComplexPolynomial;

TEST_CASE("char poly of a diagonal matrix") {
  PolyMatrix a(2, 2);
  const P p{1.0, 2.0, 3.0}, q{-1.0, 0.5};
  a.set(0, 0, p);
  a.set(1, 1, q);
  const auto b = polymat::char_poly(a);
  CHECK(distance(b.coeff(1), -(p + q)) < 1e-14);
  CHECK(distance(b.coeff(2), p * q) < 1e-14);
}

TEST_CASE("char poly of a Mumford matrix is y^2 - f") {
  const mumford::MumfordTriple m{P{-2.0, 1.0}, P{2.0}, P{2.0, 2.0, 1.0}};
  const auto b = polymat::char_poly(polymat::mumford_matrix(m));
  CHECK(b.coeff(1).norm() < 1e-14);
  CHECK(distance(b.coeff(2), -(m.V * m.V + m.U * m.W)) < 1e-14);
}

TEST_CASE("property: char poly against evaluation and interpolation") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(401, s);
    const int r = rng.integer(1, 4), d = rng.integer(0, 3);
    const auto a = sampling::poly_matrix(rng, r, d);
    const auto b = polymat::char_poly(a);
    // det(y - A(x_j)) at r d + 1 points, interpolated coefficientwise.
    const int n = r * d + 1;
    std::vector<cplx> xs;
    for (int j = 0; j < n; ++j) xs.push_back(std::polar(1.0, 2.0 * M_PI * j / n));
    std::vector<std::vector<cplx>> vals(static_cast<std::size_t>(r) + 1);
    for (const cplx x : xs) {
      const auto c = oracle::charpoly_from_eigenvalues(a.evaluate(x));
      for (int i = 0; i <= r; ++i) vals[static_cast<std::size_t>(i)].push_back(c[static_cast<std::size_t>(i)]);
    }
    for (int i = 1; i <= r; ++i) {
      const auto want = oracle::vandermonde_fit(xs, vals[static_cast<std::size_t>(i)]);
      CHECK(oracle::poly_diff(b.coeff(i), want) < 1e-9 * std::pow(3.0, i));
    }
  }
}

TEST_CASE("char poly is conjugation invariant") {
  Rng rng(402);
  const auto a = sampling::poly_matrix(rng, 3, 2);
  const auto b = polymat::char_poly(a);
  const auto c = polymat::char_poly(a.conjugated(sampling::invertible(rng, 3)));
  CHECK(polymat::distance(b, c) < 1e-10);
}

TEST_CASE("spectral genus") {
  for (int d = 1; d <= 6; ++d) CHECK(polymat::spectral_genus(2, d, 0) == d - 1);
  for (int g = 0; g <= 3; ++g) CHECK(polymat::spectral_genus(1, 4, g) == g);
  CHECK(polymat::spectral_genus(3, 2, 1) == 7);
}

TEST_CASE("direct image splitting") {
  for (int d = -4; d <= 7; ++d) {
    const auto s = polymat::direct_image_splitting(2, d);
    const int lo = d >= 0 ? d / 2 : -((-d + 1) / 2);
    const int hi = (d - 1) >= 0 ? (d - 1) / 2 : -((-(d - 1) + 1) / 2);
    CHECK(s == std::vector<int>{lo, hi});
    CHECK(polymat::direct_image_splitting(1, d) == std::vector<int>{d});
  }
  CHECK(polymat::direct_image_splitting(2, 0) == std::vector<int>{0, -1});
}

TEST_CASE("ramification matrix") {
  const auto p2 = polymat::ramification_matrix(2);
  CHECK(oracle::poly_diff(p2.at(0, 1), {0.0, 1.0}) < 1e-15);
  CHECK(oracle::poly_diff(p2.at(1, 0), {1.0}) < 1e-15);
  CHECK(p2.at(0, 0).norm() == 0.0);
  const auto sq = p2 * p2;
  for (int i = 0; i < 2; ++i) CHECK(oracle::poly_diff(sq.at(i, i), {0.0, 1.0}) < 1e-15);

  const auto p1 = polymat::ramification_matrix(1);
  CHECK(oracle::poly_diff(p1.at(0, 0), {0.0, 1.0}) < 1e-15);

  const auto p4 = polymat::ramification_matrix(4);
  const auto fourth = p4 * p4 * p4 * p4;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(oracle::poly_diff(fourth.at(i, j), i == j ? std::vector<cplx>{0.0, 1.0} : std::vector<cplx>{}) == 0.0);
}

TEST_CASE("polynomial matrices") {
  PolyMatrix a(2, 1);
  CHECK_THROWS_AS(a.set(0, 0, P{1.0, 2.0, 3.0}), DegreeTooHigh);
  a.set(0, 1, P{1.0, 1.0});
  CHECK(a.degree() == 1);
  CHECK_THROWS_AS(a.conjugated(CMatrix::Zero(2, 2)), InvalidArgument);
  const CMatrix at = a.evaluate(2.0);
  CHECK(at(0, 1) == cplx(3.0));
  CHECK(polymat::distance(a * PolyMatrix::identity(2), a) == 0.0);
}
