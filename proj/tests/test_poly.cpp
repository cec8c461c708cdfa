#include <doctest.h>

#include "acihs/errors.hpp"
#include "acihs/poly.hpp"
#include "acihs/rng.hpp"
#include "acihs/sampling.hpp"
#include "support.hpp"

using namespace acihs;

namespace {

using P = ComplexPolynomial;

std::vector<cplx> vec(std::initializer_list<cplx> v) { return v; }

}  // namespace

TEST_CASE("interpolation through one, two and three nodes") {
  CHECK(oracle::poly_diff(lagrange_interpolate(vec({0.0}), vec({5.0})), {5.0}) < 1e-14);
  CHECK(oracle::poly_diff(lagrange_interpolate(vec({0.0, 1.0}), vec({0.0, 1.0})), {0.0, 1.0}) < 1e-14);

  const auto nodes = vec({0.0, 1.0, 2.0});
  const auto values = vec({1.0, 2.0, 5.0});
  const auto p = lagrange_interpolate(nodes, values);
  CHECK(oracle::poly_diff(p, oracle::vandermonde_fit(nodes, values)) < 1e-13);
  CHECK(oracle::poly_diff(p, {1.0, 0.0, 1.0}) < 1e-13);
}

TEST_CASE("interpolation with a prescribed leading coefficient") {
  CHECK(oracle::poly_diff(lagrange_interpolate_with_infinity(vec({0.0}), vec({0.0}), 1.0), {0.0, 1.0}) < 1e-14);
  CHECK(oracle::poly_diff(lagrange_interpolate_with_infinity(vec({1.0, -1.0}), vec({1.0, 1.0}), 0.0), {1.0}) < 1e-14);
  // 2 t (t - 1)
  CHECK(oracle::poly_diff(lagrange_interpolate_with_infinity(vec({0.0, 1.0}), vec({0.0, 0.0}), 2.0),
                          {0.0, -2.0, 2.0}) < 1e-14);
}

TEST_CASE("repeated nodes are rejected") {
  CHECK_THROWS_AS(lagrange_interpolate(vec({1.0, 1.0}), vec({0.0, 1.0})), DuplicateNodes);
}

TEST_CASE("long division") {
  auto r = divide(P{-1.0, 0.0, 1.0}, P{-1.0, 1.0});
  CHECK(oracle::poly_diff(r.quotient, {1.0, 1.0}) < 1e-14);
  CHECK(r.residual == doctest::Approx(0.0));

  r = divide(P{-4.0, -2.0, 0.0, 1.0}, P{-2.0, 1.0});
  CHECK(oracle::poly_diff(r.quotient, {2.0, 2.0, 1.0}) < 1e-14);
  CHECK(r.residual < 1e-14);

  // t^2 + 1 = t * t + 1; the remainder is reported.
  r = exact_divide(P{1.0, 0.0, 1.0}, P{0.0, 1.0});
  CHECK(oracle::poly_diff(r.quotient, {0.0, 1.0}) < 1e-14);
  CHECK(r.residual == doctest::Approx(1.0));

  CHECK_THROWS_AS(divide(P{1.0, 1.0}, P{}), DivisionByZeroPolynomial);
}

TEST_CASE("squarefree") {
  CHECK(squarefree(P{0.0, -2.0, 0.0, 1.0}));
  CHECK_FALSE(squarefree(P{1.0, -2.0, 1.0}));
  CHECK(squarefree(P{0.0, 1.0}));
}

TEST_CASE("roots of small polynomials") {
  auto z = roots(P{1.0, 0.0, 1.0});
  CHECK(multiset_distance(z, vec({cplx(0, 1), cplx(0, -1)})) < 1e-12);

  z = roots(P::from_roots(vec({1.0, 2.0, 3.0})));
  CHECK(multiset_distance(z, vec({1.0, 2.0, 3.0})) < 1e-12);

  z = roots(P{0.0, -2.0, 0.0, 1.0});
  CHECK(multiset_distance(z, vec({0.0, std::sqrt(2.0), -std::sqrt(2.0)})) < 1e-12);
}

TEST_CASE("property: roots recover separated roots") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(101, s);
    const auto want = sampling::separated_points(rng, static_cast<std::size_t>(rng.integer(1, 9)), 2.0, 0.2);
    const auto got = roots(P::from_roots(want));
    CHECK(multiset_distance(got, want) < 1e-8);
  }
}

TEST_CASE("property: interpolation reproduces values and matches the Vandermonde solve") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(102, s);
    const auto nodes = sampling::separated_points(rng, static_cast<std::size_t>(rng.integer(1, 7)), 1.5, 0.3);
    std::vector<cplx> values;
    for (std::size_t i = 0; i < nodes.size(); ++i) values.push_back(rng.cnormal());
    const auto p = lagrange_interpolate(nodes, values);
    for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(std::abs(p(nodes[i]) - values[i]) < 1e-10);
    CHECK(oracle::poly_diff(p, oracle::vandermonde_fit(nodes, values)) < 1e-8);
  }
}

TEST_CASE("property: num = q den + rem with deg rem < deg den") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(103, s);
    std::vector<cplx> a(static_cast<std::size_t>(rng.integer(1, 8))), b(static_cast<std::size_t>(rng.integer(2, 5)));
    for (auto& c : a) c = rng.cnormal();
    for (auto& c : b) c = rng.cnormal();
    const P num(a), den(b);
    const auto r = divide(num, den);
    CHECK(distance(r.quotient * den + r.remainder, num) < 1e-10);
    CHECK(r.remainder.degree() < den.degree());
  }
}

TEST_CASE("property: taylor shift and derivative agree with evaluation") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(104, s);
    std::vector<cplx> a(6);
    for (auto& c : a) c = rng.cnormal();
    const P p(a);
    const cplx x0 = rng.cnormal(), z = rng.cnormal(0.3);
    CHECK(std::abs(p.taylor_shift(x0)(z) - p(x0 + z)) < 1e-10);
    const double h = 1e-5;
    const cplx fd = (p(x0 + h) - p(x0 - h)) / (2.0 * h);
    CHECK(std::abs(p.derivative()(x0) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("degree ignores tiny top coefficients but storage keeps them") {
  const P p{1.0, 2.0, 1e-15};
  CHECK(p.degree() == 1);
  CHECK(p.size() == 3);
  CHECK(P{}.degree() == kZeroDegree);
}
