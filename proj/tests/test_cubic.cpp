#include <doctest.h>

#include <stdexcept>

#include "acihs/cubic.hpp"
#include "acihs/errors.hpp"
#include "acihs/rng.hpp"
#include "acihs/sampling.hpp"

using namespace acihs;
using cubic::Point;

namespace {

cubic::PeriodSampler constant(int g) {
  CMatrix p = CMatrix::Identity(g, g) * cplx(0.3, 1.0);
  return {g, 1e-3, [p](const Point&) { return p; }};
}

}  // namespace

TEST_CASE("constant sampler") {
  const auto t = cubic::period_tensor(constant(3), Point(3, 0.5), 1e-3);
  CHECK(t.max_abs() == 0.0);
}

TEST_CASE("Hessian of b1^2 b2") {
  const auto s = cubic::hessian_sampler([](const Point& b) { return b[0] * b[0] * b[1]; }, 2, 1e-2);
  const auto t = cubic::period_tensor(s, Point{0.7, -0.4}, 1e-2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const bool two = (i + j + k) == 1;  // one index is b2
        CHECK(std::abs(t(i, j, k) - (two ? 2.0 : 0.0)) < 1e-8);
      }
}

TEST_CASE("linear samplers are differentiated exactly") {
  Rng rng(801);
  const int g = 3;
  std::vector<CMatrix> c(g);
  for (auto& m : c) {
    m = CMatrix(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = rng.normal();
  }
  const CMatrix p0 = CMatrix::Identity(g, g);
  const cubic::PeriodSampler s{g, 0.25, [=](const Point& b) {
                                 CMatrix p = p0;
                                 for (int i = 0; i < g; ++i) p += b[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
                                 return p;
                               }};
  const auto t = cubic::period_tensor(s, Point{0.1, 0.2, 0.3}, 0.25);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      for (int k = 0; k < g; ++k) CHECK(std::abs(t(i, j, k) - c[static_cast<std::size_t>(i)](j, k)) < 1e-14);
}

TEST_CASE("skew sampler has defect one, symmetrization removes it") {
  for (const double h : {1e-2, 1e-3, 1e-5}) {
    const auto t = cubic::period_tensor(cubic::skew_sampler(), Point{0.2, 0.3}, h);
    CHECK(std::abs(t(1, 0, 0) - 1.0) < 1e-9);
    CHECK(std::abs(t(0, 1, 0)) < 1e-12);
    CHECK(std::abs(cubic::cubic_defect(t) - 1.0) < 1e-9);
    CHECK(cubic::cubic_defect(cubic::symmetrized(t)) < 1e-15);
  }
}

TEST_CASE("finite-difference Hessians") {
  const auto sq = cubic::hessian_sampler(
      [](const Point& b) { return b[0] * b[0] + b[1] * b[1] + b[2] * b[2]; }, 3, 1e-3);
  const CMatrix p = sq.eval(Point{0.4, -1.0, 2.0});
  CHECK((p - 2.0 * CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-7);

  const auto cube = cubic::hessian_sampler([](const Point& b) { return b[0] * b[0] * b[0]; }, 2, 1e-3);
  const CMatrix q = cube.eval(Point{0.8, 0.1});
  CHECK(std::abs(q(0, 0) - 4.8) < 1e-6);
  CHECK(std::abs(q(0, 1)) < 1e-7);
  CHECK(std::abs(q(1, 1)) < 1e-7);
}

TEST_CASE("property: Hessian defect is second order in h and permutation invariant") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(802, s);
    const int g = rng.integer(2, 4);
    const auto f = sampling::prepotential(rng, g, 4);
    const auto sampler = cubic::polynomial_hessian_sampler(f);
    Point b0;
    for (int i = 0; i < g; ++i) b0.push_back(rng.uniform(-0.5, 0.5));
    const auto t1 = cubic::period_tensor(sampler, b0, 1e-2);
    const auto t2 = cubic::period_tensor(sampler, b0, 5e-3);
    const double d1 = cubic::cubic_defect(t1), d2 = cubic::cubic_defect(t2);
    CHECK(d1 < 1e-3 * std::max(1.0, t1.max_abs()));
    if (d1 > 1e-10) CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.25));

    std::vector<int> perm(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) perm[static_cast<std::size_t>(i)] = g - 1 - i;
    CHECK(cubic::cubic_defect(cubic::permuted(t1, perm)) == doctest::Approx(d1).epsilon(1e-12));

    const auto ti = cubic::period_tensor(sampler, b0, 1e-2, true);
    CHECK(std::abs(cubic::cubic_defect(ti) - d1) < 1e-8);
  }
}

TEST_CASE("Siegel half space") {
  CHECK(cubic::siegel_check(cplx(0.0, 1.0) * CMatrix::Identity(3, 3)));
  CMatrix real(2, 2);
  real << 1.0, 2.0, 2.0, 3.0;
  CHECK_FALSE(cubic::siegel_check(real));
  CMatrix p(2, 2);
  p << cplx(0.0, 2.0), 1.0, 1.0, cplx(0.0, 1.0);
  CHECK(cubic::siegel_check(p));
  p(0, 1) = 1.5;
  CHECK_FALSE(cubic::siegel_check(p));
  CMatrix indef(2, 2);
  indef << cplx(0.0, 1.0), cplx(0.0, 2.0), cplx(0.0, 2.0), cplx(0.0, 1.0);
  CHECK_FALSE(cubic::siegel_check(indef));
}

TEST_CASE("sampler errors") {
  const cubic::PeriodSampler asym{2, 1e-3, [](const Point&) {
                                    CMatrix p = CMatrix::Zero(2, 2);
                                    p(0, 1) = 1.0;
                                    return p;
                                  }};
  CHECK_THROWS_AS(cubic::period_tensor(asym, Point{0.0, 0.0}, 1e-3), AsymmetricPeriodMatrix);

  const cubic::PeriodSampler bad{2, 1e-3, [](const Point&) -> CMatrix { throw std::runtime_error("no data"); }};
  CHECK_THROWS_AS(cubic::period_tensor(bad, Point{0.0, 0.0}, 1e-3), SamplerFailure);
  CHECK_THROWS_AS(cubic::period_tensor(cubic::PeriodSampler{}, Point{}, 1e-3), SamplerFailure);
}
