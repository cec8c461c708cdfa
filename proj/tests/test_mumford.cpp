#include <doctest.h>

#include "acihs/errors.hpp"
#include "acihs/mumford.hpp"
#include "acihs/rng.hpp"
#include "acihs/sampling.hpp"
#include "support.hpp"

using namespace acihs;
using mumford::DivisorPoint;
using mumford::HyperellipticModel;
using P = ComplexPolynomial;

namespace {

void sort_by_t(std::vector<DivisorPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.t.real() < b.t.real() || (a.t.real() == b.t.real() && a.t.imag() < b.t.imag());
  });
}

}  // namespace

TEST_CASE("genus one, one point") {
  // f = t^3 - 2t, f(2) = 4: (t - 2)(t^2 + 2t + 2) + 2^2 = f.
  const auto model = HyperellipticModel::from_polynomial(P{0.0, -2.0, 0.0, 1.0});
  const std::vector<DivisorPoint> pts{{2.0, 2.0}};
  const auto m = mumford::triple_from_divisor(pts, model);
  CHECK(oracle::poly_diff(m.U, {-2.0, 1.0}) < 1e-12);
  CHECK(oracle::poly_diff(m.V, {2.0}) < 1e-12);
  CHECK(oracle::poly_diff(m.W, {2.0, 2.0, 1.0}) < 1e-12);
  CHECK(mumford::verify_pell(m, model) < 1e-12);

  const auto back = mumford::divisor_from_triple(m);
  REQUIRE(back.size() == 1);
  CHECK(std::abs(back[0].t - 2.0) < 1e-12);
  CHECK(std::abs(back[0].s - 2.0) < 1e-12);
}

TEST_CASE("Weierstrass point") {
  const auto model = HyperellipticModel::from_polynomial(P{0.0, -2.0, 0.0, 1.0});
  const std::vector<DivisorPoint> pts{{0.0, 0.0}};
  const auto m = mumford::triple_from_divisor(pts, model);
  CHECK(m.V.norm() < 1e-14);
  CHECK(oracle::poly_diff(m.W, {-2.0, 0.0, 1.0}) < 1e-12);
  const auto back = mumford::divisor_from_triple(m);
  CHECK(std::abs(back[0].t) < 1e-12);
  CHECK(std::abs(back[0].s) < 1e-12);
}

TEST_CASE("property: V^2 + UW = f and the divisor round trip") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(301, s);
    const auto model = sampling::hyperelliptic(rng, rng.integer(1, 5));
    auto pts = sampling::divisor(rng, model);
    const auto m = mumford::triple_from_divisor(pts, model);
    CHECK(mumford::verify_pell(m, model) < 1e-10);
    CHECK(m.U.degree() == model.genus());
    CHECK(std::abs(m.U.leading() - 1.0) < 1e-12);
    CHECK(m.V.degree() < model.genus());
    sort_by_t(pts);
    CHECK(mumford::divisor_distance(pts, mumford::divisor_from_triple(m)) < 1e-9);
  }
}

TEST_CASE("residual responds to a perturbed V") {
  Rng rng(302);
  const auto model = sampling::hyperelliptic(rng, 3);
  const auto pts = sampling::divisor(rng, model);
  auto m = mumford::triple_from_divisor(pts, model);
  const P v2 = m.V * m.V;
  m.V *= 1.0 + 1e-3;
  const double expect = 2e-3 * v2.norm() / model.f().norm();
  const double got = mumford::verify_pell(m, model);
  CHECK(got > 0.0);
  CHECK(got == doctest::Approx(expect).epsilon(0.01));

  const mumford::MumfordTriple zero{};
  CHECK(mumford::verify_pell(zero, model) == doctest::Approx(1.0));
}

TEST_CASE("phase map at hand-computed points") {
  const confocal::ConfocalFamily fam({1.0, 2.0, 3.0});
  auto [m, model] = mumford::triple_from_phase(confocal::make_constrained({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}), fam);
  CHECK(oracle::poly_diff(m.U, {6.0, -5.0, 1.0}) < 1e-12);  // (t-2)(t-3)
  CHECK(m.V.norm() < 1e-14);
  CHECK(oracle::poly_diff(model.f2(), {3.0, -4.0, 1.0}) < 1e-12);  // (t-1)(t-3)
  CHECK(distance(m.W, model.f1() + P{3.0, -4.0, 1.0}) < 1e-12);
  CHECK(distance(m.U * m.W + m.V * m.V, model.f1() * model.f2()) < 1e-12);

  // y = 0: W = f_1, V = 0, f_2 = U.
  auto [m0, model0] = mumford::triple_from_phase(confocal::make_constrained({0.6, 0.0, 0.8}, {0.0, 0.0, 0.0}), fam);
  CHECK(distance(m0.W, model0.f1()) < 1e-12);
  CHECK(m0.V.norm() < 1e-14);
  CHECK(distance(model0.f2(), m0.U) < 1e-12);
}

TEST_CASE("property: phase map residual, roots of f_2 and the sign action") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng(303, s);
    const std::size_t dim = static_cast<std::size_t>(rng.integer(2, 5));
    const confocal::ConfocalFamily fam(sampling::axes(rng, dim));
    const auto p = sampling::phase_point(rng, dim);
    const auto [m, model] = mumford::triple_from_phase(p, fam);
    CHECK(mumford::verify_pell(m, model) < 1e-10);
    CHECK(multiset_distance(roots(model.f2()), confocal::tangency_values(p, fam)) < 1e-9);
    auto q = p;
    const std::size_t k = static_cast<std::size_t>(rng.integer(0, static_cast<int>(dim) - 1));
    q.x[k] = -q.x[k];
    q.y[k] = -q.y[k];
    const auto [mq, modelq] = mumford::triple_from_phase(q, fam);
    CHECK(mq.U.coefficients() == m.U.coefficients());
    CHECK(mq.V.coefficients() == m.V.coefficients());
    CHECK(mq.W.coefficients() == m.W.coefficients());
  }
}

TEST_CASE("invalid divisors and curves") {
  const auto model = HyperellipticModel::from_polynomial(P::from_roots(std::vector<cplx>{-1.0, 0.0, 1.0, 2.0, 3.0}));
  REQUIRE(model.genus() == 2);
  const cplx t = 0.5, s = std::sqrt(model.f()(t));
  const cplx t2 = 1.5, s2 = std::sqrt(model.f()(t2));
  CHECK_THROWS_AS(mumford::triple_from_divisor(std::vector<DivisorPoint>{{t, s + 1.0}, {t2, s2}}, model),
                  PointNotOnCurve);
  CHECK_THROWS_AS(mumford::triple_from_divisor(std::vector<DivisorPoint>{{t, s}, {t, -s}}, model),
                  ThetaDivisorDegenerate);
  CHECK_THROWS_AS(mumford::triple_from_divisor(std::vector<DivisorPoint>{{t, s}, {t, s}}, model),
                  ThetaDivisorDegenerate);
  CHECK_THROWS_AS(mumford::triple_from_divisor(std::vector<DivisorPoint>{{t, s}}, model), InvalidArgument);

  CHECK_THROWS_AS(HyperellipticModel::from_polynomial(P::from_roots(std::vector<cplx>{0.0, 0.0, 1.0})),
                  SingularCurve);
  CHECK_THROWS_AS(HyperellipticModel::from_polynomial(P{1.0, 0.0, 1.0}), SingularCurve);

  mumford::MumfordTriple confluent{P::from_roots(std::vector<cplx>{0.5, 0.5}), P{}, P{}};
  CHECK_THROWS_AS(mumford::divisor_from_triple(confluent), ConfluentDivisor);
}
