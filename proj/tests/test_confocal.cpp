#include <doctest.h>

#include "acihs/confocal.hpp"
#include "acihs/errors.hpp"
#include "acihs/rng.hpp"
#include "acihs/sampling.hpp"
#include "support.hpp"

using namespace acihs;
using confocal::ConfocalFamily;
using confocal::PhasePoint;

namespace {

// The line y + t x meets the quadric sum z_k^2 / (a_k - lam) = 1 in a double
// point iff B^2 - A C = 0 for the quadratic A t^2 + 2 B t + C. Returned
// relative to the size of its terms.
double tangency_defect(const PhasePoint& p, const ConfocalFamily& fam, cplx lam) {
  cplx a = 0.0, b = 0.0, c = -1.0;
  double scale = 1.0;
  for (std::size_t k = 0; k < fam.dim(); ++k) {
    const cplx w = 1.0 / (fam.axis(k) - lam);
    a += p.x[k] * p.x[k] * w;
    b += p.x[k] * p.y[k] * w;
    c += p.y[k] * p.y[k] * w;
  }
  scale = std::abs(b * b) + std::abs(a * c);
  return std::abs(b * b - a * c) / scale;
}

}  // namespace

TEST_CASE("integrals at a hand-computed point") {
  const ConfocalFamily fam({1.0, 2.0, 3.0});
  const auto p = confocal::make_constrained({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
  const auto f = confocal::uhlenbeck_integrals(p, fam);
  CHECK(f[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(f[1] == doctest::Approx(1.0));
  CHECK(f[2] == doctest::Approx(0.0).epsilon(1e-14));

  CHECK(confocal::neumann_hamiltonian(p, fam) == doctest::Approx(1.0));

  // Only F_2 is nonzero: (1 - lam)(3 - lam).
  const auto t = confocal::tangency_polynomial(p, fam);
  CHECK(oracle::poly_diff(t.trimmed() * (1.0 / t.leading()), {3.0, -4.0, 1.0}) < 1e-12);
  CHECK(multiset_distance(confocal::tangency_values(p, fam), std::vector<cplx>{1.0, 3.0}) < 1e-10);
}

TEST_CASE("y = 0 gives F_k = x_k^2") {
  const ConfocalFamily fam({1.0, 2.5, 4.0});
  const double c = 1.0 / std::sqrt(3.0);
  const auto p = confocal::make_constrained({c, c, c}, {0.0, 0.0, 0.0});
  for (const double f : confocal::uhlenbeck_integrals(p, fam)) CHECK(f == doctest::Approx(1.0 / 3.0));
  const auto q = confocal::make_constrained({1.0, 0.0}, {0.0, 0.0});
  CHECK(confocal::neumann_hamiltonian(q, ConfocalFamily({1.0, 2.0})) == doctest::Approx(0.5));
}

TEST_CASE("F = e_1 gives tangency values a_2, ..., a_m") {
  const ConfocalFamily fam({1.0, 2.0, 4.0, 7.0});
  const auto p = confocal::make_constrained({1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0});
  CHECK(multiset_distance(confocal::tangency_values(p, fam), std::vector<cplx>{2.0, 4.0, 7.0}) < 1e-9);
}

TEST_CASE("property: tangency values are double points of the line") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng(201, s);
    const std::size_t m = static_cast<std::size_t>(rng.integer(2, 5));
    const ConfocalFamily fam(sampling::axes(rng, m));
    const auto p = sampling::phase_point(rng, m);
    const auto lam = confocal::tangency_values(p, fam);
    CHECK(lam.size() == m - 1);
    for (const cplx l : lam) CHECK(tangency_defect(p, fam, l) < 1e-8);
  }
}

TEST_CASE("property: sum of integrals is one, Hamiltonian is the weighted sum") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(202, s);
    const std::size_t m = static_cast<std::size_t>(rng.integer(2, 7));
    const ConfocalFamily fam(sampling::axes(rng, m));
    const auto p = sampling::phase_point(rng, m);
    const auto f = confocal::uhlenbeck_integrals(p, fam);
    double sum = 0.0, weighted = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      sum += f[k];
      weighted += 0.5 * fam.axis(k) * f[k];
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(std::abs(confocal::neumann_hamiltonian(p, fam) - weighted) < 1e-10);
  }
}

TEST_CASE("kinetic part is quadratic in y") {
  const ConfocalFamily fam({1.0, 2.0, 4.0});
  Rng rng(203);
  const auto p = sampling::phase_point(rng, 3);
  auto q = p, z = p;
  for (auto& v : q.y) v *= 3.0;
  for (auto& v : z.y) v = 0.0;
  const double h0 = confocal::neumann_hamiltonian(z, fam);
  CHECK(confocal::neumann_hamiltonian(q, fam) - h0 ==
        doctest::Approx(9.0 * (confocal::neumann_hamiltonian(p, fam) - h0)).epsilon(1e-12));
}

TEST_CASE("analytic and finite-difference gradients agree") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(204, s);
    const std::size_t m = static_cast<std::size_t>(rng.integer(2, 5));
    const ConfocalFamily fam(sampling::axes(rng, m));
    const auto p = sampling::phase_point(rng, m);
    for (std::size_t k = 0; k < m; ++k) {
      const auto h = confocal::uhlenbeck_hamiltonian(k, fam);
      const auto g = h.gradient(p);
      const auto fd = confocal::fd_gradient(h.value, p, 1e-6);
      for (std::size_t i = 0; i < m; ++i) {
        CHECK(g.dx[i] == doctest::Approx(fd.dx[i]).epsilon(1e-6).scale(1.0));
        CHECK(g.dy[i] == doctest::Approx(fd.dy[i]).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("critical point of H: the flow stays put") {
  const ConfocalFamily fam({1.0, 2.0, 3.0});
  const auto h = confocal::from_callable("const", [](const PhasePoint&) { return 4.0; });
  const auto p0 = confocal::make_constrained({0.6, 0.8, 0.0}, {0.0, 0.0, 1.0});
  confocal::FlowOptions fo;
  fo.steps = 50;
  const auto traj = confocal::dirac_flow(h, p0, fo);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(traj.points.back().x[i] == doctest::Approx(p0.x[i]));
    CHECK(traj.points.back().y[i] == doctest::Approx(p0.y[i]));
  }
}

TEST_CASE("property: every F_j is conserved along the F_k flow") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    Rng rng(205, s);
    const std::size_t m = static_cast<std::size_t>(rng.integer(3, 4));
    const ConfocalFamily fam(sampling::axes(rng, m));
    const auto p0 = sampling::phase_point(rng, m);
    const std::size_t k = static_cast<std::size_t>(rng.integer(0, static_cast<int>(m) - 1));
    confocal::FlowOptions fo;
    fo.dt = 1e-3;
    fo.steps = 1000;
    fo.record_every = 1000;
    const auto traj = confocal::dirac_flow(confocal::uhlenbeck_hamiltonian(k, fam), p0, fo);
    const auto f0 = confocal::uhlenbeck_integrals(p0, fam);
    const auto f1 = confocal::uhlenbeck_integrals(traj.points.back(), fam);
    for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(f1[j] - f0[j]) < 1e-6);
  }
}

TEST_CASE("property: integrals Poisson-commute and the flows commute to third order") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(206, s);
    const std::size_t m = static_cast<std::size_t>(rng.integer(3, 5));
    const ConfocalFamily fam(sampling::axes(rng, m));
    const auto p = sampling::phase_point(rng, m);
    const auto h1 = confocal::uhlenbeck_hamiltonian(0, fam);
    const auto h2 = confocal::uhlenbeck_hamiltonian(m - 1, fam);
    CHECK(std::abs(confocal::dirac_bracket(h1.gradient(p), h2.gradient(p), p)) < 1e-10);
    const double ratio = confocal::flow_commutation_defect(h1, h2, p, 5e-3) /
                         confocal::flow_commutation_defect(h1, h2, p, 2.5e-3);
    CHECK(ratio >= 6.0);
    CHECK(ratio <= 10.0);
  }
}

TEST_CASE("geodesics: vertex start in a coordinate plane stays there, speed constant") {
  const ConfocalFamily fam({1.0, 2.0, 4.0});
  const auto traj = confocal::geodesic_flow({1.0, 0.0, 0.0}, {0.0, 0.6, 0.0}, fam, 1e-3, 3000, 1e-3, 100);
  for (const auto& s : traj.states) {
    CHECK(std::abs(s.x[2]) < 1e-14);
    CHECK(std::abs(s.v[2]) < 1e-14);
  }
  for (std::uint64_t k = 0; k < 3; ++k) {
    Rng rng(207, k);
    const auto s0 = sampling::ellipsoid_state(rng, fam);
    const auto t = confocal::geodesic_flow(s0.x, s0.v, fam, 1e-3, 10000, 1e-3, 1000);
    const auto speed = [](const confocal::GeodesicState& st) {
      double v = 0.0;
      for (const double c : st.v) v += c * c;
      return std::sqrt(v);
    };
    for (const auto& st : t.states) CHECK(std::abs(speed(st) - speed(s0)) < 1e-8);
    // A tangent line of the ellipsoid is tangent to it: one value is 0.
    const auto lam = confocal::tangency_values(confocal::tangent_line(t.states.back()), fam);
    double nearest = 1e300;
    for (const cplx l : lam) nearest = std::min(nearest, std::abs(l));
    CHECK(nearest < 1e-8);
  }
}

TEST_CASE("nilpotent residues of a point of TS") {
  const ConfocalFamily fam({1.0, 2.0, 3.0});
  const auto p0 = confocal::make_constrained({0.0, 0.6, 0.8}, {0.3, 0.4, -0.3});
  const auto t0 = confocal::ts_to_nilpotent(p0, fam);
  CHECK(max_abs(t0.matrices[0].row(0)) < 1e-15);

  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(208, s);
    const auto p = sampling::phase_point(rng, 3);
    const auto t = confocal::ts_to_nilpotent(p, fam);
    const CMatrix sum = t.sum();
    CHECK(std::abs(sum(0, 0)) < 1e-12);
    CHECK(std::abs(sum(0, 1) - cplx(-1.0)) < 1e-12);
    for (const auto& r : t.matrices) {
      CHECK(std::abs(r.trace()) < 1e-12);
      CHECK(std::abs(r.determinant()) < 1e-12);
    }
    // Sign flips of (x_k, y_k) act trivially.
    auto q = p;
    q.x[1] = -q.x[1];
    q.y[1] = -q.y[1];
    const auto tq = confocal::ts_to_nilpotent(q, fam);
    for (std::size_t i = 0; i < 3; ++i) CHECK(max_abs(tq.matrices[i] - t.matrices[i]) < 1e-15);
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(ConfocalFamily({1.0}), InvalidArgument);
  CHECK_THROWS_AS(ConfocalFamily({2.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(ConfocalFamily({-1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(confocal::make_constrained({1.0, 1.0}, {0.0, 0.0}), InvalidArgument);
  const ConfocalFamily fam({1.0, 2.0});
  const PhasePoint zero{{0.0, 0.0}, {1.0, 0.0}, false};
  const auto g = confocal::uhlenbeck_hamiltonian(0, fam).gradient(zero);
  CHECK_THROWS_AS(confocal::dirac_bracket(g, g, zero), ConstraintDegenerate);
  CHECK_THROWS_AS(confocal::geodesic_flow({1.0, 1.0}, {0.0, 1.0}, fam, 1e-3, 10), InvalidArgument);
}
