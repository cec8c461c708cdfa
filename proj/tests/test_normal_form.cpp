#include <doctest.h>

#include "acihs/errors.hpp"
#include "acihs/mumford.hpp"
#include "acihs/normal_form.hpp"
#include "acihs/rng.hpp"
#include "acihs/sampling.hpp"
#include "support.hpp"

using namespace acihs;
using polymat::PolyMatrix;

namespace {

// [x^k] det A(x) from determinants at roots of unity.
cplx det_coeff(const PolyMatrix& a, int k) {
  const int n = a.rank() * a.degree_bound() + 1;
  std::vector<cplx> xs, ds;
  for (int j = 0; j < n; ++j) {
    xs.push_back(std::polar(1.0, 2.0 * M_PI * j / n));
    ds.push_back(a.evaluate(xs.back()).determinant());
  }
  return oracle::vandermonde_fit(xs, ds)[static_cast<std::size_t>(k)];
}

}  // namespace

TEST_CASE("a matrix in normal form is fixed") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(701, s);
    const auto a = sampling::normal_form_matrix(rng, rng.integer(2, 4), rng.integer(1, 3));
    const auto nf = polymat::normal_form(a);
    CHECK(polymat::distance(nf.a, a) < 1e-10);
    CHECK(max_abs(nf.g - nf.g(0, 0) * CMatrix::Identity(a.rank(), a.rank())) < 1e-10);
  }
}

TEST_CASE("property: the normal form is constant on conjugation orbits") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(702, s);
    const int r = rng.integer(2, 4), d = rng.integer(1, 3);
    const auto a = sampling::normal_form_matrix(rng, r, d);
    const auto b = a.conjugated(sampling::invertible(rng, r));
    const auto na = polymat::normal_form(a), nb = polymat::normal_form(b);
    CHECK(polymat::distance(na.a, nb.a) < 1e-8);
    CHECK(polymat::distance(b.conjugated(nb.g), nb.a) < 1e-10);
    // beta = (-1)^{r+1} [x^{dr-1}] det A
    const cplx want = (r % 2 == 1 ? 1.0 : -1.0) * det_coeff(b, d * r - 1);
    CHECK(std::abs(nb.beta - want) < 1e-9);
  }
}

TEST_CASE("theta complement normalization") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(703, s);
    const int n = rng.integer(1, 4);
    const auto model = sampling::hyperelliptic(rng, n);
    const auto triple = mumford::triple_from_divisor(sampling::divisor(rng, model), model);
    const auto m = polymat::mumford_matrix(triple);

    const auto same = polymat::theta_complement_normalize(m);
    CHECK(distance(same.U, triple.U) < 1e-10);
    CHECK(distance(same.V, triple.V) < 1e-10);
    CHECK(distance(same.W, triple.W) < 1e-10);

    const auto back = polymat::theta_complement_normalize(m.conjugated(sampling::invertible(rng, 2)));
    CHECK(distance(back.U, triple.U) < 1e-8);
    CHECK(distance(back.V, triple.V) < 1e-8);
    CHECK(distance(back.W, triple.W) < 1e-8);
    CHECK(mumford::verify_pell(back, model) < 1e-10);
  }
}

TEST_CASE("leading term and beta are checked") {
  PolyMatrix a(2, 1);
  a.set(0, 0, ComplexPolynomial{0.0, 1.0});
  a.set(1, 1, ComplexPolynomial{0.0, 1.0});
  CHECK_THROWS_AS(polymat::normal_form(a), LeadingNotRegularNilpotent);

  PolyMatrix z(2, 1);
  z.set(1, 0, ComplexPolynomial{0.0, 1.0});
  CHECK_THROWS_AS(polymat::normal_form(z), BetaZero);
}
