#include <doctest.h>

#include <cmath>
#include <limits>

#include "acihs/errors.hpp"
#include "acihs/json_io.hpp"

using namespace acihs;
using io::json;

TEST_CASE("complex numbers") {
  CHECK(io::complex_from_json(json(2.5)) == cplx(2.5));
  CHECK(io::complex_from_json(json::parse("[1, -2]")) == cplx(1.0, -2.0));
  CHECK(io::complex_from_json(io::to_json(cplx(0.25, 3.0))) == cplx(0.25, 3.0));
  CHECK_THROWS_AS(io::complex_from_json(json::parse("[1, 2, 3]")), ConfigError);
  CHECK_THROWS_AS(io::complex_from_json(json("x")), ConfigError);
}

TEST_CASE("polynomials and matrices round trip") {
  const ComplexPolynomial p{1.0, cplx(0.0, 2.0), -3.0};
  CHECK(distance(io::poly_from_json(io::to_json(p)), p) == 0.0);

  polymat::PolyMatrix a(2, 2);
  a.set(0, 1, p);
  a.set(1, 0, ComplexPolynomial{4.0});
  const auto back = io::polymatrix_from_json(io::to_json(a));
  CHECK(polymat::distance(back, a) == 0.0);
  CHECK_THROWS_AS(io::polymatrix_from_json(json::parse("[[[1]], [[1], [2]]]")), ConfigError);
}

TEST_CASE("char polys and multivariate polynomials") {
  const auto b = io::charpoly_from_json(json::parse(R"({"b": [[0], [-1, 0, 0, 1]]})"));
  CHECK(b.r == 2);
  CHECK(b.coeff(2).degree() == 3);
  const auto bare = io::charpoly_from_json(json::parse("[[0], [-1, 0, 0, 1]]"));
  CHECK(polymat::distance(b, bare) == 0.0);

  const auto f = io::multipoly_from_json(json::parse(R"([{"c": 2, "e": [2, 1]}, {"c": [0, 1], "e": [0, 0]}])"));
  CHECK(f.nvars() == 2);
  CHECK(f(cubic::Point{3.0, 0.5}) == cplx(9.0, 1.0));
  CHECK_THROWS_AS(io::multipoly_from_json(json::parse(R"([{"c": 1, "e": [1]}, {"c": 1, "e": [1, 1]}])")),
                  ConfigError);
}

TEST_CASE("lists, inline text and numbers") {
  CHECK(io::parse_list("1,2,4") == std::vector<double>{1.0, 2.0, 4.0});
  CHECK_THROWS_AS(io::parse_list("1,,x"), ConfigError);
  CHECK(io::load("[1, 2]") == json::parse("[1, 2]"));
  CHECK_THROWS_AS(io::load("/nonexistent/file.json"), ConfigError);
  CHECK(io::number(std::numeric_limits<double>::quiet_NaN()).is_null());
  CHECK(io::number(1.5) == json(1.5));
}
