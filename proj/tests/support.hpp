#pragma once

// Independent oracles and small helpers shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "acihs/linalg.hpp"
#include "acihs/poly.hpp"

namespace oracle {

using acihs::cplx;

// Coefficients (ascending) of the polynomial through (nodes, values) by a
// dense Vandermonde solve.
inline std::vector<cplx> vandermonde_fit(const std::vector<cplx>& nodes, const std::vector<cplx>& values) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXcd v(n, n);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx p = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      v(i, k) = p;
      p *= nodes[static_cast<std::size_t>(i)];
    }
    rhs(i) = values[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXcd c = v.fullPivLu().solve(rhs);
  return {c.data(), c.data() + n};
}

// Coefficients c_0..c_r of det(y - M) = y^r + c_1 y^{r-1} + ... from the
// eigenvalues: c_i = (-1)^i e_i.
inline std::vector<cplx> charpoly_from_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<cplx> e{1.0};
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const cplx lam = es.eigenvalues()(k);
    e.push_back(0.0);
    for (std::size_t i = e.size() - 1; i > 0; --i) e[i] -= lam * e[i - 1];
  }
  return e;
}

inline double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const cplx x = i < a.size() ? a[i] : 0.0;
    const cplx y = i < b.size() ? b[i] : 0.0;
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

inline double poly_diff(const acihs::ComplexPolynomial& p, const std::vector<cplx>& c) {
  return max_diff(p.coefficients(), c);
}

}  // namespace oracle
