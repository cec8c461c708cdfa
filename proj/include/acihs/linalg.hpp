#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace acihs {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Max-abs entry.
inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Eigenvalues of a square complex matrix (unordered).
std::vector<std::complex<double>> eigenvalues(const CMatrix& m);

}  // namespace acihs
