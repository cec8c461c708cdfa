#include "acihs/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace acihs {

std::vector<std::complex<double>> eigenvalues(const CMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  const CVector& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace acihs
