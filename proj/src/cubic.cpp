#include "acihs/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "acihs/errors.hpp"

namespace acihs::cubic {

double CubicTensor::max_abs() const {
  double m = 0.0;
  for (const cplx v : t_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

CMatrix sample(const PeriodSampler& s, const Point& b) {
  CMatrix p;
  try {
    p = s.eval(b);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw SamplerFailure(e.what());
  }
  if (p.rows() != s.g || p.cols() != s.g)
    throw SamplerFailure("sampler returned a " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) +
                         " matrix, expected g = " + std::to_string(s.g));
  if (!p.allFinite()) throw SamplerFailure("sampler returned a non-finite value");
  const double asym = acihs::max_abs(p - p.transpose());
  if (asym > 1e-10 * std::max(1.0, acihs::max_abs(p)))
    throw AsymmetricPeriodMatrix("sampled period matrix is not symmetric (defect " + std::to_string(asym) + ")");
  return p;
}

}  // namespace

CubicTensor period_tensor(const PeriodSampler& s, const Point& b0, double h, bool imaginary_axis) {
  if (!(h > 0.0)) throw InvalidArgument("h must be positive");
  if (static_cast<int>(b0.size()) != s.g) throw InvalidArgument("base point has the wrong dimension");
  if (!s.eval) throw SamplerFailure("sampler has no evaluation function");
  const cplx step = imaginary_axis ? cplx(0.0, h) : cplx(h, 0.0);
  CubicTensor t(s.g, h);
  Point b = b0;
  for (int i = 0; i < s.g; ++i) {
    b[static_cast<std::size_t>(i)] = b0[static_cast<std::size_t>(i)] + step;
    const CMatrix plus = sample(s, b);
    b[static_cast<std::size_t>(i)] = b0[static_cast<std::size_t>(i)] - step;
    const CMatrix minus = sample(s, b);
    b[static_cast<std::size_t>(i)] = b0[static_cast<std::size_t>(i)];
    const CMatrix dp = (plus - minus) / (2.0 * step);
    for (int j = 0; j < s.g; ++j)
      for (int k = 0; k < s.g; ++k) t(i, j, k) = dp(j, k);
  }
  return t;
}

double cubic_defect(const CubicTensor& t) {
  double d = 0.0;
  for (int i = 0; i < t.g(); ++i)
    for (int j = 0; j < t.g(); ++j)
      for (int k = 0; k < t.g(); ++k) d = std::max(d, std::abs(t(i, j, k) - t(j, i, k)));
  return d;
}

CubicTensor symmetrized(const CubicTensor& t) {
  CubicTensor s(t.g(), t.h());
  for (int i = 0; i < t.g(); ++i)
    for (int j = 0; j < t.g(); ++j)
      for (int k = 0; k < t.g(); ++k)
        s(i, j, k) = (t(i, j, k) + t(i, k, j) + t(j, i, k) + t(j, k, i) + t(k, i, j) + t(k, j, i)) / 6.0;
  return s;
}

CubicTensor permuted(const CubicTensor& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.g()) throw InvalidArgument("permutation has the wrong length");
  std::vector<int> seen(perm.size(), 0);
  for (const int p : perm) {
    if (p < 0 || p >= t.g() || seen[static_cast<std::size_t>(p)]++) throw InvalidArgument("not a permutation");
  }
  CubicTensor s(t.g(), t.h());
  for (int i = 0; i < t.g(); ++i)
    for (int j = 0; j < t.g(); ++j)
      for (int k = 0; k < t.g(); ++k)
        s(i, j, k) = t(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)],
                       perm[static_cast<std::size_t>(k)]);
  return s;
}

PeriodSampler hessian_sampler(std::function<cplx(const Point&)> f, int g, double h) {
  if (g < 1) throw InvalidArgument("g must be positive");
  if (!(h > 0.0)) throw InvalidArgument("h must be positive");
  PeriodSampler s;
  s.g = g;
  s.h = h;
  s.eval = [f = std::move(f), g, h](const Point& b) {
    CMatrix p(g, g);
    Point q = b;
    auto at = [&](int i, double si, int j, double sj) {
      q = b;
      q[static_cast<std::size_t>(i)] += si * h;
      q[static_cast<std::size_t>(j)] += sj * h;
      return f(q);
    };
    for (int i = 0; i < g; ++i)
      for (int j = i; j < g; ++j) {
        // Same stencil on and off the diagonal, so p is symmetric exactly.
        const cplx v = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4.0 * h * h);
        p(i, j) = v;
        p(j, i) = v;
      }
    return p;
  };
  return s;
}

PeriodSampler skew_sampler() {
  PeriodSampler s;
  s.g = 2;
  s.h = 1e-2;
  s.eval = [](const Point& b) {
    CMatrix p = CMatrix::Zero(2, 2);
    p(0, 0) = b[1];
    p(1, 1) = b[0];
    return p;
  };
  return s;
}

bool siegel_check(const CMatrix& p, double sym_tol, double pd_tol) {
  if (p.rows() != p.cols() || p.rows() == 0) return false;
  if (acihs::max_abs(p - p.transpose()) > sym_tol) return false;
  const Eigen::MatrixXd im = 0.5 * (p.imag() + p.imag().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(im, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > pd_tol;
}

// ---------------------------------------------------------------------------

MultiPolynomial::MultiPolynomial(int nvars, std::vector<Term> terms) : n_(nvars), terms_(std::move(terms)) {
  if (nvars < 1) throw InvalidArgument("polynomial needs at least one variable");
  for (const auto& t : terms_) {
    if (static_cast<int>(t.e.size()) != nvars) throw InvalidArgument("exponent vector has the wrong length");
    for (const int e : t.e)
      if (e < 0) throw InvalidArgument("exponents must be non-negative");
  }
}

int MultiPolynomial::max_partial_degree() const {
  int m = 0;
  for (const auto& t : terms_)
    for (const int e : t.e) m = std::max(m, e);
  return m;
}

int MultiPolynomial::total_degree() const {
  int m = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (const int e : t.e) s += e;
    m = std::max(m, s);
  }
  return m;
}

cplx MultiPolynomial::operator()(const Point& b) const {
  if (static_cast<int>(b.size()) != n_) throw InvalidArgument("point has the wrong dimension");
  cplx acc = 0.0;
  for (const auto& t : terms_) {
    cplx m = t.c;
    for (int v = 0; v < n_; ++v)
      for (int k = 0; k < t.e[static_cast<std::size_t>(v)]; ++k) m *= b[static_cast<std::size_t>(v)];
    acc += m;
  }
  return acc;
}

MultiPolynomial MultiPolynomial::derivative(int var) const {
  if (var < 0 || var >= n_) throw InvalidArgument("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const int e = t.e[static_cast<std::size_t>(var)];
    if (e == 0) continue;
    Term d{t.c * static_cast<double>(e), t.e};
    d.e[static_cast<std::size_t>(var)] = e - 1;
    out.push_back(std::move(d));
  }
  return MultiPolynomial(n_, std::move(out));
}

CMatrix MultiPolynomial::hessian(const Point& b) const {
  CMatrix h(n_, n_);
  for (int i = 0; i < n_; ++i) {
    const MultiPolynomial di = derivative(i);
    for (int j = i; j < n_; ++j) {
      const cplx v = di.derivative(j)(b);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

PeriodSampler polynomial_hessian_sampler(const MultiPolynomial& f, double h) {
  PeriodSampler s;
  s.g = f.nvars();
  s.h = h;
  // Second derivatives are fixed; only evaluation happens per call.
  std::vector<MultiPolynomial> second;
  for (int i = 0; i < f.nvars(); ++i)
    for (int j = 0; j < f.nvars(); ++j) second.push_back(f.derivative(i).derivative(j));
  const int g = f.nvars();
  s.eval = [second = std::move(second), g](const Point& b) {
    CMatrix p(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = i; j < g; ++j) {
        const cplx v = second[static_cast<std::size_t>(i * g + j)](b);
        p(i, j) = v;
        p(j, i) = v;
      }
    return p;
  };
  return s;
}

}  // namespace acihs::cubic
