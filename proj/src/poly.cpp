#include "acihs/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "acihs/errors.hpp"

namespace acihs {

ComplexPolynomial::ComplexPolynomial(std::vector<cplx> coefficients) : c_(std::move(coefficients)) {
  drop_exact_zeros();
}

ComplexPolynomial::ComplexPolynomial(std::initializer_list<cplx> coefficients) : c_(coefficients) {
  drop_exact_zeros();
}

ComplexPolynomial ComplexPolynomial::constant(cplx c) { return ComplexPolynomial({c}); }

ComplexPolynomial ComplexPolynomial::monomial(int k, cplx c) {
  if (k < 0) throw InvalidArgument("monomial degree must be non-negative");
  std::vector<cplx> v(static_cast<std::size_t>(k) + 1, 0.0);
  v.back() = c;
  return ComplexPolynomial(std::move(v));
}

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const cplx> roots) {
  std::vector<cplx> v{1.0};
  for (const cplx r : roots) {
    std::vector<cplx> next(v.size() + 1, 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      next[k + 1] += v[k];
      next[k] -= r * v[k];
    }
    v = std::move(next);
  }
  return ComplexPolynomial(std::move(v));
}

void ComplexPolynomial::drop_exact_zeros() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

cplx ComplexPolynomial::coeff(int k) const noexcept {
  if (k < 0 || static_cast<std::size_t>(k) >= c_.size()) return 0.0;
  return c_[static_cast<std::size_t>(k)];
}

void ComplexPolynomial::set_coeff(int k, cplx value) {
  if (k < 0) throw InvalidArgument("negative coefficient index");
  if (static_cast<std::size_t>(k) >= c_.size()) c_.resize(static_cast<std::size_t>(k) + 1, 0.0);
  c_[static_cast<std::size_t>(k)] = value;
  drop_exact_zeros();
}

double ComplexPolynomial::norm() const noexcept {
  double m = 0.0;
  for (const cplx c : c_) m = std::max(m, std::abs(c));
  return m;
}

int ComplexPolynomial::degree(double rel_floor) const noexcept {
  const double floor = rel_floor * norm();
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    const double mag = std::abs(c_[static_cast<std::size_t>(k)]);
    if (mag > floor && mag > 0.0) return k;
  }
  return kZeroDegree;
}

cplx ComplexPolynomial::leading(double rel_floor) const noexcept {
  const int d = degree(rel_floor);
  return d == kZeroDegree ? cplx(0.0) : c_[static_cast<std::size_t>(d)];
}

ComplexPolynomial ComplexPolynomial::trimmed(double rel_floor) const {
  const int d = degree(rel_floor);
  return ComplexPolynomial(std::vector<cplx>(c_.begin(), c_.begin() + (d + 1)));
}

cplx ComplexPolynomial::operator()(cplx t) const noexcept {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial ComplexPolynomial::taylor_shift(cplx x0) const {
  // Horner in the ring C[z]: q <- q*(z + x0) + a_k.
  std::vector<cplx> q;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    std::vector<cplx> next(q.size() + 1, 0.0);
    for (std::size_t k = 0; k < q.size(); ++k) {
      next[k + 1] += q[k];
      next[k] += x0 * q[k];
    }
    next[0] += *it;
    q = std::move(next);
  }
  return ComplexPolynomial(std::move(q));
}

ComplexPolynomial ComplexPolynomial::operator-() const {
  ComplexPolynomial r = *this;
  for (cplx& c : r.c_) c = -c;
  return r;
}

ComplexPolynomial& ComplexPolynomial::operator+=(const ComplexPolynomial& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
  drop_exact_zeros();
  return *this;
}

ComplexPolynomial& ComplexPolynomial::operator-=(const ComplexPolynomial& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
  drop_exact_zeros();
  return *this;
}

ComplexPolynomial& ComplexPolynomial::operator*=(const ComplexPolynomial& rhs) {
  if (c_.empty() || rhs.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<cplx> out(c_.size() + rhs.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
  c_ = std::move(out);
  drop_exact_zeros();
  return *this;
}

ComplexPolynomial& ComplexPolynomial::operator*=(cplx s) {
  for (cplx& c : c_) c *= s;
  drop_exact_zeros();
  return *this;
}

double distance(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  return (a - b).norm();
}

DivisionResult divide(const ComplexPolynomial& num, const ComplexPolynomial& den, double rel_floor) {
  const int dd = den.degree(rel_floor);
  if (dd == kZeroDegree) throw DivisionByZeroPolynomial("denominator is the zero polynomial");
  const cplx lead = den.coeff(dd);
  std::vector<cplx> rem = num.coefficients();
  const int dn = static_cast<int>(rem.size()) - 1;
  if (dn < dd) return {ComplexPolynomial{}, num, num.norm()};

  std::vector<cplx> q(static_cast<std::size_t>(dn - dd + 1), 0.0);
  for (int k = dn - dd; k >= 0; --k) {
    const cplx coef = rem[static_cast<std::size_t>(k + dd)] / lead;
    q[static_cast<std::size_t>(k)] = coef;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= coef * den.coeff(j);
    rem[static_cast<std::size_t>(k + dd)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(dd));
  ComplexPolynomial remainder(std::move(rem));
  const double residual = remainder.norm();
  return {ComplexPolynomial(std::move(q)), std::move(remainder), residual};
}

DivisionResult exact_divide(const ComplexPolynomial& num, const ComplexPolynomial& den, double rel_floor) {
  return divide(num, den, rel_floor);
}

namespace {

void check_nodes(std::span<const cplx> nodes, std::size_t n_values, double node_tol) {
  if (nodes.empty()) throw InvalidArgument("interpolation needs at least one node");
  if (nodes.size() != n_values) throw InvalidArgument("nodes and values differ in length");
  double scale = 1.0;
  for (const cplx a : nodes) scale = std::max(scale, std::abs(a));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (std::abs(nodes[i] - nodes[j]) <= node_tol * scale)
        throw DuplicateNodes("nodes " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

// prod_{j != skip} (t - nodes[j]); skip == npos gives the full product.
ComplexPolynomial node_product(std::span<const cplx> nodes, std::size_t skip) {
  std::vector<cplx> v{1.0};
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j == skip) continue;
    std::vector<cplx> next(v.size() + 1, 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      next[k + 1] += v[k];
      next[k] -= nodes[j] * v[k];
    }
    v = std::move(next);
  }
  return ComplexPolynomial(std::move(v));
}

}  // namespace

ComplexPolynomial lagrange_interpolate(std::span<const cplx> nodes, std::span<const cplx> values,
                                       double node_tol) {
  check_nodes(nodes, values.size(), node_tol);
  ComplexPolynomial out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    cplx denom = 1.0;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != i) denom *= nodes[i] - nodes[j];
    out += node_product(nodes, i) * (values[i] / denom);
  }
  return out;
}

ComplexPolynomial lagrange_interpolate_with_infinity(std::span<const cplx> nodes,
                                                     std::span<const cplx> values, cplx leading,
                                                     double node_tol) {
  ComplexPolynomial out = lagrange_interpolate(nodes, values, node_tol);
  out += node_product(nodes, static_cast<std::size_t>(-1)) * leading;
  return out;
}

int gcd_degree(const ComplexPolynomial& f, const ComplexPolynomial& g, double rel_cutoff) {
  auto normalized = [](const ComplexPolynomial& p) {
    const double n = p.norm();
    return n > 0.0 ? p * cplx(1.0 / n) : p;
  };
  // Zero out coefficients that are noise relative to a unit-norm dividend.
  auto clean = [rel_cutoff](const ComplexPolynomial& p) {
    std::vector<cplx> c = p.coefficients();
    while (!c.empty() && std::abs(c.back()) <= rel_cutoff) c.pop_back();
    return ComplexPolynomial(std::move(c));
  };

  ComplexPolynomial a = normalized(f.trimmed());
  ComplexPolynomial b = normalized(g.trimmed());
  if (a.is_zero()) return b.degree();
  if (b.is_zero()) return a.degree();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (true) {
    if (b.degree() == 0) return 0;
    ComplexPolynomial r = clean(divide(a, b).remainder);
    if (r.norm() <= rel_cutoff) return b.degree();
    a = b;
    b = normalized(r);
  }
}

bool squarefree(const ComplexPolynomial& f, double rel_cutoff) {
  if (f.degree() < 1) throw InvalidArgument("squarefree needs a non-constant polynomial");
  return gcd_degree(f, f.derivative(), rel_cutoff) == 0;
}

namespace {

// Parlett-Reinsch balancing with power-of-two scaling factors.
void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

double eval_scale(const ComplexPolynomial& f, cplx z) {
  double acc = 0.0;
  const double az = std::abs(z);
  const auto& c = f.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * az + std::abs(*it);
  return acc;
}

}  // namespace

std::vector<cplx> roots(const ComplexPolynomial& f_in, double tol) {
  const ComplexPolynomial f = f_in.trimmed();
  const int n = f.degree();
  if (n < 1) throw InvalidArgument("roots needs a polynomial of degree >= 1");
  const cplx lead = f.coeff(n);

  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(-f.coeff(0) / lead);
  } else {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -f.coeff(i) / lead;
    balance(comp);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw IllConditioned("companion eigensolver did not converge");
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  }

  const ComplexPolynomial df = f.derivative();
  for (cplx& z : out) {
    double res = std::abs(f(z));
    for (int step = 0; step < 2; ++step) {
      const cplx d = df(z);
      if (d == cplx(0.0)) break;
      const cplx cand = z - f(z) / d;
      const double cand_res = std::abs(f(cand));
      if (!(cand_res < res)) break;
      z = cand;
      res = cand_res;
    }
    if (!(res <= tol * eval_scale(f, z)))
      throw IllConditioned("root polishing failed near (" + std::to_string(z.real()) + ", " +
                           std::to_string(z.imag()) + ")");
  }
  return out;
}

void sort_lex(std::vector<cplx>& values) {
  std::sort(values.begin(), values.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

double multiset_distance(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t i = 0; i < n && worst < best; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> used(n, false);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && std::abs(a[i] - b[j]) < best) {
        best = std::abs(a[i] - b[j]);
        arg = j;
      }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace acihs
