#include "acihs/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "acihs/errors.hpp"

namespace acihs::io {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

json to_json(const ComplexPolynomial& p) {
  json out = json::array();
  for (const cplx c : p.coefficients()) out.push_back(to_json(c));
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const polymat::PolyMatrix& a) {
  json out = json::array();
  for (int i = 0; i < a.rank(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.rank(); ++j) row.push_back(to_json(a.at(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const polymat::CharPoly& b) {
  json coeffs = json::array();
  for (const auto& p : b.b) coeffs.push_back(to_json(p));
  return {{"r", b.r}, {"d", b.d}, {"b", coeffs}};
}

json to_json(const mumford::MumfordTriple& m) {
  return {{"U", to_json(m.U)}, {"V", to_json(m.V)}, {"W", to_json(m.W)}};
}

json to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx z : v) out.push_back(to_json(z));
  return out;
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("expected a number or [re, im], got " + j.dump());
}

ComplexPolynomial poly_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("polynomial must be an array of coefficients, got " + j.dump());
  std::vector<cplx> c;
  for (const auto& v : j) c.push_back(complex_from_json(v));
  return ComplexPolynomial(std::move(c));
}

CMatrix cmatrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ConfigError("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

polymat::PolyMatrix polymatrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("polynomial matrix must be a non-empty array of rows");
  const int r = static_cast<int>(j.size());
  std::vector<ComplexPolynomial> entries;
  int d = 0;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != r) throw ConfigError("polynomial matrix must be square");
    for (const auto& e : row) {
      entries.push_back(poly_from_json(e));
      d = std::max(d, static_cast<int>(entries.back().size()) - 1);
    }
  }
  polymat::PolyMatrix a(r, d);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) a.set(i, k, entries[static_cast<std::size_t>(i * r + k)]);
  return a;
}

polymat::CharPoly charpoly_from_json(const json& j) {
  polymat::CharPoly b;
  const json* coeffs = &j;
  if (j.is_object()) {
    if (!j.contains("b")) throw ConfigError("char poly object needs a \"b\" array");
    coeffs = &j.at("b");
  }
  if (!coeffs->is_array() || coeffs->empty()) throw ConfigError("char poly needs b_1 ... b_r");
  for (const auto& p : *coeffs) b.b.push_back(poly_from_json(p));
  b.r = static_cast<int>(b.b.size());
  int d = 0;
  for (int i = 1; i <= b.r; ++i) {
    const int deg = b.b[static_cast<std::size_t>(i - 1)].degree();
    d = std::max(d, (deg + i - 1) / i);
  }
  b.d = d;
  if (j.is_object() && j.contains("d")) {
    if (!j.at("d").is_number_integer()) throw ConfigError("\"d\" must be an integer");
    b.d = j.at("d").get<int>();
  }
  if (j.is_object() && j.contains("r") && j.at("r") != b.r) throw ConfigError("\"r\" does not match the number of b_i");
  if (!b.degrees_ok()) throw ConfigError("deg b_i exceeds i*d");
  return b;
}

cubic::MultiPolynomial multipoly_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("multivariate polynomial must be a non-empty array of terms");
  std::vector<cubic::MultiPolynomial::Term> terms;
  int n = -1;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("c") || !t.contains("e") || !t.at("e").is_array())
      throw ConfigError("term must look like {\"c\": ..., \"e\": [...]}");
    cubic::MultiPolynomial::Term term{complex_from_json(t.at("c")), {}};
    for (const auto& e : t.at("e")) {
      if (!e.is_number_integer() || e.get<int>() < 0) throw ConfigError("exponents must be non-negative integers");
      term.e.push_back(e.get<int>());
    }
    if (n >= 0 && static_cast<int>(term.e.size()) != n) throw ConfigError("terms have different numbers of variables");
    n = static_cast<int>(term.e.size());
    terms.push_back(std::move(term));
  }
  if (n < 1) throw ConfigError("polynomial needs at least one variable");
  return cubic::MultiPolynomial(n, std::move(terms));
}

std::vector<mumford::DivisorPoint> divisor_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("divisor must be an array of [t, s] pairs");
  std::vector<mumford::DivisorPoint> pts;
  for (const auto& p : j) {
    if (p.is_object() && p.contains("t") && p.contains("s")) {
      pts.push_back({complex_from_json(p.at("t")), complex_from_json(p.at("s"))});
    } else if (p.is_array() && p.size() == 2) {
      pts.push_back({complex_from_json(p[0]), complex_from_json(p[1])});
    } else {
      throw ConfigError("divisor point must be [t, s] or {\"t\": ..., \"s\": ...}");
    }
  }
  return pts;
}

json load(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\n");
  std::string text;
  if (first != std::string::npos && (text_or_path[first] == '[' || text_or_path[first] == '{')) {
    text = text_or_path;
  } else {
    std::ifstream in(text_or_path);
    if (!in) throw ConfigError("cannot read " + text_or_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

}  // namespace acihs::io
