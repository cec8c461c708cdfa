#include "acihs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "acihs/acceptance.hpp"
#include "acihs/batch.hpp"
#include "acihs/confocal.hpp"
#include "acihs/cubic.hpp"
#include "acihs/errors.hpp"
#include "acihs/json_io.hpp"
#include "acihs/mumford.hpp"
#include "acihs/normal_form.hpp"
#include "acihs/polymat.hpp"
#include "acihs/residue.hpp"
#include "acihs/rng.hpp"
#include "acihs/sampling.hpp"
#include "acihs/spectral.hpp"

namespace acihs::cli {

namespace {

using nlohmann::json;

struct Config {
  std::string command;
  std::uint64_t seed = 20260215;
  std::optional<double> dt, tol, h;
  std::optional<int> steps, every, trials;
  std::string report = "json";
  std::string out;
  int parallel = 1;

  std::string axes, x0, v0, x, y, f, points, in, divisor, ham = "i=2,j=1", prepotential, b0;
  std::string mode = "finite";
  int r = 2, d = 3, genus = 2, base_genus = 0, j = 1, criterion = 0;
  double scale = 0.15, leaf_tol = 1e-8;
  bool project = false, imaginary = false, theta = false;
};

// One writer for every record; trials running in parallel share it.
class Writer {
 public:
  Writer(std::ostream& os, bool csv) : os_(os), csv_(csv) {}

  void record(const json& j) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!csv_) {
      os_ << j.dump() << '\n';
      return;
    }
    if (header_.empty()) {
      for (const auto& [k, v] : j.items()) header_.push_back(k);
      for (std::size_t i = 0; i < header_.size(); ++i) os_ << (i ? "," : "") << header_[i];
      os_ << '\n';
    }
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) os_ << ',';
      if (j.contains(header_[i])) os_ << cell(j.at(header_[i]));
    }
    os_ << '\n';
  }

  void summary(const json& s, double wall) {
    std::lock_guard<std::mutex> lock(mu_);
    if (csv_)
      os_ << "summary," << cell(json(s.dump())) << ',' << wall << '\n';
    else
      os_ << json{{"summary", s}, {"wall_time_s", wall}}.dump() << '\n';
    os_.flush();
  }

 private:
  static std::string cell(const json& v) {
    if (v.is_number() || v.is_boolean() || v.is_null()) return v.dump();
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    std::string q = "\"";
    for (const char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }

  std::ostream& os_;
  bool csv_;
  std::mutex mu_;
  std::vector<std::string> header_;
};

struct Outcome {
  json summary;
  bool pass = true;
};
using Job = std::function<Outcome(Writer&)>;

// ---------------------------------------------------------------------------
// Validation helpers. Everything here throws ConfigError.

const std::string& require(const std::string& v, const char* flag) {
  if (v.empty()) throw ConfigError(std::string(flag) + " is required");
  return v;
}

double positive(double v, const char* flag) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(flag) + " must be positive");
  return v;
}

int count(int v, const char* flag) {
  if (v < 1) throw ConfigError(std::string(flag) + " must be at least 1");
  return v;
}

struct Tol {
  double value;
  std::string source;
};

// --tol beats ACIHS_TOL_OVERRIDE beats the command's default.
Tol resolve_tol(const Config& c, double fallback) {
  if (c.tol) return {positive(*c.tol, "--tol"), "flag"};
  if (const char* env = std::getenv("ACIHS_TOL_OVERRIDE"); env && *env) {
    const auto v = io::parse_list(env);
    if (v.size() != 1 || !(v[0] > 0.0)) throw ConfigError("ACIHS_TOL_OVERRIDE must be one positive number");
    return {v[0], "ACIHS_TOL_OVERRIDE"};
  }
  return {fallback, "default"};
}

bool looks_like_json(const std::string& s) {
  const auto p = s.find_first_not_of(" \t");
  return p != std::string::npos && (s[p] == '[' || s[p] == '{');
}

// "0.3", "0.3,-1" or "[0.3, -1]".
cplx parse_complex(const std::string& s, const char* flag) {
  if (looks_like_json(s)) return io::complex_from_json(io::load(s));
  const auto v = io::parse_list(s);
  if (v.size() > 2) throw ConfigError(std::string(flag) + " takes re or re,im");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

// "0,1,2" (real) or a JSON array of numbers / [re, im] pairs.
std::vector<cplx> parse_points(const std::string& s) {
  if (looks_like_json(s)) {
    const json j = io::load(s);
    if (!j.is_array()) throw ConfigError("expected an array of points");
    std::vector<cplx> out;
    for (const auto& e : j) out.push_back(io::complex_from_json(e));
    return out;
  }
  std::vector<cplx> out;
  for (const double v : io::parse_list(s)) out.push_back(v);
  return out;
}

std::vector<double> sorted_real(const std::vector<cplx>& v) {
  std::vector<double> out;
  for (const cplx z : v) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

json header(const Config& c, const Tol& tol) {
  return {{"command", c.command}, {"seed", c.seed}, {"tol", tol.value}, {"tol_source", tol.source}};
}

json matrices(const std::vector<CMatrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(io::to_json(m));
  return out;
}

void sort_divisor(std::vector<mumford::DivisorPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.t.real() < b.t.real() || (a.t.real() == b.t.real() && a.t.imag() < b.t.imag());
  });
}

// ---------------------------------------------------------------------------

Job geodesic(const Config& c) {
  const confocal::ConfocalFamily fam(io::parse_list(require(c.axes, "--axes")));
  const double dt = positive(c.dt.value_or(1e-3), "--dt");
  const int steps = count(c.steps.value_or(10000), "--steps");
  const int every = count(c.every.value_or(100), "--every");
  const int trials = count(c.trials.value_or(1), "--trials");
  std::optional<confocal::GeodesicState> given;
  if (!c.x0.empty() || !c.v0.empty()) {
    if (c.x0.empty() || c.v0.empty()) throw ConfigError("--x0 and --v0 go together");
    if (trials != 1) throw ConfigError("--trials needs random starts; drop --x0/--v0");
    confocal::GeodesicState s{io::parse_list(c.x0), io::parse_list(c.v0)};
    if (s.x.size() != fam.dim() || s.v.size() != fam.dim())
      throw ConfigError("--x0 and --v0 need one entry per axis");
    if (c.project) {
      double q = 0.0, nn = 0.0, nv = 0.0;
      for (std::size_t k = 0; k < fam.dim(); ++k) q += s.x[k] * s.x[k] / fam.axis(k);
      if (!(q > 0.0)) throw ConfigError("--x0 must be nonzero");
      for (auto& v : s.x) v /= std::sqrt(q);
      for (std::size_t k = 0; k < fam.dim(); ++k) {
        nn += s.x[k] * s.x[k] / (fam.axis(k) * fam.axis(k));
        nv += s.x[k] / fam.axis(k) * s.v[k];
      }
      for (std::size_t k = 0; k < fam.dim(); ++k) s.v[k] -= nv / nn * s.x[k] / fam.axis(k);
    }
    given = std::move(s);
  }
  const Tol tol = resolve_tol(c, 1e-6);
  return [=](Writer& w) {
    struct Run {
      double chasles = 0.0, ellipsoid = 0.0;
    };
    const auto runs = batch::run(static_cast<std::size_t>(trials), [&](std::size_t k) {
      Rng rng(c.seed, k);
      const auto s0 = given ? *given : sampling::ellipsoid_state(rng, fam);
      const auto traj = confocal::geodesic_flow(s0.x, s0.v, fam, dt, steps, 1e-3, every);
      const auto l0 = sorted_real(confocal::tangency_values(confocal::tangent_line(s0), fam));
      double scale = 0.0;
      for (const double l : l0) scale = std::max(scale, std::abs(l));
      Run out;
      out.ellipsoid = traj.max_drift;
      for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const auto line = confocal::tangent_line(traj.states[i]);
        const auto l = sorted_real(confocal::tangency_values(line, fam));
        double drift = 0.0;
        for (std::size_t q = 0; q < l.size(); ++q) drift = std::max(drift, std::abs(l[q] - l0[q]) / scale);
        out.chasles = std::max(out.chasles, drift);
        w.record({{"trial", k},
                  {"step", traj.steps[i]},
                  {"x", line.x},
                  {"y", line.y},
                  {"F", confocal::uhlenbeck_integrals(line, fam)},
                  {"lambda", l},
                  {"drift", drift},
                  {"ellipsoid_drift", traj.drifts[i]}});
      }
      return out;
    }, c.parallel);
    double chasles = 0.0, ell = 0.0;
    for (const auto& r : runs) {
      chasles = std::max(chasles, r.chasles);
      ell = std::max(ell, r.ellipsoid);
    }
    Outcome o{header(c, tol)};
    o.summary.update({{"trials", trials}, {"dt", dt}, {"steps", steps}, {"chasles_drift", chasles},
                      {"chasles_threshold", tol.value}, {"max_ellipsoid_drift", ell}});
    o.pass = chasles < tol.value;
    return o;
  };
}

Job neumann(const Config& c) {
  const confocal::ConfocalFamily fam(io::parse_list(require(c.axes, "--axes")));
  const double dt = positive(c.dt.value_or(1e-3), "--dt");
  const double h = positive(c.h.value_or(1e-5), "--h");
  const int steps = count(c.steps.value_or(1000), "--steps");
  const int every = count(c.every.value_or(10), "--every");
  const int trials = count(c.trials.value_or(1), "--trials");
  std::optional<std::pair<std::vector<double>, std::vector<double>>> given;
  if (!c.x.empty() || !c.y.empty()) {
    if (c.x.empty() || c.y.empty()) throw ConfigError("--x and --y go together");
    if (trials != 1) throw ConfigError("--trials needs random starts; drop --x/--y");
    given.emplace(io::parse_list(c.x), io::parse_list(c.y));
    if (given->first.size() != fam.dim() || given->second.size() != fam.dim())
      throw ConfigError("--x and --y need one entry per axis");
  }
  const Tol tol = resolve_tol(c, 1e-6);
  const double sum_tol = 1e-12, bracket_tol = 1e-7, commutation_dt = 5e-3;
  return [=](Writer& w) {
    struct Run {
      double drift = 0.0, sum = 0.0, bracket = 0.0, constraint = 0.0;
      std::optional<double> ratio;
    };
    const auto runs = batch::run(static_cast<std::size_t>(trials), [&](std::size_t k) {
      Rng rng(c.seed, k);
      confocal::PhasePoint p0;
      if (!given)
        p0 = sampling::phase_point(rng, fam.dim());
      else if (c.project)
        p0 = confocal::project_to_sphere_bundle(given->first, given->second);
      else
        p0 = confocal::make_constrained(given->first, given->second);
      confocal::FlowOptions fo;
      fo.dt = dt;
      fo.steps = steps;
      fo.record_every = every;
      const auto traj = confocal::dirac_flow(confocal::neumann(fam), p0, fo);
      const auto f0 = confocal::uhlenbeck_integrals(p0, fam);
      double scale = 1.0;
      for (const double v : f0) scale = std::max(scale, std::abs(v));
      Run out;
      out.constraint = traj.max_drift;
      for (std::size_t i = 0; i < traj.points.size(); ++i) {
        const auto& p = traj.points[i];
        const auto f = confocal::uhlenbeck_integrals(p, fam);
        double drift = 0.0, sum = 0.0;
        for (std::size_t q = 0; q < f.size(); ++q) {
          drift = std::max(drift, std::abs(f[q] - f0[q]) / scale);
          sum += f[q];
        }
        out.drift = std::max(out.drift, drift);
        out.sum = std::max(out.sum, std::abs(sum - 1.0));
        w.record({{"trial", k},
                  {"step", traj.steps[i]},
                  {"x", p.x},
                  {"y", p.y},
                  {"F", f},
                  {"lambda", sorted_real(confocal::tangency_values(p, fam))},
                  {"drift", drift},
                  {"constraint_drift", traj.drifts[i]}});
      }
      std::vector<confocal::PhaseGradient> grads;
      for (std::size_t q = 0; q < fam.dim(); ++q) {
        const auto fq = [q, fam](const confocal::PhasePoint& pt) { return confocal::uhlenbeck_integrals(pt, fam)[q]; };
        grads.push_back(confocal::fd_gradient(fq, p0, h));
      }
      for (std::size_t a = 0; a < grads.size(); ++a)
        for (std::size_t b = a + 1; b < grads.size(); ++b)
          out.bracket = std::max(out.bracket, std::abs(confocal::dirac_bracket(grads[a], grads[b], p0)));
      // With two axes F1 + F2 = 1 and the flows commute exactly.
      if (fam.dim() >= 3) {
        const auto h1 = confocal::uhlenbeck_hamiltonian(0, fam);
        const auto h2 = confocal::uhlenbeck_hamiltonian(1, fam);
        out.ratio = confocal::flow_commutation_defect(h1, h2, p0, commutation_dt) /
                    confocal::flow_commutation_defect(h1, h2, p0, commutation_dt / 2);
      }
      return out;
    }, c.parallel);
    double drift = 0.0, sum = 0.0, bracket = 0.0, constraint = 0.0;
    double rlo = 1e300, rhi = -1e300;
    for (const auto& r : runs) {
      drift = std::max(drift, r.drift);
      sum = std::max(sum, r.sum);
      bracket = std::max(bracket, r.bracket);
      constraint = std::max(constraint, r.constraint);
      if (r.ratio) {
        rlo = std::min(rlo, *r.ratio);
        rhi = std::max(rhi, *r.ratio);
      }
    }
    Outcome o{header(c, tol)};
    o.summary.update({{"trials", trials},
                      {"dt", dt},
                      {"steps", steps},
                      {"integral_drift", drift},
                      {"integral_threshold", tol.value},
                      {"sum_identity_error", sum},
                      {"sum_identity_threshold", sum_tol},
                      {"max_bracket", bracket},
                      {"bracket_threshold", bracket_tol},
                      {"bracket_h", h},
                      {"max_constraint_drift", constraint}});
    o.pass = drift < tol.value && sum < sum_tol && bracket < bracket_tol;
    if (fam.dim() >= 3) {
      o.summary.update({{"commutation_dt", commutation_dt},
                        {"commutation_ratio_min", rlo},
                        {"commutation_ratio_max", rhi},
                        {"commutation_ratio_range", {6.0, 10.0}}});
      o.pass = o.pass && rlo >= 6.0 && rhi <= 10.0;
    }
    return o;
  };
}

// ---------------------------------------------------------------------------

Job mumford_from_divisor(const Config& c) {
  const auto f = io::poly_from_json(io::load(require(c.f, "--f")));
  auto pts = io::divisor_from_json(io::load(require(c.points, "--points")));
  const Tol tol = resolve_tol(c, 1e-10);
  return [=](Writer& w) mutable {
    const auto model = mumford::HyperellipticModel::from_polynomial(f);
    double division = 0.0;
    const auto triple = mumford::triple_from_divisor(pts, model, 1e-9, &division);
    const double residual = mumford::verify_pell(triple, model);
    sort_divisor(pts);
    const double round_trip = mumford::divisor_distance(pts, mumford::divisor_from_triple(triple));
    json rec = io::to_json(triple);
    rec.update({{"f", io::to_json(model.f())}, {"residual", residual}});
    w.record(rec);
    Outcome o{header(c, tol)};
    o.summary.update({{"genus", model.genus()},
                      {"pell_residual", residual},
                      {"pell_threshold", tol.value},
                      {"division_residual", division},
                      {"round_trip", round_trip},
                      {"round_trip_threshold", 1e-9}});
    o.pass = residual < tol.value && round_trip < 1e-9;
    return o;
  };
}

Job mumford_from_phase(const Config& c) {
  const confocal::ConfocalFamily fam(io::parse_list(require(c.axes, "--axes")));
  const auto x = io::parse_list(require(c.x, "--x"));
  const auto y = io::parse_list(require(c.y, "--y"));
  if (x.size() != fam.dim() || y.size() != fam.dim()) throw ConfigError("--x and --y need one entry per axis");
  if (fam.dim() > 16) throw ConfigError("at most 16 axes");
  const Tol tol = resolve_tol(c, 1e-10);
  return [=](Writer& w) {
    const auto p = c.project ? confocal::project_to_sphere_bundle(x, y) : confocal::make_constrained(x, y);
    const auto [triple, model] = mumford::triple_from_phase(p, fam);
    const double residual = mumford::verify_pell(triple, model);
    const auto lambda = confocal::tangency_values(p, fam);
    const double mismatch = multiset_distance(roots(model.f2()), lambda);
    const auto same = [](const ComplexPolynomial& a, const ComplexPolynomial& b) {
      return a.coefficients() == b.coefficients();
    };
    bool exact = true;
    for (unsigned mask = 1; mask < (1u << fam.dim()); ++mask) {
      confocal::PhasePoint q = p;
      for (std::size_t i = 0; i < fam.dim(); ++i)
        if (mask & (1u << i)) {
          q.x[i] = -q.x[i];
          q.y[i] = -q.y[i];
        }
      const auto [t2, m2] = mumford::triple_from_phase(q, fam);
      exact = exact && same(t2.U, triple.U) && same(t2.V, triple.V) && same(t2.W, triple.W);
    }
    json rec = io::to_json(triple);
    rec.update({{"f", io::to_json(model.f())},
                {"f1", io::to_json(model.f1())},
                {"f2", io::to_json(model.f2())},
                {"lambda", io::to_json(lambda)},
                {"residual", residual}});
    w.record(rec);
    Outcome o{header(c, tol)};
    o.summary.update({{"pell_residual", residual},
                      {"pell_threshold", tol.value},
                      {"root_mismatch", mismatch},
                      {"root_threshold", 1e-8},
                      {"sign_action_exact", exact}});
    o.pass = residual < tol.value && mismatch < 1e-8 && exact;
    return o;
  };
}

Job mumford_verify(const Config& c) {
  const int trials = count(c.trials.value_or(20), "--trials");
  if (c.genus < 1 || c.genus > 10) throw ConfigError("--genus must be in 1..10");
  const Tol tol = resolve_tol(c, 1e-10);
  return [=](Writer& w) {
    struct Run {
      double residual = 0.0, round_trip = 0.0;
    };
    const auto runs = batch::run(static_cast<std::size_t>(trials), [&](std::size_t k) {
      Rng rng(c.seed, k);
      const auto model = sampling::hyperelliptic(rng, c.genus);
      auto pts = sampling::divisor(rng, model);
      const auto triple = mumford::triple_from_divisor(pts, model);
      Run out;
      out.residual = mumford::verify_pell(triple, model);
      sort_divisor(pts);
      out.round_trip = mumford::divisor_distance(pts, mumford::divisor_from_triple(triple));
      w.record({{"trial", k}, {"genus", c.genus}, {"residual", out.residual}, {"round_trip", out.round_trip}});
      return out;
    }, c.parallel);
    double res = 0.0, rt = 0.0;
    for (const auto& r : runs) {
      res = std::max(res, r.residual);
      rt = std::max(rt, r.round_trip);
    }
    Outcome o{header(c, tol)};
    o.summary.update({{"trials", trials},
                      {"genus", c.genus},
                      {"max_relative_residual", res},
                      {"residual_threshold", tol.value},
                      {"max_round_trip", rt},
                      {"round_trip_threshold", 1e-9}});
    o.pass = res < tol.value && rt < 1e-9;
    return o;
  };
}

// ---------------------------------------------------------------------------

Job polymat_charpoly(const Config& c) {
  const auto a = io::polymatrix_from_json(io::load(require(c.in, "--in")));
  const Tol tol = resolve_tol(c, 1e-10);
  return [=](Writer& w) {
    const auto b = polymat::char_poly(a);
    // Roots in y against eigenvalues of A(x) at a few sample points.
    Rng rng(c.seed);
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
      const cplx x = rng.cnormal();
      const auto ev = eigenvalues(a.evaluate(x));
      double scale = 1.0;
      for (const cplx l : ev) scale = std::max(scale, std::abs(l));
      worst = std::max(worst, multiset_distance(roots(b.in_y(x)), ev) / scale);
    }
    w.record(io::to_json(b));
    Outcome o{header(c, tol)};
    o.summary.update({{"r", b.r}, {"d", b.d}, {"eigenvalue_mismatch", worst}, {"eigenvalue_threshold", tol.value}});
    o.pass = worst < tol.value;
    return o;
  };
}

Job polymat_smooth(const Config& c) {
  const auto b = io::charpoly_from_json(io::load(require(c.in, "--in")));
  const Tol tol = resolve_tol(c, 1e-6);
  return [=](Writer& w) {
    const auto rep = polymat::spectral_smooth_affine(b, tol.value);
    json witness = nullptr;
    if (rep.witness) witness = {{"x", io::to_json(rep.witness->x)}, {"y", io::to_json(rep.witness->y)}};
    w.record({{"smooth", rep.smooth}, {"witness", witness}, {"discriminant", io::to_json(rep.discriminant)}});
    Outcome o{header(c, tol)};
    o.summary.update({{"r", b.r}, {"d", b.d}, {"smooth", rep.smooth}});
    if (rep.smooth) o.summary["genus"] = polymat::spectral_genus(b.r, b.d, 0);
    return o;
  };
}

Job polymat_genus(const Config& c) {
  std::optional<polymat::CharPoly> b;
  if (!c.in.empty()) b = io::charpoly_from_json(io::load(c.in));
  const int r = b ? b->r : c.r;
  const int d = b ? b->d : c.d;
  if (r < 1 || d < 0 || c.base_genus < 0) throw ConfigError("need r >= 1, d >= 0, g >= 0");
  if (b && c.base_genus != 0) throw ConfigError("--in counts branch points over the line; use --g 0");
  const Tol tol = resolve_tol(c, 1e-6);
  return [=](Writer& w) {
    const int genus = polymat::spectral_genus(r, d, c.base_genus);
    json rec = {{"r", r}, {"d", d}, {"base_genus", c.base_genus}, {"genus", genus},
                {"direct_image", polymat::direct_image_splitting(r, d)}};
    Outcome o{header(c, tol)};
    if (b) {
      // Riemann-Hurwitz with simple branching over P^1.
      const int branch = static_cast<int>(roots(polymat::y_discriminant(*b, tol.value)).size());
      const int numeric = (branch - 2 * r) / 2 + 1;
      rec["branch_points"] = branch;
      rec["numeric_genus"] = numeric;
      o.summary["numeric_genus"] = numeric;
      o.pass = numeric == genus;
    }
    w.record(rec);
    o.summary.update({{"r", r}, {"d", d}, {"base_genus", c.base_genus}, {"genus", genus}});
    return o;
  };
}

Job polymat_embed(const Config& c) {
  const auto a = io::polymatrix_from_json(io::load(require(c.in, "--in")));
  const auto pts = parse_points(require(c.divisor, "--divisor"));
  if (c.mode != "finite" && c.mode != "infinity") throw ConfigError("--mode is finite or infinity");
  const auto mode = c.mode == "finite" ? polymat::EmbedMode::all_finite : polymat::EmbedMode::last_at_infinity;
  const Tol tol = resolve_tol(c, 1e-11);
  return [=](Writer& w) {
    const auto t = polymat::residue_embed(a, pts, mode);
    const auto back = polymat::residue_reconstruct(t);
    double scale = 1.0;
    for (const auto& m : t.matrices) scale = std::max(scale, max_abs(m));
    const CMatrix total = mode == polymat::EmbedMode::all_finite ? t.sum() : CMatrix(t.sum() + t.at_infinity);
    const double sum = max_abs(total) / scale;
    const double rt = polymat::distance(back, a);
    json rec = {{"mode", c.mode}, {"points", io::to_json(t.points)}, {"residues", matrices(t.matrices)}};
    if (mode == polymat::EmbedMode::last_at_infinity) {
      rec["leading"] = io::to_json(t.leading);
      rec["at_infinity"] = io::to_json(t.at_infinity);
    }
    w.record(rec);
    Outcome o{header(c, tol)};
    o.summary.update({{"round_trip", rt}, {"round_trip_threshold", tol.value}, {"residue_sum", sum},
                      {"sum_threshold", 1e-12}});
    o.pass = rt < tol.value && sum < 1e-12;
    return o;
  };
}

std::pair<int, int> parse_ham(const std::string& s) {
  int i = -1, j = -1;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("--ham looks like i=2,j=1");
    const std::string key = part.substr(0, eq);
    const auto v = io::parse_list(part.substr(eq + 1));
    if (v.size() != 1 || v[0] != std::floor(v[0])) throw ConfigError("--ham indices are integers");
    if (key == "i") i = static_cast<int>(v[0]);
    else if (key == "j") j = static_cast<int>(v[0]);
    else throw ConfigError("--ham keys are i and j");
  }
  if (i < 0 || j < 0) throw ConfigError("--ham needs both i and j");
  return {i, j};
}

Job polymat_flow(const Config& c) {
  std::optional<polymat::PolyMatrix> given;
  if (!c.in.empty()) given = io::polymatrix_from_json(io::load(c.in));
  const int r = given ? given->rank() : c.r;
  const int d = given ? given->degree_bound() : c.d;
  if (r < 1 || d < 0) throw ConfigError("need r >= 1 and d >= 0");
  std::vector<cplx> divisor;
  if (c.divisor.empty())
    for (int k = 0; k < d + 2; ++k) divisor.push_back(static_cast<double>(k));
  else
    divisor = parse_points(c.divisor);
  if (static_cast<int>(divisor.size()) != d + 2) throw ConfigError("--divisor needs d + 2 points");
  const auto [hi, hj] = parse_ham(c.ham);
  if (hi < 1 || hi > r || hj > hi * d) throw ConfigError("--ham needs 1 <= i <= r and 0 <= j <= i d");
  const double dt = positive(c.dt.value_or(1e-3), "--dt");
  const int steps = count(c.steps.value_or(1000), "--steps");
  const int every = count(c.every.value_or(100), "--every");
  const int trials = count(c.trials.value_or(1), "--trials");
  if (given && trials != 1) throw ConfigError("--trials needs random tuples; drop --in");
  positive(c.scale, "--scale");
  positive(c.leaf_tol, "--leaf-tol");
  const Tol tol = resolve_tol(c, 1e-6);
  return [=, hi = hi, hj = hj](Writer& w) {
    struct Run {
      double charpoly = 0.0, leaf = 0.0;
    };
    const auto h = polymat::spectral_functional(hi, hj);
    const auto runs = batch::run(static_cast<std::size_t>(trials), [&](std::size_t k) {
      Rng rng(c.seed, k);
      const auto t0 = given ? polymat::residue_embed(*given, divisor)
                            : sampling::sum_zero_tuple(rng, r, divisor, c.scale);
      polymat::KKFlowOptions fo;
      fo.dt = dt;
      fo.steps = steps;
      fo.record_every = every;
      const auto traj = polymat::kk_flow(h, t0, fo);
      for (std::size_t i = 0; i < traj.tuples.size(); ++i)
        w.record({{"trial", k},
                  {"step", traj.steps[i]},
                  {"charpoly_drift", traj.charpoly_drift[i]},
                  {"leaf_drift", traj.leaf_drift[i]},
                  {"residues", matrices(traj.tuples[i].matrices)}});
      return Run{traj.max_charpoly_drift, traj.max_leaf_drift};
    }, c.parallel);
    double cp = 0.0, leaf = 0.0;
    for (const auto& x : runs) {
      cp = std::max(cp, x.charpoly);
      leaf = std::max(leaf, x.leaf);
    }
    Outcome o{header(c, tol)};
    o.summary.update({{"r", r},
                      {"d", d},
                      {"hamiltonian", {{"i", hi}, {"j", hj}}},
                      {"trials", trials},
                      {"dt", dt},
                      {"steps", steps},
                      {"charpoly_drift", cp},
                      {"charpoly_threshold", tol.value},
                      {"leaf_drift", leaf},
                      {"leaf_threshold", c.leaf_tol}});
    o.pass = cp < tol.value && leaf < c.leaf_tol;
    return o;
  };
}

Job polymat_normal_form(const Config& c) {
  const auto a = io::polymatrix_from_json(io::load(require(c.in, "--in")));
  const Tol tol = resolve_tol(c, 1e-8);
  return [=](Writer& w) {
    const auto nf = polymat::normal_form(a);
    const auto again = polymat::normal_form(nf.a);
    const double orbit = polymat::distance(again.a, nf.a);
    const double beta = std::abs(nf.beta - polymat::char_poly(a).beta());
    const double cp = polymat::distance(polymat::char_poly(nf.a), polymat::char_poly(a));
    json rec = {{"a", io::to_json(nf.a)}, {"g", io::to_json(nf.g)}, {"beta", io::to_json(nf.beta)}};
    if (c.theta) rec["mumford"] = io::to_json(polymat::theta_complement_normalize(a));
    w.record(rec);
    Outcome o{header(c, tol)};
    o.summary.update({{"idempotence", orbit},
                      {"idempotence_threshold", tol.value},
                      {"beta_error", beta},
                      {"beta_threshold", 1e-10},
                      {"charpoly_change", cp},
                      {"charpoly_threshold", 1e-10}});
    o.pass = orbit < tol.value && beta < 1e-10 && cp < 1e-10;
    return o;
  };
}

Job polymat_phi(const Config& c) {
  const auto b = io::charpoly_from_json(io::load(require(c.in, "--in")));
  const cplx x0 = parse_complex(require(c.x0, "--x0"), "--x0");
  if (c.j < 1) throw ConfigError("--j must be at least 1");
  const Tol tol = resolve_tol(c, 1e-10);
  return [=](Writer& w) {
    const auto phi = polymat::branch_residue_hamiltonians(b, x0, c.j);
    cplx total = 0.0;
    for (const cplx v : phi) total += v;
    // The sheets of y sum to -b_1.
    const cplx expect = -b.coeff(1).taylor_shift(x0).coeff(c.j - 1);
    const double err = std::abs(total - expect) / std::max(1.0, std::abs(expect));
    w.record({{"x0", io::to_json(x0)}, {"j", c.j}, {"phi", io::to_json(phi)}, {"sum", io::to_json(total)}});
    Outcome o{header(c, tol)};
    o.summary.update({{"j", c.j}, {"sheets", phi.size()}, {"sheet_sum_error", err}, {"sheet_sum_threshold", tol.value}});
    o.pass = err < tol.value;
    return o;
  };
}

// ---------------------------------------------------------------------------

Job cubic_check(const Config& c) {
  std::string src = require(c.prepotential, "--prepotential");
  if (src.rfind("poly:", 0) == 0) src = src.substr(5);
  const auto f = io::multipoly_from_json(io::load(src));
  const auto b0 = parse_points(require(c.b0, "--b0"));
  if (static_cast<int>(b0.size()) != f.nvars()) throw ConfigError("--b0 needs one coordinate per variable");
  const double h = positive(c.h.value_or(1e-4), "--h");
  const Tol tol = resolve_tol(c, 1e-6);
  return [=](Writer& w) {
    const auto t = cubic::period_tensor(cubic::polynomial_hessian_sampler(f, h), b0, h, c.imaginary);
    const double defect = cubic::cubic_defect(t);
    const double scale = t.max_abs();
    const bool pass = defect <= tol.value * scale;
    w.record({{"defect", defect}, {"h", h}, {"pass", pass}, {"scale", scale}});
    Outcome o{header(c, tol)};
    o.summary.update({{"defect", defect}, {"scale", scale}, {"h", h}, {"relative_threshold", tol.value}});
    o.pass = pass;
    return o;
  };
}

Job cubic_siegel(const Config& c) {
  const CMatrix p = io::cmatrix_from_json(io::load(require(c.in, "--in")));
  if (p.rows() != p.cols()) throw ConfigError("period matrix must be square");
  const Tol tol = resolve_tol(c, 1e-10);
  return [=](Writer& w) {
    const bool ok = cubic::siegel_check(p, tol.value, tol.value);
    const double asym = max_abs(p - p.transpose());
    const Eigen::MatrixXd im = p.imag();
    const Eigen::MatrixXd ims = 0.5 * (im + im.transpose());
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ims).eigenvalues().minCoeff();
    w.record({{"asymmetry", asym}, {"min_imaginary_eigenvalue", min_eig}, {"siegel", ok}});
    Outcome o{header(c, tol)};
    o.summary.update({{"asymmetry", asym}, {"min_imaginary_eigenvalue", min_eig}, {"siegel", ok}});
    o.pass = ok;
    return o;
  };
}

Job selftest(const Config& c) {
  if (c.criterion < 0 || c.criterion > 11) throw ConfigError("--criterion is 1..11");
  return [=](Writer& w) {
    acceptance::Options opt;
    opt.seed = c.seed;
    opt.threads = c.parallel;
    Outcome o{{{"command", c.command}, {"seed", c.seed}}};
    json crit = json::object();
    int failed = 0;
    for (int id = 1; id <= 11; ++id) {
      if (c.criterion && id != c.criterion) continue;
      const auto r = acceptance::run(id, opt);
      w.record({{"id", r.id},
                {"name", r.name},
                {"pass", r.pass},
                {"seconds", r.seconds},
                {"time_limit", r.time_limit},
                {"metrics", r.metrics},
                {"error", r.error}});
      crit[r.name] = {{"pass", r.pass}, {"metrics", r.metrics}};
      if (!r.error.empty()) crit[r.name]["error"] = r.error;
      if (!r.pass) ++failed;
    }
    o.summary.update({{"criteria", crit}, {"failed", failed}});
    o.pass = failed == 0;
    return o;
  };
}

// ---------------------------------------------------------------------------

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Config c;
  std::function<Job(const Config&)> build;

  CLI::App app{"Spectral curves and integrable systems: experiments with drift and invariant reports."};
  app.name(args.empty() ? "acihs" : args.front());
  app.set_help_flag("--help", "print help");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", c.seed, "64-bit seed; trial k uses substream k");
  app.add_option("--dt", c.dt, "time step");
  app.add_option("--steps", c.steps, "number of steps");
  app.add_option("--tol", c.tol, "pass/fail tolerance of the command's main check");
  app.add_option("--h", c.h, "finite-difference step");
  app.add_option("--report", c.report, "record format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out, "write records here instead of stdout");
  app.add_option("--parallel", c.parallel, "threads for independent trials")->check(CLI::PositiveNumber);
  app.add_option("--trials", c.trials, "independent random trials");
  app.add_option("--every", c.every, "record every k-th step");

  const auto bind = [&](CLI::App* sub, std::string name, Job (*fn)(const Config&)) {
    sub->callback([&c, &build, name, fn] {
      c.command = name;
      build = fn;
    });
  };

  auto* geo = app.add_subcommand("geodesic", "geodesic on an ellipsoid; Chasles drift");
  geo->add_option("--axes", c.axes, "a_1 < ... < a_m")->required();
  geo->add_option("--x0", c.x0, "start point on the ellipsoid");
  geo->add_option("--v0", c.v0, "tangent start velocity");
  geo->add_flag("--project", c.project, "move --x0/--v0 onto the ellipsoid first");
  bind(geo, "geodesic", geodesic);

  auto* neu = app.add_subcommand("neumann", "Neumann flow on TS; integrals, brackets, commutation");
  neu->add_option("--axes", c.axes, "a_1 < ... < a_m")->required();
  neu->add_option("--x", c.x, "point on the sphere");
  neu->add_option("--y", c.y, "cotangent vector, orthogonal to x");
  neu->add_flag("--project", c.project, "project (x, y) onto TS first");
  bind(neu, "neumann", neumann);

  auto* mum = app.add_subcommand("mumford", "Mumford triples on hyperelliptic Jacobians");
  mum->require_subcommand(1);
  auto* fd = mum->add_subcommand("from-divisor", "U, V, W from points on s^2 = f(t)");
  fd->add_option("--f", c.f, "f as coefficients, constant first (JSON or path)")->required();
  fd->add_option("--points", c.points, "[[t, s], ...] (JSON or path)")->required();
  bind(fd, "mumford from-divisor", mumford_from_divisor);
  auto* fp = mum->add_subcommand("from-phase", "U, V, W of a point of TS");
  fp->add_option("--axes", c.axes)->required();
  fp->add_option("--x", c.x)->required();
  fp->add_option("--y", c.y)->required();
  fp->add_flag("--project", c.project, "project (x, y) onto TS first");
  bind(fp, "mumford from-phase", mumford_from_phase);
  auto* ver = mum->add_subcommand("verify", "random divisors: V^2 + UW = f and round trips");
  ver->add_option("--genus", c.genus, "n");
  bind(ver, "mumford verify", mumford_verify);

  const auto add_spectral = [&](CLI::App* parent) {
    auto* sm = parent->add_subcommand("smooth", "affine smoothness of P(x, y) = 0");
    sm->add_option("--in", c.in, "char poly {\"b\": [b_1, ..., b_r]}")->required();
    bind(sm, "polymat smooth", polymat_smooth);
    auto* ge = parent->add_subcommand("genus", "spectral genus and direct image splitting");
    ge->add_option("--r", c.r);
    ge->add_option("--d", c.d);
    ge->add_option("--g", c.base_genus, "base genus");
    ge->add_option("--in", c.in, "char poly; also counts branch points");
    bind(ge, "polymat genus", polymat_genus);
    auto* ph = parent->add_subcommand("phi", "residue Hamiltonians per sheet over x0");
    ph->add_option("--in", c.in, "char poly")->required();
    ph->add_option("--x0", c.x0, "re or re,im")->required();
    ph->add_option("--j", c.j, "j >= 1");
    bind(ph, "polymat phi", polymat_phi);
  };

  auto* pm = app.add_subcommand("polymat", "polynomial matrices and their spectral curves");
  pm->require_subcommand(1);
  auto* cp = pm->add_subcommand("charpoly", "coefficients b_i of det(y - A(x))");
  cp->add_option("--in", c.in, "r x r matrix of polynomials")->required();
  bind(cp, "polymat charpoly", polymat_charpoly);
  auto* em = pm->add_subcommand("embed", "residues of A on a divisor");
  em->add_option("--in", c.in)->required();
  em->add_option("--divisor", c.divisor, "points, comma list or JSON")->required();
  em->add_option("--mode", c.mode, "finite | infinity");
  bind(em, "polymat embed", polymat_embed);
  auto* fl = pm->add_subcommand("flow", "flow of H_{i,j} on residue tuples");
  fl->add_option("--r", c.r);
  fl->add_option("--d", c.d);
  fl->add_option("--divisor", c.divisor, "d + 2 points; default 0, 1, ..., d+1");
  fl->add_option("--ham", c.ham, "i=2,j=1");
  fl->add_option("--in", c.in, "start from this A instead of a random tuple");
  fl->add_option("--scale", c.scale, "largest residue entry of random tuples");
  fl->add_option("--leaf-tol", c.leaf_tol, "eigenvalue drift tolerance");
  bind(fl, "polymat flow", polymat_flow);
  auto* nf = pm->add_subcommand("normal-form", "normal form of A with regular nilpotent leading term");
  nf->add_option("--in", c.in)->required();
  nf->add_flag("--theta", c.theta, "also the Mumford triple of a traceless 2 x 2 A");
  bind(nf, "polymat normal-form", polymat_normal_form);
  add_spectral(pm);
  auto* sp = app.add_subcommand("spectral", "same as polymat smooth|genus|phi");
  sp->require_subcommand(1);
  add_spectral(sp);

  auto* cu = app.add_subcommand("cubic", "cubic condition on period matrices");
  cu->require_subcommand(1);
  auto* cc = cu->add_subcommand("check", "third derivatives of a prepotential's Hessian");
  cc->add_option("--prepotential", c.prepotential, "poly:<JSON>, JSON or path")->required();
  cc->add_option("--b0", c.b0, "base point")->required();
  cc->add_flag("--imaginary", c.imaginary, "also step in imaginary directions");
  bind(cc, "cubic check", cubic_check);
  auto* cs = cu->add_subcommand("siegel", "symmetric with positive definite imaginary part");
  cs->add_option("--in", c.in, "period matrix")->required();
  bind(cs, "cubic siegel", cubic_siegel);

  auto* st = app.add_subcommand("selftest", "the acceptance suite");
  st->add_option("--criterion", c.criterion, "run only this one");
  bind(st, "selftest", selftest);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kPass;
    }
    err << "ConfigError: " << e.what() << '\n';
    return kConfigError;
  }

  Job job;
  std::optional<std::pair<std::string, std::string>> early;
  try {
    job = build(c);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    early.emplace(std::string(e.name()), e.what());
  }

  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) {
      err << "ConfigError: cannot write " << c.out << '\n';
      return kConfigError;
    }
  }
  Writer w(c.out.empty() ? out : file, c.report == "csv");
  const auto wall = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  const auto failure = [&](const std::string& name, const std::string& what) {
    err << what << '\n';
    w.summary({{"command", c.command}, {"seed", c.seed}, {"pass", false}, {"error", name}, {"message", what}},
              wall());
    return kNumericalError;
  };
  if (early) return failure(early->first, early->second);
  try {
    Outcome o = job(w);
    o.summary["pass"] = o.pass;
    w.summary(o.summary, wall());
    return o.pass ? kPass : kInvariantFailed;
  } catch (const Error& e) {
    return failure(std::string(e.name()), e.what());
  }
}

}  // namespace acihs::cli
