#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace acihs::acceptance {

struct Options {
  std::uint64_t seed = 20260215;
  /// 1 runs trials serially; anything else goes through OpenMP.
  int threads = 1;
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  /// Measured quantities next to their thresholds.
  nlohmann::json metrics = nlohmann::json::object();
  /// Name of an unexpected library error, if one escaped.
  std::string error;
};

Result chasles(const Options& opt);            // 1
Result integral_identity(const Options& opt);  // 2
Result involution(const Options& opt);         // 3
Result mumford_identity(const Options& opt);   // 4
Result phase_map(const Options& opt);          // 5
Result isospectral(const Options& opt);        // 6
Result normal_form(const Options& opt);        // 7
Result genus_splitting(const Options& opt);    // 8
Result cubic_condition(const Options& opt);    // 9
Result residue_calculus(const Options& opt);   // 10
Result kp_residues(const Options& opt);        // 11

/// Criteria by number, 1..11.
Result run(int id, const Options& opt);
std::vector<Result> run_all(const Options& opt);

/// "[PASS] 3 involution  1.2s/30s  {...}".
std::string format_line(const Result& r);

}  // namespace acihs::acceptance
