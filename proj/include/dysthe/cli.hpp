#ifndef DYSTHE_CLI_HPP
#define DYSTHE_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dysthe/estimates.hpp"

namespace dysthe {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string subcommand;
  std::optional<std::uint64_t> seed;

  // resonance
  std::int64_t N = 1;
  std::int64_t n = 0;
  std::int64_t j = 0;
  std::string method = "both";  // brute | divisor | both
  std::vector<std::int64_t> growth;
  std::vector<std::int64_t> regime;
  std::optional<std::int64_t> scan;

  // random fields and sweeps
  std::vector<int> sizes;
  std::int64_t trials = 0;
  double alpha = 0;
  std::int64_t spread = 4;
  int taus_per_mode = 2;
  double eps = 0.1;
  int r = 8;
  std::string axis = "bandlimit";
  std::string variant = "projected";
  std::int64_t fields = 0;
  int bandlimit = 4;
  int jmax = 5;
  int kmax = 5;
  std::vector<double> Ts;

  // dynamics
  std::optional<double> s;  // per-subcommand default when unset
  std::int64_t m = 16;
  std::vector<std::int64_t> ms;
  double t_factor = 0.1;
  double t = 0.05;
  std::string picard_method = "both";  // exact | quadrature | both
  int nodes = 32;
  bool quadrature = false;
  std::vector<std::string> modes;  // "n:re:im"
  std::string u0_path;
  double mu = 0.1;
  double dt = 0.01;
  std::int64_t steps = 100;
  bool linear_only = false;
  bool halving = false;
  std::vector<std::int64_t> energy_f;
  std::int64_t energy_n = 4;

  // output
  std::string format = "json";
  std::string output;
  std::string plotdata;
  int threads = 1;
  Tolerances tolerances;
  double picard_tolerance = 0.1;
  double quadrature_tolerance = 1e-6;
  double slope_target = 1.0;
  double slope_tolerance = 0.1;
  double energy_tolerance = 1e-8;
  double halving_low = 12;
  double halving_high = 20;
};

bool is_randomized(const std::string& subcommand);

/// Executes one experiment; returns 0, 1 (a check failed) or 2 (invalid configuration or I/O failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (plus an optional JSON --config file; flags win) and calls run.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dysthe

#endif  // DYSTHE_CLI_HPP
