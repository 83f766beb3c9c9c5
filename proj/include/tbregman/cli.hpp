#pragma once

// Command implementations behind the `tbregman` executable. Argument parsing
// lives in the tool; everything here takes parsed values and streams.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tbregman/density1d.hpp"
#include "tbregman/gaussian.hpp"
#include "tbregman/grid_density.hpp"
#include "tbregman/oracle.hpp"
#include "tbregman/quadrature.hpp"

namespace tbregman::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

// `gaussian:MEAN:VAR`, `uniform:A:B`, `grid:PATH` or `samples:PATH`. MEAN and
// VAR may be comma lists: d means with d diagonal variances or d*d
// row-major covariance entries.
struct DensitySpec {
  enum class Kind { gaussian, uniform, grid_file, samples_file };
  Kind kind = Kind::gaussian;
  std::vector<double> mean;
  std::vector<double> variance;
  double a = 0.0;
  double b = 0.0;
  std::filesystem::path path;
  std::string text;
};

// Throws InvalidArgumentError describing the problem.
DensitySpec parse_density_spec(std::string_view text);

// What a spec resolves to. Gaussians also carry a 1D density when d = 1;
// only grid files carry a grid.
struct ResolvedDensity {
  std::string label;
  std::optional<Density1D> density;
  std::optional<GaussianDensity> gaussian;
  std::optional<GridDensity> grid;
};

ResolvedDensity resolve(const DensitySpec& spec);

// min:max:steps with min > 0, max >= min and steps >= 2.
struct SweepRange {
  double min = 0.2;
  double max = 3.0;
  int steps = 57;
  std::vector<double> values() const;
};

SweepRange parse_range(std::string_view text);

// Subset of kl, tkl, tjs, w2, always emitted in that order.
std::vector<std::string> parse_divergence_list(std::string_view text);

struct SweepSpec {
  SweepRange sigma_x;
  SweepRange sigma_y;
  std::vector<std::string> divergences{"kl", "tkl", "tjs", "w2"};
};

// 9 significant digits, '.' separator, independent of the global locale.
std::string format_number(double v, int digits = 9);

// Sweep of zero-mean 1D Gaussians indexed by standard deviation. Rows are
// computed in parallel and written in row-major (sigma_x outer) order.
void write_sweep_csv(const SweepSpec& spec, std::ostream& out);

// Overrides read from a key = value file:
//   p, q                     density specs
//   nodes, interaction_nodes integers
//   scheme                   midpoint | gauss-legendre
//   clip, tail_floor, diagonal_clip  reals
// '#' starts a comment. Unknown keys are errors.
struct CompareConfig {
  std::optional<std::string> p;
  std::optional<std::string> q;
  QuadratureConfig quadrature;
};

CompareConfig parse_compare_config(std::istream& in, const std::string& source = "config");
CompareConfig load_compare_config(const std::filesystem::path& path);
void write_compare_config(const CompareConfig& cfg, std::ostream& out);

// Prints the divergence table. Per-divergence failures become `n/a` rows.
// Throws InvalidArgumentError when a multivariate Gaussian meets anything but
// another Gaussian.
void run_compare(const ResolvedDensity& p, const ResolvedDensity& q, const QuadratureConfig& cfg,
                 std::ostream& out);

// Runs the property suite, prints one line per check and a summary, and
// optionally writes name,measured,expected,tolerance,status CSV. Returns
// kSuccess or kVerificationFailure.
int run_verify(std::uint64_t seed, std::ostream& out,
               const std::optional<std::filesystem::path>& csv = std::nullopt,
               const SuiteOptions& options = {});

}  // namespace tbregman::cli
