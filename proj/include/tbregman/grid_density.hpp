#pragma once

#include <filesystem>
#include <functional>
#include <utility>
#include <span>
#include <vector>

namespace tbregman {

class Density1D;

// A density tabulated on strictly increasing abscissae and normalized so that
// its trapezoid integral is one. The pdf is linearly interpolated between
// nodes and zero outside the grid.
class GridDensity {
 public:
  // Throws InvalidArgumentError for fewer than two points, non-increasing
  // abscissae, negative or non-finite pdf values, or zero total mass.
  GridDensity(std::vector<double> x, std::vector<double> pdf);

  std::span<const double> x() const { return x_; }
  std::span<const double> pdf_values() const { return pdf_; }
  std::span<const double> cumulative() const { return cdf_; }
  // Trapezoid mass of the input before normalization.
  double input_mass() const { return input_mass_; }

  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }

  double pdf(double x) const;
  // Linear interpolation of the cumulative table (exact integral of the
  // piecewise-linear pdf is not used, so cdf and quantile are inverses).
  double cdf(double x) const;
  // Throws DomainError unless 0 < u < 1.
  double quantile(double u) const;

  // Trapezoid integral of pdf * log(pdf) (zero where pdf vanishes).
  double neg_entropy() const;
  // -neg_entropy().
  double entropy() const { return -neg_entropy(); }

  bool same_grid(const GridDensity& other) const { return x_ == other.x_; }

 private:
  std::vector<double> x_;
  std::vector<double> pdf_;
  std::vector<double> cdf_;
  double input_mass_ = 0.0;
};

// n equally spaced points from a to b inclusive.
std::vector<double> linspace(double a, double b, int n);

// Samples `pdf` on `grid`.
GridDensity tabulate(const std::function<double(double)>& pdf, std::vector<double> grid);
// Samples the pdf of an analytic density; throws InvalidArgumentError when it has none.
GridDensity tabulate(const Density1D& density, std::vector<double> grid);

// Re-tabulates p and q on the sorted union of their abscissae.
std::pair<GridDensity, GridDensity> on_common_grid(const GridDensity& p, const GridDensity& q);

// Two whitespace-separated columns (x, pdf); '#' starts a comment.
GridDensity load_grid_file(const std::filesystem::path& path);
void save_grid_file(const GridDensity& grid, const std::filesystem::path& path);

// One real per line; '#' starts a comment, blank lines are skipped.
std::vector<double> load_samples_file(const std::filesystem::path& path);

}  // namespace tbregman
