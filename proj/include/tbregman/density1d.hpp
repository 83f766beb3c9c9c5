#pragma once

// One-dimensional densities represented in transport coordinates: the
// quantile function (inverse CDF) and its derivative.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tbregman/interval.hpp"

namespace tbregman {

enum class DensityKind { analytic, grid, empirical };

std::string to_string(DensityKind kind);

class GridDensity;

// Immutable after construction; copies share the underlying callables.
class Density1D {
 public:
  using Fn = std::function<double(double)>;

  Density1D(DensityKind kind, Fn quantile, Fn quantile_derivative, Interval support,
            Fn pdf = nullptr, std::string label = {});

  DensityKind kind() const { return kind_; }
  const Interval& support() const { return support_; }
  const std::string& label() const { return label_; }

  // Both throw DomainError unless 0 < u < 1.
  double quantile(double u) const;
  double quantile_derivative(double u) const;

  bool has_pdf() const { return static_cast<bool>(impl_->pdf); }
  // Throws InvalidArgumentError when the density carries no pdf.
  double pdf(double x) const;

 private:
  struct Impl {
    Fn quantile;
    Fn quantile_derivative;
    Fn pdf;
  };
  DensityKind kind_;
  std::shared_ptr<const Impl> impl_;
  Interval support_;
  std::string label_;
};

// N(mean, variance) through the standard normal quantile.
Density1D gaussian1d(double mean, double variance);

// Uniform on [a, b].
Density1D uniform1d(double a, double b);

// Analytic density given directly by its quantile function and derivative.
Density1D from_quantile(Density1D::Fn quantile, Density1D::Fn quantile_derivative, Interval support,
                        Density1D::Fn pdf = nullptr, std::string label = "custom");

// Quantile by linear interpolation of the inverse cumulative table;
// derivative 1 / pdf(quantile(u)). Throws DegenerateQuantileError when
// quantile(u) lands where the interpolated pdf vanishes.
Density1D from_grid(const GridDensity& grid);

// Empirical quantile: linear interpolation of the sorted samples at plotting
// positions (k - 0.5) / n with flat extrapolation outside [0.5/n, 1 - 0.5/n].
// The derivative is a central difference (half-width 0.5/n) of the
// interpolant extended linearly past the end positions.
// Throws InvalidArgumentError for fewer than two distinct finite samples.
Density1D from_samples(std::span<const double> samples);

// Wasserstein geodesic between q (t = 0) and p (t = 1): quantiles and their
// derivatives combine as t * p + (1 - t) * q.
Density1D displacement_interpolate(const Density1D& p, const Density1D& q, double t);

// The density of X + c.
Density1D shifted(const Density1D& p, double c);

}  // namespace tbregman
