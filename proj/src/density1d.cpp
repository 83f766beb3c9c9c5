#include "tbregman/density1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tbregman/error.hpp"
#include "tbregman/grid_density.hpp"
#include "tbregman/normal.hpp"

namespace tbregman {

namespace {

void check_unit(double u, const char* what) {
  if (!(u > 0.0 && u < 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": probability level " << u << " outside (0, 1)";
    throw DomainError(os.str());
  }
}

// Rank of "inexactness" used when combining densities of different kinds.
int coarseness(DensityKind k) {
  switch (k) {
    case DensityKind::analytic: return 0;
    case DensityKind::grid: return 1;
    case DensityKind::empirical: return 2;
  }
  return 0;
}

std::string fmt_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::analytic: return "analytic";
    case DensityKind::grid: return "grid";
    case DensityKind::empirical: return "empirical";
  }
  return "unknown";
}

Density1D::Density1D(DensityKind kind, Fn quantile, Fn quantile_derivative, Interval support,
                     Fn pdf, std::string label)
    : kind_(kind),
      impl_(std::make_shared<const Impl>(
          Impl{std::move(quantile), std::move(quantile_derivative), std::move(pdf)})),
      support_(support),
      label_(std::move(label)) {
  if (!impl_->quantile || !impl_->quantile_derivative) {
    throw InvalidArgumentError("density needs both a quantile function and its derivative");
  }
}

double Density1D::quantile(double u) const {
  check_unit(u, "quantile");
  return impl_->quantile(u);
}

double Density1D::quantile_derivative(double u) const {
  check_unit(u, "quantile derivative");
  return impl_->quantile_derivative(u);
}

double Density1D::pdf(double x) const {
  if (!impl_->pdf) throw InvalidArgumentError("density '" + label_ + "' carries no pdf");
  return impl_->pdf(x);
}

Density1D gaussian1d(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
    throw InvalidArgumentError("gaussian1d needs a finite mean and a positive variance");
  }
  const double sd = std::sqrt(variance);
  return Density1D(
      DensityKind::analytic, [mean, sd](double u) { return mean + sd * normal::quantile(u); },
      [sd](double u) { return sd / normal::pdf(normal::quantile(u)); }, real_line(),
      [mean, sd](double x) { return normal::pdf((x - mean) / sd) / sd; },
      "gaussian:" + fmt_number(mean) + ":" + fmt_number(variance));
}

Density1D uniform1d(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgumentError("uniform1d needs finite a < b");
  }
  const double w = b - a;
  return Density1D(
      DensityKind::analytic, [a, w](double u) { return a + w * u; }, [w](double) { return w; },
      Interval{a, b}, [a, b, w](double x) { return (x >= a && x <= b) ? 1.0 / w : 0.0; },
      "uniform:" + fmt_number(a) + ":" + fmt_number(b));
}

Density1D from_quantile(Density1D::Fn quantile, Density1D::Fn quantile_derivative,
                        Interval support, Density1D::Fn pdf, std::string label) {
  return Density1D(DensityKind::analytic, std::move(quantile), std::move(quantile_derivative),
                   support, std::move(pdf), std::move(label));
}

Density1D from_grid(const GridDensity& grid) {
  auto g = std::make_shared<const GridDensity>(grid);
  return Density1D(
      DensityKind::grid, [g](double u) { return g->quantile(u); },
      [g](double u) {
        const double x = g->quantile(u);
        const double f = g->pdf(x);
        if (!(f > 0.0)) {
          std::ostringstream os;
          os.precision(17);
          os << "degenerate quantile: level " << u << " maps to x = " << x
             << " where the tabulated density vanishes";
          throw DegenerateQuantileError(os.str());
        }
        return 1.0 / f;
      },
      Interval{g->lo(), g->hi()}, [g](double x) { return g->pdf(x); }, "grid");
}

Density1D from_samples(std::span<const double> samples) {
  std::vector<double> s(samples.begin(), samples.end());
  for (double v : s) {
    if (!std::isfinite(v)) throw InvalidArgumentError("samples must be finite");
  }
  std::sort(s.begin(), s.end());
  if (s.size() < 2 || s.front() == s.back()) {
    throw InvalidArgumentError("from_samples needs at least two distinct samples");
  }
  const auto n = s.size();
  const double dn = static_cast<double>(n);

  // Extension slopes: from the end sample to the nearest distinct sample.
  std::size_t j = 1;
  while (s[j] == s[0]) ++j;
  const double low_slope = (s[j] - s[0]) * dn / static_cast<double>(j);
  std::size_t k = n - 2;
  while (s[k] == s[n - 1]) --k;
  const double high_slope = (s[n - 1] - s[k]) * dn / static_cast<double>(n - 1 - k);

  auto data = std::make_shared<const std::vector<double>>(std::move(s));

  // Interpolant through (k - 0.5)/n, s_k), extended linearly (extend = true)
  // or flat (extend = false) past the end positions.
  auto interp = [data, dn, low_slope, high_slope](double u, bool extend) {
    const auto& v = *data;
    const double pos = u * dn - 0.5;  // fractional 0-based index
    if (pos <= 0.0) return extend ? v.front() + low_slope * (u - 0.5 / dn) : v.front();
    const double last = dn - 1.0;
    if (pos >= last) return extend ? v.back() + high_slope * (u - (dn - 0.5) / dn) : v.back();
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return v[i] + frac * (v[i + 1] - v[i]);
  };
  const double h = 0.5 / dn;
  return Density1D(
      DensityKind::empirical, [interp](double u) { return interp(u, false); },
      [interp, h](double u) { return (interp(u + h, true) - interp(u - h, true)) / (2.0 * h); },
      Interval{data->front(), data->back()}, nullptr,
      "samples(n=" + std::to_string(n) + ")");
}

Density1D displacement_interpolate(const Density1D& p, const Density1D& q, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("displacement interpolation parameter " + fmt_number(t) + " outside [0, 1]");
  }
  if (t == 0.0) return q;
  if (t == 1.0) return p;
  const DensityKind kind =
      coarseness(p.kind()) >= coarseness(q.kind()) ? p.kind() : q.kind();
  const Interval support{t * p.support().lo + (1.0 - t) * q.support().lo,
                         t * p.support().hi + (1.0 - t) * q.support().hi};
  return Density1D(
      kind, [p, q, t](double u) { return t * p.quantile(u) + (1.0 - t) * q.quantile(u); },
      [p, q, t](double u) {
        return t * p.quantile_derivative(u) + (1.0 - t) * q.quantile_derivative(u);
      },
      support, nullptr, "interp(" + fmt_number(t) + ")");
}

Density1D shifted(const Density1D& p, double c) {
  Density1D::Fn pdf = nullptr;
  if (p.has_pdf()) pdf = [p, c](double x) { return p.pdf(x - c); };
  return Density1D(
      p.kind(), [p, c](double u) { return p.quantile(u) + c; },
      [p](double u) { return p.quantile_derivative(u); },
      Interval{p.support().lo + c, p.support().hi + c}, std::move(pdf),
      p.label() + "+" + fmt_number(c));
}

}  // namespace tbregman
