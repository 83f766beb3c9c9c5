#include "tbregman/bregman_scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "tbregman/error.hpp"

namespace tbregman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const ScalarPotential& psi, double x) {
  std::ostringstream os;
  os.precision(17);
  os << "argument " << x << " outside the domain (" << psi.domain().lo << ", " << psi.domain().hi
     << ") of potential '" << psi.name() << "'";
  return os.str();
}

// A point well inside the domain from which brackets are grown.
double anchor(const Interval& d) {
  if (d.bounded_below() && d.bounded_above()) return d.lo + 0.5 * (d.hi - d.lo);
  if (d.bounded_below()) return d.lo + std::max(1.0, std::abs(d.lo));
  if (d.bounded_above()) return d.hi - std::max(1.0, std::abs(d.hi));
  return 0.0;
}

// k-th probe moving from `start` towards the upper end of the domain.
double step_up(const Interval& d, double start, int k) {
  if (d.bounded_above()) return d.hi - (d.hi - start) * std::ldexp(1.0, -k);
  return start + (std::abs(start) + 1.0) * (std::ldexp(1.0, k) - 1.0);
}

double step_down(const Interval& d, double start, int k) {
  if (d.bounded_below()) return d.lo + (start - d.lo) * std::ldexp(1.0, -k);
  return start - (std::abs(start) + 1.0) * (std::ldexp(1.0, k) - 1.0);
}

}  // namespace

Interval real_line() { return Interval{-kInf, kInf}; }
Interval positive_half_line() { return Interval{0.0, kInf}; }

std::vector<double> domain_probe_points(const Interval& d, int count) {
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(count));
  const double c = anchor(d);
  for (int i = 0; i < count; ++i) {
    // Symmetric geometric spread around the anchor, mapped into the domain.
    const double s = -6.0 + 12.0 * (i + 0.5) / count;
    const double mag = std::pow(10.0, std::abs(s) - 3.0);
    double x = 0.0;
    if (s >= 0.0) {
      x = d.bounded_above() ? d.hi - (d.hi - c) * std::exp(-mag) : c + mag;
    } else {
      x = d.bounded_below() ? d.lo + (c - d.lo) * std::exp(-mag) : c - mag;
    }
    if (d.contains(x)) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

ScalarPotential::ScalarPotential(std::string name, Fn value, Fn derivative, Interval domain)
    : name_(std::move(name)), value_(std::move(value)), derivative_(std::move(derivative)),
      domain_(domain) {
  if (!(domain_.lo < domain_.hi)) {
    throw InvalidArgumentError("potential '" + name_ + "' has an empty domain");
  }
  const auto probes = domain_probe_points(domain_);
  if (!derivative_strictly_increasing(probes)) {
    throw InvalidArgumentError("potential '" + name_ + "' is not strictly convex on its domain");
  }
}

double ScalarPotential::value(double x) const {
  if (!in_domain(x)) throw DomainError(describe(*this, x));
  return value_(x);
}

double ScalarPotential::derivative(double x) const {
  if (!in_domain(x)) throw DomainError(describe(*this, x));
  return derivative_(x);
}

double ScalarPotential::second_derivative(double x) const {
  if (!in_domain(x)) throw DomainError(describe(*this, x));
  double h = 1e-5 * std::max(1.0, std::abs(x));
  if (domain_.bounded_below()) h = std::min(h, 0.5 * (x - domain_.lo));
  if (domain_.bounded_above()) h = std::min(h, 0.5 * (domain_.hi - x));
  return (derivative_(x + h) - derivative_(x - h)) / (2.0 * h);
}

bool ScalarPotential::derivative_strictly_increasing(std::span<const double> points) const {
  std::vector<double> pts;
  for (double p : points) {
    if (in_domain(p)) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // Probes where the derivative overflows carry no ordering information.
  std::vector<double> at, slopes;
  for (double p : pts) {
    const double s = derivative_(p);
    if (std::isfinite(s)) {
      at.push_back(p);
      slopes.push_back(s);
    }
  }
  if (slopes.size() < 2) return false;
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    if (slopes[i - 1] < slopes[i]) continue;
    // A tie between probes closer than rounding can resolve is not evidence
    // of flatness: 1/(1 - z) is exactly 1 for every z below 1e-17.
    const double gap = at[i] - at[i - 1];
    const bool unresolved = slopes[i - 1] == slopes[i] && gap < 1e-8 * std::max(1.0, std::abs(at[i]));
    if (!unresolved) return false;
  }
  return slopes.front() < slopes.back();
}

ScalarPotential ScalarPotential::operator+(const ScalarPotential& other) const {
  const Interval d{std::max(domain_.lo, other.domain_.lo), std::min(domain_.hi, other.domain_.hi)};
  auto v1 = value_, v2 = other.value_;
  auto d1 = derivative_, d2 = other.derivative_;
  return ScalarPotential(
      name_ + "+" + other.name_, [v1, v2](double z) { return v1(z) + v2(z); },
      [d1, d2](double z) { return d1(z) + d2(z); }, d);
}

ScalarPotential ScalarPotential::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgumentError("potential scale factor must be positive");
  auto v = value_;
  auto d = derivative_;
  std::ostringstream os;
  os << factor << "*" << name_;
  return ScalarPotential(
      os.str(), [v, factor](double z) { return factor * v(z); },
      [d, factor](double z) { return factor * d(z); }, domain_);
}

ScalarPotential square_potential() {
  return ScalarPotential(
      "square", [](double z) { return z * z; }, [](double z) { return 2.0 * z; }, real_line());
}

ScalarPotential xlogx_potential() {
  return ScalarPotential(
      "xlogx", [](double z) { return z * std::log(z); },
      [](double z) { return std::log(z) + 1.0; }, positive_half_line());
}

ScalarPotential neglog_potential() {
  return ScalarPotential(
      "neglog", [](double z) { return -std::log(z); }, [](double z) { return -1.0 / z; },
      positive_half_line());
}

double bregman(const ScalarPotential& psi, double y, double x) {
  if (!psi.in_domain(y)) throw DomainError(describe(psi, y));
  if (!psi.in_domain(x)) throw DomainError(describe(psi, x));
  if (y == x) return 0.0;
  return psi.value(y) - psi.value(x) - psi.derivative(x) * (y - x);
}

double dual_point(const ScalarPotential& psi, double x) { return psi.derivative(x); }

double inverse_derivative(const ScalarPotential& psi, double xstar) {
  if (!std::isfinite(xstar)) {
    throw NoDualPointError("dual coordinate is not finite for potential '" + psi.name() + "'");
  }
  const Interval& d = psi.domain();
  const double start = anchor(d);
  auto f = [&](double x) { return psi.derivative(x) - xstar; };

  double fs = f(start);
  if (fs == 0.0) return start;

  // Grow a bracket [a, b] with f(a) < 0 < f(b).
  constexpr int kMaxBracketSteps = 1100;
  double a = start, b = start, fa = fs, fb = fs;
  bool found = false;
  if (fs < 0.0) {
    for (int k = 1; k <= kMaxBracketSteps; ++k) {
      const double x = step_up(d, start, k);
      if (!d.contains(x) || x == b) break;
      const double fx = f(x);
      if (fx >= 0.0) {
        b = x;
        fb = fx;
        found = true;
        break;
      }
      a = x;
      fa = fx;
    }
  } else {
    for (int k = 1; k <= kMaxBracketSteps; ++k) {
      const double x = step_down(d, start, k);
      if (!d.contains(x) || x == a) break;
      const double fx = f(x);
      if (fx <= 0.0) {
        a = x;
        fa = fx;
        found = true;
        break;
      }
      b = x;
      fb = fx;
    }
  }
  if (!found) {
    std::ostringstream os;
    os.precision(17);
    os << "no dual point: " << xstar << " is outside the range of the derivative of potential '"
       << psi.name() << "'";
    throw NoDualPointError(os.str());
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;

  // Illinois regula falsi with a bisection safeguard.
  int side = 0;
  double x = a;
  for (int it = 0; it < 500; ++it) {
    x = (a * fb - b * fa) / (fb - fa);
    if (!(x > a && x < b)) x = a + 0.5 * (b - a);
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    const double mid = a + 0.5 * (b - a);
    if (mid == a || mid == b) break;
    if (b - a <= 1e-15 * std::abs(x) + 1e-300) break;
  }
  return x;
}

double conjugate_value(const ScalarPotential& psi, double xstar) {
  const double x = inverse_derivative(psi, xstar);
  return x * xstar - psi.value(x);
}

double conjugate_bregman(const ScalarPotential& psi, double astar, double bstar) {
  if (astar == bstar) return 0.0;
  const double xa = inverse_derivative(psi, astar);
  const double xb = inverse_derivative(psi, bstar);
  const double conj_a = xa * astar - psi.value(xa);
  const double conj_b = xb * bstar - psi.value(xb);
  return conj_a - conj_b - xb * (astar - bstar);
}

double duality_gap(const ScalarPotential& psi, double y, double x) {
  const double primal = bregman(psi, y, x);
  const double dual = conjugate_bregman(psi, dual_point(psi, x), dual_point(psi, y));
  return std::abs(primal - dual);
}

}  // namespace tbregman
