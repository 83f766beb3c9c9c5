#pragma once

// Euclidean Bregman divergences of smooth strictly convex scalar potentials,
// their dual coordinates and numerically computed Legendre conjugates.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tbregman/interval.hpp"

namespace tbregman {

// A smooth strictly convex function psi on an open interval, given by its
// value and first derivative. The second derivative is never required; where
// it is needed it is finite-differenced.
class ScalarPotential {
 public:
  using Fn = std::function<double(double)>;

  // Throws InvalidArgumentError unless `derivative` is strictly increasing on
  // a deterministic sample of the domain.
  ScalarPotential(std::string name, Fn value, Fn derivative, Interval domain);

  const std::string& name() const { return name_; }
  const Interval& domain() const { return domain_; }
  bool in_domain(double x) const { return domain_.contains(x); }

  // Both throw DomainError outside the open domain.
  double value(double x) const;
  double derivative(double x) const;

  // Central difference of the derivative with step 1e-5 (scaled by |x| for
  // large arguments and shrunk near a finite endpoint).
  double second_derivative(double x) const;

  // True when derivative(a) < derivative(b) for every consecutive pair of the
  // sorted sample points that lie in the domain.
  bool derivative_strictly_increasing(std::span<const double> points) const;

  // Pointwise sum and positive rescaling; the domain of a sum is the
  // intersection of the two domains.
  ScalarPotential operator+(const ScalarPotential& other) const;
  ScalarPotential scaled(double factor) const;

 private:
  std::string name_;
  Fn value_;
  Fn derivative_;
  Interval domain_;
};

// psi(z) = z^2 on the real line.
ScalarPotential square_potential();
// psi(z) = z log z on (0, inf).
ScalarPotential xlogx_potential();
// psi(z) = -log z on (0, inf); its divergence is Itakura-Saito.
ScalarPotential neglog_potential();

// Deterministic probe points inside `domain`, used for convexity witnesses.
std::vector<double> domain_probe_points(const Interval& domain, int count = 64);

// D_psi(y || x) = psi(y) - psi(x) - psi'(x) (y - x).
double bregman(const ScalarPotential& psi, double y, double x);

// x* = psi'(x).
double dual_point(const ScalarPotential& psi, double x);

// Solves psi'(x) = xstar by bracketing followed by safeguarded regula falsi.
// Throws NoDualPointError when xstar is outside the range of psi'.
double inverse_derivative(const ScalarPotential& psi, double xstar);

// psi*(x*) = x x* - psi(x) with psi'(x) = x*.
double conjugate_value(const ScalarPotential& psi, double xstar);

// D_{psi*}(a* || b*), assembled from conjugate values and the inverse map
// (psi*)' = (psi')^{-1}.
double conjugate_bregman(const ScalarPotential& psi, double astar, double bstar);

// |D_psi(y || x) - D_{psi*}(x* || y*)|.
double duality_gap(const ScalarPotential& psi, double y, double x);

}  // namespace tbregman
