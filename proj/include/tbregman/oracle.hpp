#pragma once

// Independent verifiers: Taylor expansion against the transport Hessian,
// linear-energy duality, separability, the monotone rearrangement map and KL
// rewritten in transport coordinates. `run_property_suite` bundles them.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tbregman/bregman_scalar.hpp"
#include "tbregman/density1d.hpp"
#include "tbregman/gaussian.hpp"
#include "tbregman/grid_density.hpp"
#include "tbregman/kernels.hpp"
#include "tbregman/quadrature.hpp"

namespace tbregman {

// A perturbation potential Phi through its first two derivatives. The map
// x -> x + eps Phi'(x) stays monotone for |eps| <= eps_max.
struct PerturbationField {
  std::function<double(double)> phi_prime;
  std::function<double(double)> phi_double_prime;
  double eps_max = 0.0;

  // Largest relative mismatch between phi_double_prime and a central
  // difference of phi_prime over `points`.
  double consistency_error(std::span<const double> points) const;
};

struct CheckReport {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// pass is |measured - expected| <= tolerance (NaN never passes).
CheckReport make_report(std::string name, double measured, double expected, double tolerance);

struct TaylorTerms {
  double tkl = 0.0;
  double hessian = 0.0;
  double ratio = 0.0;
};

// Q(u) + eps Phi'(Q(u)), the quantile of (id + eps grad Phi)_# q. Throws
// InvalidArgumentError when |eps| > eps_max.
Density1D push_forward(const Density1D& q, const PerturbationField& f, double eps);

// TKL(push_forward(q) || q) over (eps^2 / 2) int Phi''^2 q. Both integrals use
// the same quadrature rule.
TaylorTerms taylor_hessian_ratio(const Density1D& q, const PerturbationField& f, double eps,
                                 const QuadratureConfig& cfg = {},
                                 Execution exec = default_execution());

// |int D_V(Qp || Qq) du - int D_{V*}(V'(Qq) || V'(Qp)) du|, the dual side
// solved numerically through the Legendre conjugate.
double duality_gap_linear(const ScalarPotential& v, const Density1D& p, const Density1D& q,
                          const QuadratureConfig& cfg = {}, Execution exec = default_execution());

// |TKL(diag(A1, A2) || diag(B1, B2)) - TKL(A1 || B1) - TKL(A2 || B2)| with zero means.
double separability_gap(const Matrix& a1, const Matrix& b1, const Matrix& a2, const Matrix& b2);

// T(x_i) = Q_p(F_q(x_i)) on q's grid.
struct MapTable {
  std::vector<double> x;
  std::vector<double> t;

  // Piecewise-linear T and its generalized inverse.
  double operator()(double x) const;
  double inverse(double y) const;
};

MapTable monotone_map_from_grids(const GridDensity& p, const GridDensity& q);

// max over `thresholds` of |F_q(T^{-1}(t)) - F_p(t)|. With no thresholds
// given, 20 interior quantiles of p are used.
double pushforward_mass_error(const MapTable& map, const GridDensity& p, const GridDensity& q,
                              std::vector<double> thresholds = {});

// KL(p || q) = int q log q - int q log T' - int q log q(T), T = Q_p o F_q, with
// T' differenced on the map table. Nodes with F_q within 1e-12 of 0 or 1
// are skipped: their quantile level is below the grid's resolution. Throws
// SupportError when q(T(x)) = 0 where q(x) > 0 and DegenerateQuantileError
// when T' <= 0 there.
double kl_in_transport_coordinates(const GridDensity& p, const GridDensity& q);

// Density with quantile a + s u^k on (a, a + s), k > 0, s > 0.
Density1D power_quantile(double a, double s, double k);

// Seeded generator with uniform and normal draws computed from raw 64-bit
// output, so streams do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);
  double normal();

 private:
  std::mt19937_64 engine_;
};

// Q diag(lambda) Q^T with Q from a QR factorization of a standard normal
// matrix and lambda log-uniform in [lo, hi].
Matrix random_spd(Rng& rng, int dim, double lo = 0.1, double hi = 10.0);

struct SuiteOptions {
  // Multiplies every transport KL value the suite computes. -1 injects a
  // sign fault for testing failure propagation.
  double tkl_sign = 1.0;
  Execution exec = default_execution();
};

// Every property check, sorted by name. Deterministic for a given seed.
std::vector<CheckReport> run_property_suite(std::uint64_t seed, const SuiteOptions& options = {});

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace tbregman
