#pragma once

// Closed-form transport divergences between one-dimensional densities,
// evaluated as integrals over quantile levels u in (0, 1), together with the
// classical KL / JS divergences on tabulated densities.

#include <string>

#include "tbregman/bregman_scalar.hpp"
#include "tbregman/density1d.hpp"
#include "tbregman/grid_density.hpp"
#include "tbregman/kernels.hpp"
#include "tbregman/quadrature.hpp"

namespace tbregman {

// A convex entropy density U on (0, inf) together with the transformed
// potential U~(z) = z U(1/z), U~'(z) = U(1/z) - U'(1/z) / z.
class EntropyPotential {
 public:
  // Throws InvalidArgumentError if `u` is not defined on (0, inf).
  explicit EntropyPotential(ScalarPotential u);

  const ScalarPotential& base() const { return base_; }
  const ScalarPotential& tilde() const { return tilde_; }

  // Minimum sampled second difference of U~ over `points` (>= -1e-9 for convex U).
  double min_tilde_second_difference(std::span<const double> points) const;

 private:
  ScalarPotential base_;
  ScalarPotential tilde_;
};

// U(z) = z log z: negative Boltzmann-Shannon entropy; U~(z) = -log z.
EntropyPotential boltzmann_entropy();
// U(z) = z^2 / 2; U~(z) = 1 / (2z).
EntropyPotential quadratic_entropy();

// Interaction kernels W~, evaluated on |x - x'| (kernels are even).
// W~(z) = 2 z^2, the interaction energy of the pairwise squared distance.
ScalarPotential squared_distance_kernel();
// W~(z) = -2 log z on (0, inf), the interaction energy of log(1 / |x - x'|).
ScalarPotential log_distance_kernel();

struct DivergenceResult {
  double value = 0.0;
  int nodes_used = 0;
  double clip_used = 0.0;
};

// W2^2 = int_0^1 (Qp - Qq)^2 du.
double wasserstein2_1d(const Density1D& p, const Density1D& q, const QuadratureConfig& cfg = {},
                       Execution exec = default_execution());

// int_0^1 D_V(Qp(u) || Qq(u)) du. Throws DomainError naming the node when a
// quantile leaves the domain of V.
double linear_energy_divergence(const ScalarPotential& v, const Density1D& p, const Density1D& q,
                                const QuadratureConfig& cfg = {},
                                Execution exec = default_execution());

// 1/2 int int D_W(|Qp(u) - Qp(v)| || |Qq(u) - Qq(v)|) du dv on the tensor
// interaction rule, excluding |u - v| < cfg.diagonal_clip.
double interaction_energy_divergence(const ScalarPotential& w, const Density1D& p,
                                     const Density1D& q, const QuadratureConfig& cfg = {},
                                     Execution exec = default_execution());

// int_0^1 D_{U~}(Qp'(u) || Qq'(u)) du. Throws DegenerateQuantileError when a
// quantile derivative is not strictly positive.
double entropy_divergence(const EntropyPotential& u, const Density1D& p, const Density1D& q,
                          const QuadratureConfig& cfg = {}, Execution exec = default_execution());

// Transport KL: the Itakura-Saito divergence of quantile derivatives,
// int_0^1 (r - log r - 1) du with r = Qp'/Qq'.
double transport_kl_1d(const Density1D& p, const Density1D& q, const QuadratureConfig& cfg = {},
                       Execution exec = default_execution());

// Transport JS: -1/2 int_0^1 log(Qp' Qq' / ((Qp' + Qq')/2)^2) du. Symmetric
// in p and q bit for bit.
double transport_js_1d(const Density1D& p, const Density1D& q, const QuadratureConfig& cfg = {},
                       Execution exec = default_execution());

// Transport cross entropy H_{T,q}(p) = int_0^1 Qp'/Qq' du - int q log q - 1.
// The second integral is a trapezoid sum on q's grid.
double transport_cross_entropy_1d(const Density1D& p, const GridDensity& q,
                                  const QuadratureConfig& cfg = {},
                                  Execution exec = default_execution());

enum class ClassicalKind { kl, js };

// Trapezoid KL(p || q) or JS(p, q). Grids that differ are merged onto their
// common abscissae first. KL throws SupportError when q vanishes where p
// does not.
double classical_divergence_grid(ClassicalKind kind, const GridDensity& p, const GridDensity& q);

// Names accepted by `transport_divergence`: "w2", "tkl", "tjs".
DivergenceResult transport_divergence(const std::string& name, const Density1D& p,
                                      const Density1D& q, const QuadratureConfig& cfg = {},
                                      Execution exec = default_execution());

}  // namespace tbregman
