#pragma once

// Quadrature rules on the unit interval for integrals in quantile
// coordinates. The core (clip, 1 - clip) carries a Gauss-Legendre or midpoint
// rule; the two tails (tail_floor, clip) and (1 - clip, 1 - tail_floor) are
// covered by log-spaced Gauss-Legendre panels, one per decade. Setting
// tail_floor equal to clip drops the tails and integrates the core only.

#include <string>
#include <string_view>
#include <vector>

namespace tbregman {

enum class QuadratureScheme { midpoint, gauss_legendre };

std::string to_string(QuadratureScheme scheme);
// Accepts "midpoint", "gauss-legendre" (and "gl"); throws InvalidArgumentError.
QuadratureScheme parse_scheme(std::string_view text);

struct QuadratureConfig {
  int nodes = 2048;
  QuadratureScheme scheme = QuadratureScheme::gauss_legendre;
  double clip = 1e-6;
  double tail_floor = 1e-15;
  // Core nodes per axis for tensor-product double integrals.
  int interaction_nodes = 512;
  // Pairs with |u - v| below this are excluded from double integrals.
  double diagonal_clip = 1e-4;

  // nodes >= 16, 0 < clip < 0.01, 0 < tail_floor <= clip,
  // interaction_nodes >= 16, 0 <= diagonal_clip < 0.5.
  void validate() const;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const QuadratureRule& gauss_legendre(int order);

// Rule for integrals over (0, 1) with `core_nodes` nodes in the core.
QuadratureRule unit_interval_rule(const QuadratureConfig& cfg, int core_nodes);
inline QuadratureRule unit_interval_rule(const QuadratureConfig& cfg) {
  return unit_interval_rule(cfg, cfg.nodes);
}

// Per-axis rule for tensor-product double integrals.
QuadratureRule interaction_rule(const QuadratureConfig& cfg);

}  // namespace tbregman
