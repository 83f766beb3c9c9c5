#include "tbregman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "tbregman/error.hpp"

namespace tbregman {

namespace {

constexpr int kTailPanelOrder = 16;

QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace

std::string to_string(QuadratureScheme scheme) {
  return scheme == QuadratureScheme::midpoint ? "midpoint" : "gauss-legendre";
}

QuadratureScheme parse_scheme(std::string_view text) {
  if (text == "midpoint") return QuadratureScheme::midpoint;
  if (text == "gauss-legendre" || text == "gl") return QuadratureScheme::gauss_legendre;
  throw InvalidArgumentError("unknown quadrature scheme '" + std::string(text) + "'");
}

void QuadratureConfig::validate() const {
  std::ostringstream os;
  if (nodes < 16) os << "nodes must be >= 16 (got " << nodes << "); ";
  if (!(clip > 0.0 && clip < 0.01)) os << "clip must lie in (0, 0.01) (got " << clip << "); ";
  if (!(tail_floor > 0.0 && tail_floor <= clip)) os << "tail_floor must lie in (0, clip]; ";
  if (interaction_nodes < 16) os << "interaction_nodes must be >= 16; ";
  if (!(diagonal_clip >= 0.0 && diagonal_clip < 0.5)) os << "diagonal_clip must lie in [0, 0.5); ";
  const std::string msg = os.str();
  if (!msg.empty()) throw InvalidArgumentError("invalid quadrature config: " + msg);
}

const QuadratureRule& gauss_legendre(int order) {
  if (order < 1) throw InvalidArgumentError("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, std::make_unique<const QuadratureRule>(compute_gauss_legendre(order)))
             .first;
  }
  return *it->second;
}

QuadratureRule unit_interval_rule(const QuadratureConfig& cfg, int core_nodes) {
  cfg.validate();
  if (core_nodes < 16) throw InvalidArgumentError("core node count must be >= 16");

  const double lo = cfg.clip;
  const double len = 1.0 - 2.0 * cfg.clip;

  std::vector<double> core_u, core_w;
  core_u.reserve(static_cast<std::size_t>(core_nodes));
  core_w.reserve(static_cast<std::size_t>(core_nodes));
  if (cfg.scheme == QuadratureScheme::gauss_legendre) {
    const auto& gl = gauss_legendre(core_nodes);
    for (std::size_t i = 0; i < gl.size(); ++i) {
      core_u.push_back(lo + 0.5 * len * (gl.nodes[i] + 1.0));
      core_w.push_back(0.5 * len * gl.weights[i]);
    }
  } else {
    const double h = len / core_nodes;
    for (int i = 0; i < core_nodes; ++i) {
      core_u.push_back(lo + (i + 0.5) * h);
      core_w.push_back(h);
    }
  }

  // Lower tail in t = log u, ascending in u.
  std::vector<double> tail_t, tail_w;
  if (cfg.tail_floor < cfg.clip) {
    const double t0 = std::log(cfg.tail_floor);
    const double t1 = std::log(cfg.clip);
    const int panels = std::max(1, static_cast<int>(std::ceil(std::log10(cfg.clip / cfg.tail_floor) - 1e-9)));
    const double width = (t1 - t0) / panels;
    const auto& gl = gauss_legendre(kTailPanelOrder);
    for (int p = 0; p < panels; ++p) {
      const double a = t0 + p * width;
      for (std::size_t i = 0; i < gl.size(); ++i) {
        const double t = a + 0.5 * width * (gl.nodes[i] + 1.0);
        tail_t.push_back(t);
        tail_w.push_back(0.5 * width * gl.weights[i] * std::exp(t));
      }
    }
  }

  QuadratureRule rule;
  rule.nodes.reserve(core_u.size() + 2 * tail_t.size());
  rule.weights.reserve(rule.nodes.capacity());
  for (std::size_t i = 0; i < tail_t.size(); ++i) {
    rule.nodes.push_back(std::exp(tail_t[i]));
    rule.weights.push_back(tail_w[i]);
  }
  rule.nodes.insert(rule.nodes.end(), core_u.begin(), core_u.end());
  rule.weights.insert(rule.weights.end(), core_w.begin(), core_w.end());
  for (std::size_t i = tail_t.size(); i-- > 0;) {
    rule.nodes.push_back(1.0 - std::exp(tail_t[i]));
    rule.weights.push_back(tail_w[i]);
  }
  return rule;
}

QuadratureRule interaction_rule(const QuadratureConfig& cfg) {
  return unit_interval_rule(cfg, std::min(cfg.nodes, cfg.interaction_nodes));
}

}  // namespace tbregman
