#include "tbregman/transport1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tbregman/error.hpp"

namespace tbregman {

namespace {

std::string at_node(double u) {
  std::ostringstream os;
  os.precision(17);
  os << " at quadrature node u = " << u;
  return os.str();
}

// Quantile derivatives of p and q at u, both required to be strictly positive.
std::pair<double, double> positive_derivatives(const Density1D& p, const Density1D& q, double u) {
  const double a = p.quantile_derivative(u);
  const double b = q.quantile_derivative(u);
  if (!(a > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "degenerate transport map: quantile derivatives (" << a << ", " << b
       << ") must be positive" << at_node(u);
    throw DegenerateQuantileError(os.str());
  }
  return {a, b};
}

}  // namespace

EntropyPotential::EntropyPotential(ScalarPotential u)
    : base_(std::move(u)),
      tilde_([&]() {
        if (!(base_.domain().lo <= 0.0 && !base_.domain().bounded_above())) {
          throw InvalidArgumentError("entropy potential '" + base_.name() +
                                     "' must be defined on (0, inf)");
        }
        const ScalarPotential b = base_;
        return ScalarPotential(
            "tilde(" + b.name() + ")", [b](double z) { return z * b.value(1.0 / z); },
            [b](double z) { return b.value(1.0 / z) - b.derivative(1.0 / z) / z; },
            positive_half_line());
      }()) {}

double EntropyPotential::min_tilde_second_difference(std::span<const double> points) const {
  double worst = std::numeric_limits<double>::infinity();
  for (double z : points) {
    if (!(z > 0.0)) continue;
    const double h = 1e-3 * z;
    const double d2 = (tilde_.value(z + h) - 2.0 * tilde_.value(z) + tilde_.value(z - h)) / (h * h);
    worst = std::min(worst, d2);
  }
  return worst;
}

EntropyPotential boltzmann_entropy() {
  return EntropyPotential(ScalarPotential(
      "boltzmann", [](double z) { return z * std::log(z); },
      [](double z) { return std::log(z) + 1.0; }, positive_half_line()));
}

EntropyPotential quadratic_entropy() {
  return EntropyPotential(ScalarPotential(
      "quadratic", [](double z) { return 0.5 * z * z; }, [](double z) { return z; },
      positive_half_line()));
}

ScalarPotential squared_distance_kernel() {
  return ScalarPotential(
      "squared_distance", [](double z) { return 2.0 * z * z; }, [](double z) { return 4.0 * z; },
      real_line());
}

ScalarPotential log_distance_kernel() {
  return ScalarPotential(
      "log_distance", [](double z) { return -2.0 * std::log(z); },
      [](double z) { return -2.0 / z; }, positive_half_line());
}

double wasserstein2_1d(const Density1D& p, const Density1D& q, const QuadratureConfig& cfg,
                       Execution exec) {
  const auto rule = unit_interval_rule(cfg);
  return integrate(
      rule,
      [&](double u) {
        const double d = p.quantile(u) - q.quantile(u);
        return d * d;
      },
      exec);
}

double linear_energy_divergence(const ScalarPotential& v, const Density1D& p, const Density1D& q,
                                const QuadratureConfig& cfg, Execution exec) {
  const auto rule = unit_interval_rule(cfg);
  return integrate(
      rule,
      [&](double u) {
        try {
          return bregman(v, p.quantile(u), q.quantile(u));
        } catch (const DomainError& e) {
          throw DomainError(std::string(e.what()) + at_node(u));
        }
      },
      exec);
}

double interaction_energy_divergence(const ScalarPotential& w, const Density1D& p,
                                     const Density1D& q, const QuadratureConfig& cfg,
                                     Execution exec) {
  const auto rule = interaction_rule(cfg);
  const std::size_t n = rule.size();
  std::vector<double> qp(n), qq(n);
  for (std::size_t i = 0; i < n; ++i) {
    qp[i] = p.quantile(rule.nodes[i]);
    qq[i] = q.quantile(rule.nodes[i]);
  }
  const double total = integrate_tensor(
      rule,
      [&](std::size_t i, std::size_t j) {
        const double a = std::abs(qp[i] - qp[j]);
        const double b = std::abs(qq[i] - qq[j]);
        try {
          return bregman(w, a, b);
        } catch (const DomainError& e) {
          std::ostringstream os;
          os.precision(17);
          os << e.what() << " at quadrature node (u, v) = (" << rule.nodes[i] << ", "
             << rule.nodes[j] << ")";
          throw DomainError(os.str());
        }
      },
      cfg.diagonal_clip, exec);
  return 0.5 * total;
}

double entropy_divergence(const EntropyPotential& u, const Density1D& p, const Density1D& q,
                          const QuadratureConfig& cfg, Execution exec) {
  const auto rule = unit_interval_rule(cfg);
  return integrate(
      rule,
      [&](double level) {
        const auto [a, b] = positive_derivatives(p, q, level);
        return bregman(u.tilde(), a, b);
      },
      exec);
}

double transport_kl_1d(const Density1D& p, const Density1D& q, const QuadratureConfig& cfg,
                       Execution exec) {
  const auto rule = unit_interval_rule(cfg);
  return integrate(
      rule,
      [&](double u) {
        const auto [a, b] = positive_derivatives(p, q, u);
        // log1p keeps precision near r = 1; far from 1 the direct form avoids log1p(-1).
        const double r = a / b;
        if (r < 0.5 || r > 2.0) return r - std::log(r) - 1.0;
        const double d = (a - b) / b;
        return d - std::log1p(d);
      },
      exec);
}

double transport_js_1d(const Density1D& p, const Density1D& q, const QuadratureConfig& cfg,
                       Execution exec) {
  const auto rule = unit_interval_rule(cfg);
  return integrate(
      rule,
      [&](double u) {
        const auto [a, b] = positive_derivatives(p, q, u);
        return std::log(0.5 * (a + b)) - 0.5 * (std::log(a) + std::log(b));
      },
      exec);
}

double transport_cross_entropy_1d(const Density1D& p, const GridDensity& q,
                                  const QuadratureConfig& cfg, Execution exec) {
  const Density1D qd = from_grid(q);
  const auto rule = unit_interval_rule(cfg);
  const double ratio = integrate(
      rule,
      [&](double u) {
        const auto [a, b] = positive_derivatives(p, qd, u);
        return a / b;
      },
      exec);
  return ratio - q.neg_entropy() - 1.0;
}

double classical_divergence_grid(ClassicalKind kind, const GridDensity& p_in,
                                 const GridDensity& q_in) {
  const auto [p, q] = on_common_grid(p_in, q_in);
  const auto xs = p.x();
  const auto ps = p.pdf_values();
  const auto qs = q.pdf_values();

  auto kl_term = [&](double a, double b, double x) {
    if (a <= 0.0) return 0.0;
    if (b <= 0.0) {
      std::ostringstream os;
      os.precision(17);
      os << "KL divergence is infinite: reference density vanishes at x = " << x
         << " where the first density is " << a;
      throw SupportError(os.str());
    }
    return a * std::log(a / b);
  };

  std::vector<double> terms(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (kind == ClassicalKind::kl) {
      terms[i] = kl_term(ps[i], qs[i], xs[i]);
    } else {
      const double m = 0.5 * (ps[i] + qs[i]);
      terms[i] = 0.5 * kl_term(ps[i], m, xs[i]) + 0.5 * kl_term(qs[i], m, xs[i]);
    }
  }
  double s = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    s += 0.5 * (terms[i] + terms[i - 1]) * (xs[i] - xs[i - 1]);
  }
  return s;
}

DivergenceResult transport_divergence(const std::string& name, const Density1D& p,
                                      const Density1D& q, const QuadratureConfig& cfg,
                                      Execution exec) {
  DivergenceResult r;
  r.clip_used = cfg.clip;
  r.nodes_used = static_cast<int>(unit_interval_rule(cfg).size());
  if (name == "w2") {
    r.value = wasserstein2_1d(p, q, cfg, exec);
  } else if (name == "tkl") {
    r.value = transport_kl_1d(p, q, cfg, exec);
  } else if (name == "tjs") {
    r.value = transport_js_1d(p, q, cfg, exec);
  } else {
    throw InvalidArgumentError("unknown transport divergence '" + name + "'");
  }
  return r;
}

}  // namespace tbregman
