#include "tbregman/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tbregman/error.hpp"
#include "tbregman/transport1d.hpp"

namespace tbregman {

namespace {

// Levels of q's mass closer than this to 0 or 1 lie below p's grid
// resolution and are left out of the transport-coordinate KL.
constexpr double kTailMass = 1e-12;

// Q_p(u) extended to u = 0 and u = 1 by the edges of p's positive-mass range.
double clamped_quantile(const GridDensity& p, double u) {
  const auto c = p.cumulative();
  const auto x = p.x();
  if (u <= 0.0) {
    std::size_t i = 0;
    while (i + 1 < c.size() && c[i + 1] <= 0.0) ++i;
    return x[i];
  }
  if (u >= 1.0) {
    std::size_t i = c.size() - 1;
    while (i > 0 && c[i - 1] >= 1.0) --i;
    return x[i];
  }
  return p.quantile(u);
}

double interp(std::span<const double> xs, std::span<const double> ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto j = static_cast<std::size_t>(std::distance(xs.begin(), it));
  const std::size_t i = j - 1;
  const double f = (x - xs[i]) / (xs[j] - xs[i]);
  return ys[i] + f * (ys[j] - ys[i]);
}

// 64-bit mix used to derive independent per-check seeds.
std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

GaussianDensity centered(const Matrix& cov) {
  return GaussianDensity(Vector::Zero(cov.rows()), cov);
}

Density1D random_gaussian1d(Rng& rng) {
  return gaussian1d(rng.uniform(-2.0, 2.0), rng.log_uniform(0.25, 4.0));
}

Density1D random_positive_power(Rng& rng) {
  return power_quantile(rng.uniform(0.2, 2.0), rng.uniform(0.5, 3.0), rng.uniform(0.5, 2.5));
}

// Shortfall of a one-sided requirement lhs <= rhs, reported against 0.
double excess(double lhs, double rhs) { return std::max(0.0, lhs - rhs); }

}  // namespace

double PerturbationField::consistency_error(std::span<const double> points) const {
  double worst = 0.0;
  for (double x : points) {
    const double h = 1e-4 * std::max(1.0, std::abs(x));
    const double fd = (phi_prime(x + h) - phi_prime(x - h)) / (2.0 * h);
    const double exact = phi_double_prime(x);
    worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
  }
  return worst;
}

CheckReport make_report(std::string name, double measured, double expected, double tolerance) {
  CheckReport r{std::move(name), measured, expected, tolerance, false};
  r.pass = std::abs(measured - expected) <= tolerance;
  return r;
}

Density1D push_forward(const Density1D& q, const PerturbationField& f, double eps) {
  if (!(std::abs(eps) <= f.eps_max)) {
    std::ostringstream os;
    os << "perturbation size " << eps << " exceeds the monotonicity bound " << f.eps_max;
    throw InvalidArgumentError(os.str());
  }
  auto move = [f, eps](double x) { return x + eps * f.phi_prime(x); };
  Interval support = q.support();
  if (support.bounded_below()) support.lo = move(support.lo);
  if (support.bounded_above()) support.hi = move(support.hi);
  return from_quantile([q, move](double u) { return move(q.quantile(u)); },
                       [q, f, eps](double u) {
                         return q.quantile_derivative(u) *
                                (1.0 + eps * f.phi_double_prime(q.quantile(u)));
                       },
                       support, nullptr, "pushforward(" + q.label() + ")");
}

TaylorTerms taylor_hessian_ratio(const Density1D& q, const PerturbationField& f, double eps,
                                 const QuadratureConfig& cfg, Execution exec) {
  if (eps == 0.0) throw InvalidArgumentError("perturbation size must be nonzero");
  const Density1D pushed = push_forward(q, f, eps);
  TaylorTerms t;
  t.tkl = transport_kl_1d(pushed, q, cfg, exec);
  const auto rule = unit_interval_rule(cfg);
  t.hessian = integrate(
      rule,
      [&](double u) {
        const double h = f.phi_double_prime(q.quantile(u));
        return h * h;
      },
      exec);
  if (!(t.hessian > 0.0)) throw InvalidArgumentError("perturbation has zero transport Hessian");
  t.ratio = t.tkl / (0.5 * eps * eps * t.hessian);
  return t;
}

double duality_gap_linear(const ScalarPotential& v, const Density1D& p, const Density1D& q,
                          const QuadratureConfig& cfg, Execution exec) {
  const double primal = linear_energy_divergence(v, p, q, cfg, exec);
  const auto rule = unit_interval_rule(cfg);
  const double dual = integrate(
      rule,
      [&](double u) {
        return conjugate_bregman(v, v.derivative(q.quantile(u)), v.derivative(p.quantile(u)));
      },
      exec);
  return std::abs(primal - dual);
}

double separability_gap(const Matrix& a1, const Matrix& b1, const Matrix& a2, const Matrix& b2) {
  const double joint =
      transport_kl_gaussian(centered(block_diag(a1, a2)), centered(block_diag(b1, b2)));
  const double parts = transport_kl_gaussian(centered(a1), centered(b1)) +
                       transport_kl_gaussian(centered(a2), centered(b2));
  return std::abs(joint - parts);
}

double MapTable::operator()(double xv) const { return interp(x, t, xv); }

double MapTable::inverse(double y) const {
  if (y <= t.front()) return x.front();
  if (y >= t.back()) return x.back();
  // First node with T >= y; its predecessor has T < y, so the cell is not flat.
  const auto it = std::lower_bound(t.begin(), t.end(), y);
  const auto j = static_cast<std::size_t>(std::distance(t.begin(), it));
  const std::size_t i = j - 1;
  const double f = (y - t[i]) / (t[j] - t[i]);
  return x[i] + f * (x[j] - x[i]);
}

MapTable monotone_map_from_grids(const GridDensity& p, const GridDensity& q) {
  MapTable m;
  m.x.assign(q.x().begin(), q.x().end());
  m.t.resize(m.x.size());
  const auto c = q.cumulative();
  for (std::size_t i = 0; i < m.x.size(); ++i) m.t[i] = clamped_quantile(p, c[i]);
  for (std::size_t i = 1; i < m.t.size(); ++i) {
    if (m.t[i] < m.t[i - 1]) throw DegenerateQuantileError("monotone map is decreasing");
  }
  return m;
}

double pushforward_mass_error(const MapTable& map, const GridDensity& p, const GridDensity& q,
                              std::vector<double> thresholds) {
  if (thresholds.empty()) {
    for (int k = 1; k <= 20; ++k) thresholds.push_back(p.quantile(k / 21.0));
  }
  double worst = 0.0;
  for (double t : thresholds) {
    worst = std::max(worst, std::abs(q.cdf(map.inverse(t)) - p.cdf(t)));
  }
  return worst;
}

double kl_in_transport_coordinates(const GridDensity& p, const GridDensity& q) {
  const MapTable map = monotone_map_from_grids(p, q);
  const auto x = q.x();
  const auto qv = q.pdf_values();
  const auto c = q.cumulative();
  const std::size_t n = x.size();
  std::vector<double> g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(qv[i] > 0.0) || !(c[i] > kTailMass && c[i] < 1.0 - kTailMass)) continue;
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? i : i + 1;
    const double slope = (map.t[hi] - map.t[lo]) / (x[hi] - x[lo]);
    std::ostringstream where;
    where.precision(17);
    where << " at x = " << x[i];
    if (!(slope > 0.0)) {
      throw DegenerateQuantileError("transport map derivative is not positive" + where.str());
    }
    const double q_at_t = q.pdf(map.t[i]);
    if (!(q_at_t > 0.0)) {
      throw SupportError("reference density vanishes at the transported point T(x) = " +
                         std::to_string(map.t[i]) + where.str());
    }
    g[i] = qv[i] * (std::log(qv[i]) - std::log(slope) - std::log(q_at_t));
  }
  double s = 0.0;
  for (std::size_t i = 1; i < n; ++i) s += 0.5 * (g[i] + g[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

Density1D power_quantile(double a, double s, double k) {
  if (!(s > 0.0) || !(k > 0.0)) throw InvalidArgumentError("power quantile needs s > 0, k > 0");
  std::ostringstream label;
  label << "power:" << a << ":" << s << ":" << k;
  return from_quantile([=](double u) { return a + s * std::pow(u, k); },
                       [=](double u) { return s * k * std::pow(u, k - 1.0); },
                       Interval{a, a + s},
                       [=](double x) {
                         if (!(x > a && x < a + s)) return 0.0;
                         const double u = std::pow((x - a) / s, 1.0 / k);
                         return 1.0 / (s * k * std::pow(u, k - 1.0));
                       },
                       label.str());
}

double Rng::uniform() {
  // 53 random bits, offset by half a unit so the draw lies strictly in (0, 1).
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::normal() {
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  return r * std::cos(2.0 * std::numbers::pi * uniform());
}

Matrix random_spd(Rng& rng, int dim, double lo, double hi) {
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = rng.normal();
  }
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  Vector lambda(dim);
  for (int i = 0; i < dim; ++i) lambda(i) = rng.log_uniform(lo, hi);
  return symmetrize(q * lambda.asDiagonal() * q.transpose());
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

std::vector<CheckReport> run_property_suite(std::uint64_t seed, const SuiteOptions& options) {
  const double sign = options.tkl_sign;
  // Inner integrals run serially; parallelism is across checks.
  const Execution inner = Execution::serial;
  const QuadratureConfig cfg;
  const std::vector<double> scales{0.5, 1.0, 2.0, 3.0};

  auto tkl1d = [&](const Density1D& p, const Density1D& q) {
    return sign * transport_kl_1d(p, q, cfg, inner);
  };
  auto tkl_gauss = [&](const GaussianDensity& x, const GaussianDensity& y) {
    return sign * transport_kl_gaussian(x, y);
  };

  using Check = std::function<CheckReport(Rng&)>;
  std::vector<Check> checks;

  // Quadrature against closed forms on 1D Gaussians.
  checks.push_back([&](Rng&) {
    double worst = 0.0;
    for (double sx : scales) {
      for (double sy : scales) {
        const double a = tkl1d(gaussian1d(0, sx * sx), gaussian1d(0, sy * sy));
        const double b = tkl_gauss(GaussianDensity(0, sx * sx), GaussianDensity(0, sy * sy));
        worst = std::max(worst, std::abs(a - b));
      }
    }
    return make_report("cross_regime.tkl", worst, 0.0, 1e-6);
  });
  checks.push_back([&](Rng&) {
    double worst = 0.0;
    for (double sx : scales) {
      for (double sy : scales) {
        const double a = transport_js_1d(gaussian1d(0, sx * sx), gaussian1d(0, sy * sy), cfg, inner);
        const double b = transport_js_gaussian(GaussianDensity(0, sx * sx), GaussianDensity(0, sy * sy));
        worst = std::max(worst, std::abs(a - b));
      }
    }
    return make_report("cross_regime.tjs", worst, 0.0, 1e-6);
  });
  checks.push_back([&](Rng&) {
    double worst = 0.0;
    for (double sx : scales) {
      for (double sy : scales) {
        const double a = wasserstein2_1d(gaussian1d(0, sx * sx), gaussian1d(0, sy * sy), cfg, inner);
        const double b = wasserstein2_gaussian(GaussianDensity(0, sx * sx), GaussianDensity(0, sy * sy));
        worst = std::max(worst, std::abs(a - b));
      }
    }
    return make_report("cross_regime.w2", worst, 0.0, 1e-6);
  });

  // Nonnegativity and the shift characterization of zero.
  checks.push_back([&](Rng& rng) {
    double most_negative = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Density1D p = i % 2 ? random_gaussian1d(rng) : random_positive_power(rng);
      const Density1D q = random_gaussian1d(rng);
      most_negative = std::max(most_negative, -tkl1d(p, q));
    }
    return make_report("tkl.nonnegative", most_negative, 0.0, 0.0);
  });
  checks.push_back([&](Rng&) {
    double worst = 0.0;
    for (double c : {-2.0, 0.5, 10.0}) {
      worst = std::max(worst, std::abs(tkl1d(gaussian1d(c, 1.0), gaussian1d(0.0, 1.0))));
    }
    return make_report("tkl.zero_for_shift", worst, 0.0, 1e-9);
  });
  checks.push_back([&](Rng&) {
    const double r = std::sqrt(1.01);
    return make_report("tkl.positive_for_scale", tkl1d(gaussian1d(0, 1.01), gaussian1d(0, 1)),
                       r - std::log(r) - 1.0, 1e-9);
  });
  checks.push_back([&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Density1D p = random_positive_power(rng);
      const Density1D q = random_gaussian1d(rng);
      const double a = transport_kl_1d(p, q, cfg, inner);
      const double b = entropy_divergence(boltzmann_entropy(), p, q, cfg, inner);
      worst = std::max(worst, std::abs(a - b));
    }
    return make_report("tkl.itakura_saito_identity", worst, 0.0, 1e-12);
  });

  // Separability.
  checks.push_back([&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const int d1 = 1 + static_cast<int>(rng.uniform() * 3.0);
      const int d2 = 1 + static_cast<int>(rng.uniform() * 3.0);
      const Matrix a1 = random_spd(rng, d1), b1 = random_spd(rng, d1);
      const Matrix a2 = random_spd(rng, d2), b2 = random_spd(rng, d2);
      worst = std::max(worst, separability_gap(a1, b1, a2, b2));
    }
    return make_report("separability.random_blocks", worst, 0.0, 1e-8);
  });
  checks.push_back([&](Rng&) {
    Matrix a(2, 2), b(2, 2);
    a << 9, 0, 0, 1;
    b << 1, 0, 0, 4;
    return make_report("separability.hand_case", tkl_gauss(centered(a), centered(b)),
                       (2.0 - std::log(3.0)) + (std::log(2.0) - 0.5), 1e-9);
  });

  // Taylor expansion against the transport Hessian.
  const PerturbationField linear_field{[](double x) { return x; }, [](double) { return 1.0; }, 0.5};
  checks.push_back([&](Rng&) {
    double violation = 0.0;
    for (double eps : {0.04, 0.02, 0.01}) {
      TaylorTerms t = taylor_hessian_ratio(gaussian1d(0, 1), linear_field, eps, cfg, inner);
      const double ratio = sign * t.ratio;
      violation = std::max({violation, excess(1.0 - 2.0 * eps, ratio), excess(ratio, 1.0)});
    }
    return make_report("taylor.ratio_bounds", violation, 0.0, 0.0);
  });
  checks.push_back([&](Rng&) {
    std::vector<double> dev;
    for (double eps : {0.04, 0.02, 0.01}) {
      dev.push_back(std::abs(
          sign * taylor_hessian_ratio(gaussian1d(0, 1), linear_field, eps, cfg, inner).ratio - 1.0));
    }
    // Halving eps should halve the deviation; report the worst log-distance from 2.
    const double worst = std::max(std::abs(std::log(dev[0] / dev[1] / 2.0)),
                                  std::abs(std::log(dev[1] / dev[2] / 2.0)));
    return make_report("taylor.first_order_convergence", worst, 0.0, std::log(1.5));
  });
  checks.push_back([&](Rng&) {
    const PerturbationField square_field{[](double x) { return x * x; },
                                         [](double x) { return 2.0 * x; }, 0.4};
    const TaylorTerms t = taylor_hessian_ratio(uniform1d(0, 1), square_field, 0.01, cfg, inner);
    return make_report("taylor.uniform_square_field", t.hessian, 4.0 / 3.0, 1e-9);
  });

  // Linear-energy duality.
  auto duality_check = [&](const std::string& name, const ScalarPotential& v, bool positive) {
    return [&, name, v, positive](Rng& rng) {
      double worst = 0.0;
      for (int i = 0; i < 10; ++i) {
        Density1D p = positive ? random_positive_power(rng) : random_gaussian1d(rng);
        Density1D q = positive ? random_positive_power(rng) : random_gaussian1d(rng);
        if (i == 0) {
          p = positive ? power_quantile(0, 1, 2) : gaussian1d(0, 4);
          q = positive ? uniform1d(0, 1) : gaussian1d(0, 1);
        }
        worst = std::max(worst, duality_gap_linear(v, p, q, cfg, inner));
      }
      return make_report("duality.linear." + name, worst, 0.0, 1e-7);
    };
  };
  checks.push_back(duality_check("square", square_potential(), false));
  checks.push_back(duality_check("xlogx", xlogx_potential(), true));
  checks.push_back(duality_check("neglog", neglog_potential(), true));

  auto scalar_duality = [&](const std::string& name, const ScalarPotential& v, bool positive) {
    return [name, v, positive](Rng& rng) {
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        const double y = positive ? rng.log_uniform(0.05, 20.0) : rng.uniform(-5.0, 5.0);
        const double x = positive ? rng.log_uniform(0.05, 20.0) : rng.uniform(-5.0, 5.0);
        worst = std::max(worst, duality_gap(v, y, x));
      }
      return make_report("duality.scalar." + name, worst, 0.0, 1e-8);
    };
  };
  checks.push_back(scalar_duality("square", square_potential(), false));
  checks.push_back(scalar_duality("xlogx", xlogx_potential(), true));
  checks.push_back(scalar_duality("neglog", neglog_potential(), true));

  // Transport convexity along displacement interpolation.
  checks.push_back([&](Rng& rng) {
    double violation = 0.0;
    for (int i = 0; i < 6; ++i) {
      const Density1D p1 = i == 0 ? gaussian1d(0, 4) : random_gaussian1d(rng);
      const Density1D p2 = i == 0 ? gaussian1d(0, 0.25) : random_gaussian1d(rng);
      const Density1D q = i == 0 ? gaussian1d(0, 1) : random_gaussian1d(rng);
      const double t1 = tkl1d(p1, q), t2 = tkl1d(p2, q);
      for (int k = 1; k <= 9; ++k) {
        const double lambda = k / 10.0;
        const double lhs = tkl1d(displacement_interpolate(p1, p2, lambda), q);
        violation = std::max(violation, excess(lhs, lambda * t1 + (1.0 - lambda) * t2 + 1e-8));
      }
    }
    return make_report("convexity.displacement", violation, 0.0, 0.0);
  });
  checks.push_back([&](Rng&) {
    const double lhs =
        tkl1d(displacement_interpolate(gaussian1d(0, 4), gaussian1d(0, 0.25), 0.5), gaussian1d(0, 1));
    return make_report("convexity.hand_case", lhs, 0.25 - std::log(1.25), 1e-9);
  });

  // Transport JS.
  checks.push_back([&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Density1D p = random_gaussian1d(rng), q = random_positive_power(rng);
      worst = std::max(worst, std::abs(transport_js_1d(p, q, cfg, inner) -
                                       transport_js_1d(q, p, cfg, inner)));
      const int d = 1 + i % 4;
      const GaussianDensity x = centered(random_spd(rng, d)), y = centered(random_spd(rng, d));
      worst = std::max(worst, std::abs(transport_js_gaussian(x, y) - transport_js_gaussian(y, x)));
    }
    return make_report("tjs.symmetry", worst, 0.0, 1e-9);
  });
  checks.push_back([&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const Density1D p = random_gaussian1d(rng), q = random_positive_power(rng);
      const Density1D z = displacement_interpolate(p, q, 0.5);
      const double assembled = 0.5 * tkl1d(p, z) + 0.5 * tkl1d(q, z);
      worst = std::max(worst, std::abs(transport_js_1d(p, q, cfg, inner) - assembled));
    }
    return make_report("tjs.midpoint_assembly", worst, 0.0, 1e-7);
  });
  checks.push_back([&](Rng&) {
    return make_report("tjs.gaussian_closed_form",
                       transport_js_gaussian(GaussianDensity(0, 4), GaussianDensity(0, 1)),
                       0.5 * std::log(9.0 / 8.0), 1e-9);
  });
  checks.push_back([&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const int d = 1 + i % 5;
      const GaussianDensity x = centered(random_spd(rng, d)), y = centered(random_spd(rng, d));
      const double base = transport_js_gaussian(x, y);
      worst = std::max({worst, std::abs(base - transport_js_gaussian_expanded(x, y)),
                        std::abs(base - transport_js_gaussian_quarter_form(x, y))});
    }
    return make_report("tjs.determinant_forms", worst, 0.0, 1e-10);
  });
  checks.push_back([&](Rng&) {
    const auto grid = linspace(-10.0, 10.0, 4001);
    const GridDensity p = tabulate(gaussian1d(0, 4), grid), q = tabulate(gaussian1d(0, 1), grid);
    const double js = classical_divergence_grid(ClassicalKind::js, p, q);
    const double tjs = transport_js_gaussian(GaussianDensity(0, 4), GaussianDensity(0, 1));
    return make_report("tjs.differs_from_classical_js", excess(0.01, std::abs(js - tjs)), 0.0, 0.0);
  });

  // Gaussian closed forms.
  checks.push_back([&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const int d = 1 + i % 5;
      Vector a(d), b(d);
      for (int k = 0; k < d; ++k) {
        a(k) = rng.log_uniform(0.1, 10.0);
        b(k) = rng.log_uniform(0.1, 10.0);
      }
      // A shared rotation keeps the pair commuting without being diagonal.
      const Matrix q = Eigen::HouseholderQR<Matrix>(random_spd(rng, d)).householderQ();
      const GaussianDensity x = centered(q * a.asDiagonal() * q.transpose());
      const GaussianDensity y = centered(q * b.asDiagonal() * q.transpose());
      worst = std::max({worst,
                        std::abs(transport_kl_gaussian(x, y) - transport_kl_gaussian_commuting(x, y)),
                        std::abs(transport_js_gaussian(x, y) - transport_js_gaussian_commuting(x, y))});
    }
    return make_report("gaussian.commuting_fast_path", worst, 0.0, 1e-10);
  });
  checks.push_back([&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int d = 1 + i % 5;
      const Matrix sx = random_spd(rng, d), sy = random_spd(rng, d);
      const auto t = ot_map_gaussian(centered(sx), centered(sy));
      worst = std::max(worst, t.pushforward_residual(sx, sy));
    }
    return make_report("gaussian.pushforward", worst, 0.0, 1e-8);
  });
  checks.push_back([&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const int d = 1 + i % 4;
      const Matrix sx = random_spd(rng, d), sy = random_spd(rng, d);
      Vector mx(d), my(d);
      for (int k = 0; k < d; ++k) {
        mx(k) = rng.uniform(-5.0, 5.0);
        my(k) = rng.uniform(-5.0, 5.0);
      }
      worst = std::max(worst, std::abs(tkl_gauss(GaussianDensity(mx, sx), GaussianDensity(my, sy)) -
                                       tkl_gauss(centered(sx), centered(sy))));
    }
    return make_report("gaussian.mean_invariance", worst, 0.0, 1e-12);
  });
  checks.push_back([&](Rng&) {
    double asym = 0.0;
    double sym = 0.0;
    for (double a : scales) {
      for (double b : scales) {
        const GaussianDensity x(0, a * a), y(0, b * b);
        asym = std::max(asym, std::abs(tkl_gauss(x, y) - tkl_gauss(y, x)));
        sym = std::max(sym, std::abs(wasserstein2_gaussian(x, y) - wasserstein2_gaussian(y, x)));
      }
    }
    return make_report("gaussian.tkl_asymmetric_w2_symmetric",
                       std::max(sym, excess(0.01, asym)), 0.0, 1e-12);
  });

  // Transport-coordinate KL and the monotone map.
  checks.push_back([&](Rng&) {
    const auto grid = linspace(-10.0, 10.0, 4001);
    double worst = 0.0;
    const std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> pairs{
        {{0, 4}, {0, 1}}, {{0, 1}, {0, 4}}, {{1, 1}, {0, 1}}, {{0.5, 2.25}, {-0.5, 1.5}}};
    for (const auto& [pp, qq] : pairs) {
      const GridDensity p = tabulate(gaussian1d(pp.first, pp.second), grid);
      const GridDensity q = tabulate(gaussian1d(qq.first, qq.second), grid);
      worst = std::max(worst, std::abs(kl_in_transport_coordinates(p, q) -
                                       classical_divergence_grid(ClassicalKind::kl, p, q)));
    }
    return make_report("kl_transport_coordinates.gaussian_grids", worst, 0.0, 5e-3);
  });
  checks.push_back([&](Rng&) {
    const auto unit = linspace(0.0, 1.0, 1001);
    const auto wide = linspace(-10.0, 10.0, 4001);
    const GridDensity u01 = tabulate(uniform1d(0, 1), unit);
    const GridDensity u02 = tabulate(uniform1d(0, 2), linspace(0.0, 2.0, 2001));
    const GridDensity n1 = tabulate(gaussian1d(0, 1), wide), n4 = tabulate(gaussian1d(0, 4), wide);
    const double worst = std::max({pushforward_mass_error(monotone_map_from_grids(u01, u01), u01, u01),
                                   pushforward_mass_error(monotone_map_from_grids(u02, u01), u02, u01),
                                   pushforward_mass_error(monotone_map_from_grids(n4, n1), n4, n1)});
    return make_report("monotone_map.pushforward_mass", worst, 0.0, 2e-3);
  });
  checks.push_back([&](Rng&) {
    const auto wide = linspace(-10.0, 10.0, 4001);
    const MapTable m =
        monotone_map_from_grids(tabulate(gaussian1d(0, 4), wide), tabulate(gaussian1d(0, 1), wide));
    double worst = 0.0;
    for (std::size_t i = 0; i < m.x.size(); ++i) {
      if (std::abs(m.x[i]) <= 3.0) worst = std::max(worst, std::abs(m.t[i] - 2.0 * m.x[i]));
    }
    return make_report("monotone_map.gaussian_scaling", worst, 0.0, 1e-3);
  });

  // Energies with worked values.
  checks.push_back([&](Rng&) {
    return make_report("energy.interaction_square_kernel",
                       interaction_energy_divergence(squared_distance_kernel(), gaussian1d(0, 4),
                                                     gaussian1d(0, 1), cfg, inner),
                       2.0, 1e-3);
  });
  checks.push_back([&](Rng&) {
    return make_report("energy.quadratic_entropy_uniform",
                       entropy_divergence(quadratic_entropy(), uniform1d(0, 2), uniform1d(0, 1), cfg,
                                          inner),
                       0.25, 1e-9);
  });

  std::vector<CheckReport> reports = parallel_map<CheckReport>(
      checks.size(),
      [&](std::size_t i) {
        Rng rng(splitmix(seed ^ splitmix(i)));
        return checks[i](rng);
      },
      options.exec);
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return reports;
}

}  // namespace tbregman
