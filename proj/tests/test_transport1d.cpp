#include <doctest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "tbregman/error.hpp"
#include "tbregman/gaussian.hpp"
#include "tbregman/oracle.hpp"
#include "tbregman/transport1d.hpp"

using namespace tbregman;
using doctest::Approx;

TEST_CASE("W2 on quantiles") {
  const auto p = gaussian1d(0, 4), q = gaussian1d(0, 1);
  CHECK(wasserstein2_1d(p, p) == 0.0);
  CHECK(wasserstein2_1d(p, q) == Approx(1.0).epsilon(1e-6));
  CHECK(wasserstein2_1d(gaussian1d(3, 1), q) == Approx(9.0).epsilon(1e-6));
  CHECK(wasserstein2_1d(p, q) == wasserstein2_1d(q, p));
}

TEST_CASE("linear energies") {
  const auto p = gaussian1d(1, 4), q = gaussian1d(0, 1);
  CHECK(std::abs(linear_energy_divergence(square_potential(), p, q) - wasserstein2_1d(p, q)) < 1e-10);
  CHECK(linear_energy_divergence(neglog_potential(), uniform1d(0, 1), uniform1d(0, 1)) == 0.0);
  CHECK(linear_energy_divergence(neglog_potential(), power_quantile(0, 1, 2), uniform1d(0, 1)) ==
        Approx(0.5).epsilon(1e-6));
}

TEST_CASE("linear energy is linear in the potential") {
  const auto p = power_quantile(0.5, 2.0, 1.5), q = uniform1d(0.2, 1.7);
  const auto v1 = xlogx_potential(), v2 = neglog_potential();
  const double a = 2.5;
  const double combined = linear_energy_divergence(v1 + v2.scaled(a), p, q);
  CHECK(std::abs(combined - linear_energy_divergence(v1, p, q) -
                 a * linear_energy_divergence(v2, p, q)) < 1e-9);
}

TEST_CASE("linear energy names the node when a quantile leaves the domain") {
  try {
    linear_energy_divergence(neglog_potential(), gaussian1d(0, 1), uniform1d(0, 1));
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("quadrature node u =") != std::string::npos);
  }
}

TEST_CASE("interaction energies") {
  const auto p = gaussian1d(0, 4), q = gaussian1d(0, 1);
  CHECK(interaction_energy_divergence(squared_distance_kernel(), p, p) == 0.0);
  CHECK(std::abs(interaction_energy_divergence(squared_distance_kernel(), shifted(q, 3.0), q)) < 1e-8);
  CHECK(interaction_energy_divergence(squared_distance_kernel(), p, q) == Approx(2.0).epsilon(1e-3));
  const double log_kernel = interaction_energy_divergence(log_distance_kernel(), p, q);
  CHECK(std::abs(log_kernel - oracle::kLogKernel_2_1) < 1e-3);
}

TEST_CASE("log kernel: halving the diagonal clip moves the value by < 1e-3") {
  const auto p = power_quantile(0, 2, 1.5), q = gaussian1d(0, 1);
  QuadratureConfig cfg;
  const double a = interaction_energy_divergence(log_distance_kernel(), p, q, cfg);
  cfg.diagonal_clip /= 2;
  const double b = interaction_energy_divergence(log_distance_kernel(), p, q, cfg);
  CHECK(std::abs(a - b) < 1e-3);
}

TEST_CASE("entropy energies") {
  CHECK(entropy_divergence(quadratic_entropy(), uniform1d(0, 2), uniform1d(0, 1)) ==
        Approx(0.25).epsilon(1e-12));
  const auto p = gaussian1d(0, 4), q = gaussian1d(0, 1);
  CHECK(entropy_divergence(quadratic_entropy(), p, p) == 0.0);
  CHECK(entropy_divergence(boltzmann_entropy(), p, q) == Approx(oracle::kTkl_2_1).epsilon(1e-6));
  CHECK(std::abs(entropy_divergence(quadratic_entropy(), p, q) -
                 oracle::kQuadraticEntropyGauss_2_1) < 1e-6);
}

TEST_CASE("entropy potentials: tilde transform is convex") {
  std::vector<double> pts;
  for (double z = 0.01; z < 100; z *= 1.3) pts.push_back(z);
  CHECK(boltzmann_entropy().min_tilde_second_difference(pts) >= -1e-9);
  CHECK(quadratic_entropy().min_tilde_second_difference(pts) >= -1e-9);
  CHECK(boltzmann_entropy().tilde().value(2.0) == Approx(-std::log(2.0)));
  CHECK_NOTHROW(EntropyPotential{square_potential()});
  const ScalarPotential bounded(
      "bounded", [](double z) { return -std::log(1.0 - z); }, [](double z) { return 1.0 / (1.0 - z); },
      Interval{0.0, 1.0});
  CHECK_THROWS_AS(EntropyPotential{bounded}, InvalidArgumentError);
}

TEST_CASE("transport KL") {
  const auto p = gaussian1d(0, 4), q = gaussian1d(0, 1);
  CHECK(transport_kl_1d(p, p) == 0.0);
  CHECK(std::abs(transport_kl_1d(gaussian1d(3, 1), q)) < 1e-10);
  CHECK(transport_kl_1d(p, q) == Approx(oracle::kTkl_2_1).epsilon(1e-6));
  CHECK(std::abs(transport_kl_1d(gaussian1d(0, 0.25), gaussian1d(0, 9)) - oracle::kTkl_05_3) < 1e-6);
  for (const auto& [a, b] : {std::pair{power_quantile(0.3, 1, 2.4), q}, {p, uniform1d(-1, 3)}}) {
    CHECK(std::abs(transport_kl_1d(a, b) - entropy_divergence(boltzmann_entropy(), a, b)) < 1e-12);
  }
}

TEST_CASE("transport KL is finite when one quantile derivative dwarfs the other") {
  // Q_p' ~ u^{1.4} against Gaussian tails: the ratio underflows relative to 1.
  const double v = transport_kl_1d(power_quantile(0.3, 1, 2.4), gaussian1d(0, 1));
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
}

TEST_CASE("transport JS") {
  const auto p = gaussian1d(0, 4), q = gaussian1d(0, 1);
  CHECK(transport_js_1d(p, p) == 0.0);
  CHECK(transport_js_1d(p, q) == Approx(oracle::kTjs_2_1).epsilon(1e-6));
  CHECK(std::abs(transport_js_1d(gaussian1d(0, 0.25), gaussian1d(0, 9)) - oracle::kTjs_05_3) < 1e-6);
  const auto r = power_quantile(-1, 3, 0.7);
  CHECK(transport_js_1d(p, r) == transport_js_1d(r, p));
  const auto mid = displacement_interpolate(p, r, 0.5);
  CHECK(std::abs(transport_js_1d(p, r) - 0.5 * transport_kl_1d(p, mid) - 0.5 * transport_kl_1d(r, mid)) < 1e-7);
}

TEST_CASE("degenerate maps are rejected") {
  const auto flat = from_quantile([](double u) { return u < 0.5 ? 0.0 : u; },
                                  [](double u) { return u < 0.5 ? 0.0 : 1.0; }, Interval{0, 1});
  CHECK_THROWS_AS(transport_kl_1d(flat, uniform1d(0, 1)), DegenerateQuantileError);
  CHECK_THROWS_AS(transport_js_1d(uniform1d(0, 1), flat), DegenerateQuantileError);
}

TEST_CASE("transport cross entropy") {
  const auto grid = linspace(-10, 10, 4001);
  const auto n1 = tabulate(gaussian1d(0, 1), grid);
  CHECK(transport_cross_entropy_1d(from_grid(n1), n1) == Approx(n1.entropy()).epsilon(1e-9));
  CHECK(std::abs(n1.entropy() - oracle::kGaussEntropy) < 1e-4);

  const auto n4 = tabulate(gaussian1d(0, 4), grid);
  const double h = transport_cross_entropy_1d(from_grid(n4), n1) - n4.entropy();
  CHECK(std::abs(h - oracle::kTkl_2_1) < 1e-4);
}

TEST_CASE("classical divergences on grids") {
  const auto grid = linspace(-10, 10, 4001);
  const auto p = tabulate(gaussian1d(0, 4), grid), q = tabulate(gaussian1d(0, 1), grid);
  CHECK(classical_divergence_grid(ClassicalKind::kl, p, p) == 0.0);
  CHECK(std::abs(classical_divergence_grid(ClassicalKind::kl, p, q) - oracle::kKl_2_1) < 1e-4);
  const double js = classical_divergence_grid(ClassicalKind::js, p, q);
  CHECK(js == classical_divergence_grid(ClassicalKind::js, q, p));
  CHECK(std::abs(js - oracle::kClassicalJs_2_1) < 1e-4);
  CHECK(js <= std::log(2.0));

  const auto narrow = tabulate(uniform1d(0, 1), linspace(0, 1, 101));
  const auto wide = tabulate(uniform1d(0, 2), linspace(0, 2, 201));
  CHECK_THROWS_AS(classical_divergence_grid(ClassicalKind::kl, wide, narrow), SupportError);
  CHECK(std::isfinite(classical_divergence_grid(ClassicalKind::js, wide, narrow)));
}

TEST_CASE("serial and parallel transport divergences agree bit for bit") {
  const auto p = power_quantile(-1, 3, 0.7), q = gaussian1d(0.5, 2);
  QuadratureConfig cfg;
  cfg.interaction_nodes = 128;
  CHECK(transport_kl_1d(p, q, cfg, Execution::serial) == transport_kl_1d(p, q, cfg, Execution::parallel));
  CHECK(transport_js_1d(p, q, cfg, Execution::serial) == transport_js_1d(p, q, cfg, Execution::parallel));
  CHECK(wasserstein2_1d(p, q, cfg, Execution::serial) == wasserstein2_1d(p, q, cfg, Execution::parallel));
  CHECK(interaction_energy_divergence(log_distance_kernel(), p, q, cfg, Execution::serial) ==
        interaction_energy_divergence(log_distance_kernel(), p, q, cfg, Execution::parallel));
}

TEST_CASE("transport_divergence dispatch") {
  const auto r = transport_divergence("tkl", gaussian1d(0, 4), gaussian1d(0, 1));
  CHECK(r.value == Approx(oracle::kTkl_2_1).epsilon(1e-6));
  CHECK(r.clip_used == 1e-6);
  CHECK(r.nodes_used > 2048);
  CHECK_THROWS_AS(transport_divergence("kl", gaussian1d(0, 4), gaussian1d(0, 1)), InvalidArgumentError);
}

TEST_CASE("nonnegativity on randomized pairs") {
  Rng rng(3);
  const auto grid = linspace(-12, 12, 2001);
  for (int i = 0; i < 10; ++i) {
    const auto g = gaussian1d(rng.uniform(-1, 1), rng.log_uniform(0.3, 3));
    const auto u = uniform1d(rng.uniform(-2, 0), rng.uniform(0.5, 2));
    const auto t = from_grid(tabulate(gaussian1d(rng.uniform(-1, 1), rng.log_uniform(0.3, 3)), grid));
    for (const auto* a : {&g, &u, &t}) {
      for (const auto* b : {&g, &u, &t}) {
        CHECK(transport_kl_1d(*a, *b) >= -1e-9);
        CHECK(transport_js_1d(*a, *b) >= -1e-9);
        CHECK(wasserstein2_1d(*a, *b) >= -1e-9);
      }
    }
  }
}
