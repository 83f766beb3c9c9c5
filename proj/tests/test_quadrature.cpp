#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tbregman/error.hpp"
#include "tbregman/kernels.hpp"
#include "tbregman/quadrature.hpp"

using namespace tbregman;
using doctest::Approx;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n - 1 exactly") {
  const auto& gl = gauss_legendre(8);
  double s = 0.0;
  for (std::size_t i = 0; i < gl.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 14);
  CHECK(s == Approx(2.0 / 15.0).epsilon(1e-14));
  CHECK(std::accumulate(gl.weights.begin(), gl.weights.end(), 0.0) == Approx(2.0).epsilon(1e-15));
  CHECK(&gauss_legendre(8) == &gl);  // cached
}

TEST_CASE("unit interval rule: ascending nodes, unit mass, tails reach the floor") {
  QuadratureConfig cfg;
  for (auto scheme : {QuadratureScheme::gauss_legendre, QuadratureScheme::midpoint}) {
    cfg.scheme = scheme;
    const auto rule = unit_interval_rule(cfg);
    CHECK(std::is_sorted(rule.nodes.begin(), rule.nodes.end()));
    CHECK(rule.nodes.front() > 0.0);
    CHECK(rule.nodes.back() < 1.0);
    CHECK(rule.nodes.front() < 1e-14);
    CHECK(pairwise_sum(rule.weights) == Approx(1.0 - 2e-15).epsilon(1e-12));
  }
}

TEST_CASE("tails can be switched off by setting the floor to the clip") {
  QuadratureConfig cfg;
  cfg.tail_floor = cfg.clip;
  const auto rule = unit_interval_rule(cfg);
  CHECK(rule.size() == static_cast<std::size_t>(cfg.nodes));
  CHECK(rule.nodes.front() > cfg.clip);
  CHECK(pairwise_sum(rule.weights) == Approx(1.0 - 2.0 * cfg.clip).epsilon(1e-13));
}

TEST_CASE("log integrand converges with the tail panels") {
  // int_0^1 log u du = -1; clipping alone misses ~1.5e-5 here. The residual
  // ~5e-10 comes from the core panel resolving log near its clipped end.
  const auto rule = unit_interval_rule(QuadratureConfig{});
  CHECK(std::abs(integrate(rule, [](double u) { return std::log(u); }) + 1.0) < 1e-9);
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  cfg.nodes = 8;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);
  cfg = {};
  cfg.clip = 0.02;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);
  cfg = {};
  cfg.tail_floor = 1e-3;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);
  CHECK(parse_scheme("gl") == QuadratureScheme::gauss_legendre);
  CHECK(parse_scheme(to_string(QuadratureScheme::midpoint)) == QuadratureScheme::midpoint);
  CHECK_THROWS_AS(parse_scheme("simpson"), InvalidArgumentError);
}

TEST_CASE("pairwise sum is exact on representable data and order-fixed") {
  std::vector<double> v(1000);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(pairwise_sum(v) == 500500.0);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  const auto rule = unit_interval_rule(QuadratureConfig{});
  auto f = [](double u) { return std::sin(40.0 * u) / (u + 0.1) + std::log(u); };
  const double s = integrate(rule, f, Execution::serial);
  const double p = integrate(rule, f, Execution::parallel);
  CHECK(s == p);

  QuadratureConfig small;
  small.interaction_nodes = 64;
  const auto trule = interaction_rule(small);
  auto g = [&](std::size_t i, std::size_t j) {
    return std::abs(trule.nodes[i] - trule.nodes[j]) + trule.nodes[i] * trule.nodes[j];
  };
  CHECK(integrate_tensor(trule, g, 1e-4, Execution::serial) ==
        integrate_tensor(trule, g, 1e-4, Execution::parallel));
}

TEST_CASE("tensor rule excludes the diagonal band") {
  QuadratureConfig cfg;
  cfg.interaction_nodes = 128;
  const auto rule = interaction_rule(cfg);
  const double all = integrate_tensor(rule, [](std::size_t, std::size_t) { return 1.0; }, 0.0);
  const double banded = integrate_tensor(rule, [](std::size_t, std::size_t) { return 1.0; }, 0.1);
  CHECK(all == Approx(1.0).epsilon(1e-12));
  // Area of |u - v| < 0.1 is 0.19.
  CHECK(banded == Approx(0.81).epsilon(2e-2));
}

TEST_CASE("non-finite integrands and exceptions report the lowest failing node") {
  const auto rule = unit_interval_rule(QuadratureConfig{});
  for (auto exec : {Execution::serial, Execution::parallel}) {
    CHECK_THROWS_AS(integrate(rule, [](double u) { return u > 0.5 ? NAN : 1.0; }, exec),
                    QuadratureError);
    try {
      integrate(rule, [](double u) -> double {
        if (u > 0.25) throw std::runtime_error(std::to_string(u));
        return 0.0;
      }, exec);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      const auto first = *std::find_if(rule.nodes.begin(), rule.nodes.end(),
                                       [](double u) { return u > 0.25; });
      CHECK(std::string(e.what()) == std::to_string(first));
    }
  }
}

TEST_CASE("parallel_map keeps index order") {
  const auto v = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); },
                                   Execution::parallel);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
}
