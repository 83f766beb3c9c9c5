#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle_values.hpp"
#include "tbregman/cli.hpp"
#include "tbregman/error.hpp"

using namespace tbregman;
using namespace tbregman::cli;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

std::string compare_output(const std::string& p, const std::string& q, QuadratureConfig cfg = {}) {
  std::ostringstream out;
  run_compare(resolve(parse_density_spec(p)), resolve(parse_density_spec(q)), cfg, out);
  return out.str();
}

std::string row(const std::string& table, const std::string& name) {
  for (const auto& l : lines(table)) {
    if (l.rfind(name + " ", 0) == 0) return l;
  }
  return {};
}

}  // namespace

TEST_CASE("density specs") {
  const auto g = parse_density_spec("gaussian:1.5:4");
  CHECK(g.kind == DensitySpec::Kind::gaussian);
  CHECK(g.mean == std::vector<double>{1.5});
  CHECK(g.variance == std::vector<double>{4});
  const auto mv = resolve(parse_density_spec("gaussian:0,1:2,0.5,0.5,1"));
  CHECK(mv.gaussian->dim() == 2);
  CHECK_FALSE(mv.density.has_value());
  CHECK(resolve(parse_density_spec("gaussian:0,1:2,3")).gaussian->covariance()(1, 1) == 3.0);
  CHECK(parse_density_spec("uniform:-1:2").b == 2.0);
  CHECK(parse_density_spec("grid:/tmp/x.txt").path == "/tmp/x.txt");
  CHECK_THROWS_AS(parse_density_spec("gaussian:0"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_density_spec("cauchy:0:1"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_density_spec("gaussian:a:1"), InvalidArgumentError);
  CHECK_THROWS_AS(resolve(parse_density_spec("gaussian:0,0:1,2,3")), DimensionMismatchError);
  CHECK_THROWS_AS(resolve(parse_density_spec("gaussian:0:-1")), NotSpdError);
  CHECK_THROWS_AS(resolve(parse_density_spec("samples:/nonexistent/file")), InvalidArgumentError);
}

TEST_CASE("sweep ranges and divergence lists") {
  const auto r = parse_range("0.5:2:4");
  CHECK(r.values() == std::vector<double>{0.5, 1.0, 1.5, 2.0});
  CHECK_THROWS_AS(parse_range("0:1:3"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_range("1:2:1"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_range("1:2"), InvalidArgumentError);
  CHECK(parse_divergence_list("w2,kl") == std::vector<std::string>{"kl", "w2"});
  CHECK_THROWS_AS(parse_divergence_list("kl,hellinger"), InvalidArgumentError);
}

TEST_CASE("number formatting is fixed at 9 significant digits") {
  CHECK(format_number(0.30685281944005469) == "0.306852819");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(1.5e-12) == "1.5e-12");
}

TEST_CASE("gaussian sweep CSV") {
  SweepSpec spec;
  std::ostringstream out;
  write_sweep_csv(spec, out);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 1 + 57 * 57);
  CHECK(rows[0] == "sigma_x,sigma_y,kl,tkl,tjs,w2");

  bool found_11 = false, found_21 = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    REQUIRE(f.size() == 6);
    if (f[0] == "1" && f[1] == "1") {
      found_11 = true;
      for (int k = 2; k < 6; ++k) CHECK(std::abs(std::stod(f[k])) < 1e-12);
    }
    if (f[0] == "2" && f[1] == "1") {
      found_21 = true;
      CHECK(std::abs(std::stod(f[2]) - oracle::kKl_2_1) < 1e-6);
      CHECK(std::abs(std::stod(f[3]) - oracle::kTkl_2_1) < 1e-9);
    }
  }
  CHECK(found_11);
  CHECK(found_21);

  std::ostringstream again;
  write_sweep_csv(spec, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("sweep columns follow the requested divergences") {
  SweepSpec spec;
  spec.sigma_x = parse_range("0.5:3:10");
  spec.sigma_y = parse_range("0.5:3:10");
  spec.divergences = parse_divergence_list("tjs,tkl");
  std::ostringstream out;
  write_sweep_csv(spec, out);
  const auto rows = lines(out.str());
  CHECK(rows.size() == 101);
  CHECK(rows[0] == "sigma_x,sigma_y,tkl,tjs");
}

TEST_CASE("compare: Gaussians") {
  const auto t = compare_output("gaussian:0:4", "gaussian:0:1");
  CHECK(row(t, "tkl").find("0.306852819") != std::string::npos);
  CHECK(row(t, "kl").find("0.806852819") != std::string::npos);
  CHECK(row(t, "transport_cross_entropy").find("n/a (q is not grid-backed)") != std::string::npos);
  CHECK(t.find("quadrature: scheme=gauss-legendre nodes=2048 clip=1e-06") != std::string::npos);

  const auto same = compare_output("uniform:0:2", "uniform:0:2");
  for (const char* name : {"w2", "tkl", "tjs", "kl", "js"}) {
    INFO(name);
    CHECK(row(same, name).find(" 0") != std::string::npos);
  }

  const auto mv = compare_output("gaussian:0,0:9,1", "gaussian:1,1:1,4");
  CHECK(row(mv, "tkl").find("1.09453489") != std::string::npos);
  CHECK(row(mv, "js").find("n/a") != std::string::npos);

  CHECK_THROWS_AS(compare_output("gaussian:0,0:1,1", "uniform:0:1"), InvalidArgumentError);
}

TEST_CASE("compare: samples and grids") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto samples = dir / "tbregman_cli_samples.txt";
  {
    std::ofstream f(samples);
    for (double x : {-1.2, -0.4, 0.1, 0.3, 0.9, 1.7, -0.8}) f << x << '\n';
  }
  const auto t = compare_output("samples:" + samples.string(), "gaussian:0:1");
  CHECK(row(t, "tkl").find("n/a") == std::string::npos);
  CHECK(row(t, "kl").find("n/a (no pdf") != std::string::npos);

  const auto grid = dir / "tbregman_cli_grid.txt";
  save_grid_file(tabulate(gaussian1d(0, 1), linspace(-10, 10, 4001)), grid);
  const auto g = compare_output("gaussian:0:4", "grid:" + grid.string());
  const auto tce = row(g, "transport_cross_entropy");
  REQUIRE(tce.find("n/a") == std::string::npos);

  // A reference that misses p's support: KL becomes an n/a row, the table still prints.
  const auto u = compare_output("uniform:0:2", "uniform:0:1");
  CHECK(row(u, "kl").find("n/a (error:") != std::string::npos);
  CHECK(row(u, "js").find("n/a") == std::string::npos);
  std::filesystem::remove(samples);
  std::filesystem::remove(grid);
}

TEST_CASE("compare config files round-trip") {
  CompareConfig cfg;
  cfg.p = "gaussian:0:4";
  cfg.q = "uniform:-1:1";
  cfg.quadrature.nodes = 512;
  cfg.quadrature.scheme = QuadratureScheme::midpoint;
  cfg.quadrature.clip = 3.5e-5;
  cfg.quadrature.tail_floor = 1e-12;
  cfg.quadrature.interaction_nodes = 100;
  cfg.quadrature.diagonal_clip = 2e-4;
  std::stringstream text;
  write_compare_config(cfg, text);
  const auto back = parse_compare_config(text);
  CHECK(back.p == cfg.p);
  CHECK(back.q == cfg.q);
  CHECK(back.quadrature.nodes == 512);
  CHECK(back.quadrature.scheme == QuadratureScheme::midpoint);
  CHECK(back.quadrature.clip == cfg.quadrature.clip);
  CHECK(back.quadrature.tail_floor == cfg.quadrature.tail_floor);
  CHECK(back.quadrature.interaction_nodes == 100);
  CHECK(back.quadrature.diagonal_clip == cfg.quadrature.diagonal_clip);

  std::stringstream comments("# only a comment\n\n  nodes = 64   # trailing\n");
  CHECK(parse_compare_config(comments).quadrature.nodes == 64);
  std::stringstream unknown("colour = blue\n");
  CHECK_THROWS_AS(parse_compare_config(unknown), InvalidArgumentError);
  std::stringstream bad("nodes = 4\n");
  CHECK_THROWS_AS(parse_compare_config(bad), InvalidArgumentError);
}

TEST_CASE("verify exit codes and CSV") {
  std::ostringstream out;
  const auto csv = std::filesystem::temp_directory_path() / "tbregman_cli_verify.csv";
  CHECK(run_verify(0, out, csv) == kSuccess);
  const auto text = lines(out.str());
  CHECK(text.back().find("checks passed (seed 0)") != std::string::npos);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header == "name,measured,expected,tolerance,status");

  std::ostringstream again;
  run_verify(0, again);
  CHECK(again.str() == out.str());

  SuiteOptions faulty;
  faulty.tkl_sign = -1.0;
  std::ostringstream bad;
  CHECK(run_verify(0, bad, std::nullopt, faulty) == kVerificationFailure);
  CHECK(bad.str().find("FAIL") != std::string::npos);
  std::filesystem::remove(csv);
}
