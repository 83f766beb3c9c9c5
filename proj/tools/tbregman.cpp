#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tbregman/cli.hpp"
#include "tbregman/error.hpp"

namespace cli = tbregman::cli;

int main(int argc, char** argv) {
  CLI::App app{"Transport Bregman divergences: sweeps, comparisons and self-checks"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("gaussian-sweep", "CSV of divergences between 1D Gaussians");
  std::string sigma_x = "0.2:3.0:57", sigma_y = "0.2:3.0:57", divergences = "kl,tkl,tjs,w2";
  std::string sweep_out;
  sweep->add_option("--sigma-x", sigma_x, "standard deviation range min:max:steps")
      ->capture_default_str();
  sweep->add_option("--sigma-y", sigma_y, "standard deviation range min:max:steps")
      ->capture_default_str();
  sweep->add_option("--divergences", divergences, "subset of kl,tkl,tjs,w2")->capture_default_str();
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  auto* compare = app.add_subcommand("compare", "every applicable divergence between two densities");
  std::string p_spec, q_spec, config_path;
  std::optional<int> nodes;
  std::optional<double> clip;
  compare->add_option("--p", p_spec, "gaussian:MEAN:VAR | uniform:A:B | grid:PATH | samples:PATH");
  compare->add_option("--q", q_spec, "reference density, same syntax as --p");
  compare->add_option("--nodes", nodes, "quadrature core nodes");
  compare->add_option("--clip", clip, "quadrature tail clip");
  compare->add_option("--config", config_path, "key = value file (flags take precedence)");

  auto* verify = app.add_subcommand("verify", "run the property suite");
  std::uint64_t seed = 0;
  std::string verify_out;
  verify->add_option("--seed", seed, "pseudo-random seed")->capture_default_str();
  verify->add_option("--out", verify_out, "optional CSV report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kSuccess : cli::kUsageError;
  }

  try {
    if (*sweep) {
      cli::SweepSpec spec;
      spec.sigma_x = cli::parse_range(sigma_x);
      spec.sigma_y = cli::parse_range(sigma_y);
      spec.divergences = cli::parse_divergence_list(divergences);
      std::ofstream out(sweep_out, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << sweep_out << '\n';
        return cli::kUsageError;
      }
      cli::write_sweep_csv(spec, out);
      return cli::kSuccess;
    }
    if (*compare) {
      cli::CompareConfig cfg;
      if (!config_path.empty()) cfg = cli::load_compare_config(config_path);
      if (!p_spec.empty()) cfg.p = p_spec;
      if (!q_spec.empty()) cfg.q = q_spec;
      if (nodes) cfg.quadrature.nodes = *nodes;
      if (clip) cfg.quadrature.clip = *clip;
      if (cfg.quadrature.tail_floor > cfg.quadrature.clip) cfg.quadrature.tail_floor = cfg.quadrature.clip;
      if (!cfg.p || !cfg.q) {
        std::cerr << "error: compare needs --p and --q (or p and q in --config)\n";
        return cli::kUsageError;
      }
      const auto p = cli::resolve(cli::parse_density_spec(*cfg.p));
      const auto q = cli::resolve(cli::parse_density_spec(*cfg.q));
      cli::run_compare(p, q, cfg.quadrature, std::cout);
      return cli::kSuccess;
    }
    std::optional<std::filesystem::path> csv;
    if (!verify_out.empty()) csv = verify_out;
    return cli::run_verify(seed, std::cout, csv);
  } catch (const tbregman::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsageError;
  }
}
