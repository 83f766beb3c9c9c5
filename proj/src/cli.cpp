#include "tbregman/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tbregman/error.hpp"
#include "tbregman/kernels.hpp"
#include "tbregman/transport1d.hpp"

namespace tbregman::cli {

namespace {

constexpr std::string_view kAllDivergences[] = {"kl", "tkl", "tjs", "w2"};
constexpr int kTabulationPoints = 4001;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view text, std::string_view what) {
  const auto t = trim(text);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw InvalidArgumentError(std::string(what) + ": '" + std::string(text) +
                               "' is not a finite number");
  }
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  const auto t = trim(text);
  int v = 0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgumentError(std::string(what) + ": '" + std::string(text) +
                               "' is not an integer");
  }
  return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_double(part, what));
  return out;
}

GaussianDensity make_gaussian(const DensitySpec& spec) {
  const auto d = static_cast<Eigen::Index>(spec.mean.size());
  Vector mean = Eigen::Map<const Vector>(spec.mean.data(), d);
  Matrix cov;
  if (spec.variance.size() == spec.mean.size()) {
    cov = Eigen::Map<const Vector>(spec.variance.data(), d).asDiagonal();
  } else if (spec.variance.size() == spec.mean.size() * spec.mean.size()) {
    cov = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        spec.variance.data(), d, d);
  } else {
    throw DimensionMismatchError("gaussian spec '" + spec.text + "': " +
                                 std::to_string(spec.mean.size()) + " means need " +
                                 std::to_string(spec.mean.size()) + " variances or a " +
                                 std::to_string(spec.mean.size()) + "x" +
                                 std::to_string(spec.mean.size()) + " covariance");
  }
  return GaussianDensity(std::move(mean), std::move(cov));
}

// Range holding all but ~1e-15 of the mass, with bounded supports exact.
std::pair<double, double> effective_range(const Density1D& d) {
  const double lo = d.support().bounded_below() ? d.support().lo : d.quantile(1e-15);
  const double hi = d.support().bounded_above() ? d.support().hi : d.quantile(1.0 - 1e-15);
  return {lo, hi};
}

std::optional<GridDensity> as_grid(const ResolvedDensity& r, double lo, double hi,
                                   const std::vector<double>& breaks) {
  if (r.grid) return r.grid;
  if (!r.density || !r.density->has_pdf()) return std::nullopt;
  std::vector<double> xs = linspace(lo, hi, kTabulationPoints);
  xs.insert(xs.end(), breaks.begin(), breaks.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return tabulate(*r.density, std::move(xs));
}

struct Row {
  std::string name;
  std::optional<double> value;
  std::string reason;
};

template <typename F>
Row guarded(std::string name, F&& f) {
  try {
    const double value = f();
    return {std::move(name), value, {}};
  } catch (const Error& e) {
    return {std::move(name), std::nullopt, std::string("error: ") + e.what()};
  }
}

Row na(std::string name, std::string reason) { return {std::move(name), std::nullopt, std::move(reason)}; }

std::string describe(const QuadratureConfig& cfg) {
  std::ostringstream os;
  os << "scheme=" << to_string(cfg.scheme) << " nodes=" << cfg.nodes
     << " clip=" << format_number(cfg.clip) << " tail_floor=" << format_number(cfg.tail_floor)
     << " interaction_nodes=" << cfg.interaction_nodes
     << " diagonal_clip=" << format_number(cfg.diagonal_clip);
  return os.str();
}

}  // namespace

DensitySpec parse_density_spec(std::string_view text) {
  DensitySpec spec;
  spec.text = std::string(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgumentError("density spec '" + spec.text +
                               "' must look like KIND:ARGS (gaussian, uniform, grid, samples)");
  }
  const auto kind = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  if (kind == "grid" || kind == "samples") {
    if (rest.empty()) throw InvalidArgumentError("density spec '" + spec.text + "' needs a path");
    spec.kind = kind == "grid" ? DensitySpec::Kind::grid_file : DensitySpec::Kind::samples_file;
    spec.path = std::string(rest);
    return spec;
  }
  const auto args = split(rest, ':');
  if (args.size() != 2) {
    throw InvalidArgumentError("density spec '" + spec.text + "' needs exactly two parameters");
  }
  if (kind == "gaussian") {
    spec.kind = DensitySpec::Kind::gaussian;
    spec.mean = parse_list(args[0], "gaussian mean");
    spec.variance = parse_list(args[1], "gaussian variance");
  } else if (kind == "uniform") {
    spec.kind = DensitySpec::Kind::uniform;
    spec.a = parse_double(args[0], "uniform lower end");
    spec.b = parse_double(args[1], "uniform upper end");
  } else {
    throw InvalidArgumentError("unknown density kind '" + std::string(kind) +
                               "' (expected gaussian, uniform, grid or samples)");
  }
  return spec;
}

ResolvedDensity resolve(const DensitySpec& spec) {
  ResolvedDensity r;
  r.label = spec.text;
  switch (spec.kind) {
    case DensitySpec::Kind::gaussian: {
      r.gaussian = make_gaussian(spec);
      if (r.gaussian->dim() == 1) {
        r.density = gaussian1d(r.gaussian->mean()(0), r.gaussian->covariance()(0, 0));
      }
      break;
    }
    case DensitySpec::Kind::uniform:
      r.density = uniform1d(spec.a, spec.b);
      break;
    case DensitySpec::Kind::grid_file:
      r.grid = load_grid_file(spec.path);
      r.density = from_grid(*r.grid);
      break;
    case DensitySpec::Kind::samples_file: {
      const auto samples = load_samples_file(spec.path);
      r.density = from_samples(samples);
      break;
    }
  }
  return r;
}

std::vector<double> SweepRange::values() const { return linspace(min, max, steps); }

SweepRange parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw InvalidArgumentError("range '" + std::string(text) + "' must look like min:max:steps");
  }
  SweepRange r;
  r.min = parse_double(parts[0], "range min");
  r.max = parse_double(parts[1], "range max");
  r.steps = parse_int(parts[2], "range steps");
  if (!(r.min > 0.0) || !(r.max >= r.min) || r.steps < 2) {
    throw InvalidArgumentError("range '" + std::string(text) +
                               "' needs min > 0, max >= min and steps >= 2");
  }
  return r;
}

std::vector<std::string> parse_divergence_list(std::string_view text) {
  std::vector<std::string> wanted;
  for (auto part : split(text, ',')) {
    const auto name = trim(part);
    if (std::find(std::begin(kAllDivergences), std::end(kAllDivergences), name) ==
        std::end(kAllDivergences)) {
      throw InvalidArgumentError("unknown divergence '" + std::string(name) +
                                 "' (expected kl, tkl, tjs, w2)");
    }
    wanted.emplace_back(name);
  }
  std::vector<std::string> ordered;
  for (auto name : kAllDivergences) {
    if (std::find(wanted.begin(), wanted.end(), name) != wanted.end()) ordered.emplace_back(name);
  }
  return ordered;
}

std::string format_number(double v, int digits) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(const SweepSpec& spec, std::ostream& out) {
  const auto xs = spec.sigma_x.values();
  const auto ys = spec.sigma_y.values();
  const std::size_t nx = xs.size(), ny = ys.size();
  const auto rows = parallel_map<std::string>(nx * ny, [&](std::size_t k) {
    const double sx = xs[k / ny], sy = ys[k % ny];
    const GaussianDensity x(0.0, sx * sx), y(0.0, sy * sy);
    std::string line = format_number(sx) + "," + format_number(sy);
    for (const auto& d : spec.divergences) {
      double v = 0.0;
      if (d == "kl") v = classical_kl_gaussian(x, y);
      if (d == "tkl") v = transport_kl_gaussian(x, y);
      if (d == "tjs") v = transport_js_gaussian(x, y);
      if (d == "w2") v = wasserstein2_gaussian(x, y);
      line += "," + format_number(v);
    }
    return line;
  });
  out << "sigma_x,sigma_y";
  for (const auto& d : spec.divergences) out << ',' << d;
  out << '\n';
  for (const auto& line : rows) out << line << '\n';
}

CompareConfig parse_compare_config(std::istream& in, const std::string& source) {
  CompareConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw InvalidArgumentError(where + "expected key = value");
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    try {
      if (key == "p") {
        cfg.p = std::string(value);
      } else if (key == "q") {
        cfg.q = std::string(value);
      } else if (key == "nodes") {
        cfg.quadrature.nodes = parse_int(value, key);
      } else if (key == "interaction_nodes") {
        cfg.quadrature.interaction_nodes = parse_int(value, key);
      } else if (key == "scheme") {
        cfg.quadrature.scheme = parse_scheme(value);
      } else if (key == "clip") {
        cfg.quadrature.clip = parse_double(value, key);
      } else if (key == "tail_floor") {
        cfg.quadrature.tail_floor = parse_double(value, key);
      } else if (key == "diagonal_clip") {
        cfg.quadrature.diagonal_clip = parse_double(value, key);
      } else {
        throw InvalidArgumentError("unknown key '" + std::string(key) + "'");
      }
    } catch (const InvalidArgumentError& e) {
      throw InvalidArgumentError(where + e.what());
    }
  }
  cfg.quadrature.validate();
  return cfg;
}

CompareConfig load_compare_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot open config file " + path.string());
  return parse_compare_config(in, path.string());
}

void write_compare_config(const CompareConfig& cfg, std::ostream& out) {
  if (cfg.p) out << "p = " << *cfg.p << '\n';
  if (cfg.q) out << "q = " << *cfg.q << '\n';
  const auto& qc = cfg.quadrature;
  out << "nodes = " << qc.nodes << '\n'
      << "scheme = " << to_string(qc.scheme) << '\n'
      << "clip = " << format_number(qc.clip, 17) << '\n'
      << "tail_floor = " << format_number(qc.tail_floor, 17) << '\n'
      << "interaction_nodes = " << qc.interaction_nodes << '\n'
      << "diagonal_clip = " << format_number(qc.diagonal_clip, 17) << '\n';
}

void run_compare(const ResolvedDensity& p, const ResolvedDensity& q, const QuadratureConfig& cfg,
                 std::ostream& out) {
  cfg.validate();
  const bool both_gaussian = p.gaussian && q.gaussian;
  if ((!p.density || !q.density) && !both_gaussian) {
    throw InvalidArgumentError("multivariate Gaussians can only be compared with Gaussians");
  }
  if (both_gaussian && p.gaussian->dim() != q.gaussian->dim()) {
    throw DimensionMismatchError("Gaussian dimensions differ");
  }

  std::vector<Row> rows;
  if (p.density && q.density) {
    for (const char* name : {"w2", "tkl", "tjs"}) {
      rows.push_back(guarded(name, [&] { return transport_divergence(name, *p.density, *q.density, cfg).value; }));
    }
  } else {
    rows.push_back(guarded("w2", [&] { return wasserstein2_gaussian(*p.gaussian, *q.gaussian); }));
    rows.push_back(guarded("tkl", [&] { return transport_kl_gaussian(*p.gaussian, *q.gaussian); }));
    rows.push_back(guarded("tjs", [&] { return transport_js_gaussian(*p.gaussian, *q.gaussian); }));
  }

  // Classical divergences need pdfs; Gaussians have a closed-form KL.
  std::optional<GridDensity> gp, gq;
  if (p.density && q.density) {
    const auto [plo, phi] = effective_range(*p.density);
    const auto [qlo, qhi] = effective_range(*q.density);
    const std::vector<double> breaks{plo, phi, qlo, qhi};
    const double lo = std::min(plo, qlo), hi = std::max(phi, qhi);
    gp = as_grid(p, lo, hi, breaks);
    gq = as_grid(q, lo, hi, breaks);
  }
  const std::string no_pdf = "no pdf available for " + (gp ? q.label : p.label);
  if (both_gaussian) {
    rows.push_back(guarded("kl", [&] { return classical_kl_gaussian(*p.gaussian, *q.gaussian); }));
  } else if (gp && gq) {
    rows.push_back(guarded("kl", [&] { return classical_divergence_grid(ClassicalKind::kl, *gp, *gq); }));
  } else {
    rows.push_back(na("kl", no_pdf));
  }
  if (gp && gq) {
    rows.push_back(guarded("js", [&] { return classical_divergence_grid(ClassicalKind::js, *gp, *gq); }));
  } else if (both_gaussian) {
    rows.push_back(na("js", "no closed form for multivariate Gaussians"));
  } else {
    rows.push_back(na("js", no_pdf));
  }
  if (q.grid && p.density) {
    rows.push_back(guarded("transport_cross_entropy",
                           [&] { return transport_cross_entropy_1d(*p.density, *q.grid, cfg); }));
  } else {
    rows.push_back(na("transport_cross_entropy", "q is not grid-backed"));
  }

  out << "p: " << p.label << '\n' << "q: " << q.label << '\n';
  out << "quadrature: " << describe(cfg) << '\n';
  for (const auto& r : rows) {
    std::string name = r.name;
    name.resize(std::max<std::size_t>(name.size() + 1, 25), ' ');
    out << name << (r.value ? format_number(*r.value) : "n/a (" + r.reason + ")") << '\n';
  }
}

int run_verify(std::uint64_t seed, std::ostream& out,
               const std::optional<std::filesystem::path>& csv, const SuiteOptions& options) {
  const auto reports = run_property_suite(seed, options);
  std::size_t passed = 0;
  for (const auto& r : reports) {
    std::string name = r.name;
    name.resize(std::max<std::size_t>(name.size() + 1, 42), ' ');
    out << name << "measured=" << format_number(r.measured) << " expected="
        << format_number(r.expected) << " tolerance=" << format_number(r.tolerance) << ' '
        << (r.pass ? "PASS" : "FAIL") << '\n';
    passed += r.pass ? 1 : 0;
  }
  out << passed << "/" << reports.size() << " checks passed (seed " << seed << ")\n";
  if (csv) {
    std::ofstream f(*csv);
    if (!f) throw InvalidArgumentError("cannot write " + csv->string());
    f << "name,measured,expected,tolerance,status\n";
    for (const auto& r : reports) {
      f << r.name << ',' << format_number(r.measured, 17) << ',' << format_number(r.expected, 17)
        << ',' << format_number(r.tolerance, 17) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
    }
  }
  return passed == reports.size() ? kSuccess : kVerificationFailure;
}

}  // namespace tbregman::cli
