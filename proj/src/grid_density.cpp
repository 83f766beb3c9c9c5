#include "tbregman/grid_density.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>
#include <string>

#include "tbregman/density1d.hpp"
#include "tbregman/error.hpp"

namespace tbregman {

namespace {

// Index i of the cell [x_i, x_{i+1}] containing t (clamped to the table).
std::size_t cell_of(std::span<const double> xs, double t) {
  auto it = std::upper_bound(xs.begin(), xs.end(), t);
  if (it == xs.begin()) return 0;
  auto i = static_cast<std::size_t>(std::distance(xs.begin(), it)) - 1;
  return std::min(i, xs.size() - 2);
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

GridDensity::GridDensity(std::vector<double> x, std::vector<double> pdf)
    : x_(std::move(x)), pdf_(std::move(pdf)) {
  if (x_.size() < 2 || x_.size() != pdf_.size()) {
    throw InvalidArgumentError("grid density needs at least two (x, pdf) pairs of equal length");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(pdf_[i]) || pdf_[i] < 0.0) {
      throw InvalidArgumentError("grid density values must be finite with pdf >= 0");
    }
    if (i > 0 && !(x_[i] > x_[i - 1])) {
      throw InvalidArgumentError("grid abscissae must be strictly increasing");
    }
  }
  cdf_.assign(x_.size(), 0.0);
  for (std::size_t i = 1; i < x_.size(); ++i) {
    cdf_[i] = cdf_[i - 1] + 0.5 * (pdf_[i] + pdf_[i - 1]) * (x_[i] - x_[i - 1]);
  }
  input_mass_ = cdf_.back();
  if (!(input_mass_ > 0.0)) throw InvalidArgumentError("grid density has zero total mass");
  for (auto& v : pdf_) v /= input_mass_;
  for (auto& c : cdf_) c /= input_mass_;
  cdf_.back() = 1.0;
}

double GridDensity::pdf(double x) const {
  if (!(x >= x_.front() && x <= x_.back())) return 0.0;
  const auto i = cell_of(x_, x);
  const double f = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return pdf_[i] + f * (pdf_[i + 1] - pdf_[i]);
}

double GridDensity::cdf(double x) const {
  if (x <= x_.front()) return 0.0;
  if (x >= x_.back()) return 1.0;
  const auto i = cell_of(x_, x);
  const double f = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return cdf_[i] + f * (cdf_[i + 1] - cdf_[i]);
}

double GridDensity::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "grid quantile: probability level " << u << " outside (0, 1)";
    throw DomainError(os.str());
  }
  // First cumulative entry strictly above u; the cell below it has positive
  // mass, so zero-density plateaus are never interpolated across.
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto j = static_cast<std::size_t>(std::distance(cdf_.begin(), it));
  const std::size_t i = j - 1;
  const double f = (u - cdf_[i]) / (cdf_[j] - cdf_[i]);
  return x_[i] + f * (x_[j] - x_[i]);
}

double GridDensity::neg_entropy() const {
  auto term = [](double p) { return p > 0.0 ? p * std::log(p) : 0.0; };
  double s = 0.0;
  for (std::size_t i = 1; i < x_.size(); ++i) {
    s += 0.5 * (term(pdf_[i]) + term(pdf_[i - 1])) * (x_[i] - x_[i - 1]);
  }
  return s;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw InvalidArgumentError("linspace needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = (a * (n - 1 - i) + b * i) / (n - 1);
  }
  out.front() = a;
  out.back() = b;
  return out;
}

GridDensity tabulate(const std::function<double(double)>& pdf, std::vector<double> grid) {
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), pdf);
  return GridDensity(std::move(grid), std::move(values));
}

GridDensity tabulate(const Density1D& density, std::vector<double> grid) {
  if (!density.has_pdf()) {
    throw InvalidArgumentError("cannot tabulate density '" + density.label() +
                               "': it carries no pdf");
  }
  return tabulate([&](double x) { return density.pdf(x); }, std::move(grid));
}

std::pair<GridDensity, GridDensity> on_common_grid(const GridDensity& p, const GridDensity& q) {
  if (p.same_grid(q)) return {p, q};
  std::vector<double> xs(p.x().begin(), p.x().end());
  xs.insert(xs.end(), q.x().begin(), q.x().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return {tabulate([&](double x) { return p.pdf(x); }, xs),
          tabulate([&](double x) { return q.pdf(x); }, xs)};
}

GridDensity load_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot open grid file " + path.string());
  std::vector<double> xs, ps;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    std::istringstream row(body);
    row.imbue(std::locale::classic());
    double x = 0.0, p = 0.0;
    std::string extra;
    if (!(row >> x >> p) || (row >> extra)) {
      throw InvalidArgumentError(path.string() + ":" + std::to_string(lineno) +
                                 ": expected two numeric columns (x pdf)");
    }
    xs.push_back(x);
    ps.push_back(p);
  }
  return GridDensity(std::move(xs), std::move(ps));
}

void save_grid_file(const GridDensity& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgumentError("cannot write grid file " + path.string());
  out.imbue(std::locale::classic());
  out.precision(17);
  out << "# x pdf\n";
  for (std::size_t i = 0; i < grid.x().size(); ++i) {
    out << grid.x()[i] << ' ' << grid.pdf_values()[i] << '\n';
  }
}

std::vector<double> load_samples_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot open samples file " + path.string());
  std::vector<double> xs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    std::istringstream row(body);
    row.imbue(std::locale::classic());
    double x = 0.0;
    std::string extra;
    if (!(row >> x) || (row >> extra)) {
      throw InvalidArgumentError(path.string() + ":" + std::to_string(lineno) +
                                 ": expected one numeric value per line");
    }
    xs.push_back(x);
  }
  return xs;
}

}  // namespace tbregman
