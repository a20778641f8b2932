#include "adoprior/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "adoprior/error.hpp"

namespace adoprior {

namespace {

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::Shape, "support size mismatch: " +
                                      std::to_string(a) + " vs " +
                                      std::to_string(b));
  }
}

DiscreteDist from_log_weights(SupportPtr support, std::vector<double> logw) {
  const double top = *std::max_element(logw.begin(), logw.end());
  for (double& w : logw) w = std::exp(w - top);
  return DiscreteDist(std::move(support), std::move(logw));
}

}  // namespace

std::string atom_to_string(const Atom& atom) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* v = std::get_if<double>(&atom)) {
    os << *v;
  } else if (const auto* p = std::get_if<Point>(&atom)) {
    os << '(';
    for (std::size_t i = 0; i < p->size(); ++i) os << (i ? "," : "") << (*p)[i];
    os << ')';
  } else {
    os << std::get<std::string>(atom);
  }
  return os.str();
}

Support::Support(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw Error(ErrorCode::InvalidDistribution, "empty support");
  }
  std::vector<Atom> sorted = atoms_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidDistribution, "duplicate atom in support");
  }
}

std::shared_ptr<const Support> Support::of_values(std::span<const double> v) {
  return std::make_shared<const Support>(std::vector<Atom>(v.begin(), v.end()));
}

std::shared_ptr<const Support> Support::of_points(std::vector<Point> points) {
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (auto& p : points) atoms.emplace_back(std::move(p));
  return std::make_shared<const Support>(std::move(atoms));
}

std::shared_ptr<const Support> Support::of_ids(std::vector<std::string> ids) {
  std::vector<Atom> atoms;
  atoms.reserve(ids.size());
  for (auto& id : ids) atoms.emplace_back(std::move(id));
  return std::make_shared<const Support>(std::move(atoms));
}

std::size_t Support::find(const Atom& atom) const {
  const auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  return it == atoms_.end() ? npos : static_cast<std::size_t>(it - atoms_.begin());
}

bool same_support(const SupportPtr& a, const SupportPtr& b) {
  return a == b || (a && b && a->atoms() == b->atoms());
}

DiscreteDist::DiscreteDist(SupportPtr support, std::vector<double> weights)
    : support_(std::move(support)), mass_(std::move(weights)) {
  if (!support_) {
    throw Error(ErrorCode::InvalidDistribution, "missing support");
  }
  require_same_size(support_->size(), mass_.size());
  double total = 0.0;
  for (double w : mass_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidDistribution,
                  "weights must be finite and non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::InvalidDistribution, "all weights are zero");
  }
  for (double& w : mass_) w /= total;
}

DiscreteDist DiscreteDist::normalize(std::vector<double> weights) {
  std::vector<double> labels(weights.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<double>(i);
  if (weights.empty()) {
    throw Error(ErrorCode::InvalidDistribution, "empty weight vector");
  }
  return DiscreteDist(Support::of_values(labels), std::move(weights));
}

DiscreteDist DiscreteDist::point_mass(SupportPtr support, std::size_t index) {
  std::vector<double> w(support->size(), 0.0);
  w.at(index) = 1.0;
  return DiscreteDist(std::move(support), std::move(w));
}

DiscreteDist DiscreteDist::uniform(SupportPtr support) {
  std::vector<double> w(support->size(), 1.0);
  return DiscreteDist(std::move(support), std::move(w));
}

std::size_t DiscreteDist::argmax() const {
  return static_cast<std::size_t>(
      std::max_element(mass_.begin(), mass_.end()) - mass_.begin());
}

bool DiscreteDist::is_degenerate() const {
  return std::count_if(mass_.begin(), mass_.end(),
                       [](double m) { return m > 0.0; }) == 1;
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) h -= xlogy(v, v);
  return h;
}

double entropy(const DiscreteDist& d) { return entropy(d.masses()); }

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  require_same_size(p.size(), q.size());
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    kl += p[i] * std::log(p[i] / q[i]);
  }
  // Rounding can leave tiny negatives when p == q.
  return std::max(kl, 0.0);
}

double kl_divergence(const DiscreteDist& p, const DiscreteDist& q) {
  if (!same_support(p.support(), q.support())) {
    throw Error(ErrorCode::Shape, "kl_divergence: supports differ");
  }
  return kl_divergence(p.masses(), q.masses());
}

double cross_entropy(std::span<const double> p, std::span<const double> q) {
  require_same_size(p.size(), q.size());
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    h -= p[i] * std::log(q[i]);
  }
  return h;
}

double cross_entropy(const DiscreteDist& p, const DiscreteDist& q) {
  if (!same_support(p.support(), q.support())) {
    throw Error(ErrorCode::Shape, "cross_entropy: supports differ");
  }
  return cross_entropy(p.masses(), q.masses());
}

DiscreteDist discretize_normal(double mu, double sigma,
                               std::span<const double> grid) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw Error(ErrorCode::Parameter, "normal: sigma must be positive");
  }
  if (grid.empty()) throw Error(ErrorCode::Parameter, "normal: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::Parameter, "normal: grid must be increasing");
    }
  }
  std::vector<double> logw(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = (grid[i] - mu) / sigma;
    logw[i] = -0.5 * z * z;
  }
  return from_log_weights(Support::of_values(grid), std::move(logw));
}

DiscreteDist discretize_beta(double alpha, double beta, int n_cells) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw Error(ErrorCode::Parameter, "beta: shape parameters must be positive");
  }
  if (n_cells < 2) throw Error(ErrorCode::Parameter, "beta: need >= 2 cells");
  const std::vector<double> mid = cell_midpoints(n_cells);
  std::vector<double> logw(mid.size());
  for (std::size_t i = 0; i < mid.size(); ++i) {
    logw[i] = (alpha - 1.0) * std::log(mid[i]) +
              (beta - 1.0) * std::log1p(-mid[i]);
  }
  return from_log_weights(Support::of_values(mid), std::move(logw));
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorCode::Parameter, "linspace: n must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  // Weighted form keeps symmetric grids exactly symmetric (and hits 0).
  const double span = n - 1;
  for (int i = 0; i < n; ++i) v[i] = (lo * (span - i) + hi * i) / span;
  return v;
}

std::vector<double> cell_midpoints(int n_cells) {
  std::vector<double> v(static_cast<std::size_t>(n_cells));
  for (int k = 0; k < n_cells; ++k) v[k] = (k + 0.5) / n_cells;
  return v;
}

}  // namespace adoprior
