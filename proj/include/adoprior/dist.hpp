#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace adoprior {

// A parameter point on a (possibly multi-axis) grid.
using Point = std::vector<double>;

// Atom labels: scalar values (responses, 1-D grids), grid points, or model ids.
using Atom = std::variant<double, Point, std::string>;

std::string atom_to_string(const Atom& atom);

// Immutable, duplicate-free ordered list of atoms. Shared between every
// distribution defined on it so that supports can be compared by identity.
class Support {
 public:
  explicit Support(std::vector<Atom> atoms);

  static std::shared_ptr<const Support> of_values(std::span<const double> v);
  static std::shared_ptr<const Support> of_points(std::vector<Point> points);
  static std::shared_ptr<const Support> of_ids(std::vector<std::string> ids);

  std::size_t size() const noexcept { return atoms_.size(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  // Index of the atom, or npos.
  std::size_t find(const Atom& atom) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Atom> atoms_;
};

using SupportPtr = std::shared_ptr<const Support>;

bool same_support(const SupportPtr& a, const SupportPtr& b);

// Finite discrete distribution; masses are non-negative and sum to one.
// Zero-mass atoms stay in the support.
class DiscreteDist {
 public:
  // Normalizes the weights. Throws InvalidDistribution if any weight is
  // negative or non-finite, or if all are zero.
  DiscreteDist(SupportPtr support, std::vector<double> weights);

  // Convenience: labels 0..n-1.
  static DiscreteDist normalize(std::vector<double> weights);

  static DiscreteDist point_mass(SupportPtr support, std::size_t index);
  static DiscreteDist uniform(SupportPtr support);

  std::size_t size() const noexcept { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }
  std::span<const double> masses() const noexcept { return mass_; }
  const SupportPtr& support() const noexcept { return support_; }

  std::size_t argmax() const;
  bool is_degenerate() const;

 private:
  SupportPtr support_;
  std::vector<double> mass_;
};

// All information measures are in nats.
double entropy(const DiscreteDist& d);
double entropy(std::span<const double> p);

// Returns +infinity when p puts mass where q has none. Throws Shape on
// mismatched supports.
double kl_divergence(const DiscreteDist& p, const DiscreteDist& q);
double kl_divergence(std::span<const double> p, std::span<const double> q);

double cross_entropy(const DiscreteDist& p, const DiscreteDist& q);
double cross_entropy(std::span<const double> p, std::span<const double> q);

// Density-at-point discretization of N(mu, sigma) over the given grid.
DiscreteDist discretize_normal(double mu, double sigma,
                               std::span<const double> grid);

// Beta(alpha, beta) density at the n_cells midpoints (k + 0.5) / n_cells.
DiscreteDist discretize_beta(double alpha, double beta, int n_cells);

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> cell_midpoints(int n_cells);

}  // namespace adoprior
