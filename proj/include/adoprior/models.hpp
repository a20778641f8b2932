#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "adoprior/dist.hpp"

namespace adoprior {

// Item discrimination of the one-parameter IRT model; fixed, not configurable.
inline constexpr double kIrtDiscrimination = 2.72;
inline constexpr double kIrtGuessFloor = 0.2;
inline constexpr double kGaussASigma = 10.0;
inline constexpr double kGaussBSigma = 11.0;

// P(correct | difficulty x, proficiency theta).
double irt_likelihood(double x, double theta);
// P(recall | delay x) under the power law a (x + 1)^-b.
double pow_likelihood(double x, double a, double b);
// P(recall | delay x) under the exponential a e^(-b x).
double exp_likelihood(double x, double a, double b);

enum class GaussModel { A, B };

// Bin masses of N(mu, sigma_model) evaluated at the bin centers and
// renormalized over the bins.
std::vector<double> gaussian_pair_likelihood(GaussModel model, double mu,
                                             std::span<const double> bins);

struct GridAxis {
  std::string name;
  std::vector<double> values;

  bool operator==(const GridAxis&) const = default;
};

// Cartesian product of axes; the first axis varies slowest.
class ParamGrid {
 public:
  explicit ParamGrid(std::vector<GridAxis> axes);

  std::size_t dims() const noexcept { return axes_.size(); }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<GridAxis>& axes() const noexcept { return axes_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  const SupportPtr& support() const noexcept { return support_; }

  bool operator==(const ParamGrid& other) const { return axes_ == other.axes_; }

 private:
  std::vector<GridAxis> axes_;
  std::vector<Point> points_;
  SupportPtr support_;
};

// A likelihood family with finite stimulus, parameter and response spaces.
// The full table p(y | x, theta) is evaluated once at construction.
class ResponseModel {
 public:
  using RowFn =
      std::function<std::vector<double>(double stimulus, const Point& theta)>;

  ResponseModel(std::string id, std::vector<double> stimuli, ParamGrid grid,
                std::vector<double> responses, const RowFn& row_fn);

  // Model identifiers accepted in configs: irt, pow, exp, gauss-a, gauss-b.
  static std::shared_ptr<const ResponseModel> make(
      const std::string& id, std::vector<double> stimuli, ParamGrid grid,
      std::vector<double> response_bins = {});

  const std::string& id() const noexcept { return id_; }
  std::span<const double> stimuli() const noexcept { return stimuli_; }
  const ParamGrid& grid() const noexcept { return grid_; }
  const SupportPtr& responses() const noexcept { return responses_; }

  std::size_t n_stimuli() const noexcept { return stimuli_.size(); }
  std::size_t n_params() const noexcept { return grid_.size(); }
  std::size_t n_responses() const noexcept { return responses_->size(); }

  // Throws Shape if x is not one of the model's stimuli.
  std::size_t stimulus_index(double x) const;
  // Throws Lookup if y is not a response atom.
  std::size_t response_index(double y) const;

  std::span<const double> row(std::size_t x, std::size_t theta) const {
    return {table_.data() + (x * n_params() + theta) * n_responses(),
            n_responses()};
  }
  double likelihood(std::size_t x, std::size_t theta, std::size_t y) const {
    return table_[(x * n_params() + theta) * n_responses() + y];
  }
  // Entropy of row(x, theta), cached.
  double row_entropy(std::size_t x, std::size_t theta) const {
    return row_entropy_[x * n_params() + theta];
  }

 private:
  std::string id_;
  std::vector<double> stimuli_;
  ParamGrid grid_;
  SupportPtr responses_;
  std::vector<double> table_;
  std::vector<double> row_entropy_;
};

using ModelPtr = std::shared_ptr<const ResponseModel>;

}  // namespace adoprior
