#include "adoprior/models.hpp"

#include <algorithm>
#include <cmath>

#include "adoprior/error.hpp"

namespace adoprior {

double irt_likelihood(double x, double theta) {
  return kIrtGuessFloor +
         (1.0 - kIrtGuessFloor) /
             (1.0 + std::exp(-kIrtDiscrimination * (theta - x)));
}

double pow_likelihood(double x, double a, double b) {
  return a * std::pow(x + 1.0, -b);
}

double exp_likelihood(double x, double a, double b) {
  return a * std::exp(-b * x);
}

std::vector<double> gaussian_pair_likelihood(GaussModel model, double mu,
                                             std::span<const double> bins) {
  if (bins.empty()) throw Error(ErrorCode::Parameter, "empty response bins");
  const double sigma = model == GaussModel::A ? kGaussASigma : kGaussBSigma;
  std::vector<double> w(bins.size());
  double total = 0.0;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const double z = (bins[i] - mu) / sigma;
    w[i] = std::exp(-0.5 * z * z);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

ParamGrid::ParamGrid(std::vector<GridAxis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw Error(ErrorCode::Parameter, "grid has no axes");
  std::size_t n = 1;
  for (const auto& axis : axes_) {
    if (axis.values.empty()) {
      throw Error(ErrorCode::Parameter, "grid axis '" + axis.name + "' is empty");
    }
    n *= axis.values.size();
  }
  points_.reserve(n);
  std::vector<std::size_t> idx(axes_.size(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    Point p(axes_.size());
    for (std::size_t d = 0; d < axes_.size(); ++d) p[d] = axes_[d].values[idx[d]];
    points_.push_back(std::move(p));
    for (std::size_t d = axes_.size(); d-- > 0;) {
      if (++idx[d] < axes_[d].values.size()) break;
      idx[d] = 0;
    }
  }
  support_ = Support::of_points(points_);
}

ResponseModel::ResponseModel(std::string id, std::vector<double> stimuli,
                             ParamGrid grid, std::vector<double> responses,
                             const RowFn& row_fn)
    : id_(std::move(id)),
      stimuli_(std::move(stimuli)),
      grid_(std::move(grid)),
      responses_(Support::of_values(responses)) {
  if (stimuli_.empty()) throw Error(ErrorCode::Parameter, id_ + ": no stimuli");
  {
    std::vector<double> sorted = stimuli_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::Parameter, id_ + ": duplicate stimulus");
    }
  }
  const std::size_t ny = responses.size();
  table_.resize(stimuli_.size() * grid_.size() * ny);
  row_entropy_.resize(stimuli_.size() * grid_.size());
  for (std::size_t x = 0; x < stimuli_.size(); ++x) {
    for (std::size_t t = 0; t < grid_.size(); ++t) {
      const std::vector<double> r = row_fn(stimuli_[x], grid_.point(t));
      if (r.size() != ny) {
        throw Error(ErrorCode::Shape, id_ + ": likelihood row has wrong length");
      }
      double total = 0.0;
      for (double v : r) {
        if (!(v >= 0.0 && v <= 1.0)) {
          throw Error(ErrorCode::InvalidDistribution,
                      id_ + ": likelihood outside [0, 1]");
        }
        total += v;
      }
      if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidDistribution,
                    id_ + ": likelihood row does not sum to 1");
      }
      std::copy(r.begin(), r.end(), table_.begin() + (x * grid_.size() + t) * ny);
      row_entropy_[x * grid_.size() + t] = entropy(r);
    }
  }
}

std::shared_ptr<const ResponseModel> ResponseModel::make(
    const std::string& id, std::vector<double> stimuli, ParamGrid grid,
    std::vector<double> response_bins) {
  auto binary = [](double p1) { return std::vector<double>{1.0 - p1, p1}; };
  const std::vector<double> yes_no{0.0, 1.0};

  if (id == "irt") {
    if (grid.dims() != 1) throw Error(ErrorCode::Shape, "irt: grid must be 1-D");
    return std::make_shared<const ResponseModel>(
        id, std::move(stimuli), std::move(grid), yes_no,
        [&](double x, const Point& th) { return binary(irt_likelihood(x, th[0])); });
  }
  if (id == "pow" || id == "exp") {
    if (grid.dims() != 2) {
      throw Error(ErrorCode::Shape, id + ": grid must have axes (a, b)");
    }
    for (const auto& axis : grid.axes()) {
      for (double v : axis.values) {
        if (v < 0.0 || v > 1.0) {
          throw Error(ErrorCode::Parameter, id + ": a and b must lie in [0, 1]");
        }
      }
    }
    for (double x : stimuli) {
      if (x < 0.0) throw Error(ErrorCode::Parameter, id + ": negative delay");
    }
    const bool power = id == "pow";
    return std::make_shared<const ResponseModel>(
        id, std::move(stimuli), std::move(grid), yes_no,
        [&](double x, const Point& ab) {
          return binary(power ? pow_likelihood(x, ab[0], ab[1])
                              : exp_likelihood(x, ab[0], ab[1]));
        });
  }
  if (id == "gauss-a" || id == "gauss-b") {
    if (grid.dims() != 1) throw Error(ErrorCode::Shape, id + ": grid must be 1-D");
    if (response_bins.empty()) {
      throw Error(ErrorCode::Parameter, id + ": response bins required");
    }
    const GaussModel which = id == "gauss-a" ? GaussModel::A : GaussModel::B;
    const std::vector<double> bins = response_bins;
    return std::make_shared<const ResponseModel>(
        id, std::move(stimuli), std::move(grid), std::move(response_bins),
        [&](double, const Point& mu) {
          return gaussian_pair_likelihood(which, mu[0], bins);
        });
  }
  throw Error(ErrorCode::Lookup, "unknown model id '" + id + "'");
}

std::size_t ResponseModel::stimulus_index(double x) const {
  const auto it = std::find(stimuli_.begin(), stimuli_.end(), x);
  if (it == stimuli_.end()) {
    throw Error(ErrorCode::Shape,
                id_ + ": stimulus " + atom_to_string(x) + " outside model support");
  }
  return static_cast<std::size_t>(it - stimuli_.begin());
}

std::size_t ResponseModel::response_index(double y) const {
  const std::size_t i = responses_->find(Atom{y});
  if (i == Support::npos) {
    throw Error(ErrorCode::Lookup, id_ + ": unknown response " + atom_to_string(y));
  }
  return i;
}

}  // namespace adoprior
