#include <doctest.h>

#include <cmath>

#include "../support/fixtures.hpp"
#include "../support/oracle_values.hpp"
#include "adoprior/efd.hpp"
#include "adoprior/error.hpp"
#include "adoprior/policy.hpp"
#include "adoprior/utility.hpp"

using namespace adoprior;
using doctest::Approx;

namespace {

JointBelief irt(double mu, double sd, Role role = Role::Specified) {
  static const auto m = fixtures::irt_model();
  return JointBelief::single(m, fixtures::normal_prior(m, mu, sd), role);
}

}  // namespace

TEST_CASE("response distribution") {
  const auto spec = irt(0, 1);
  for (std::size_t x = 0; x < 31; ++x) {
    CHECK(response_distribution(spec, x)[1] == prior_predictive(spec, x)[1]);
  }
  const auto lo = irt(-2, 1, Role::Population);
  const auto hi = irt(2, 1, Role::Population);
  for (std::size_t x = 0; x < 31; ++x) {
    CHECK(response_distribution(lo, x)[1] < response_distribution(hi, x)[1]);
  }
}

TEST_CASE("efd at the ADO stimulus of the motivating example") {
  const auto spec = irt(0, 1);
  const auto lo = irt(-2, 1, Role::Population);
  const auto hi = irt(2, 1, Role::Population);
  std::vector<std::size_t> all(31);
  for (std::size_t i = 0; i < 31; ++i) all[i] = i;
  const auto sel = ado_select(spec, all, {UtilityKind::MiParameter, FocusKind::Parameter, 1.0});
  CHECK(spec.stimuli()[sel.stimulus] == Approx(oracle::kIrtAdoStimulus));
  CHECK(sel.utility == Approx(oracle::kIrtAdoUtility).epsilon(1e-12));

  const auto dl = efd_decomposition(spec, lo, sel.stimulus, FocusKind::Parameter);
  const auto dh = efd_decomposition(spec, hi, sel.stimulus, FocusKind::Parameter);
  CHECK(expected_focal_divergence(spec, lo, sel.stimulus, FocusKind::Parameter) ==
        Approx(oracle::kEfdLowPop).epsilon(1e-12));
  CHECK(expected_focal_divergence(spec, hi, sel.stimulus, FocusKind::Parameter) ==
        Approx(oracle::kEfdHighPop).epsilon(1e-12));
  CHECK(dl.response_variability == Approx(oracle::kRvLowPop).epsilon(1e-12));
  CHECK(dl.surprisal == Approx(oracle::kSurprisalLowPop).epsilon(1e-12));
  CHECK(dl.hindsight == Approx(oracle::kHindsightLowPop).epsilon(1e-12));
  CHECK(dh.response_variability == Approx(oracle::kRvHighPop).epsilon(1e-12));
  CHECK(dh.surprisal == Approx(oracle::kSurprisalHighPop).epsilon(1e-12));
  CHECK(dh.hindsight == Approx(oracle::kHindsightHighPop).epsilon(1e-12));
  CHECK(dl.response_variability > dh.response_variability);
  CHECK(dl.surprisal > dh.surprisal);
}

TEST_CASE("efd reduces to MI when spec equals pop") {
  const auto spec = irt(0, 1);
  for (std::size_t x = 0; x < 31; ++x) {
    CHECK(std::abs(expected_focal_divergence(spec, spec, x, FocusKind::Parameter) -
                   mi_utility(spec, x, FocusKind::Parameter)) <= 1e-10);
    CHECK(efd_decomposition(spec, spec, x, FocusKind::Parameter).surprisal <= 1e-15);
  }
  const auto m = fixtures::irt_model();
  const auto point =
      JointBelief::single(m, DiscreteDist::point_mass(m->grid().support(), 9), Role::Specified);
  CHECK(expected_focal_divergence(point, irt(2, 1), 4, FocusKind::Parameter) == 0.0);
}

TEST_CASE("efd errors") {
  const auto spec = irt(0, 1);
  CHECK_THROWS_AS(expected_focal_divergence(spec, spec, 3, FocusKind::Joint), Error);
  const auto other = ResponseModel::make("irt", linspace(-3, 3, 31),
                                         ParamGrid({{"theta", linspace(-2, 2, 31)}}));
  const auto mismatch = JointBelief::single(other, DiscreteDist::uniform(other->grid().support()),
                                            Role::Population);
  try {
    expected_focal_divergence(spec, mismatch, 3, FocusKind::Parameter);
    FAIL("expected shape error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Shape);
  }
}

TEST_CASE("property: decomposition identity and non-negativity") {
  RngStream rng(31, 0, StreamPurpose::Test);
  for (const auto& fam : fixtures::families()) {
    for (int i = 0; i < 40; ++i) {
      const auto spec = fixtures::random_belief(rng, fam.models, Role::Specified);
      const auto pop = fixtures::random_belief(rng, fam.models, Role::Population, i % 2 == 0);
      const std::size_t x = rng.below(spec.n_stimuli());
      const FocusKind f = fam.models.size() > 1 ? FocusKind::Model : FocusKind::Parameter;
      const double direct = expected_focal_divergence(spec, pop, x, f);
      const auto d = efd_decomposition(spec, pop, x, f);
      REQUIRE(std::abs(direct - d.total) <= 1e-9);
      CHECK(direct >= 0.0);
      CHECK(d.surprisal >= 0.0);
    }
  }
}

TEST_CASE("property: surprisal vanishes iff the predictives coincide") {
  RngStream rng(32, 0, StreamPurpose::Test);
  const std::vector<ModelPtr> ms{fixtures::irt_model()};
  for (int i = 0; i < 50; ++i) {
    const auto spec = fixtures::random_belief(rng, ms, Role::Specified);
    const auto pop = fixtures::random_belief(rng, ms, Role::Population);
    const std::size_t x = rng.below(31);
    const auto d = efd_decomposition(spec, pop, x, FocusKind::Parameter);
    const double gap =
        std::abs(prior_predictive(spec, x)[1] - prior_predictive(pop, x)[1]);
    CHECK((d.surprisal <= 1e-10) == (gap <= 1e-5));
  }
}

TEST_CASE("property: efd depends on the population only through its predictive") {
  // theta = 0 and theta = 1 share a row at x = 0 but not at x = 1.
  const ParamGrid grid({{"theta", {0.0, 1.0, 2.0, 3.0}}});
  const auto m = std::make_shared<const ResponseModel>(
      "shared", std::vector<double>{0.0, 1.0}, grid, std::vector<double>{0.0, 1.0},
      [](double x, const Point& t) {
        const double p = x == 0.0 ? (t[0] < 2 ? 0.3 : 0.3 + 0.2 * t[0] - 0.2)
                                  : 0.1 + 0.2 * t[0];
        return std::vector<double>{1.0 - p, p};
      });
  RngStream rng(33, 0, StreamPurpose::Test);
  for (int i = 0; i < 30; ++i) {
    const auto spec = fixtures::random_belief(rng, {m}, Role::Specified);
    const auto w = fixtures::random_weights(rng, 4);
    const auto pop1 = JointBelief::single(m, DiscreteDist(grid.support(), w), Role::Population);
    const auto pop2 = JointBelief::single(
        m, DiscreteDist(grid.support(), {w[1], w[0], w[2], w[3]}), Role::Population);
    CHECK(expected_focal_divergence(spec, pop1, 0, FocusKind::Parameter) ==
          Approx(expected_focal_divergence(spec, pop2, 0, FocusKind::Parameter)).epsilon(1e-14));
  }
}
