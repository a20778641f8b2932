#include <doctest.h>

#include <cmath>
#include <set>

#include "adoprior/rng.hpp"

using namespace adoprior;

TEST_CASE("philox known answers") {
  // Random123 reference vectors for philox4x32-10.
  const auto zero = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  CHECK(zero == Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  const auto ones = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                      {0xffffffffu, 0xffffffffu});
  CHECK(ones == Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  const auto pi = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                    {0xa4093822u, 0x299f31d0u});
  CHECK(pi == Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(7, 3, StreamPurpose::Responses), b(7, 3, StreamPurpose::Responses);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed : {1u, 2u}) {
    for (std::uint64_t rep : {0u, 1u, 2u}) {
      for (auto p : {StreamPurpose::GroundTruth, StreamPurpose::Schedule,
                     StreamPurpose::Responses, StreamPurpose::RandomPolicy}) {
        firsts.insert(RngStream(seed, rep, p).next_u64());
      }
    }
  }
  CHECK(firsts.size() == 24);
  CHECK(RngStream(1, std::uint64_t{1} << 32, StreamPurpose::Responses).next_u64() !=
        RngStream(1, 0, StreamPurpose::Responses).next_u64());
}

TEST_CASE("uniform and below") {
  RngStream rng(11, 0, StreamPurpose::Test);
  const int n = 20000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 3 * std::sqrt(1.0 / 12 / n));
  for (int i = 0; i < 1000; ++i) CHECK(rng.below(3) < 3);
  CHECK(rng.below(1) == 0);
}
