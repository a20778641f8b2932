#pragma once

#include <array>
#include <cstdint>

namespace adoprior {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
// A stream is identified by (key, stream id); draws are a pure function of
// (key, stream id, draw index), so replications can run in any order on any
// number of workers and still reproduce bit for bit.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr const char* kName = "philox4x32-10";

  static Counter block(Counter ctr, Key key) noexcept;
};

// Purposes get their own streams so that, e.g., switching the design policy
// does not shift the ground-truth draw of a replication.
enum class StreamPurpose : std::uint32_t {
  GroundTruth = 1,
  Schedule = 2,
  Responses = 3,
  RandomPolicy = 4,
  Test = 0xffff,
};

class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t replication,
            StreamPurpose purpose) noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept;

  // Uniform integer in [0, n). n must be positive. Rejection sampling keeps
  // the result exactly uniform.
  std::uint64_t below(std::uint64_t n) noexcept;

  std::uint64_t draws() const noexcept { return counter_; }

 private:
  Philox4x32::Key key_;
  std::uint32_t replication_lo_;
  std::uint32_t stream_;
  std::uint64_t counter_ = 0;
  Philox4x32::Counter buffer_{};
  int buffered_ = 0;  // remaining 64-bit words in buffer_
};

}  // namespace adoprior
