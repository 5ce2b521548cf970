#pragma once

#include <cstdint>
#include <limits>

namespace lob {

// Counter-style generator: a master seed plus a stream id give an independent,
// reproducible stream. Ensembles assign one stream per path, so results do not
// depend on scheduling order. The core is the splitmix64 finalizer, which is
// well mixed enough that consecutive stream ids are statistically independent.
// Satisfies UniformRandomBitGenerator; std:: distributions plug in on top.
class CounterRng {
public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t master_seed, std::uint64_t stream_id = 0) {
    state_ = mix(master_seed ^ mix(stream_id + 0x9E3779B97F4A7C15ULL));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

} // namespace lob
