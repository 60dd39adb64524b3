#pragma once

#include <cstdint>
#include <random>

namespace purikit {

// Deterministic stream: identical seeds give identical draw sequences on
// every platform this project targets.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  double normal() { return normal_(g_); }
  double uniform() { return uniform_(g_); }  // [0, 1)

 private:
  std::mt19937_64 g_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace purikit
