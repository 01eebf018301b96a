#pragma once

#include <cstdint>

// Deterministic, platform-independent randomness for instance generation.
// SplitMix64 core with hashed per-stream states; normals via Box-Muller with a
// cached spare. The exact draw sequence is part of the reproducibility
// contract: changing it invalidates recorded campaign seeds.

namespace ave {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for the index-th instance drawn under a base seed.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();

  double uniform01();                    // [0, 1)
  double uniform(double a, double b);    // [a, b)
  double normal();                       // standard normal

 private:
  std::uint64_t state_;
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace ave
