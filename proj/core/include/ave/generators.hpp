#pragma once

#include <cstdint>

#include "ave/problem.hpp"
#include "ave/rng.hpp"

// Random instance families with planted solutions (c is built as
// A x* + B |x*|, so x* is feasible by construction). Matrix entries are drawn
// row-major; each family documents its draw order, which is frozen.

namespace ave {

enum class GenFamily {
  Uniform,       // square, B = -I, entries of A' uniform on [-10, 10]
  PsdGram,       // square, B = -I, A = A'^T A' with A' standard normal
  GaussianRect,  // m x n, A, B standard normal
};

const char* to_string(GenFamily f);

struct GenSpec {
  GenFamily family = GenFamily::Uniform;
  int n = 1;
  int m = 0;  // GaussianRect row count; 0 means n
  int alpha = 0;  // Uniform solution-magnitude exponent, in {0, 1, 2, 3}
  std::uint64_t seed = 0;
};

struct FamilyTags {
  GenFamily family = GenFamily::Uniform;
  int alpha = 0;
  // True when the construction guarantees sigma_min(A) > sigma_max(B).
  bool sv_gap_known_positive = false;
};

struct GeneratedInstance {
  AveProblem problem;
  Vector x_star;
  FamilyTags tags;
};

// Uniform family. Draw order: A' entries (redrawn wholesale while
// sigma_min < 1e-12), then t uniform on [0,1) redrawn while t < 1e-6, then per
// coordinate (r, s) with x*_i = r 10^(alpha s). A = A' / (t sigma_min(A')), so
// sigma_min(A) = 1/t > 1 = sigma_max(-I).
GeneratedInstance gen_example1(int n, int alpha, Rng& rng);
GeneratedInstance gen_example1(int n, int alpha, std::uint64_t seed);

// Gram family. Draw order: A' entries, then x* coordinates.
GeneratedInstance gen_example2(int n, Rng& rng);
GeneratedInstance gen_example2(int n, std::uint64_t seed);

// Rectangular Gaussian family. Draw order: A entries, B entries, then x*.
GeneratedInstance gen_example3(int m, int n, Rng& rng);
GeneratedInstance gen_example3(int m, int n, std::uint64_t seed);

// Instance `trial` of a campaign: dispatches on spec.family with the stream
// Rng::stream(spec.seed, trial).
GeneratedInstance make_instance(const GenSpec& spec, std::uint64_t trial);

}  // namespace ave
