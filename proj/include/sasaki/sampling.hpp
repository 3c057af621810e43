#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sasaki/fields.hpp"

namespace sasaki {

/// Deterministic uniform sampling. The raw mt19937_64 stream is mapped to
/// doubles with a fixed 53-bit rule rather than std::uniform_real_distribution
/// so runs are reproducible across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) {
    double u = double(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<Point> sample_box(int dim, int count, std::uint64_t seed, double lo, double hi) {
  SeededRng rng(seed);
  std::vector<Point> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    VecD c(dim);
    for (int k = 0; k < dim; ++k) c[k] = rng.uniform(lo, hi);
    pts.emplace_back(std::move(c));
  }
  return pts;
}

}  // namespace sasaki
