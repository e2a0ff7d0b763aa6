#pragma once

#include <cstdint>
#include <random>

#include "hrmc/types.hpp"

namespace hrmc {

/// Deterministic random stream for one chain. All sampling in the library
/// draws through this wrapper so a run is reproducible from its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }

  /// Fair draw from {+1, -1}.
  int rademacher() { return uniform_(engine_) < 0.5 ? +1 : -1; }

  Vec normal_vector(int n) {
    Vec z(n);
    for (int i = 0; i < n; ++i) z[i] = normal_(engine_);
    return z;
  }

  /// Index draw from unnormalized nonnegative weights (sum must be > 0).
  int categorical(const Vec& weights) {
    double total = weights.sum();
    double u = uniform_(engine_) * total;
    double acc = 0.0;
    for (int i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return static_cast<int>(weights.size()) - 1;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace hrmc
