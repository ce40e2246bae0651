#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ringbif/linalg.hpp"
#include "ringbif/potential.hpp"

namespace gen {

// Fixed-seed generators. Each property test owns its seed so failures replay.
class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // Bodies in a box, rejecting draws that land closer than min_gap.
  ringbif::GeneralConfig scattered(int bodies, double alpha, double min_gap = 0.3) {
    ringbif::GeneralConfig c;
    c.alpha = alpha;
    c.omega = uniform(0.5, 3.0);
    while (static_cast<int>(c.size()) < bodies) {
      const ringbif::Vec2 p(uniform(-2.0, 2.0), uniform(-2.0, 2.0));
      bool ok = true;
      for (const auto& q : c.positions) ok = ok && (p - q).norm() >= min_gap;
      if (!ok) continue;
      c.positions.push_back(p);
      c.masses.push_back(uniform(0.2, 3.0));
    }
    return c;
  }

  ringbif::Vec vector(Eigen::Index n, double scale) {
    ringbif::Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(-scale, scale);
    return v;
  }

  ringbif::CMat hermitian(Eigen::Index n, double scale) {
    ringbif::CMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {uniform(-scale, scale), uniform(-scale, scale)};
    return 0.5 * (m + m.adjoint());
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
