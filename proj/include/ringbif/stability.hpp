#pragma once

#include <string>
#include <vector>

#include "ringbif/pencil.hpp"
#include "ringbif/polygonal.hpp"

namespace ringbif {

struct BlockRootCount {
  Sector sector = Sector::planar;
  int k = 0;
  int real_roots = 0;  // with multiplicity
  int degree = 0;      // 2 * block dimension
};

struct RootCount {
  int planar = 0;
  int spatial = 0;
  std::vector<BlockRootCount> blocks;
};

RootCount count_real_roots(const RingConfig& ring);

struct MStar {
  bool defined = false;
  double value = 0.0;
  int k = 0;           // block attaining the maximum
  bool from_plus = true;  // m+ (true) or m- (false) of that block
};

// max over k of max(m+, m-); the k = 1 sector enters for n >= 7 only
MStar m_star(const SumTable& sums);

struct StabilityVerdict {
  int n = 0;
  double mu = 0.0;
  int planar_real_roots = 0;
  int spatial_real_roots = 0;
  int required_planar = 0;
  int required_spatial = 0;
  bool spectrally_stable = false;
  MStar m_star;
  bool exponential_instability = false;
  std::vector<BlockRootCount> blocks;
  std::vector<std::string> kernel_annotations;
};

StabilityVerdict spectral_stability(const RingConfig& ring);

struct SaturnLimit {
  int n = 0;
  double m_plus = 0.0;
  double ratio = 0.0;   // m+ / n^3
  double target = 0.0;  // (13 + 4 sqrt 10) sigma
  double relative_gap = 0.0;
  double a_ratio = 0.0, a_target = 0.0;  // a_{n/2} / n^6 vs -2 sigma^2
  double b_ratio = 0.0, b_target = 0.0;  // b_{n/2} / n^3 vs 6 sigma
};
SaturnLimit saturn_limit(int n);

struct ScanRow {
  int n = 0;
  MStar m_star;
  bool stable_above = false;
};
std::vector<ScanRow> stability_scan(int n_min, int n_max);

}  // namespace ringbif
