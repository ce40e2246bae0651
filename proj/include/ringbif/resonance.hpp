#pragma once

#include <string>
#include <vector>

#include "ringbif/lattice_sums.hpp"
#include "ringbif/polygonal.hpp"

namespace ringbif {

enum class Verdict { yes, no, marginal };
std::string to_string(Verdict v);

struct ModeCheck {
  int l = 0;
  double nu = 0.0;  // raw frequency 2 l nu_k
  double det = 0.0;
  double rcond = 0.0;      // min |eig| / max |eig|
  double tolerance = 0.0;  // on rcond
  Verdict invertible = Verdict::yes;
};

struct SpatialResonance {
  int k1 = 0, k2 = 0, l = 0;
  double mu = 0.0;
  std::string kind;  // "resonance" or "duality"
};

struct ResonanceReport {
  int n = 0, k = 0;
  double mu = 0.0;
  double nu_k = 0.0;                  // raw spatial frequency
  double largest_planar_root = 0.0;   // raw, of det m_0k
  double window_margin = 0.0;         // 2 L nu_k - largest root
  int bound_l_max = 0;                // L
  double exclusion_radius = 1e-3;
  bool in_exclusion = false;
  std::vector<ModeCheck> checked_modes;
  Verdict truly_spatial = Verdict::yes;
  std::vector<SpatialResonance> spatial_spatial_candidates;
  std::vector<std::string> notes;
};

// Planar invertibility at the even harmonics 2 l nu_k of the spatial branch k.
ResonanceReport is_truly_spatial(const RingConfig& ring, int k, double exclusion_radius = 1e-3);

struct SubharmonicBound {
  int l_max = 1;
  double ratio = 1.0;  // s_k2 / s_k1
  double bound = 1.0;  // k2^2 - k1^2 + 1
  bool bound_holds = true;
};
SubharmonicBound subharmonic_bound(const SumTable& sums, int k1, int k2);

// mu (l^2 - 1) = s_k2 - l^2 s_k1 (s_n replaced by n); positive candidates only
std::vector<SpatialResonance> spatial_spatial_resonances(const SumTable& sums, int k1, int k2, int l_min, int l_max);

struct PlanarResonance {
  int k1 = 0, k2 = 0, l = 0;
  double mu = 0.0;
  double nu1 = 0.0;  // normalised
  std::string branch;
};

// Intersections of d_k1(mu, nu) = 0 with d_k2(mu, l nu) = 0, k1, k2 in {2..n-2}.
std::vector<PlanarResonance> planar_planar_resonances(const SumTable& sums, int k1, int k2, int l, double mu_min,
                                                      double mu_max);

}  // namespace ringbif
