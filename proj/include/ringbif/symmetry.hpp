#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringbif/pencil.hpp"

namespace ringbif {

enum class CentralBody { fixed_at_center, rotating_phase };
std::string to_string(CentralBody c);

// Plain data; safe to serialise.
struct SymmetryDescriptor {
  int n = 0;
  int k = 0;
  Sector sector = Sector::planar;
  int h = 1;  // gcd(n, k)
  int n_bar = 0;
  int k_bar = 0;
  std::optional<int> k_prime;  // k^{-1} mod n, in 1..n
  CentralBody central_body = CentralBody::fixed_at_center;
  std::string group;  // e.g. "Z~_6(3) x Z~_2"

  // u_{j+1}(t) = e^{i j rotation_step} u_1(t + j * time_shift), time_shift = 2 pi k_bar / n_bar
  double rotation_step = 0.0;
  double time_shift = 0.0;
  std::string ring_relation;
  std::string central_relation;
  std::string reflection_relation;
  std::string choreography_relation;  // fixed-frame form, planar only

  std::vector<std::string> special;  // hip_hop, oscillating_ring, pulsing_polygons, choreography_candidate
  std::vector<std::string> annotations;

  int reversal_partner = 0;  // n - k (n for k = n), same orbit run backwards
  bool has(const std::string& tag) const;
};

std::optional<int> modular_inverse(int k, int n);

SymmetryDescriptor describe(int n, int k, Sector sector);

struct Choreography {
  double Omega = 0.0;
  bool is_choreography = false;
};
// Omega = 1 - k sqrt(omega) / nu
Choreography choreography_condition(int n, int k, double omega, double nu);

struct IntersectionPeriod {
  int n_tilde = 1;
  double period = 0.0;  // 2 pi / n_tilde
};
IntersectionPeriod intersection_period(int n, int k1, int k2);

// human-readable multi-line rendering
std::string render_text(const SymmetryDescriptor& d);

}  // namespace ringbif
