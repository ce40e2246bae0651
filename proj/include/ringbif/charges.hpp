#pragma once

#include <vector>

#include "ringbif/bifurcation.hpp"
#include "ringbif/lattice_sums.hpp"
#include "ringbif/pencil.hpp"

namespace ringbif {

// n unit charges on the unit circle around a fixed nucleus of charge q.
struct ChargeConfig {
  int n = 0;
  double q = 0.0;
  double alpha = 2.0;
  SumTable sums;

  double s1() const { return sums.s[1]; }
  double omega() const { return q - s1(); }
};

ChargeConfig make_charge(int n, double q, double alpha = 2.0);

// Ring-only blocks, raw frequency: nu^2 - 2 nu sqrt(omega) iJ - B_k(-q), and nu^2 - q + s_k.
CMat charge_block(const ChargeConfig& cfg, Sector sector, int k, double nu);
QuadraticPencil charge_family(const ChargeConfig& cfg, Sector sector, int k);

// omega/2 sum |u|^2 - sum_{i<j} phi(|u_i - u_j|) + q sum phi(|u_j|); u: 3n stacked
double charge_potential(const ChargeConfig& cfg, const Vec& u);
// -V(0, u) for the gravitational potential with mu = -q
double charge_potential_via_gravity(const ChargeConfig& cfg, const Vec& u);

struct ChargeEnumeration {
  int sigma = 1;
  std::vector<BifurcationPoint> points;
  std::vector<BifurcationPoint> silent;
  std::vector<int> planar_crossings;  // positive roots per k (index 1..n)
  std::vector<std::string> annotations;
};
ChargeEnumeration charge_bifurcations(const ChargeConfig& cfg);

// Largest n with s_1 < n (the neutral atom q = n is admissible below it).
int neutral_atom_limit(int n_search_max = 2000);

}  // namespace ringbif
