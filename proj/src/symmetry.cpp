#include "ringbif/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>

#include "ringbif/errors.hpp"

namespace ringbif {

std::string to_string(CentralBody c) {
  return c == CentralBody::fixed_at_center ? "fixed_at_center" : "rotating_phase";
}

bool SymmetryDescriptor::has(const std::string& tag) const {
  return std::find(special.begin(), special.end(), tag) != special.end();
}

std::optional<int> modular_inverse(int k, int n) {
  if (n < 1 || k < 1 || k > n) throw DomainError("modular_inverse needs 1 <= k <= n");
  if (n == 1) return 1;
  if (std::gcd(k, n) != 1) return std::nullopt;
  // extended Euclid
  long long r0 = n, r1 = k, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const long long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  long long inv = t0 % n;
  if (inv <= 0) inv += n;
  return static_cast<int>(inv);
}

SymmetryDescriptor describe(int n, int k, Sector sector) {
  if (n < 2) throw DomainError("n must be >= 2");
  if (k < 1 || k > n) throw DomainError("k must lie in [1, n]");
  SymmetryDescriptor d;
  d.n = n;
  d.k = k;
  d.sector = sector;
  d.h = std::gcd(n, k);
  d.n_bar = n / d.h;
  d.k_bar = k / d.h;
  d.k_prime = modular_inverse(k, n);
  d.central_body = d.h > 1 ? CentralBody::fixed_at_center : CentralBody::rotating_phase;
  d.reversal_partner = k == n ? n : n - k;
  d.rotation_step = 2.0 * std::numbers::pi / n;
  d.time_shift = 2.0 * std::numbers::pi * (d.k_bar % d.n_bar) / d.n_bar;

  const bool planar = sector == Sector::planar;
  std::ostringstream g;
  g << "Z~_" << n << "(" << k << ") x " << (planar ? "Z_2" : "Z~_2");
  d.group = g.str();

  std::ostringstream ring, centre;
  if (planar) {
    if (d.h > 1)
      ring << "u_{j+1}(t) = e^{i j zeta} u_1(t + j*" << d.k_bar << "*(2pi/" << d.n_bar << "))";
    else
      ring << "u_{j+1}(t) = e^{i j zeta} u_1(t + j*" << k << "*zeta)";
    if (d.h > 1)
      centre << "u_0(t) = 0";
    else
      centre << "u_0(t + zeta) = e^{-i " << *d.k_prime << " zeta} u_0(t)";
    d.reflection_relation = "z_j(t) = 0";
    d.choreography_relation = "q_{j+1}(t) = e^{i j zeta Omega} q_1(t + j*" + std::to_string(k) + "*zeta)";
  } else {
    ring << "u_{j+1}(t) = e^{i j zeta} u_1(t + j*" << k << "*zeta), z_{j+1}(t) = z_1(t + j*" << k << "*zeta)";
    if (k == n)
      centre << "u_0(t) = 0, mu z_0(t) = -sum_j z_j(t)";
    else if (d.h > 1)
      centre << "u_0(t) = 0, z_0(t) = z_0(t + " << k << "*zeta)";
    else
      centre << "u_0(t + zeta) = e^{-i " << *d.k_prime << " zeta} u_0(t), z_0(t) = z_0(t + " << k << "*zeta)";
    d.reflection_relation = "u_j(t) = u_j(t + pi), z_j(t) = -z_j(t + pi)";
    d.annotations.push_back("spatial eight: the planar projection is traversed twice per period");
  }
  d.ring_relation = ring.str();
  d.central_relation = centre.str();

  if (!planar && n % 2 == 0 && 2 * k == n) {
    d.special.push_back("hip_hop");
    d.annotations.push_back("two " + std::to_string(n / 2) + "-polygons oscillating vertically in antiphase");
  }
  if (!planar && k == n) {
    d.special.push_back("oscillating_ring");
    d.annotations.push_back("the ring moves vertically as a whole against the central body");
  }
  if (planar && n % 2 == 0 && 2 * k == n) {
    d.special.push_back("pulsing_polygons");
    d.annotations.push_back("central body fixed, two " + std::to_string(n / 2) + "-polygons pulsing");
  }
  if (planar && k == n) d.annotations.push_back("all ring bodies move as in the ring configuration (n-polygon at all times)");
  if (planar && d.h == 1) d.special.push_back("choreography_candidate");
  return d;
}

Choreography choreography_condition(int n, int k, double omega, double nu) {
  if (nu == 0.0) throw DomainError("nu must be nonzero");
  if (n < 1) throw DomainError("n must be positive");
  Choreography c;
  c.Omega = 1.0 - k * std::sqrt(omega) / nu;
  const double m = std::round(c.Omega / n);
  c.is_choreography = std::abs(c.Omega - m * n) <= 1e-9;
  return c;
}

IntersectionPeriod intersection_period(int n, int k1, int k2) {
  if (n < 1 || k1 < 1 || k1 > n || k2 < 1 || k2 > n) throw DomainError("indices must lie in [1, n]");
  IntersectionPeriod p;
  if (k1 == k2) {
    p.n_tilde = 1;
  } else {
    const int h = std::gcd(n, std::abs(k2 - k1));
    p.n_tilde = n / h;
  }
  p.period = 2.0 * std::numbers::pi / p.n_tilde;
  return p;
}

std::string render_text(const SymmetryDescriptor& d) {
  std::ostringstream o;
  o << "isotropy   " << d.group << "  (" << to_string(d.sector) << ")\n";
  o << "gcd        h = " << d.h << ", n_bar = " << d.n_bar << ", k_bar = " << d.k_bar;
  if (d.k_prime) o << ", k' = " << *d.k_prime;
  o << "\n";
  o << "centre     " << to_string(d.central_body) << ": " << d.central_relation << "\n";
  o << "ring       " << d.ring_relation << "\n";
  o << "reflection " << d.reflection_relation << "\n";
  if (!d.choreography_relation.empty()) o << "fixed frame " << d.choreography_relation << "\n";
  o << "reversal   same orbit backwards in k = " << d.reversal_partner << "\n";
  if (!d.special.empty()) {
    o << "special   ";
    for (const auto& s : d.special) o << " " << s;
    o << "\n";
  }
  for (const auto& a : d.annotations) o << "note       " << a << "\n";
  return o.str();
}

}  // namespace ringbif
