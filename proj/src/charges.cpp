#include "ringbif/charges.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringbif/errors.hpp"
#include "ringbif/polygonal.hpp"
#include "ringbif/potential.hpp"
#include "ringbif/symmetry.hpp"

namespace ringbif {

ChargeConfig make_charge(int n, double q, double alpha) {
  if (n < 2) throw DomainError("need n >= 2 charges");
  ChargeConfig c;
  c.n = n;
  c.q = q;
  c.alpha = alpha;
  c.sums = make_sum_table(n, alpha);
  if (!(c.omega() > 0.0))
    throw DomainError("q must exceed s_1 = " + std::to_string(c.s1()) + " (got " + std::to_string(q) + ")");
  return c;
}

namespace {

void check_k(const ChargeConfig& c, int k) {
  if (k < 1 || k > c.n) throw DomainError("k must lie in 1..n");
}

}  // namespace

QuadraticPencil charge_family(const ChargeConfig& c, Sector sector, int k) {
  check_k(c, k);
  QuadraticPencil p;
  if (sector == Sector::planar) {
    p.c2 = CMat::Identity(2, 2);
    p.c1 = -2.0 * std::sqrt(c.omega()) * I_unit * symplectic_J().cast<cplx>();
    p.c0 = -generic_block_B(c.sums, -c.q, k);
  } else {
    p.c2 = CMat::Identity(1, 1);
    p.c1 = CMat::Zero(1, 1);
    p.c0 = CMat::Constant(1, 1, c.sums.at(k) - c.q);
  }
  return p;
}

CMat charge_block(const ChargeConfig& c, Sector sector, int k, double nu) { return charge_family(c, sector, k)(nu); }

double charge_potential(const ChargeConfig& c, const Vec& u) {
  if (u.size() != 3 * c.n) throw DomainError("state vector has wrong length");
  double v = 0.0;
  for (int j = 0; j < c.n; ++j) {
    const Vec3 uj = u.segment<3>(3 * j);
    v += 0.5 * c.omega() * (uj(0) * uj(0) + uj(1) * uj(1));
    v += c.q * phi(c.alpha, uj.norm());
    for (int i = j + 1; i < c.n; ++i) v -= phi(c.alpha, (u.segment<3>(3 * i) - uj).norm());
  }
  return v;
}

double charge_potential_via_gravity(const ChargeConfig& c, const Vec& u) {
  GeneralConfig g;
  g.alpha = c.alpha;
  g.omega = -c.omega();  // mu + s_1 with mu = -q
  g.masses.assign(static_cast<std::size_t>(c.n) + 1, 1.0);
  g.masses[0] = -c.q;
  g.positions.assign(static_cast<std::size_t>(c.n) + 1, Vec2::Zero());
  Vec x = Vec::Zero(3 * (c.n + 1));
  x.tail(3 * c.n) = u;
  return -potential_value(g, x);
}

ChargeEnumeration charge_bifurcations(const ChargeConfig& c) {
  ChargeEnumeration e;
  // -B_n(-q) = diag((alpha+1)(q - s_1), 0)
  const double lead = -generic_block_B(c.sums, -c.q, c.n)(0, 0).real();
  e.sigma = lead > 0 ? 1 : -1;
  const double w = std::sqrt(c.omega());
  e.planar_crossings.assign(static_cast<std::size_t>(c.n) + 1, 0);
  for (Sector sec : {Sector::planar, Sector::spatial}) {
    for (int k = 1; k <= c.n; ++k) {
      auto cls = classify_block(charge_family(c, sec, k), sec, k, e.sigma, w);
      for (auto* list : {&cls.points, &cls.silent})
        for (auto& p : *list) p.isotropy = describe(c.n, k, sec);
      if (sec == Sector::planar) e.planar_crossings[k] = static_cast<int>(cls.points.size() + cls.silent.size());
      e.points.insert(e.points.end(), cls.points.begin(), cls.points.end());
      e.silent.insert(e.silent.end(), cls.silent.begin(), cls.silent.end());
    }
  }
  if (c.q <= static_cast<double>(c.n)) e.annotations.push_back("q <= n: ionised or neutral atom");
  for (int k = 1; k <= c.n - 1; ++k)
    if (c.q <= c.sums.at(k))
      e.annotations.push_back("spatial k = " + std::to_string(k) + ": q <= s_k, no vertical crossing");
  return e;
}

int neutral_atom_limit(int n_max) {
  int last = 0;
  for (int n = 2; n <= n_max; ++n)
    if (make_sum_table(n, 2.0).s[1] < n) last = n;
  return last;
}

}  // namespace ringbif
