#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ringbif/bifurcation.hpp"
#include "ringbif/errors.hpp"
#include "ringbif/polygonal.hpp"
#include "ringbif/spectrum.hpp"
#include "support.hpp"

using namespace ringbif;

namespace {

std::vector<BifurcationPoint> pick(const Enumeration& e, Sector s, int k) {
  std::vector<BifurcationPoint> out;
  for (const auto& p : e.points)
    if (p.sector == s && p.k == k) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("orientation index") {
  CHECK(sigma_orientation(make_ring(7, 2.0)) == 1);
  const SumTable t = make_sum_table(7, 2.0);
  CHECK(sigma_orientation(make_ring(t, -0.5 * t.s[1])) == 1);
  const SumTable t10 = make_sum_table(10, 2.0);
  CHECK_THROWS_AS(sigma_orientation(make_ring(t10, mu_k(t10, 3))), DegenerateError);
}

TEST_CASE("three bodies, spatial values") {
  const RingConfig r = make_ring(3, 1.0);
  const auto e = enumerate_bifurcations(r);
  const double expect[] = {std::sqrt(1.0 + r.sums.s[1]), std::sqrt(1.0 + r.sums.s[2]), 2.0};
  for (int k = 1; k <= 3; ++k) {
    const auto pts = pick(e, Sector::spatial, k);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].nu == doctest::Approx(expect[k - 1]).epsilon(1e-12));
    CHECK(pts[0].eta == 1);
    CHECK(pts[0].isotropy.has_value());
  }
  const auto kn = pick(e, Sector::planar, 3);
  REQUIRE(kn.size() == 1);
  CHECK(kn[0].nu_normalized == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(kn[0].nu == doctest::Approx(std::sqrt(r.omega())).epsilon(1e-9));
  CHECK(kn[0].eta == 1);
}

TEST_CASE("ten bodies above m+ in the k = 3 sector") {
  const SumTable t = make_sum_table(10, 2.0);
  const RingConfig r = make_ring(t, 1.05 * critical_masses(t, 3).m_plus);
  const auto pts = pick(enumerate_bifurcations(r, false), Sector::planar, 3);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].nu_normalized < pts[1].nu_normalized);
  CHECK(pts[1].nu_normalized < 1.0);
  CHECK(pts[0].eta == -1);
  CHECK(pts[1].eta == 1);
}

TEST_CASE("ten bodies between mu_k and m0") {
  const SumTable t = make_sum_table(10, 2.0);
  const auto cm = critical_masses(t, 3);
  const RingConfig r = make_ring(t, 0.5 * (cm.mu_k + cm.m0));
  const auto pts = pick(enumerate_bifurcations(r, false), Sector::planar, 3);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].eta == -1);
  CHECK(pts[1].eta == 1);
}

TEST_CASE("two bodies") {
  const auto e = enumerate_bifurcations(make_ring(2, 1.0));
  const auto k1 = pick(e, Sector::planar, 1);
  REQUIRE(k1.size() == 1);
  CHECK(k1[0].nu_normalized == doctest::Approx(1.62990).epsilon(1e-5));
  const auto k2 = pick(e, Sector::planar, 2);
  REQUIRE(k2.size() == 1);
  CHECK(k2[0].nu_normalized == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pick(e, Sector::spatial, 1).at(0).nu == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(pick(e, Sector::spatial, 2).at(0).nu == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("massless centre drops the singular coordinates") {
  const auto e = enumerate_bifurcations(make_ring(6, 0.0), false);
  CHECK(pick(e, Sector::planar, 1).empty());
  CHECK(pick(e, Sector::planar, 5).empty());
  // the common vertical mode of the ring has no restoring force without a centre
  CHECK(pick(e, Sector::spatial, 6).empty());
  CHECK(pick(e, Sector::spatial, 2).size() == 1);
}

TEST_CASE("general configuration: Lagrange triangle") {
  GeneralConfig c;
  c.masses = {1.0, 1.0, 1.0};
  for (int j = 0; j < 3; ++j) c.positions.push_back(rotation(2.0 * std::numbers::pi * j / 3.0) * Vec2(1.0 / std::sqrt(3.0), 0.0));
  c.omega = 3.0;
  const auto e = enumerate_general(c);
  CHECK(e.equilibrium_residual <= 1e-12);
  int spatial = 0;
  for (const auto& p : e.points) {
    CHECK(!p.isotropy.has_value());
    spatial += p.sector == Sector::spatial;
  }
  CHECK(spatial > 0);
}

TEST_CASE("property: every spatial ring crossing has eta = +1") {
  gen::Source src(0x5eed51);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = src.integer(3, 16);
    const double mu = src.uniform(0.05, 80.0);
    const auto e = enumerate_bifurcations(make_ring(n, mu), false);
    int spatial = 0;
    for (const auto& p : e.points)
      if (p.sector == Sector::spatial) {
        ++spatial;
        CHECK(p.eta == 1);
      }
    CHECK(spatial == n);
    for (const auto& p : pick(e, Sector::planar, n)) CHECK(p.nu_normalized == doctest::Approx(1.0).epsilon(1e-8));
  }
}
