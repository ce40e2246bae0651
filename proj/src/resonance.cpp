#include "ringbif/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringbif/errors.hpp"
#include "ringbif/spectrum.hpp"

namespace ringbif {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::marginal:
      return "marginal";
  }
  return "?";
}

namespace {

double hermitian_rcond(const CMat& m) {
  const Vec ev = Eigen::SelfAdjointEigenSolver<CMat>(m, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs();
  const double top = ev.maxCoeff();
  return top == 0.0 ? 0.0 : ev.minCoeff() / top;
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::no || b == Verdict::no) return Verdict::no;
  if (a == Verdict::marginal || b == Verdict::marginal) return Verdict::marginal;
  return Verdict::yes;
}

}  // namespace

ResonanceReport is_truly_spatial(const RingConfig& ring, int k, double exclusion_radius) {
  const int n = ring.n;
  if (k < 1 || k > n) throw DomainError("k must lie in [1, n]");
  ResonanceReport rep;
  rep.n = n;
  rep.k = k;
  rep.mu = ring.mu;
  rep.exclusion_radius = exclusion_radius;

  const double target = k < n ? ring.mu + ring.sums.s[k] : ring.mu + n;
  if (!(target > 0.0)) throw DomainError("no spatial crossing: mu + s_k <= 0");
  rep.nu_k = std::sqrt(target);

  if (ring.alpha == 2.0 && k < n && n >= 3) {
    const double mk = mu_k(ring.sums, k);
    const double dist = std::abs(ring.mu - mk);
    if (dist <= 1e-6) throw DegenerateError("mu is within 1e-6 of mu_k: the orbit is not hyperbolic");
    if (dist <= exclusion_radius) {
      rep.in_exclusion = true;
      rep.notes.push_back("mu lies inside the exclusion neighbourhood of mu_k = " + std::to_string(mk) +
                          "; resonances accumulate there, verdict downgraded to marginal");
    }
  }

  if (ring.mu == 0.0 && n >= 3 && (k == 1 || k == n - 1))
    rep.notes.push_back("massless centre: central coordinate dropped from the planar block");
  QuadraticPencil fam = planar_family(ring, k, false);
  if (ring.mu == 0.0 && n >= 3 && (k == 1 || k == n - 1)) {
    fam.c0 = fam.c0.bottomRightCorner(2, 2).eval();
    fam.c1 = fam.c1.bottomRightCorner(2, 2).eval();
    fam.c2 = fam.c2.bottomRightCorner(2, 2).eval();
  }
  const auto roots = pencil_roots(fam);
  double rmax = 0.0;
  for (const auto& r : roots) rmax = std::max(rmax, r.nu);
  rep.largest_planar_root = rmax;
  int L = static_cast<int>(std::floor(rmax / (2.0 * rep.nu_k))) + 1;
  while (2.0 * L * rep.nu_k - rmax < 1e-6) ++L;
  rep.bound_l_max = L;
  rep.window_margin = 2.0 * L * rep.nu_k - rmax;

  Verdict overall = Verdict::yes;
  for (int l = 1; l <= L; ++l) {
    ModeCheck mc;
    mc.l = l;
    mc.nu = 2.0 * l * rep.nu_k;
    const CMat m = fam(mc.nu);
    mc.det = hermitian_det(m);
    mc.rcond = hermitian_rcond(m);
    // a determinant against norm^dim misjudges blocks whose spectrum spans decades
    mc.tolerance = 1e-12;
    mc.invertible = mc.rcond <= mc.tolerance ? Verdict::no
                    : mc.rcond <= 1e3 * mc.tolerance ? Verdict::marginal
                                                      : Verdict::yes;
    overall = combine(overall, mc.invertible);
    rep.checked_modes.push_back(mc);
  }
  if (rep.in_exclusion) overall = combine(overall, Verdict::marginal);
  rep.truly_spatial = overall;

  if (ring.alpha == 2.0) {
    for (int k2 = 1; k2 <= n; ++k2) {
      if (k2 == k) continue;
      const int a = std::min(k, k2), b = std::max(k, k2);
      for (const auto& c : spatial_spatial_resonances(ring.sums, a, b, 2, L + 1)) rep.spatial_spatial_candidates.push_back(c);
    }
  }
  rep.notes.push_back("reduction to a single mode near a resonance is not computed");
  return rep;
}

SubharmonicBound subharmonic_bound(const SumTable& t, int k1, int k2) {
  if (k1 < 1 || k2 < k1 || 2 * k2 > t.n) throw DomainError("need 1 <= k1 <= k2 <= n/2");
  SubharmonicBound b;
  if (k1 == k2) return b;
  b.ratio = t.s[k2] / t.s[k1];
  b.bound = static_cast<double>(k2) * k2 - static_cast<double>(k1) * k1 + 1.0;
  b.l_max = static_cast<int>(std::floor(std::sqrt(b.ratio)));
  b.bound_holds = b.ratio < b.bound;
  return b;
}

std::vector<SpatialResonance> spatial_spatial_resonances(const SumTable& t, int k1, int k2, int l_min, int l_max) {
  const int n = t.n;
  if (k1 < 1 || k2 < 1 || k1 > n || k2 > n) throw DomainError("indices must lie in [1, n]");
  std::vector<SpatialResonance> out;
  const double s_k1 = k1 == n ? static_cast<double>(n) : t.s[k1];
  const double s_k2 = k2 == n ? static_cast<double>(n) : t.s[k2];
  for (int l = std::max(1, l_min); l <= l_max; ++l) {
    if (l == 1) {
      // mu drops out: resonant only if s_k1 = s_k2. For k + (n-k) this is the
      // same branch reversed; against k2 = n it fails since s_k != n strictly.
      if (k1 != k2 && s_k1 == s_k2) out.push_back({k1, k2, 1, std::nan(""), k1 + k2 == n ? "duality" : "coincidence"});
      continue;
    }
    const double l2 = static_cast<double>(l) * l;
    const double mu = (s_k2 - l2 * s_k1) / (l2 - 1.0);
    if (mu > 0.0) out.push_back({k1, k2, l, mu, "resonance"});
  }
  return out;
}

namespace {

double branch_mu(const SumTable& t, int k, double nu, bool plus) {
  return plus ? mu_plus(t, k, nu) : mu_minus(t, k, nu);
}

}  // namespace

std::vector<PlanarResonance> planar_planar_resonances(const SumTable& t, int k1, int k2, int l, double mu_min,
                                                      double mu_max) {
  if (l < 1) throw DomainError("l must be >= 1");
  std::vector<PlanarResonance> out;
  for (bool plus : {true, false}) {
    auto g = [&](double nu) {
      const double mu = branch_mu(t, k1, nu, plus);
      if (!std::isfinite(mu) || mu + t.s[1] <= 0.0) return std::nan("");
      return det_dk(t, mu, k2, l * nu);
    };
    // mu_- lives on 0 < |nu| < 1; mu_+ on the whole line
    const double lo = plus ? -6.0 : -1.0, hi = plus ? 6.0 : 1.0;
    const int grid = 24000;
    double prev_x = lo + (hi - lo) / grid, prev = g(prev_x);
    for (int i = 2; i < grid; ++i) {
      const double x = lo + (hi - lo) * i / grid;
      const double v = g(x);
      if (std::isfinite(prev) && std::isfinite(v) && (prev < 0) != (v < 0)) {
        double a = prev_x, b = x, fa = prev;
        for (int it = 0; it < 100; ++it) {
          const double m = 0.5 * (a + b);
          const double fm = g(m);
          if (!std::isfinite(fm)) break;
          if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
          }
        }
        const double nu = 0.5 * (a + b);
        const double mu = branch_mu(t, k1, nu, plus);
        // guard against sign flips through a pole of the branch
        const double scale = std::abs(det_dk(t, mu, k2, 0.0)) + 1.0;
        if (mu >= mu_min && mu <= mu_max && std::abs(det_dk(t, mu, k2, l * nu)) <= 1e-6 * scale)
          out.push_back({k1, k2, l, mu, nu, plus ? "mu_plus" : "mu_minus"});
      }
      prev = v;
      prev_x = x;
    }
  }
  std::sort(out.begin(), out.end(), [](const PlanarResonance& a, const PlanarResonance& b) { return a.nu1 < b.nu1; });
  return out;
}

}  // namespace ringbif
