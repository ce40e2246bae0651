#include "ringbif/stability.hpp"

#include <cmath>
#include <string>

#include "ringbif/errors.hpp"
#include "ringbif/spectrum.hpp"

namespace ringbif {

RootCount count_real_roots(const RingConfig& ring) {
  if (ring.alpha != 2.0) throw DomainError("root counting is implemented for alpha = 2");
  if (!(ring.mu > 0.0)) throw DomainError("root counting needs mu > 0");
  RootCount rc;
  for (int k = 1; k <= ring.n; ++k) {
    const auto fam = planar_family(ring, k, true);
    BlockRootCount b{Sector::planar, k, total_multiplicity(pencil_roots(fam)), 2 * static_cast<int>(fam.dim())};
    rc.planar += b.real_roots;
    rc.blocks.push_back(b);
  }
  for (int k = 1; k <= ring.n; ++k) {
    const auto fam = spatial_family(ring, k);
    BlockRootCount b{Sector::spatial, k, total_multiplicity(pencil_roots(fam)), 2 * static_cast<int>(fam.dim())};
    rc.spatial += b.real_roots;
    rc.blocks.push_back(b);
  }
  return rc;
}

MStar m_star(const SumTable& t) {
  if (t.alpha != 2.0) throw DomainError("m_* is implemented for alpha = 2");
  MStar m;
  auto consider = [&](double v, int k, bool plus) {
    if (!m.defined || v > m.value) {
      m.defined = true;
      m.value = v;
      m.k = k;
      m.from_plus = plus;
    }
  };
  // m+(n-k) = m-(k): half the range suffices
  for (int k = 2; k <= t.n / 2; ++k) {
    const auto cm = critical_masses(t, k);
    consider(cm.m_plus, k, true);
    consider(cm.m_minus, k, false);
  }
  if (t.n >= 7) {
    const auto th = edge_thresholds(t);
    consider(th.m_plus, 1, true);
    consider(th.m_minus, 1, false);
  }
  return m;
}

StabilityVerdict spectral_stability(const RingConfig& ring) {
  if (ring.alpha != 2.0) throw DomainError("stability analysis is implemented for alpha = 2");
  if (!(ring.mu > 0.0)) throw DomainError("stability analysis needs mu > 0");
  const int n = ring.n;
  StabilityVerdict v;
  v.n = n;
  v.mu = ring.mu;
  v.required_planar = 4 * (n + 1);
  v.required_spatial = 2 * (n + 1);
  const auto rc = count_real_roots(ring);
  v.planar_real_roots = rc.planar;
  v.spatial_real_roots = rc.spatial;
  v.blocks = rc.blocks;
  v.spectrally_stable = rc.planar == v.required_planar && rc.spatial == v.required_spatial;
  if (n >= 3) v.m_star = m_star(ring.sums);

  v.kernel_annotations.push_back("nu = 0, block k = n: double root, kernel (0,1) is the rotation generator J x0");
  v.kernel_annotations.push_back(
      "nu = +-1 (normalised), block k = n: scaling of the frequency, generalised vector 2 x0 - 3 sqrt(omega) t J x0");
  v.kernel_annotations.push_back("nu = 0, spatial block k = n: double root, kernel (1, sqrt n) is the vertical translation");
  if (n >= 3) {
    // structural kernel of the k = 1 block at nu = 1
    CVec kv(3);
    kv << std::sqrt(2.0 / n), 1.0, I_unit;
    const double res = (block_m0_normalized(ring, 1, 1.0) * kv).cwiseAbs().maxCoeff();
    v.kernel_annotations.push_back("nu = 1, block k = 1: double root, kernel (sqrt(2/n), 1, i), residual " +
                                   std::to_string(res) + "; centre-of-mass translation");
  }
  if (n == 2) {
    v.exponential_instability = !v.spectrally_stable;
    v.kernel_annotations.push_back("n = 2: block k = 1 has six real and two purely imaginary zeros");
  } else if (!v.spectrally_stable) {
    // a missing real root means a complex pair, i.e. growth
    v.exponential_instability = true;
  }
  return v;
}

SaturnLimit saturn_limit(int n) {
  if (n % 2 != 0 || n < 4) throw DomainError("saturn_limit needs even n >= 4");
  const SumTable t = make_sum_table(n, 2.0);
  const auto c = block_coefficients(t);
  const double sigma = sigma_constant();
  SaturnLimit s;
  s.n = n;
  s.m_plus = critical_masses(t, n / 2).m_plus;
  const double n3 = std::pow(static_cast<double>(n), 3);
  s.ratio = s.m_plus / n3;
  s.target = (13.0 + 4.0 * std::sqrt(10.0)) * sigma;
  s.relative_gap = std::abs(s.ratio - s.target) / s.target;
  s.a_ratio = c.a_k[n / 2] / (n3 * n3);
  s.a_target = -2.0 * sigma * sigma;
  s.b_ratio = c.b_k[n / 2] / n3;
  s.b_target = 6.0 * sigma;
  return s;
}

std::vector<ScanRow> stability_scan(int n_min, int n_max) {
  if (n_min < 3 || n_max < n_min) throw DomainError("scan needs 3 <= n_min <= n_max");
  std::vector<ScanRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    ScanRow r;
    r.n = n;
    r.m_star = m_star(make_sum_table(n, 2.0));
    r.stable_above = n >= 7;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ringbif
