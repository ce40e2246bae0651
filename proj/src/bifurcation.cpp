#include "ringbif/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

#include "ringbif/errors.hpp"
#include "ringbif/spectrum.hpp"

namespace ringbif {

QuadraticPencil drop_leading(const QuadraticPencil& p, Eigen::Index count) {
  const Eigen::Index d = p.dim() - count;
  return {p.c0.bottomRightCorner(d, d), p.c1.bottomRightCorner(d, d), p.c2.bottomRightCorner(d, d)};
}

BlockClassification classify_block(const QuadraticPencil& fam, Sector sector, int k, int sigma, double sqrt_omega) {
  BlockClassification out;
  const auto roots = pencil_roots(fam);
  double rmax = 0.0;
  for (const auto& r : roots) rmax = std::max(rmax, std::abs(r.nu));
  out.count_at_infinity = morse_number(fam(2.0 * rmax + 10.0));
  const double tiny = 1e-9;
  double first_pos = 2.0 * rmax + 10.0;
  for (const auto& r : roots)
    if (r.nu > tiny) first_pos = std::min(first_pos, r.nu);
  out.count_near_zero = morse_number(fam(0.5 * first_pos > 1e-3 ? 1e-3 : 0.5 * first_pos));

  for (const auto& r : roots) {
    if (r.nu <= tiny) continue;
    const double rho = probe_radius(roots, r.nu);
    BifurcationPoint p;
    p.nu = r.nu;
    p.nu_normalized = r.nu / sqrt_omega;
    p.sector = sector;
    p.k = k;
    p.multiplicity = r.multiplicity;
    p.eta = sigma * (morse_number(fam(r.nu - rho)) - morse_number(fam(r.nu + rho)));
    p.flags.kernel_degenerate = r.multiplicity > 1 || inertia(fam(r.nu), 1e-7).zero > 1;
    (p.eta != 0 ? out.points : out.silent).push_back(p);
  }
  return out;
}

namespace {

void check_not_degenerate(const RingConfig& ring) {
  if (ring.alpha != 2.0 || ring.n < 3) return;
  for (int k = 1; k <= ring.n - 1; ++k) {
    if (ring.mu == 0.0 && (k == 1 || k == ring.n - 1)) continue;
    const double mk = mu_k(ring.sums, k);
    if (std::abs(ring.mu - mk) <= 1e-6)
      throw DegenerateError("mu = " + std::to_string(ring.mu) + " is within 1e-6 of mu_" + std::to_string(k) +
                            " = " + std::to_string(mk) + ": the orbit is not hyperbolic");
  }
}

Mat restricted_planar_hessian(const GeneralConfig& cfg) {
  // complement of the rotation generator Jbar x0 (massless bodies dropped)
  std::vector<int> keep;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (cfg.masses[i] != 0.0) keep.push_back(static_cast<int>(i));
  const Mat A = hessian_blocks(cfg).planar_matrix();
  const Eigen::Index d = 2 * static_cast<Eigen::Index>(keep.size());
  Mat sub(d, d);
  Vec gen(d);
  const Mat2 J = symplectic_J();
  for (std::size_t a = 0; a < keep.size(); ++a) {
    gen.segment<2>(2 * a) = J * cfg.positions[keep[a]];
    for (std::size_t b = 0; b < keep.size(); ++b) sub.block<2, 2>(2 * a, 2 * b) = A.block<2, 2>(2 * keep[a], 2 * keep[b]);
  }
  if (gen.norm() == 0.0) return sub;
  Eigen::HouseholderQR<Mat> qr(gen);
  const Mat Q = qr.householderQ();
  const Mat comp = Q.rightCols(d - 1);
  return comp.transpose() * sub * comp;
}

}  // namespace

int sigma_orientation(const GeneralConfig& cfg) {
  const Mat r = restricted_planar_hessian(cfg);
  const auto in = inertia(r.cast<cplx>(), 1e-9);
  if (in.zero > 0)
    throw DegenerateError("planar Hessian has a kernel beyond the rotation generator: the orbit is not hyperbolic");
  return in.negative % 2 == 0 ? 1 : -1;
}

int sigma_orientation(const RingConfig& ring) {
  check_not_degenerate(ring);
  if (ring.alpha != 2.0) {
    // no closed form for the thresholds: use the dense restricted Hessian to detect degeneracy
    (void)sigma_orientation(ring_general_config(ring));
  }
  // sign of the nonzero entry of the k = n block at nu = 0
  const double v = (ring.alpha + 1.0) * ring.omega();
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

Enumeration enumerate_bifurcations(const RingConfig& ring, bool with_resonance) {
  if (!(ring.omega() > 0.0)) throw DomainError("omega must be positive");
  Enumeration e;
  e.sigma = sigma_orientation(ring);
  const int n = ring.n;
  const double w = std::sqrt(ring.omega());
  e.equilibrium_residual = equilibrium_residual(ring_general_config(ring));

  // thresholds for flags
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); };
  std::vector<bool> near_thr(static_cast<std::size_t>(n + 1), false), near_mk(static_cast<std::size_t>(n + 1), false);
  if (ring.alpha == 2.0 && n >= 3) {
    for (int k = 1; k <= n - 1; ++k) {
      if (ring.mu == 0.0 && (k == 1 || k == n - 1)) continue;
      const double mk = mu_k(ring.sums, k);
      near_mk[k] = std::abs(ring.mu - mk) <= 1e-3;
      if (k >= 2 && k <= n - 2) {
        const auto cm = critical_masses(ring.sums, k);
        near_thr[k] = near(ring.mu, cm.m0) || near(ring.mu, cm.m_plus) || near(ring.mu, cm.m_minus);
      } else if (n >= 3) {
        const auto th = edge_thresholds(ring.sums);
        near_thr[k] = near(ring.mu, th.m_plus) || near(ring.mu, th.m_minus);
      }
    }
  }

  const bool massless = ring.mu == 0.0;
  for (int k = 1; k <= n; ++k) {
    QuadraticPencil fam = planar_family(ring, k, false);
    if (massless && n >= 3 && (k == 1 || k == n - 1)) fam = drop_leading(fam, 1);
    if (massless && n == 2 && k == 1) fam = drop_leading(fam, 2);
    auto cls = classify_block(fam, Sector::planar, k, e.sigma, w);
    for (auto* list : {&cls.points, &cls.silent})
      for (auto& p : *list) {
        p.isotropy = describe(n, k, Sector::planar);
        p.flags.near_mu_k = near_mk[k];
        p.flags.near_threshold = near_thr[k];
      }
    e.points.insert(e.points.end(), cls.points.begin(), cls.points.end());
    e.silent.insert(e.silent.end(), cls.silent.begin(), cls.silent.end());
  }
  for (int k = 1; k <= n; ++k) {
    QuadraticPencil fam = spatial_family(ring, k);
    if (massless && k == n) fam = drop_leading(fam, 1);
    auto cls = classify_block(fam, Sector::spatial, k, e.sigma, w);
    for (auto* list : {&cls.points, &cls.silent})
      for (auto& p : *list) {
        p.isotropy = describe(n, k, Sector::spatial);
        p.flags.near_mu_k = k < n && near_mk[k];
      }
    if (with_resonance && !cls.points.empty()) {
      try {
        const auto rep = is_truly_spatial(ring, k);
        for (auto& p : cls.points) {
          p.truly_spatial = rep.truly_spatial;
          p.flags.resonance_suspect = rep.truly_spatial != Verdict::yes;
        }
      } catch (const DegenerateError&) {
        for (auto& p : cls.points) p.flags.resonance_suspect = true;
      }
    }
    e.points.insert(e.points.end(), cls.points.begin(), cls.points.end());
    e.silent.insert(e.silent.end(), cls.silent.begin(), cls.silent.end());
  }

  auto order = [](const BifurcationPoint& a, const BifurcationPoint& b) {
    if (a.sector != b.sector) return a.sector == Sector::planar;
    if (a.k != b.k) return a.k < b.k;
    return a.nu < b.nu;
  };
  std::sort(e.points.begin(), e.points.end(), order);
  std::sort(e.silent.begin(), e.silent.end(), order);

  int spatial = 0;
  for (const auto& p : e.points) spatial += p.sector == Sector::spatial;
  e.annotations.push_back("spatial branches found: " + std::to_string(spatial) +
                          "; each with eta = +1, so they are non-admissible or reach other equilibria");
  if (ring.nonphysical()) e.annotations.push_back("nonphysical-mass: mu < 0");
  if (massless) e.annotations.push_back("mu = 0: central coordinates removed from the k = 1, n-1 and spatial k = n blocks");
  return e;
}

Enumeration enumerate_general(const GeneralConfig& cfg) {
  check_config(cfg);
  Enumeration e;
  e.sigma = sigma_orientation(cfg);
  e.equilibrium_residual = equilibrium_residual(cfg);
  const Pencil pen(cfg);
  const double w = std::sqrt(cfg.omega);
  const QuadraticPencil planar{pen.planar_coeff(0), pen.planar_coeff(1), pen.planar_coeff(2)};
  const QuadraticPencil spatial{pen.spatial_coeff(0), pen.spatial_coeff(1), pen.spatial_coeff(2)};
  for (auto [fam, sec] : {std::pair{planar, Sector::planar}, std::pair{spatial, Sector::spatial}}) {
    auto cls = classify_block(fam, sec, 0, e.sigma, w);
    e.points.insert(e.points.end(), cls.points.begin(), cls.points.end());
    e.silent.insert(e.silent.end(), cls.silent.begin(), cls.silent.end());
  }
  int spatial_count = 0;
  for (const auto& p : e.points) spatial_count += p.sector == Sector::spatial;
  e.annotations.push_back("observed spatial bifurcation values: " + std::to_string(spatial_count) + " (bodies: " +
                          std::to_string(cfg.size()) + ")");
  return e;
}

}  // namespace ringbif
