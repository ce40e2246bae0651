#include "ringbif/spectrum.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "ringbif/errors.hpp"

namespace ringbif {

namespace {

void require_alpha2(double alpha, const char* what) {
  if (alpha != 2.0) throw DomainError(std::string(what) + " is a closed form for alpha = 2 only");
}

void require_middle_k(int n, int k) {
  if (k < 2 || k > n - 2) throw DomainError("k must lie in [2, n-2], got " + std::to_string(k));
}

struct Coeffs {
  double s1, alpha_k, beta_k, gamma_k, a_k, b_k;
};

Coeffs coeffs(const SumTable& t, int k) {
  const auto c = block_coefficients(t);
  return {t.s[1], c.alpha_k[k], c.beta_k[k], c.gamma_k[k], c.a_k[k], c.b_k[k]};
}

// minimise f on [lo, hi] from a grid seed, Brent polish
template <class F>
std::pair<double, double> grid_min(F f, double lo, double hi, int grid) {
  double best_x = lo, best_f = std::numeric_limits<double>::infinity();
  const double h = (hi - lo) / grid;
  for (int i = 1; i < grid; ++i) {
    const double x = lo + i * h;
    const double v = f(x);
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
  }
  if (!std::isfinite(best_f)) throw NumericalError("extremum search found no finite value on the grid");
  const double a = std::max(lo + 1e-12, best_x - h), b = std::min(hi - 1e-12, best_x + h);
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima(f, a, b, 52, iters);
  if (r.second <= best_f) return {r.first, r.second};
  return {best_x, best_f};
}

}  // namespace

double det_dk(const SumTable& t, double mu, int k, double nu) {
  require_alpha2(t.alpha, "d_k");
  require_middle_k(t.n, k);
  const Coeffs c = coeffs(t, k);
  const double w = mu + c.s1;
  const double nu2 = nu * nu;
  return w * w * nu2 * nu2 + (2.0 * c.alpha_k - w - c.s1) * w * nu2 - 4.0 * w * c.gamma_k * nu + c.a_k + mu * c.b_k;
}

double det_dk(const RingConfig& ring, int k, double nu) { return det_dk(ring.sums, ring.mu, k, nu); }

DkQuadratic omega_quadratic(const SumTable& t, int k, double nu) {
  require_alpha2(t.alpha, "omega_roots");
  require_middle_k(t.n, k);
  const Coeffs c = coeffs(t, k);
  DkQuadratic q;
  q.a = nu * nu * (nu * nu - 1.0);
  q.b = nu * nu * (2.0 * c.alpha_k - c.s1) - 4.0 * nu * c.gamma_k + c.b_k;
  q.c = c.s1 * c.b_k - c.a_k;
  return q;
}

OmegaRoots omega_roots(const SumTable& t, int k, double nu) {
  const DkQuadratic q = omega_quadratic(t, k, nu);
  const double disc = q.b * q.b + 4.0 * q.a * q.c;
  if (disc < 0.0) throw NumericalError("negative discriminant in omega_roots");
  const double root = std::sqrt(disc);
  OmegaRoots r;
  // b > 0 on the whole line: the cancellation-free forms
  r.plus = 2.0 * q.c / (q.b + root);
  r.minus = q.a != 0.0 ? -(q.b + root) / (2.0 * q.a) : -std::numeric_limits<double>::infinity();
  return r;
}

double mu_plus(const SumTable& t, int k, double nu) { return omega_roots(t, k, nu).plus - t.s[1]; }
double mu_minus(const SumTable& t, int k, double nu) { return omega_roots(t, k, nu).minus - t.s[1]; }

double mu_k(const SumTable& t, int k) {
  require_alpha2(t.alpha, "mu_k");
  if (k < 1 || k > t.n - 1) throw DomainError("mu_k needs k in [1, n-1]");
  if (t.n >= 3 && (k == 1 || k == t.n - 1)) {
    const auto e = edge_coefficients(t);
    return -e.a1 / e.b1;
  }
  const Coeffs c = coeffs(t, k);
  return -c.a_k / c.b_k;
}

CriticalMasses critical_masses(const SumTable& t, int k) {
  require_alpha2(t.alpha, "critical_masses");
  require_middle_k(t.n, k);
  CriticalMasses cm;
  cm.k = k;
  cm.mu_k = mu_k(t, k);
  auto neg_plus = [&](double nu) { return -mu_plus(t, k, nu); };
  auto minus = [&](double nu) { return mu_minus(t, k, nu); };
  const auto m0 = grid_min(neg_plus, -8.0, 8.0, 3200);
  cm.m0 = -m0.second;
  cm.nu_m0 = m0.first;
  const auto mp = grid_min(minus, 0.0, 1.0, 800);
  cm.m_plus = mp.second;
  cm.nu_m_plus = mp.first;
  const auto mm = grid_min(minus, -1.0, 0.0, 800);
  cm.m_minus = mm.second;
  cm.nu_m_minus = mm.first;
  return cm;
}

double half_ring_m_plus(const SumTable& t) {
  require_alpha2(t.alpha, "half_ring_m_plus");
  if (t.n % 2 != 0 || t.n < 4) throw DomainError("closed form needs even n >= 4");
  const Coeffs c = coeffs(t, t.n / 2);
  const double B = 2.0 * (c.b_k + c.alpha_k - c.s1);
  const double C = 4.0 * (c.a_k - (c.alpha_k - c.s1) * (c.alpha_k - c.s1));
  return B + std::sqrt(B * B + C);
}

EdgeCoefficients edge_coefficients(const SumTable& t) {
  require_alpha2(t.alpha, "edge coefficients");
  if (t.n < 3) throw DomainError("edge sector needs n >= 3");
  const double s1 = t.s[1], s2 = t.s[2], n = t.n;
  return {(2.0 * s1 + n) * (2.0 * s1 + s2) / 4.0, 3.0 * (4.0 * s1 + s2 - 2.0 * n) / 4.0};
}

MuQuadratic d1_mu_quadratic(const SumTable& t, double nu) {
  const auto e = edge_coefficients(t);
  const double s1 = t.s[1], s2 = t.s[2], n = t.n;
  const double A = nu * nu * (nu * nu - 1.0);
  const double L = (s2 - 2.0 * s1 + n) * nu * nu / 2.0 - (s2 - n) * nu;
  return {A, 2.0 * s1 * A + L + e.b1, A * s1 * s1 + L * s1 + e.a1};
}

double d1_polynomial(const SumTable& t, double mu, double nu) {
  const auto q = d1_mu_quadratic(t, nu);
  return (q.A * mu + q.B) * mu + q.C;
}

D1Value det_d1(const RingConfig& ring, double nu) {
  require_alpha2(ring.alpha, "d_1");
  D1Value v;
  v.full_det = hermitian_det(block_m0_normalized(ring, 1, nu));
  v.d1_factor = d1_polynomial(ring.sums, ring.mu, nu);
  return v;
}

std::optional<double> mu_zero_k1(const SumTable& t, double nu) {
  const auto q = d1_mu_quadratic(t, nu);
  double root;
  if (std::abs(q.A) < 1e-300) {
    if (q.B == 0.0) return std::nullopt;
    root = -q.C / q.B;
  } else {
    const double disc = q.B * q.B - 4.0 * q.A * q.C;
    if (disc < 0.0) return std::nullopt;
    // larger root when A < 0, i.e. on |nu| < 1
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (q.B + (q.B >= 0 ? sq : -sq));
    const double r1 = qq / q.A, r2 = qq != 0.0 ? q.C / qq : r1;
    root = q.A < 0 ? std::max(r1, r2) : std::min(r1, r2);
  }
  if (!(root > 0.0)) return std::nullopt;
  return root;
}

EdgeThresholds edge_thresholds(const SumTable& t) {
  const auto e = edge_coefficients(t);
  EdgeThresholds th;
  th.mu_1 = -e.a1 / e.b1;
  th.single_curve = e.b1 < 0.0;
  auto f = [&](double nu) {
    const auto m = mu_zero_k1(t, nu);
    return m ? *m : std::numeric_limits<double>::infinity();
  };
  const auto mp = grid_min(f, 0.0, 1.0, 800);
  th.m_plus = mp.second;
  th.nu_m_plus = mp.first;
  const auto mm = grid_min(f, -1.0, 0.0, 800);
  th.m_minus = mm.second;
  th.nu_m_minus = mm.first;
  if (mp.second <= mm.second) {
    th.m0 = mp.second;
    th.nu_m0 = mp.first;
  } else {
    th.m0 = mm.second;
    th.nu_m0 = mm.first;
  }
  return th;
}

CMat n2_block_m1_normalized(double mu, double nu) { return n2_block_m0(mu, std::sqrt(mu + 0.25) * nu); }

N2Planar n2_planar(double mu, double nu) {
  if (!(mu > 0.0)) throw DomainError("n = 2 analysis needs mu > 0");
  N2Planar r;
  r.det = hermitian_det(n2_block_m1_normalized(mu, nu));
  const double nu2 = nu * nu;
  r.d1 = (16.0 * mu * mu + 8.0 * mu + 1.0) * nu2 * nu2 + (-16.0 * mu * mu + 20.0 * mu + 6.0) * nu2 - (84.0 * mu + 119.0);
  r.nu1 = std::sqrt((2.0 * mu - 3.0 + 2.0 * std::sqrt(mu * mu + 18.0 * mu + 32.0)) / (4.0 * mu + 1.0));
  return r;
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::mu_plus:
      return "mu_plus";
    case Branch::mu_minus:
      return "mu_minus";
    case Branch::mu_zero_k1:
      return "mu_zero_k1";
  }
  return "?";
}

SpectralCurve spectral_curve(const SumTable& t, int k, Branch branch, double nu_lo, double nu_hi, int samples) {
  if (samples < 2) throw DomainError("need at least two samples");
  if (!(nu_lo < nu_hi)) throw DomainError("empty nu window");
  SpectralCurve c;
  c.k = k;
  c.branch = branch;
  c.nu_lo = nu_lo;
  c.nu_hi = nu_hi;
  for (int i = 0; i < samples; ++i) {
    const double nu = nu_lo + (nu_hi - nu_lo) * i / (samples - 1);
    double mu = std::numeric_limits<double>::quiet_NaN();
    if (branch == Branch::mu_plus) {
      mu = mu_plus(t, k, nu);
    } else if (branch == Branch::mu_minus) {
      if (nu * nu * (nu * nu - 1.0) == 0.0) continue;
      mu = mu_minus(t, k, nu);
    } else {
      const auto m = mu_zero_k1(t, nu);
      if (!m) continue;
      mu = *m;
    }
    if (std::isfinite(mu)) c.samples.emplace_back(nu, mu);
  }
  return c;
}

std::vector<LocusPoint> zero_locus(int n, double alpha, int k, Sector sector, double mu_min, double mu_max,
                                   int samples, double nu_min, double nu_max) {
  if (samples < 1) throw DomainError("samples must be >= 1");
  if (!(mu_min <= mu_max)) throw DomainError("mu window is empty");
  const SumTable t = make_sum_table(n, alpha);
  if (k < 1 || k > n) throw DomainError("k must lie in [1, n]");
  std::vector<LocusPoint> out;
  for (int i = 0; i < samples; ++i) {
    const double mu = samples == 1 ? mu_min : mu_min + (mu_max - mu_min) * i / (samples - 1);
    if (!(mu + t.s[1] > 0.0)) continue;
    if (sector == Sector::planar && mu == 0.0 && (k == 1 || k == n - 1)) continue;  // massless centre: identically singular
    const RingConfig ring = make_ring(t, mu);
    const QuadraticPencil fam = sector == Sector::planar ? planar_family(ring, k, true) : spatial_family(ring, k);
    for (const auto& r : pencil_roots(fam, nu_min, nu_max)) {
      LocusPoint p;
      p.mu = mu;
      p.nu = r.nu;
      p.multiplicity = r.multiplicity;
      if (sector == Sector::spatial) {
        p.branch = "spatial";
      } else if (k == n) {
        p.branch = "k_n";
      } else if (n >= 3 && (k == 1 || k == n - 1)) {
        p.branch = std::abs(std::abs(r.nu) - 1.0) < 1e-6 ? "structural" : to_string(Branch::mu_zero_k1);
      } else if (alpha == 2.0 && n >= 4) {
        const double dp = std::abs(mu - mu_plus(t, k, r.nu));
        const double a = r.nu * r.nu * (r.nu * r.nu - 1.0);
        const double dm = a != 0.0 ? std::abs(mu - mu_minus(t, k, r.nu)) : std::numeric_limits<double>::infinity();
        p.branch = to_string(dp <= dm ? Branch::mu_plus : Branch::mu_minus);
      } else {
        p.branch = "numeric";
      }
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace ringbif
