#include "ringbif/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ringbif/errors.hpp"
#include "ringbif/polygonal.hpp"

namespace ringbif {

namespace {

Vec offset_state(const GeneralConfig& cfg) {
  Vec x = cfg.stacked_positions();
  const double d = min_pair_distance(cfg);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) += 0.05 * d * std::sin(1.7 * static_cast<double>(i) + 0.3);
  return x;
}

}  // namespace

double default_fd_step(const GeneralConfig& cfg) { return 1e-5 * min_pair_distance(cfg); }

double fd_gradient_check(const GeneralConfig& cfg, const Vec& x) {
  check_config(cfg);
  const double h = default_fd_step(cfg);
  const Vec g = gradient(cfg, x);
  double worst = 0.0;
  Vec xp = x, xm = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp(i) += h;
    xm(i) -= h;
    const double fd = (potential_value(cfg, xp) - potential_value(cfg, xm)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - g(i)));
    xp(i) = xm(i) = x(i);
  }
  return worst;
}

double fd_gradient_check(const GeneralConfig& cfg) { return fd_gradient_check(cfg, offset_state(cfg)); }

Mat fd_hessian(const GeneralConfig& cfg, const Vec& x, double h) {
  const Eigen::Index d = x.size();
  Mat H(d, d);
  Vec xp = x, xm = x;
  for (Eigen::Index i = 0; i < d; ++i) {
    xp(i) += h;
    xm(i) -= h;
    H.col(i) = (gradient(cfg, xp) - gradient(cfg, xm)) / (2.0 * h);
    xp(i) = xm(i) = x(i);
  }
  return 0.5 * (H + H.transpose());
}

double fd_hessian_check(const GeneralConfig& cfg) {
  check_config(cfg);
  const Mat fd = fd_hessian(cfg, cfg.stacked_positions(), default_fd_step(cfg));
  return max_abs(Mat(fd - hessian_blocks(cfg).full_matrix()));
}

namespace {

struct DenseFamily {
  CMat c0, c1, c2;
  // strict sign count: a relative zero band would shift every located
  // crossing by band / |d lambda / d nu|
  int count(double nu) const { return inertia((nu * nu) * c2 + nu * c1 + c0, 0.0).negative; }
};

DenseFamily dense_family(const GeneralConfig& cfg, Sector sector) {
  const Pencil p(cfg);
  std::vector<Eigen::Index> keep;
  const Eigen::Index per = sector == Sector::planar ? 2 : 1;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (cfg.masses[i] != 0.0)
      for (Eigen::Index c = 0; c < per; ++c) keep.push_back(per * static_cast<Eigen::Index>(i) + c);
  auto restrict = [&](const CMat& m) {
    CMat r(keep.size(), keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = 0; b < keep.size(); ++b) r(a, b) = m(keep[a], keep[b]);
    return r;
  };
  DenseFamily f;
  if (sector == Sector::planar) {
    f.c0 = restrict(p.planar_coeff(0));
    f.c1 = restrict(p.planar_coeff(1));
    f.c2 = restrict(p.planar_coeff(2));
  } else {
    f.c0 = restrict(p.spatial_coeff(0));
    f.c1 = restrict(p.spatial_coeff(1));
    f.c2 = restrict(p.spatial_coeff(2));
  }
  return f;
}

}  // namespace

std::vector<Crossing> dense_crossings(const GeneralConfig& cfg, Sector sector, double lo, double hi,
                                      const CrossingOptions& opt) {
  check_config(cfg);
  if (!(hi > lo)) throw DomainError("empty frequency window");
  const DenseFamily f = dense_family(cfg, sector);
  const long steps = std::max(16L, static_cast<long>(std::ceil((hi - lo) * opt.points_per_unit)));
  std::vector<Crossing> out;
  double a = lo;
  int ca = f.count(a);
  for (long s = 1; s <= steps; ++s) {
    const double b = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(steps);
    const int cb = f.count(b);
    if (cb != ca) {
      double l = a, r = b;
      while (r - l > opt.tol) {
        const double m = 0.5 * (l + r);
        if (f.count(m) == ca)
          l = m;
        else
          r = m;
      }
      out.push_back({0.5 * (l + r), ca - cb});
    }
    a = b;
    ca = cb;
  }
  return out;
}

namespace {

struct RawSums {
  std::vector<long double> s, sb;
};

// classic Kahan, a different scheme from the library's Neumaier sum
struct Kahan {
  long double sum = 0.0L, c = 0.0L;
  void add(long double x) {
    const long double y = x - c;
    const long double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// sin(pi m/n), m in [0, n): cosine form in the middle quarters, sine of the
// exact integer distance to 0 or n near the ends
long double sin_pi_cos(long long m, int n) {
  const long double pi = std::numbers::pi_v<long double>;
  if (4 * m >= n && 4 * m <= 3LL * n) return std::cos(pi * static_cast<long double>(n - 2 * m) / (2.0L * n));
  const long long d = 2 * m < n ? m : n - m;
  return std::sin(pi * static_cast<long double>(d) / n);
}

RawSums raw_sums(int n, double alpha) {
  RawSums r;
  r.s.assign(static_cast<std::size_t>(n) + 1, 0.0L);
  r.sb.assign(static_cast<std::size_t>(n) + 1, 0.0L);
  const long double a = alpha;
  for (int k = 0; k <= n; ++k) {
    Kahan acc, accb;
    for (int j = n - 1; j >= 1; --j) {
      const long double num = sin_pi_cos((static_cast<long long>(k) * j) % n, n);
      const long double den = sin_pi_cos(j, n);
      acc.add(num * num / std::pow(den, a + 1.0L));
      accb.add(num * num / std::pow(den, a - 1.0L));
    }
    r.s[k] = acc.sum * std::pow(2.0L, -a);
    r.sb[k] = accb.sum * std::pow(2.0L, 2.0L - a);
  }
  return r;
}

}  // namespace

double recurrence_bruteforce(int n, double alpha) {
  if (n < 3) throw DomainError("recurrences need n >= 3");
  const RawSums r = raw_sums(n, alpha);
  long double worst = 0.0L;
  const long double s1 = r.s[1];
  for (int k = n - 1; k >= 1; --k) {
    Kahan second_acc;
    for (long double v : {r.s[k + 1], -2.0L * r.s[k], r.s[k - 1], -2.0L * s1, r.sb[k]}) second_acc.add(v);
    const long double second = second_acc.sum;
    Kahan closed_acc, partial;
    closed_acc.add(r.s[k]);
    closed_acc.add(-static_cast<long double>(k) * k * s1);
    for (int l = k - 1; l >= 1; --l) closed_acc.add(static_cast<long double>(l) * r.sb[k - l]);
    for (int l = k; l >= 1; --l) partial.add(r.sb[l]);
    const long double closed = closed_acc.sum;
    const long double first = r.s[k + 1] - r.s[k] - ((2.0L * k + 1.0L) * s1 - partial.sum);
    worst = std::max({worst, std::abs(second), std::abs(closed), std::abs(first)});
  }
  return static_cast<double>(worst);
}

double sums_table_deviation(int n, double alpha) {
  const RawSums r = raw_sums(n, alpha);
  const SumTable t = make_sum_table(n, alpha);
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double scale = std::max(1.0, static_cast<double>(std::abs(r.s[k])));
    worst = std::max(worst, std::abs(t.s[k] - static_cast<double>(r.s[k])) / scale);
    if (k < n) {
      const double sc = std::max(1.0, static_cast<double>(std::abs(r.sb[k])));
      worst = std::max(worst, std::abs(t.s_bar[k] - static_cast<double>(r.sb[k])) / sc);
    }
  }
  return worst;
}

// compare dense Morse jumps against the union of block breakpoints
double crossing_mismatch(const std::vector<Crossing>& dense, std::vector<Crossing> blocks, double match_tol) {
  std::sort(blocks.begin(), blocks.end(), [](const Crossing& a, const Crossing& b) { return a.nu < b.nu; });
  // merge coincident block roots
  std::vector<Crossing> merged;
  for (const auto& c : blocks) {
    if (!merged.empty() && std::abs(c.nu - merged.back().nu) <= match_tol)
      merged.back().jump += c.jump;
    else
      merged.push_back(c);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Crossing& c) { return c.jump == 0; }),
               merged.end());
  if (merged.size() != dense.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (merged[i].jump != dense[i].jump) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(merged[i].nu - dense[i].nu));
  }
  return worst;
}

std::vector<Crossing> block_breakpoints(const QuadraticPencil& fam, double lo, double hi) {
  std::vector<Crossing> out;
  const auto roots = pencil_roots(fam, lo, hi);
  for (const auto& r : roots) {
    const double rho = probe_radius(roots, r.nu);
    out.push_back({r.nu, morse_number(fam(r.nu - rho)) - morse_number(fam(r.nu + rho))});
  }
  return out;
}

bool VerificationSuiteResult::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
}

namespace {

std::string fingerprint(const char* what, int n, double mu, double alpha, double extra = std::nan("")) {
  char buf[160];
  if (std::isnan(extra))
    std::snprintf(buf, sizeof buf, "%s n=%d mu=%.17g alpha=%.17g", what, n, mu, alpha);
  else
    std::snprintf(buf, sizeof buf, "%s n=%d mu=%.17g alpha=%.17g nu=%.17g", what, n, mu, alpha, extra);
  return buf;
}

CaseResult make_case(std::string fp, double residual, double tol) {
  return {std::move(fp), residual, tol, std::isfinite(residual) && residual <= tol};
}

VerificationSuiteResult suite_sums(int n, double alpha) {
  VerificationSuiteResult r{"sums", {}};
  r.cases.push_back(make_case(fingerprint("recurrences(table)", n, 0.0, alpha), verify_recurrences(n, alpha).max_residual(), 1e-9));
  r.cases.push_back(make_case(fingerprint("recurrences(bruteforce)", n, 0.0, alpha), recurrence_bruteforce(n, alpha), 1e-9));
  r.cases.push_back(make_case(fingerprint("table-vs-bruteforce", n, 0.0, alpha), sums_table_deviation(n, alpha), 1e-12));
  return r;
}

VerificationSuiteResult suite_hessian(const RingConfig& ring) {
  VerificationSuiteResult r{"hessian", {}};
  const GeneralConfig g = ring_general_config(ring);
  r.cases.push_back(make_case(fingerprint("fd-gradient", ring.n, ring.mu, ring.alpha), fd_gradient_check(g), 1e-6));
  r.cases.push_back(make_case(fingerprint("fd-hessian", ring.n, ring.mu, ring.alpha), fd_hessian_check(g), 1e-6));
  const auto rs = row_sum_residual(g, hessian_blocks(g));
  r.cases.push_back(make_case(fingerprint("row-sums", ring.n, ring.mu, ring.alpha), std::max(rs.planar, rs.spatial), 1e-12));
  r.cases.push_back(make_case(fingerprint("equilibrium", ring.n, ring.mu, ring.alpha), equilibrium_residual(g), 1e-10));
  return r;
}

VerificationSuiteResult suite_blocks(const RingConfig& ring) {
  VerificationSuiteResult r{"blocks", {}};
  for (double nu : {0.0, 0.3, 1.0, 2.7})
    r.cases.push_back(make_case(fingerprint("diagonalization", ring.n, ring.mu, ring.alpha, nu),
                                verify_full_diagonalization(ring, nu).max_residual(), 1e-10));
  return r;
}

VerificationSuiteResult suite_crossings(const RingConfig& ring) {
  VerificationSuiteResult r{"crossings", {}};
  const GeneralConfig g = ring_general_config(ring);
  const bool massless = ring.mu == 0.0;
  for (Sector sec : {Sector::spatial, Sector::planar}) {
    std::vector<Crossing> blocks;
    double top = 0.0;
    for (int k = 1; k <= ring.n; ++k) {
      QuadraticPencil fam = sec == Sector::planar ? planar_family(ring, k, false) : spatial_family(ring, k);
      if (massless) {
        if (sec == Sector::spatial && k == ring.n) fam = QuadraticPencil{fam.c0.bottomRightCorner(1, 1), fam.c1.bottomRightCorner(1, 1), fam.c2.bottomRightCorner(1, 1)};
        if (sec == Sector::planar && ring.n >= 3 && (k == 1 || k == ring.n - 1))
          fam = QuadraticPencil{fam.c0.bottomRightCorner(2, 2), fam.c1.bottomRightCorner(2, 2), fam.c2.bottomRightCorner(2, 2)};
      }
      for (const auto& root : pencil_roots(fam)) top = std::max(top, std::abs(root.nu));
      const auto bp = block_breakpoints(fam, 1e-6, std::numeric_limits<double>::infinity());
      // n - k duplicates k in the spatial sector; planar blocks are distinct
      blocks.insert(blocks.end(), bp.begin(), bp.end());
    }
    const double hi = top + 0.5;
    const auto dense = dense_crossings(g, sec, 1e-3, hi, CrossingOptions{});
    r.cases.push_back(make_case(fingerprint(sec == Sector::planar ? "planar-crossings" : "spatial-crossings", ring.n,
                                            ring.mu, ring.alpha),
                                crossing_mismatch(dense, blocks, 1e-7 * (1.0 + hi)), 1e-7 * (1.0 + hi)));
  }
  return r;
}

}  // namespace

std::vector<VerificationSuiteResult> run_verification(const std::string& suite, int n, double mu, double alpha) {
  const bool all = suite == "all";
  if (!all && suite != "sums" && suite != "hessian" && suite != "blocks" && suite != "crossings")
    throw DomainError("unknown suite '" + suite + "'");
  std::vector<VerificationSuiteResult> out;
  if (all || suite == "sums") out.push_back(suite_sums(std::max(n, 3), alpha));
  if (suite == "sums") return out;
  const RingConfig ring = make_ring(n, mu, alpha);
  if (all || suite == "hessian") out.push_back(suite_hessian(ring));
  if ((all || suite == "blocks") && n >= 3) out.push_back(suite_blocks(ring));
  if (all || suite == "crossings") out.push_back(suite_crossings(ring));
  return out;
}

}  // namespace ringbif
