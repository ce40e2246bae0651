#include "ringbif/pencil.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ringbif/errors.hpp"

namespace ringbif {

std::string to_string(Sector s) { return s == Sector::planar ? "planar" : "spatial"; }

Sector sector_from_string(const std::string& s) {
  if (s == "planar") return Sector::planar;
  if (s == "spatial") return Sector::spatial;
  throw DomainError("unknown sector '" + s + "'");
}

QuadraticPencil QuadraticPencil::rescaled(double scale) const { return {c0, scale * c1, scale * scale * c2}; }

namespace {

Vec hermitian_eigenvalues(const CMat& h) {
  if (h.rows() == 1) return Vec::Constant(1, h(0, 0).real());
  if (h.rows() == 2) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double b2 = std::norm(h(0, 1));
    const double m = 0.5 * (a + d), r = std::hypot(0.5 * (a - d), std::sqrt(b2));
    Vec e(2);
    e << m - r, m + r;
    return e;
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("self-adjoint eigensolver failed");
  return es.eigenvalues();
}

void require_hermitian(const CMat& h) {
  if (h.rows() != h.cols()) throw DomainError("block is not square");
  const double scale = std::max(1.0, max_abs(h));
  if (hermitian_defect(h) > 1e-10 * scale) throw DomainError("block is not self-adjoint");
}

}  // namespace

Inertia inertia(const CMat& h, double rel_zero_tol) {
  require_hermitian(h);
  Inertia in;
  if (h.size() == 0) return in;
  const Vec ev = hermitian_eigenvalues(h);
  const double tol = rel_zero_tol * ev.cwiseAbs().maxCoeff();
  for (double e : ev) {
    if (e < -tol)
      ++in.negative;
    else if (e > tol)
      ++in.positive;
    else
      ++in.zero;
  }
  return in;
}

int morse_number(const CMat& h) { return inertia(h).negative; }

double hermitian_det(const CMat& h) {
  if (h.rows() == 1) return h(0, 0).real();
  if (h.rows() == 2) return (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).real();
  return h.partialPivLu().determinant().real();
}

double smallest_abs_eigenvalue(const CMat& h) { return hermitian_eigenvalues(h).cwiseAbs().minCoeff(); }

std::vector<cplx> pencil_eigenvalues(const QuadraticPencil& p) {
  const Eigen::Index d = p.dim();
  if (d == 0) return {};
  // shifted reversal nu = s + 1/tau keeps leading-coefficient singularities harmless
  static const double shifts[] = {0.1234567, -0.3141593, 0.7071068, -1.3719, 2.1133, -2.9017, 3.3377, -5.123};
  double best_rc = -1.0, s = 0.0;
  for (double cand : shifts) {
    Eigen::JacobiSVD<CMat> svd(p(cand));
    const auto& sv = svd.singularValues();
    const double rc = sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0;
    if (rc > best_rc) {
      best_rc = rc;
      s = cand;
    }
  }
  if (best_rc < 1e-13) throw NumericalError("pencil is singular at every trial shift (determinant vanishes identically?)");

  const auto lu = p(s).partialPivLu();
  const CMat lin = 2.0 * s * p.c2 + p.c1;
  CMat comp = CMat::Zero(2 * d, 2 * d);
  comp.topRightCorner(d, d) = CMat::Identity(d, d);
  comp.bottomLeftCorner(d, d) = -lu.solve(p.c2);
  comp.bottomRightCorner(d, d) = -lu.solve(lin);
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  if (es.info() != Eigen::Success) throw NumericalError("companion eigensolver failed");
  const CVec tau = es.eigenvalues();
  const double tmax = tau.cwiseAbs().maxCoeff();
  std::vector<cplx> out;
  for (Eigen::Index i = 0; i < tau.size(); ++i) {
    if (std::abs(tau(i)) <= 1e-12 * std::max(1.0, tmax)) continue;  // infinite eigenvalue
    out.push_back(s + 1.0 / tau(i));
  }
  return out;
}

namespace {

double refine_simple(const QuadraticPencil& p, double r, double halfwidth) {
  double a = r - halfwidth, b = r + halfwidth;
  double fa = hermitian_det(p(a)), fb = hermitian_det(p(b));
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0) == (fb < 0)) return r;
  for (int it = 0; it < 80 && b - a > 4e-16 * std::max(1.0, std::abs(r)); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = hermitian_det(p(m));
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<PencilRoot> pencil_roots(const QuadraticPencil& p, double lo, double hi, const RootOptions& opt) {
  auto ev = pencil_eigenvalues(p);
  const double near_real = 1e-4;
  std::vector<cplx> cand;
  for (const auto& z : ev)
    if (std::abs(z.imag()) <= near_real * (1.0 + std::abs(z.real()))) cand.push_back(z);
  std::sort(cand.begin(), cand.end(), [](const cplx& a, const cplx& b) { return a.real() < b.real(); });

  std::vector<PencilRoot> roots;
  std::size_t i = 0;
  while (i < cand.size()) {
    std::size_t j = i + 1;
    while (j < cand.size() &&
           std::abs(cand[j].real() - cand[j - 1].real()) <= opt.cluster_tol * (1.0 + std::abs(cand[j].real())))
      ++j;
    const std::size_t size = j - i;
    double re = 0.0, im = 0.0;
    for (std::size_t q = i; q < j; ++q) {
      re += cand[q].real();
      im += cand[q].imag();
    }
    re /= static_cast<double>(size);
    im /= static_cast<double>(size);
    if (size == 1) {
      if (std::abs(cand[i].imag()) <= opt.imag_tol * (1.0 + std::abs(re))) roots.push_back({re, 1});
    } else {
      // a cluster is real when its imaginary parts cancel and the pencil is
      // numerically singular at its centre
      // measured against the coefficients: p(re) itself may vanish identically
      const CMat at = p(re);
      const double r1 = 1.0 + std::abs(re);
      const double scale = std::max(1e-300, max_abs(p.c0) + max_abs(p.c1) * r1 + max_abs(p.c2) * r1 * r1);
      const bool balanced = std::abs(im) <= opt.imag_tol * (1.0 + std::abs(re));
      if (balanced && smallest_abs_eigenvalue(at) <= 1e-6 * scale) roots.push_back({re, static_cast<int>(size)});
    }
    i = j;
  }

  // sharpen simple roots by bisection on the determinant
  for (std::size_t q = 0; q < roots.size(); ++q) {
    if (roots[q].multiplicity != 1) continue;
    const double r = roots[q].nu;
    double gap = 1e-6 * (1.0 + std::abs(r));
    if (q > 0) gap = std::min(gap, 0.5 * (r - roots[q - 1].nu));
    if (q + 1 < roots.size()) gap = std::min(gap, 0.5 * (roots[q + 1].nu - r));
    if (gap > 0) roots[q].nu = refine_simple(p, r, gap);
  }

  std::vector<PencilRoot> out;
  for (const auto& r : roots)
    if (r.nu >= lo && r.nu <= hi) out.push_back(r);
  return out;
}

int total_multiplicity(const std::vector<PencilRoot>& roots) {
  int t = 0;
  for (const auto& r : roots) t += r.multiplicity;
  return t;
}

int MorseProfile::count_at(double nu) const {
  std::size_t i = 0;
  while (i < breakpoints.size() && nu > breakpoints[i]) ++i;
  return counts[i];
}

MorseProfile morse_profile(const QuadraticPencil& family, double lo, double hi, int k, Sector sector) {
  if (!(lo < hi)) throw DomainError("empty window");
  MorseProfile prof;
  prof.k = k;
  prof.sector = sector;
  prof.family = family;
  prof.lo = lo;
  prof.hi = hi;
  prof.roots = pencil_roots(family, lo, hi);

  // sample the Morse number between consecutive roots
  std::vector<double> cuts;
  for (const auto& r : prof.roots) cuts.push_back(r.nu);
  auto sample_between = [&](double a, double b) {
    if (std::isinf(a) && std::isinf(b)) return 0.0;
    if (std::isinf(a)) return b - std::max(1.0, std::abs(b));
    if (std::isinf(b)) return a + std::max(1.0, std::abs(a));
    return 0.5 * (a + b);
  };
  std::vector<int> raw_counts;
  double left = lo;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double right = i < cuts.size() ? cuts[i] : hi;
    raw_counts.push_back(morse_number(family(sample_between(left, right))));
    left = right;
  }
  prof.counts.push_back(raw_counts[0]);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (raw_counts[i + 1] != raw_counts[i]) {
      prof.breakpoints.push_back(cuts[i]);
      prof.counts.push_back(raw_counts[i + 1]);
    }
  }
  return prof;
}

double probe_radius(const std::vector<PencilRoot>& roots, double nu0) {
  double rho = 1e-3 * (1.0 + std::abs(nu0));
  for (const auto& r : roots) {
    const double d = std::abs(r.nu - nu0);
    if (d > 1e-12 * (1.0 + std::abs(nu0))) rho = std::min(rho, 0.5 * d);
  }
  return rho;
}

int eta_index(const MorseProfile& profile, double nu0, int sigma) {
  const bool is_root = std::any_of(profile.roots.begin(), profile.roots.end(), [&](const PencilRoot& r) {
    return std::abs(r.nu - nu0) <= 1e-9 * (1.0 + std::abs(nu0));
  });
  if (!is_root) throw DomainError("eta requested at a value that is not a root of the block");
  const double rho = probe_radius(profile.roots, nu0);
  const int left = morse_number(profile.family(nu0 - rho));
  const int right = morse_number(profile.family(nu0 + rho));
  return sigma * (left - right);
}

}  // namespace ringbif
