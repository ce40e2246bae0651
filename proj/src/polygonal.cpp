#include "ringbif/polygonal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ringbif/errors.hpp"

namespace ringbif {

namespace {

void check_k(int n, int k) {
  if (k < 1 || k > n) throw DomainError("k must lie in [1, n], got " + std::to_string(k));
}

bool is_edge(int n, int k) { return n >= 3 && (k == 1 || k == n - 1); }

Mat2 reflection_R() { return Vec2(1.0, -1.0).asDiagonal(); }

}  // namespace

RingConfig make_ring(const SumTable& sums, double mu) {
  RingConfig r;
  r.n = sums.n;
  r.mu = mu;
  r.alpha = sums.alpha;
  r.sums = sums;
  if (!(r.omega() > 0.0))
    throw DomainError("omega = mu + s_1 must be positive (mu > " + std::to_string(-sums.s[1]) + ")");
  return r;
}

RingConfig make_ring(int n, double mu, double alpha) { return make_ring(make_sum_table(n, alpha), mu); }

GeneralConfig ring_general_config(const RingConfig& ring) {
  GeneralConfig g;
  g.alpha = ring.alpha;
  g.omega = ring.omega();
  g.masses.push_back(ring.mu);
  g.positions.push_back(Vec2::Zero());
  const double zeta = 2.0 * std::numbers::pi / ring.n;
  for (int j = 1; j <= ring.n; ++j) {
    g.masses.push_back(1.0);
    g.positions.emplace_back(std::cos(j * zeta), std::sin(j * zeta));
  }
  g.positions.back() = Vec2(1.0, 0.0);
  return g;
}

std::vector<std::array<long double, 2>> ring_positions_extended(int n) {
  std::vector<std::array<long double, 2>> p{{0.0L, 0.0L}};
  const long double zeta = 2.0L * std::numbers::pi_v<long double> / n;
  for (int j = 1; j < n; ++j) p.push_back({std::cos(j * zeta), std::sin(j * zeta)});
  p.push_back({1.0L, 0.0L});
  return p;
}

BlockCoefficients block_coefficients(const SumTable& t) {
  const int n = t.n;
  const double ap = 0.5 * (t.alpha + 1.0), am = 0.5 * (t.alpha - 1.0);
  const double s1 = t.s[1];
  BlockCoefficients c;
  for (auto* v : {&c.alpha_k, &c.beta_k, &c.gamma_k, &c.a_k, &c.b_k, &c.c_k}) v->assign(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    const double sp = t.at(k + 1), sm = t.at(k - 1);
    c.alpha_k[k] = am * 0.5 * (sp + sm);
    c.beta_k[k] = ap * (t.s[k] - s1);
    c.gamma_k[k] = am * 0.5 * (sp - sm);
    const double diag = s1 + c.alpha_k[k];
    c.a_k[k] = diag * diag - c.beta_k[k] * c.beta_k[k] - c.gamma_k[k] * c.gamma_k[k];
    c.b_k[k] = (t.alpha + 1.0) * (s1 + c.alpha_k[k] + c.beta_k[k]);
    c.c_k[k] = s1 * c.b_k[k] - c.a_k[k];
  }
  return c;
}

CMat generic_block_B(const SumTable& t, double mu, int k) {
  check_k(t.n, k);
  const double ap = 0.5 * (t.alpha + 1.0), am = 0.5 * (t.alpha - 1.0);
  const double s1 = t.s[1];
  const double ak = am * 0.5 * (t.at(k + 1) + t.at(k - 1));
  const double bk = ap * (t.s[k] - s1);
  const double gk = am * 0.5 * (t.at(k + 1) - t.at(k - 1));
  const Mat2 R = reflection_R();
  const Mat2 real_part = ap * (Mat2::Identity() + R) * mu + (s1 + ak) * Mat2::Identity() - bk * R;
  return real_part.cast<cplx>() - gk * I_unit * symplectic_J().cast<cplx>();
}

CMat block_B(const RingConfig& ring, int k) {
  const int n = ring.n;
  if (n < 3) throw DomainError("closed-form blocks need n >= 3; use the n = 2 block");
  check_k(n, k);
  if (!is_edge(n, k)) return generic_block_B(ring.sums, ring.mu, k);

  const double al = ring.alpha, am = 0.5 * (al - 1.0), mu = ring.mu, s1 = ring.s1();
  const double a1 = am * 0.5 * (ring.sums.at(2) + ring.sums.at(0));
  const double r = std::sqrt(0.5 * n);
  CMat b(3, 3);
  b << mu * (s1 + mu + n * am), -r * mu * al, -r * mu * I_unit,
       -r * mu * al, s1 + a1 + (al + 1.0) * mu, a1 * I_unit,
       r * mu * I_unit, -a1 * I_unit, s1 + a1;
  return k == 1 ? b : CMat(b.conjugate());
}

QuadraticPencil planar_family(const RingConfig& ring, int k, bool normalized) {
  QuadraticPencil p;
  const double w = std::sqrt(ring.omega());
  const CMat iJ = I_unit * symplectic_J().cast<cplx>();
  if (ring.n == 2 && k == 1) {
    p.c0 = n2_block_m0(ring.mu, 0.0);
    const CMat at1 = n2_block_m0(ring.mu, 1.0), atm1 = n2_block_m0(ring.mu, -1.0);
    p.c2 = 0.5 * (at1 + atm1) - p.c0;
    p.c1 = 0.5 * (at1 - atm1);
  } else {
    p.c0 = ring.n == 2 ? generic_block_B(ring.sums, ring.mu, k) : block_B(ring, k);
    if (is_edge(ring.n, k)) {
      const double sg = k == 1 ? 1.0 : -1.0;
      p.c2 = CMat::Identity(3, 3);
      p.c2(0, 0) = ring.mu;
      p.c1 = CMat::Zero(3, 3);
      p.c1(0, 0) = -2.0 * w * sg * ring.mu;
      p.c1.bottomRightCorner(2, 2) = -2.0 * w * iJ;
    } else {
      p.c2 = CMat::Identity(2, 2);
      p.c1 = -2.0 * w * iJ;
    }
  }
  return normalized ? p.rescaled(w) : p;
}

CMat block_m0(const RingConfig& ring, int k, double nu) {
  if (ring.n == 2) {
    check_k(2, k);
    if (k == 1) return n2_block_m0(ring.mu, nu);
    const double w = std::sqrt(ring.omega());
    return (nu * nu) * CMat::Identity(2, 2) - 2.0 * nu * w * I_unit * symplectic_J().cast<cplx>() +
           generic_block_B(ring.sums, ring.mu, 2);
  }
  return planar_family(ring, k, false)(nu);
}

CMat block_m0_normalized(const RingConfig& ring, int k, double nu) {
  return block_m0(ring, k, std::sqrt(ring.omega()) * nu);
}

Mat block_m1(const RingConfig& ring, int k, double nu) {
  check_k(ring.n, k);
  const double mu = ring.mu;
  if (k < ring.n) return Mat::Constant(1, 1, nu * nu - (mu + ring.sums.s[k]));
  const double n = ring.n, rn = std::sqrt(n);
  Mat m(2, 2);
  m << mu * (nu * nu - n), rn * mu, rn * mu, nu * nu - mu;
  return m;
}

QuadraticPencil spatial_family(const RingConfig& ring, int k) {
  QuadraticPencil p;
  p.c0 = block_m1(ring, k, 0.0).cast<cplx>();
  p.c1 = CMat::Zero(p.c0.rows(), p.c0.cols());
  p.c2 = (block_m1(ring, k, 1.0) - block_m1(ring, k, 0.0)).cast<cplx>();
  return p;
}

CMat n2_block_m0(double mu, double nu) {
  // raw frequency; omega = mu + 1/4
  const double w = std::sqrt(mu + 0.25);
  const double r2 = std::sqrt(2.0);
  const cplx lin = 2.0 * nu * w * I_unit;
  CMat m(4, 4);
  m << mu * (nu * nu + mu + 17.0 / 4.0), mu * lin, -2.0 * r2 * mu, 0.0,
       -mu * lin, mu * (nu * nu + mu - 7.0 / 4.0), 0.0, r2 * mu,
       -2.0 * r2 * mu, 0.0, nu * nu + 3.0 * mu + 0.25, lin,
       0.0, r2 * mu, -lin, nu * nu + 0.25;
  return m;
}

CMat planar_basis(int n, int k) {
  if (n < 2) throw DomainError("n must be >= 2");
  check_k(n, k);
  const int rows = 2 * (n + 1);
  const double zeta = 2.0 * std::numbers::pi / n;
  if (n == 2 && k == 1) {
    CMat t = CMat::Zero(rows, 4);
    t(0, 0) = t(1, 1) = 1.0;
    for (int j = 1; j <= 2; ++j) {
      t(2 * j, 2) = t(2 * j + 1, 3) = 1.0 / std::sqrt(2.0);
    }
    return t;
  }
  const bool edge = is_edge(n, k);
  CMat t = CMat::Zero(rows, edge ? 3 : 2);
  int col = 0;
  if (edge) {
    const double sg = k == 1 ? 1.0 : -1.0;
    t(0, 0) = 1.0 / std::sqrt(2.0);
    t(1, 0) = sg * I_unit / std::sqrt(2.0);
    col = 1;
  }
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  for (int c = 0; c < 2; ++c) {
    const Vec2 e = c == 0 ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
    for (int j = 1; j <= n; ++j) {
      const cplx phase = std::polar(inv, static_cast<double>((static_cast<long long>(j) * k) % n) * zeta);
      const Vec2 v = rotation(j * zeta) * e;
      t(2 * j, col + c) = phase * v(0);
      t(2 * j + 1, col + c) = phase * v(1);
    }
  }
  return t;
}

CMat spatial_basis(int n, int k) {
  if (n < 2) throw DomainError("n must be >= 2");
  check_k(n, k);
  const double zeta = 2.0 * std::numbers::pi / n;
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  if (k == n) {
    CMat t = CMat::Zero(n + 1, 2);
    t(0, 0) = 1.0;
    for (int j = 1; j <= n; ++j) t(j, 1) = inv;
    return t;
  }
  CMat t = CMat::Zero(n + 1, 1);
  for (int j = 1; j <= n; ++j)
    t(j, 0) = std::polar(inv, static_cast<double>((static_cast<long long>(j) * k) % n) * zeta);
  return t;
}

namespace {

template <class F>
CMat stack_columns(int n, int rows, F basis) {
  CMat p(rows, rows);
  int col = 0;
  for (int k = 1; k <= n; ++k) {
    const CMat t = basis(n, k);
    p.middleCols(col, t.cols()) = t;
    col += static_cast<int>(t.cols());
  }
  if (col != rows) throw NumericalError("basis column count mismatch");
  return p;
}

}  // namespace

CMat planar_change_of_basis(int n) {
  if (n == 2) {
    CMat p(6, 6);
    p.leftCols(4) = planar_basis(2, 1);
    p.rightCols(2) = planar_basis(2, 2);
    return p;
  }
  return stack_columns(n, 2 * (n + 1), planar_basis);
}

CMat spatial_change_of_basis(int n) { return stack_columns(n, n + 1, spatial_basis); }

double DiagonalizationReport::max_residual() const {
  return std::max({planar_off_block, planar_block_deviation, spatial_off_block, spatial_block_deviation, orthogonality});
}

DiagonalizationReport verify_full_diagonalization(const RingConfig& ring, double nu) {
  const int n = ring.n;
  if (n < 3) throw DomainError("full diagonalisation check needs n >= 3");
  const GeneralConfig g = ring_general_config(ring);
  const Pencil pen(g, hessian_blocks(g, ring_positions_extended(n)));
  DiagonalizationReport rep;

  // congruence in extended precision so the check adds no roundoff of its own
  using LCMat = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
  auto run = [&](const CMat& dense, const CMat& P, bool planar, double& off, double& dev) {
    const LCMat Pl = P.cast<std::complex<long double>>();
    const CMat t = (Pl.adjoint() * dense.cast<std::complex<long double>>() * Pl).cast<cplx>();
    CMat expected = CMat::Zero(t.rows(), t.cols());
    Eigen::Index at = 0;
    for (int k = 1; k <= n; ++k) {
      const CMat blk = planar ? block_m0(ring, k, nu) : CMat(block_m1(ring, k, nu).cast<cplx>());
      const Eigen::Index d = blk.rows();
      dev = std::max(dev, max_abs(CMat(t.block(at, at, d, d) - blk)));
      expected.block(at, at, d, d) = t.block(at, at, d, d);
      at += d;
    }
    off = std::max(off, max_abs(CMat(t - expected)));
    const CMat gram = P.adjoint() * P - CMat::Identity(P.cols(), P.cols());
    rep.orthogonality = std::max(rep.orthogonality, max_abs(gram));
  };
  run(pen.planar(nu), planar_change_of_basis(n), true, rep.planar_off_block, rep.planar_block_deviation);
  run(pen.spatial(nu), spatial_change_of_basis(n), false, rep.spatial_off_block, rep.spatial_block_deviation);
  return rep;
}

double conjugation_residual(const RingConfig& ring, int k, double nu) {
  const int partner = k == ring.n ? ring.n : ring.n - k;
  return max_abs(CMat(block_m0(ring, k, nu) - block_m0(ring, partner, -nu).conjugate()));
}

double kappa_residual(const RingConfig& ring, int k, double nu) {
  const int n = ring.n;
  check_k(n, k);
  const int partner = k == n ? n : n - k;
  const CMat m = block_m0(ring, k, nu);
  CMat R = CMat::Identity(m.rows(), m.cols());
  R(m.rows() - 1, m.rows() - 1) = -1.0;
  // kappa-tilde reverses time: it pairs (k, nu) with (n-k, -nu), or with
  // the conjugate of the same block
  const double r1 = max_abs(CMat(m - R * block_m0(ring, partner, -nu) * R));
  const double r2 = max_abs(CMat(m - R * m.conjugate() * R));
  return std::max(r1, r2);
}

}  // namespace ringbif
