#include "ringbif/potential.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ringbif/errors.hpp"
#include "ringbif/lattice_sums.hpp"

namespace ringbif {

Vec GeneralConfig::stacked_positions() const {
  Vec x = Vec::Zero(3 * static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    x(3 * i) = positions[i](0);
    x(3 * i + 1) = positions[i](1);
  }
  return x;
}

void check_config(const GeneralConfig& cfg) {
  if (cfg.masses.size() != cfg.positions.size())
    throw DomainError("masses and positions differ in length");
  if (cfg.size() < 2) throw DomainError("need at least two bodies");
  if (!(cfg.alpha >= 1.0)) throw DomainError("alpha must be >= 1");
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.size(); ++j)
      if ((cfg.positions[i] - cfg.positions[j]).norm() == 0.0)
        throw CollisionError("bodies " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

double min_pair_distance(const GeneralConfig& cfg) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.size(); ++j) d = std::min(d, (cfg.positions[i] - cfg.positions[j]).norm());
  return d;
}

double phi(double alpha, double x) {
  if (alpha == 1.0) return -std::log(x);
  return std::pow(x, 1.0 - alpha) / (alpha - 1.0);
}

namespace {

Vec3 body(const Vec& x, std::size_t i) { return x.segment<3>(3 * static_cast<Eigen::Index>(i)); }

void check_state(const GeneralConfig& cfg, const Vec& x) {
  if (x.size() != 3 * static_cast<Eigen::Index>(cfg.size())) throw DomainError("state vector has wrong length");
}

}  // namespace

double potential_value(const GeneralConfig& cfg, const Vec& x) {
  check_state(cfg, x);
  double kinetic = 0.0, pair = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Vec3 ui = body(x, i);
    kinetic += cfg.masses[i] * (ui(0) * ui(0) + ui(1) * ui(1));
    for (std::size_t j = i + 1; j < cfg.size(); ++j) {
      const double d = (body(x, j) - ui).norm();
      if (d == 0.0) throw CollisionError("collision while evaluating potential");
      pair += cfg.masses[i] * cfg.masses[j] * phi(cfg.alpha, d);
    }
  }
  return 0.5 * cfg.omega * kinetic + pair;
}

Vec gradient(const GeneralConfig& cfg, const Vec& x) {
  check_state(cfg, x);
  Vec g = Vec::Zero(x.size());
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    const Vec3 uj = body(x, j);
    Vec3 gj(cfg.omega * cfg.masses[j] * uj(0), cfg.omega * cfg.masses[j] * uj(1), 0.0);
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      if (i == j) continue;
      const Vec3 diff = uj - body(x, i);
      const double d = diff.norm();
      if (d == 0.0) throw CollisionError("collision while evaluating gradient");
      gj -= cfg.masses[i] * cfg.masses[j] * diff / std::pow(d, cfg.alpha + 1.0);
    }
    g.segment<3>(3 * static_cast<Eigen::Index>(j)) = gj;
  }
  return g;
}

double equilibrium_residual(const GeneralConfig& cfg) { return gradient(cfg, cfg.stacked_positions()).norm(); }

namespace {

// positions may carry more precision than the config stores
template <class Real>
HessianBlocks assemble_hessian(const GeneralConfig& cfg, const std::vector<std::array<Real, 2>>& pos) {
  const int n = static_cast<int>(cfg.size());
  HessianBlocks h;
  h.n = n;
  h.planar.assign(static_cast<std::size_t>(n) * n, Mat2::Zero());
  h.spatial.assign(static_cast<std::size_t>(n) * n, 0.0);
  const Real al = cfg.alpha;
  std::vector<Real> diag(3 * static_cast<std::size_t>(n), Real(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Real dx = pos[j][0] - pos[i][0], dy = pos[j][1] - pos[i][1];
      const Real d2 = dx * dx + dy * dy;
      const Real d = std::sqrt(d2);
      const Real mm = Real(cfg.masses[i]) * Real(cfg.masses[j]);
      const Real c = mm / std::pow(d, al + Real(3));
      const Real axx = -c * ((al + 1) * dx * dx - d2), axy = -c * (al + 1) * dx * dy,
                 ayy = -c * ((al + 1) * dy * dy - d2);
      const Real az = mm / std::pow(d, al + Real(1));
      Mat2 a;
      a << static_cast<double>(axx), static_cast<double>(axy), static_cast<double>(axy), static_cast<double>(ayy);
      h.planar[static_cast<std::size_t>(i) * n + j] = a;
      h.spatial[static_cast<std::size_t>(i) * n + j] = static_cast<double>(az);
      // row sums taken before rounding
      diag[3 * i] -= axx;
      diag[3 * i + 1] -= axy;
      diag[3 * i + 2] -= ayy;
      (void)az;
    }
  }
  for (int i = 0; i < n; ++i) {
    // spatial row sum: compensated, in the working precision
    CompensatedSum sacc;
    for (int j = 0; j < n; ++j)
      if (j != i) sacc.add(-h.a(i, j));
    const Real w = Real(cfg.omega) * Real(cfg.masses[i]);
    Mat2 acc;
    acc << static_cast<double>(diag[3 * i] + w), static_cast<double>(diag[3 * i + 1]),
        static_cast<double>(diag[3 * i + 1]), static_cast<double>(diag[3 * i + 2] + w);
    h.planar[static_cast<std::size_t>(i) * n + i] = acc;
    h.spatial[static_cast<std::size_t>(i) * n + i] = sacc.value();
  }
  return h;
}

}  // namespace

HessianBlocks hessian_blocks(const GeneralConfig& cfg) {
  check_config(cfg);
  std::vector<std::array<long double, 2>> pos;
  for (const auto& p : cfg.positions) pos.push_back({p(0), p(1)});
  return assemble_hessian<long double>(cfg, pos);
}

HessianBlocks hessian_blocks(const GeneralConfig& cfg, const std::vector<std::array<long double, 2>>& positions) {
  check_config(cfg);
  if (positions.size() != cfg.size()) throw DomainError("extended positions differ in length");
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (std::abs(static_cast<double>(positions[i][0]) - cfg.positions[i](0)) > 1e-12 ||
        std::abs(static_cast<double>(positions[i][1]) - cfg.positions[i](1)) > 1e-12)
      throw DomainError("extended positions do not match the configuration");
  return assemble_hessian<long double>(cfg, positions);
}

Mat HessianBlocks::planar_matrix() const {
  Mat m(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.block<2, 2>(2 * i, 2 * j) = A(i, j);
  return m;
}

Mat HessianBlocks::spatial_matrix() const {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
  return m;
}

Mat HessianBlocks::full_matrix() const {
  Mat m = Mat::Zero(3 * n, 3 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.block<2, 2>(3 * i, 3 * j) = A(i, j);
      m(3 * i + 2, 3 * j + 2) = a(i, j);
    }
  return m;
}

RowSumResidual row_sum_residual(const GeneralConfig& cfg, const HessianBlocks& h) {
  RowSumResidual r;
  for (int i = 0; i < h.n; ++i) {
    Mat2 acc = h.A(i, i) - cfg.omega * cfg.masses[i] * Mat2::Identity();
    double sacc = h.a(i, i);
    for (int j = 0; j < h.n; ++j) {
      if (j == i) continue;
      acc += h.A(i, j);
      sacc += h.a(i, j);
    }
    r.planar = std::max(r.planar, acc.cwiseAbs().maxCoeff());
    r.spatial = std::max(r.spatial, std::abs(sacc));
  }
  return r;
}

Pencil::Pencil(const GeneralConfig& cfg) : cfg_(cfg), hess_(hessian_blocks(cfg)) {}

Pencil::Pencil(const GeneralConfig& cfg, HessianBlocks hess) : cfg_(cfg), hess_(std::move(hess)) {
  if (hess_.n != static_cast<int>(cfg_.size())) throw DomainError("Hessian does not match the configuration");
}

CMat Pencil::planar_coeff(int power) const {
  const int n = hess_.n;
  switch (power) {
    case 0:
      return hess_.planar_matrix().cast<cplx>();
    case 1: {
      CMat c = CMat::Zero(2 * n, 2 * n);
      const Mat2 J = symplectic_J();
      const double w = std::sqrt(cfg_.omega);
      for (int i = 0; i < n; ++i) c.block<2, 2>(2 * i, 2 * i) = (-2.0 * w * cfg_.masses[i]) * I_unit * J.cast<cplx>();
      return c;
    }
    case 2: {
      CMat c = CMat::Zero(2 * n, 2 * n);
      for (int i = 0; i < n; ++i) c(2 * i, 2 * i) = c(2 * i + 1, 2 * i + 1) = cfg_.masses[i];
      return c;
    }
    default:
      throw DomainError("pencil coefficient power must be 0, 1 or 2");
  }
}

CMat Pencil::spatial_coeff(int power) const {
  const int n = hess_.n;
  switch (power) {
    case 0:
      return hess_.spatial_matrix().cast<cplx>();
    case 1:
      return CMat::Zero(n, n);
    case 2: {
      CMat c = CMat::Zero(n, n);
      for (int i = 0; i < n; ++i) c(i, i) = cfg_.masses[i];
      return c;
    }
    default:
      throw DomainError("pencil coefficient power must be 0, 1 or 2");
  }
}

CMat Pencil::planar(double nu) const {
  return nu * nu * planar_coeff(2) + nu * planar_coeff(1) + planar_coeff(0);
}

CMat Pencil::spatial(double nu) const {
  CMat m = hess_.spatial_matrix().cast<cplx>();
  for (int i = 0; i < hess_.n; ++i) m(i, i) += nu * nu * cfg_.masses[i];
  return m;
}

CMat Pencil::full(double nu) const {
  const int n = hess_.n;
  CMat m = hess_.full_matrix().cast<cplx>();
  const Mat2 J = symplectic_J();
  const double w = std::sqrt(cfg_.omega);
  for (int i = 0; i < n; ++i) {
    const double mi = cfg_.masses[i];
    for (int r = 0; r < 3; ++r) m(3 * i + r, 3 * i + r) += nu * nu * mi;
    // Jbar acts on the planar part only
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m(3 * i + r, 3 * i + c) += -2.0 * nu * w * mi * I_unit * J(r, c);
  }
  return m;
}

std::vector<int> split_permutation(int n_bodies) {
  std::vector<int> perm;
  perm.reserve(3 * n_bodies);
  for (int i = 0; i < n_bodies; ++i) {
    perm.push_back(3 * i);
    perm.push_back(3 * i + 1);
  }
  for (int i = 0; i < n_bodies; ++i) perm.push_back(3 * i + 2);
  return perm;
}

Split split(const GeneralConfig& cfg, double nu) {
  const Pencil p(cfg);
  const int n = static_cast<int>(cfg.size());
  const CMat full = p.full(nu);
  const auto perm = split_permutation(n);
  CMat rearranged(3 * n, 3 * n);
  for (int r = 0; r < 3 * n; ++r)
    for (int c = 0; c < 3 * n; ++c) rearranged(r, c) = full(perm[r], perm[c]);
  Split s;
  s.M0 = p.planar(nu);
  s.M1 = p.spatial(nu);
  CMat expected = CMat::Zero(3 * n, 3 * n);
  expected.topLeftCorner(2 * n, 2 * n) = s.M0;
  expected.bottomRightCorner(n, n) = s.M1;
  s.residual = max_abs(CMat(rearranged - expected));
  return s;
}

}  // namespace ringbif
