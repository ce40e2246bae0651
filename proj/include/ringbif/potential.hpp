#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ringbif/linalg.hpp"

namespace ringbif {

// Planar relative equilibrium candidate. Masses may be zero or negative for
// internal use (massless centre, charge adapter); ingestion validates sign.
struct GeneralConfig {
  std::vector<double> masses;
  std::vector<Vec2> positions;
  double omega = 0.0;
  double alpha = 2.0;

  std::size_t size() const { return masses.size(); }
  // equilibrium positions lifted to z = 0, stacked as 3N vector
  Vec stacked_positions() const;
};

// Throws CollisionError if two bodies coincide, DomainError on shape mismatch.
void check_config(const GeneralConfig& cfg);
double min_pair_distance(const GeneralConfig& cfg);

// phi' = -1/x^alpha
double phi(double alpha, double x);

// x: 3N stacked (x, y, z) per body
double potential_value(const GeneralConfig& cfg, const Vec& x);
Vec gradient(const GeneralConfig& cfg, const Vec& x);

// Gradient at the equilibrium positions.
double equilibrium_residual(const GeneralConfig& cfg);

struct HessianBlocks {
  int n = 0;
  std::vector<Mat2> planar;    // A_ij, row-major n x n
  std::vector<double> spatial;  // a_ij

  const Mat2& A(int i, int j) const { return planar[static_cast<std::size_t>(i) * n + j]; }
  double a(int i, int j) const { return spatial[static_cast<std::size_t>(i) * n + j]; }

  Mat planar_matrix() const;   // 2n x 2n
  Mat spatial_matrix() const;  // n x n
  Mat full_matrix() const;     // 3n x 3n in body-major (x, y, z) order
};

HessianBlocks hessian_blocks(const GeneralConfig& cfg);
// Same, from positions held in extended precision (must round to cfg.positions).
HessianBlocks hessian_blocks(const GeneralConfig& cfg, const std::vector<std::array<long double, 2>>& positions);

struct RowSumResidual {
  double planar = 0.0;
  double spatial = 0.0;
};
RowSumResidual row_sum_residual(const GeneralConfig& cfg, const HessianBlocks& h);

// Linearisation pencil nu^2 M - 2 nu sqrt(omega) (i Jbar) M + D^2V, all sectors.
class Pencil {
 public:
  explicit Pencil(const GeneralConfig& cfg);
  Pencil(const GeneralConfig& cfg, HessianBlocks hess);

  const GeneralConfig& config() const { return cfg_; }
  const HessianBlocks& hessian() const { return hess_; }

  CMat full(double nu) const;     // 3n x 3n, body-major
  CMat planar(double nu) const;   // M0, 2n x 2n
  CMat spatial(double nu) const;  // M1, n x n

  // coefficient matrices of the planar / spatial quadratic families
  CMat planar_coeff(int power) const;
  CMat spatial_coeff(int power) const;

 private:
  GeneralConfig cfg_;
  HessianBlocks hess_;
};

inline CMat pencil(const GeneralConfig& cfg, double nu) { return Pencil(cfg).full(nu); }

// Body-major (x,y,z per body) -> (all planar, all z). Column j of P is e_{perm[j]}.
std::vector<int> split_permutation(int n_bodies);

struct Split {
  CMat M0;
  CMat M1;
  double residual = 0.0;  // max |P^T M P - diag(M0, M1)|
};
Split split(const GeneralConfig& cfg, double nu);

}  // namespace ringbif
