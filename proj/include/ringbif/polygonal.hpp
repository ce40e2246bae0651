#pragma once

#include <array>
#include <vector>

#include "ringbif/lattice_sums.hpp"
#include "ringbif/linalg.hpp"
#include "ringbif/pencil.hpp"
#include "ringbif/potential.hpp"

namespace ringbif {

// n unit masses on the unit circle around a central mass mu.
struct RingConfig {
  int n = 0;
  double mu = 0.0;
  double alpha = 2.0;
  SumTable sums;

  double s1() const { return sums.s[1]; }
  double omega() const { return mu + s1(); }
  bool nonphysical() const { return mu < 0.0; }
};

RingConfig make_ring(int n, double mu, double alpha = 2.0);
RingConfig make_ring(const SumTable& sums, double mu);

// body 0 at the origin with mass mu, body j at e^{i j zeta}
GeneralConfig ring_general_config(const RingConfig& ring);
// ring positions in extended precision, same order as ring_general_config
std::vector<std::array<long double, 2>> ring_positions_extended(int n);

struct BlockCoefficients {
  // indexed 0..n, entry 0 unused
  std::vector<double> alpha_k, beta_k, gamma_k, a_k, b_k, c_k;
};

// b_k = (alpha+1)(s_1 + alpha_k + beta_k), c_k = s_1 b_k - a_k
BlockCoefficients block_coefficients(const SumTable& sums);

// 2x2 formula valid for k in {2..n-2, n}; also used with mu = -q for charges
CMat generic_block_B(const SumTable& sums, double mu, int k);

CMat block_B(const RingConfig& ring, int k);
// raw frequency
CMat block_m0(const RingConfig& ring, int k, double nu);
// nu scaled by sqrt(omega)
CMat block_m0_normalized(const RingConfig& ring, int k, double nu);
Mat block_m1(const RingConfig& ring, int k, double nu);

QuadraticPencil planar_family(const RingConfig& ring, int k, bool normalized);
QuadraticPencil spatial_family(const RingConfig& ring, int k);

// n = 2, k = 1: 4x4 block in the (v, w/sqrt2, w/sqrt2) basis, raw frequency
CMat n2_block_m0(double mu, double nu);

// Columns of T_k in body-major planar coordinates (2(n+1) rows).
CMat planar_basis(int n, int k);
// Columns of T_k for the vertical coordinates (n+1 rows).
CMat spatial_basis(int n, int k);
// [T_1 | T_2 | ... | T_n]
CMat planar_change_of_basis(int n);
CMat spatial_change_of_basis(int n);

struct DiagonalizationReport {
  double planar_off_block = 0.0;
  double planar_block_deviation = 0.0;
  double spatial_off_block = 0.0;
  double spatial_block_deviation = 0.0;
  double orthogonality = 0.0;  // max |P^H P - I| over both sectors
  double max_residual() const;
};

DiagonalizationReport verify_full_diagonalization(const RingConfig& ring, double nu);

// m_0k(nu) vs conj(m_0(n-k)(-nu)), and the R-conjugation identity
double conjugation_residual(const RingConfig& ring, int k, double nu);
double kappa_residual(const RingConfig& ring, int k, double nu);

}  // namespace ringbif
