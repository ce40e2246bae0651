#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringbif/lattice_sums.hpp"
#include "ringbif/pencil.hpp"
#include "ringbif/polygonal.hpp"

namespace ringbif {

// Everything below uses the sqrt(omega)-normalised frequency and alpha = 2
// unless stated otherwise.

// d_k(nu) = det m_0k(sqrt(omega) nu), k in {2..n-2}
double det_dk(const RingConfig& ring, int k, double nu);
double det_dk(const SumTable& sums, double mu, int k, double nu);

// a omega^2 + b omega - c = 0 is d_k = 0 with omega = mu + s_1
struct DkQuadratic {
  double a = 0.0, b = 0.0, c = 0.0;
};
DkQuadratic omega_quadratic(const SumTable& sums, int k, double nu);

struct OmegaRoots {
  double plus = 0.0;
  double minus = 0.0;  // -inf where a = 0
};
OmegaRoots omega_roots(const SumTable& sums, int k, double nu);

double mu_plus(const SumTable& sums, int k, double nu);
double mu_minus(const SumTable& sums, int k, double nu);

// zero of d_k(mu, 0); k in {1..n-1}
double mu_k(const SumTable& sums, int k);

struct CriticalMasses {
  int k = 0;
  double mu_k = 0.0;
  double m0 = 0.0, nu_m0 = 0.0;            // max of mu_+ over the real line
  double m_plus = 0.0, nu_m_plus = 0.0;    // min of mu_- on (0, 1)
  double m_minus = 0.0, nu_m_minus = 0.0;  // min of mu_- on (-1, 0)
};
CriticalMasses critical_masses(const SumTable& sums, int k);

// k = n/2 closed form for m_+
double half_ring_m_plus(const SumTable& sums);

// --- k in {1, n-1} ---
struct EdgeCoefficients {
  double a1 = 0.0, b1 = 0.0;
};
EdgeCoefficients edge_coefficients(const SumTable& sums);

double d1_polynomial(const SumTable& sums, double mu, double nu);

struct D1Value {
  double full_det = 0.0;
  double d1_factor = 0.0;
};
D1Value det_d1(const RingConfig& ring, double nu);

// coefficients of d_1 as a quadratic in mu: A mu^2 + B mu + C
struct MuQuadratic {
  double A = 0.0, B = 0.0, C = 0.0;
};
MuQuadratic d1_mu_quadratic(const SumTable& sums, double nu);

// Positive zero of d_1(., nu) on the branch through the k = 1 threshold curve,
// nullopt if the quadratic has no positive root there.
std::optional<double> mu_zero_k1(const SumTable& sums, double nu);

struct EdgeThresholds {
  bool single_curve = false;  // n <= 6 topology
  double mu_1 = 0.0;          // -a_1/b_1, value of the curve at nu = 0 when it crosses
  double m_plus = 0.0, nu_m_plus = 0.0;
  double m_minus = 0.0, nu_m_minus = 0.0;
  double m0 = 0.0, nu_m0 = 0.0;  // n <= 6: minimum of the single curve
};
EdgeThresholds edge_thresholds(const SumTable& sums);

// --- n = 2 ---
struct N2Planar {
  double det = 0.0;
  double d1 = 0.0;
  double nu1 = 0.0;
};
N2Planar n2_planar(double mu, double nu);
CMat n2_block_m1_normalized(double mu, double nu);

// --- loci ---
enum class Branch { mu_plus, mu_minus, mu_zero_k1 };
std::string to_string(Branch b);

struct SpectralCurve {
  int k = 0;
  Branch branch = Branch::mu_plus;
  std::vector<std::pair<double, double>> samples;  // (nu, mu)
  double nu_lo = 0.0, nu_hi = 0.0;
};
SpectralCurve spectral_curve(const SumTable& sums, int k, Branch branch, double nu_lo, double nu_hi, int samples);

struct LocusPoint {
  double mu = 0.0;
  double nu = 0.0;
  int multiplicity = 1;
  std::string branch;
};

// Zero set of det of the (sector, k) block sampled on an evenly spaced mu
// grid. Planar nu is normalised, spatial nu is raw.
std::vector<LocusPoint> zero_locus(int n, double alpha, int k, Sector sector, double mu_min, double mu_max,
                                   int samples, double nu_min, double nu_max);

}  // namespace ringbif
