#pragma once

#include <limits>
#include <string>
#include <vector>

#include "ringbif/linalg.hpp"

namespace ringbif {

enum class Sector { planar, spatial };
std::string to_string(Sector s);
Sector sector_from_string(const std::string& s);

// nu -> c2 nu^2 + c1 nu + c0, all self-adjoint at real nu
struct QuadraticPencil {
  CMat c0, c1, c2;

  Eigen::Index dim() const { return c0.rows(); }
  CMat operator()(double nu) const { return (nu * nu) * c2 + nu * c1 + c0; }
  // nu -> P(scale * nu)
  QuadraticPencil rescaled(double scale) const;
};

struct Inertia {
  int negative = 0;
  int zero = 0;
  int positive = 0;
};

// Eigenvalues within 1e-9 * ||h|| of zero are counted as zero.
Inertia inertia(const CMat& h, double rel_zero_tol = 1e-9);
int morse_number(const CMat& h);

// Real part of the determinant (exact real for self-adjoint input).
double hermitian_det(const CMat& h);
double smallest_abs_eigenvalue(const CMat& h);

struct PencilRoot {
  double nu = 0.0;
  int multiplicity = 1;
};

struct RootOptions {
  double imag_tol = 1e-8;     // relative, for isolated real roots
  double cluster_tol = 1e-6;  // relative, for multiplicity clustering
};

// Every real nu in [lo, hi] with det P(nu) = 0, sorted, with multiplicity.
std::vector<PencilRoot> pencil_roots(const QuadraticPencil& p, double lo = -std::numeric_limits<double>::infinity(),
                                     double hi = std::numeric_limits<double>::infinity(), const RootOptions& opt = {});

// All finite eigenvalues of the pencil (complex), unsorted.
std::vector<cplx> pencil_eigenvalues(const QuadraticPencil& p);

int total_multiplicity(const std::vector<PencilRoot>& roots);

struct MorseProfile {
  int k = 0;
  Sector sector = Sector::planar;
  QuadraticPencil family;
  std::vector<PencilRoot> roots;   // every real root in the window, silent ones included
  std::vector<double> breakpoints;  // roots where the Morse number changes
  std::vector<int> counts;          // counts[i] on the i-th interval cut by breakpoints
  double lo = 0.0, hi = 0.0;

  int count_at(double nu) const;
};

MorseProfile morse_profile(const QuadraticPencil& family, double lo, double hi, int k = 0,
                           Sector sector = Sector::planar);

// Probe offset: min(half gap to the neighbouring roots, 1e-3 (1 + |nu0|)).
double probe_radius(const std::vector<PencilRoot>& roots, double nu0);

// sigma * (n(nu0 - rho) - n(nu0 + rho)); nu0 must be a root of the profile.
int eta_index(const MorseProfile& profile, double nu0, int sigma);

}  // namespace ringbif
