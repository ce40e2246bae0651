#pragma once

#include <string>
#include <vector>

#include "ringbif/pencil.hpp"
#include "ringbif/potential.hpp"

namespace ringbif {

// Central differences of potential_value against gradient, evaluated at x.
double fd_gradient_check(const GeneralConfig& cfg, const Vec& x);
double fd_gradient_check(const GeneralConfig& cfg);  // at a fixed off-equilibrium offset

// Central differences of the analytic gradient at x (3N x 3N, symmetrised).
Mat fd_hessian(const GeneralConfig& cfg, const Vec& x, double h);
// max |FD Hessian - assembled blocks| at the equilibrium positions
double fd_hessian_check(const GeneralConfig& cfg);
double default_fd_step(const GeneralConfig& cfg);

struct Crossing {
  double nu = 0.0;  // raw frequency
  int jump = 0;     // Morse count left minus right
};

struct CrossingOptions {
  double points_per_unit = 4096.0;
  double tol = 1e-10;
};

// Morse-count changes of the dense M0 or M1 on [lo, hi]; massless bodies are removed.
std::vector<Crossing> dense_crossings(const GeneralConfig& cfg, Sector sector, double lo, double hi,
                                      const CrossingOptions& opt = {});

// Morse jumps at the real roots of one block family in [lo, hi].
std::vector<Crossing> block_breakpoints(const QuadraticPencil& fam, double lo, double hi);

// Largest |nu| gap after merging coincident block crossings (within
// match_tol); infinity on any count or jump disagreement.
double crossing_mismatch(const std::vector<Crossing>& dense, std::vector<Crossing> blocks, double match_tol);

// Three recurrences recomputed from raw sums in long double, descending j.
double recurrence_bruteforce(int n, double alpha);
// max |s_k(table) - s_k(bruteforce)| and likewise for sbar
double sums_table_deviation(int n, double alpha);

struct CaseResult {
  std::string fingerprint;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationSuiteResult {
  std::string suite;
  std::vector<CaseResult> cases;
  bool passed() const;
};

// suite: sums | hessian | blocks | crossings | all
std::vector<VerificationSuiteResult> run_verification(const std::string& suite, int n, double mu, double alpha = 2.0);

}  // namespace ringbif
