#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringbif/pencil.hpp"
#include "ringbif/polygonal.hpp"
#include "ringbif/potential.hpp"
#include "ringbif/resonance.hpp"
#include "ringbif/symmetry.hpp"

namespace ringbif {

struct BifurcationFlags {
  bool near_mu_k = false;        // inside the resonance exclusion neighbourhood of mu_k
  bool near_threshold = false;   // within 1e-6 (relative) of m0, m+ or m- of this block
  bool resonance_suspect = false;
  bool kernel_degenerate = false;  // multiple root or kernel larger than one
};

struct BifurcationPoint {
  double nu = 0.0;             // raw frequency (canonical)
  double nu_normalized = 0.0;  // nu / sqrt(omega)
  Sector sector = Sector::planar;
  int k = 0;
  int eta = 0;
  int multiplicity = 1;
  std::optional<SymmetryDescriptor> isotropy;  // absent for configurations without ring symmetry
  BifurcationFlags flags;
  std::optional<Verdict> truly_spatial;
};

// Real-root classification of one block family given in the raw frequency.
struct BlockClassification {
  std::vector<BifurcationPoint> points;  // eta != 0
  std::vector<BifurcationPoint> silent;  // eta == 0
  int count_near_zero = 0;               // Morse number just above nu = 0
  int count_at_infinity = 0;
};
BlockClassification classify_block(const QuadraticPencil& raw_family, Sector sector, int k, int sigma,
                                   double sqrt_omega);

int sigma_orientation(const RingConfig& ring);
int sigma_orientation(const GeneralConfig& cfg);

struct Enumeration {
  int sigma = 1;
  std::vector<BifurcationPoint> points;
  std::vector<BifurcationPoint> silent;
  std::vector<std::string> annotations;
  double equilibrium_residual = 0.0;
};

Enumeration enumerate_bifurcations(const RingConfig& ring, bool with_resonance = true);
Enumeration enumerate_general(const GeneralConfig& cfg);

// Drop a leading massless coordinate block from a family (the centre when mu = 0).
QuadraticPencil drop_leading(const QuadraticPencil& p, Eigen::Index count);

}  // namespace ringbif
