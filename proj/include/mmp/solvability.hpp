#ifndef MMP_SOLVABILITY_HPP
#define MMP_SOLVABILITY_HPP

#include <json.hpp>

#include "mmp/linalg.hpp"
#include "mmp/moment_model.hpp"

namespace mmp {

/// Block Hankel matrices of a moment sequence.
///
/// gamma_d   = (S_{i+j})_{i,j=0}^{d}      size (d+1)N
/// gamma_dm1 = (S_{i+j})_{i,j=0}^{d-1}    size dN
/// gamma_hat = (S_{i+j+2})_{i,j=0}^{d-1}  size dN
struct HankelPair {
  CMatrix gamma_d;
  CMatrix gamma_hat;
  CMatrix gamma_dm1;
};

HankelPair build_block_hankel(const MomentSequence& ms);

struct SolvabilityReport {
  bool solvable = false;
  double min_eigenvalue = 0.0;
  double kernel_inclusion_defect = 0.0;
  int kernel_dimension = 0;
  double scale = 1.0;  // lambda_max(gamma_d) when positive, else 1
};

/// Decides gamma_d >= 0 and Ker gamma_dm1 within Ker gamma_hat.
SolvabilityReport check_solvable(const HankelPair& h, const Tolerances& tol);

nlohmann::json to_json(const SolvabilityReport& r);

}  // namespace mmp

#endif  // MMP_SOLVABILITY_HPP
