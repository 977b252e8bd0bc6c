#ifndef MMP_DETERMINATE_HPP
#define MMP_DETERMINATE_HPP

#include "mmp/hilbert_space.hpp"
#include "mmp/linalg.hpp"
#include "mmp/moment_model.hpp"

namespace mmp {

/// Matrices of the unique solution when A is self-adjoint.
///
/// R(j, k) = (x_k, f_j) maps C^N into H, and MA(j, k) = (A f_k, f_j) is the
/// matrix of A in the basis f. Then
///   int dM^T(t) / (t - z) = R^* (MA - z)^{-1} R.
struct DeterminateModel {
  CMatrix r;   // kappa x N
  CMatrix ma;  // kappa x kappa, Hermitian
  int n = 0;
};

/// Requires kappa' = 0. An empty model (kappa = 0) represents M = 0.
DeterminateModel build_determinate_model(const HilbertRep& rep, const BasisFamily& bases);

/// Eigenvalues of MA become atoms; W_j = (R^* P_j R)^T for the spectral
/// projector P_j. Eigenvalues within 1e-8 (1 + |MA|) share one atom.
AtomicMeasure solve_determinate(const DeterminateModel& dm);

/// R^* (MA - z)^{-1} R. Throws DomainError for real z.
CMatrix stieltjes_determinate(const DeterminateModel& dm, cplx z);

/// Atomic measure of the self-adjoint matrix `op` seen through `generators`:
/// atoms at the eigenvalues, weights W(k, l) = (P g_k, g_l).
AtomicMeasure spectral_measure(const CMatrix& op, const CMatrix& generators);

}  // namespace mmp

#endif  // MMP_DETERMINATE_HPP
