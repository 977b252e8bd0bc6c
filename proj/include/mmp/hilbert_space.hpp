#ifndef MMP_HILBERT_SPACE_HPP
#define MMP_HILBERT_SPACE_HPP

#include <vector>

#include "mmp/linalg.hpp"
#include "mmp/moment_model.hpp"
#include "mmp/solvability.hpp"

namespace mmp {

/// Coordinates of x_0, ..., x_{dN+N-1} in C^r, r = rank(gamma_d).
///
/// With the inner product (f, g) = g^* f the columns satisfy
/// (x_n, x_m) = gamma_{n,m}, i.e. X^* X = gamma_d^T.
struct HilbertRep {
  int n = 0;
  int d = 0;
  CMatrix x;           // r x (d+1)N
  double scale = 1.0;  // lambda_max(gamma_d), or 1 when that is not positive

  int dim() const { return static_cast<int>(x.rows()); }
  int domain_size() const { return d * n; }
  /// x_0 .. x_{dN-1}; spans D(A).
  auto domain() const { return x.leftCols(d * n); }
  /// x_N .. x_{dN+N-1}; the images A x_k.
  auto shifted() const { return x.rightCols(d * n); }
  /// x_0 .. x_{N-1}.
  auto generators() const { return x.leftCols(n); }
};

/// Factor gamma_d as a Gram matrix. Eigenvalues in [-psd_tol*lmax, 0] are
/// clamped to zero and only those above rank_tol*lmax are kept.
HilbertRep factor_gram(const HankelPair& h, int n, int d, const Tolerances& tol);

/// Orthonormal vectors produced by Gram-Schmidt from an ordered input list.
struct OrthoBasisSet {
  CMatrix vectors;       // r x m, orthonormal columns
  CMatrix coefficients;  // inputs x m, vectors = inputs * coefficients
  std::vector<int> source_indices;

  int size() const { return static_cast<int>(vectors.cols()); }
  /// Survivors whose source index is below `split`.
  OrthoBasisSet head(int split) const;
  /// Survivors whose source index is at least `split`.
  OrthoBasisSet tail(int split) const;
};

/// Modified Gram-Schmidt in input order with one re-orthogonalization pass
/// whenever the residual shrinks below sqrt(rank_tol) of the input norm.
/// An input is dropped when its residual norm is at most
/// rank_tol * max(norm_floor, |input|).
OrthoBasisSet orthonormalize(const CMatrix& inputs, double rank_tol, double norm_floor = 1.0);

/// The symmetric operator A with D(A) = Lin{x_0..x_{dN-1}}, A x_k = x_{k+N},
/// together with its Cayley data.
struct OperatorModel {
  CMatrix y;         // y_k = x_{k+N} - i x_k, spans H^-
  CMatrix y_plus;    // x_{k+N} + i x_k, spans H^+
  OrthoBasisSet u;   // orthonormal basis of H^- from y_0..y_{dN-1}
  OrthoBasisSet u_prime;  // completion from x_0..x_{N-1}, basis of H (-) H^-
  CMatrix v;         // v_j = V u_j, V the Cayley transform
  int rho = 0;       // survivors among y_0..y_{N-1}
};

OperatorModel build_operator_model(const HilbertRep& rep, const Tolerances& tol);

/// Every orthonormal family used by the parametrization.
struct BasisFamily {
  OrthoBasisSet f;        // basis of D(A), from x_0..x_{dN-1}            (kappa)
  OrthoBasisSet f_prime;  // basis of H (-) D(A), from x_{dN}..            (kappa')
  OrthoBasisSet u;        // basis of H^-                                   (tau)
  OrthoBasisSet u_prime;  // basis of H (-) H^-                             (delta)
  CMatrix v;              // basis of H^+, v_j = V u_j                      (tau)
  CMatrix v_prime;        // basis of H (-) H^+                             (delta)
  int rho = 0;

  int kappa() const { return f.size(); }
  int kappa_prime() const { return f_prime.size(); }
  int tau() const { return u.size(); }
  int delta() const { return u_prime.size(); }
};

/// Runs the three Gram-Schmidt passes and checks that all families agree on
/// the dimension of H. Throws InconsistencyError otherwise.
BasisFamily build_all_bases(const HilbertRep& rep, const OperatorModel& model,
                            const Tolerances& tol);

enum class Determinacy { Determinate, Indeterminate };

/// A is self-adjoint exactly when x_{dN}, ..., x_{dN+N-1} add nothing to D(A).
Determinacy classify_determinacy(const BasisFamily& bases);

}  // namespace mmp

#endif  // MMP_HILBERT_SPACE_HPP
