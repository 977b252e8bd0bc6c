#ifndef MMP_NEVANLINNA_HPP
#define MMP_NEVANLINNA_HPP

#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "mmp/hilbert_space.hpp"
#include "mmp/linalg.hpp"
#include "mmp/moment_model.hpp"
#include "mmp/polynomial.hpp"

namespace mmp {

/// A constant value of the parameter function: a delta x delta contraction.
class ParameterValue {
 public:
  /// Throws DomainError when the largest singular value exceeds 1 + psd_tol.
  explicit ParameterValue(CMatrix f, double psd_tol = 1e-10);

  const CMatrix& matrix() const { return f_; }
  Eigen::Index size() const { return f_.rows(); }
  bool is_unitary(double tol) const;

 private:
  CMatrix f_;
};

/// Coefficients of the linear-fractional description of all solutions:
///
///   int dM^T(t)/(t - z) = 2i / ((z^2+1)^2 k(z))
///       * { A(z) + B(z) F ((z+i) k(z) I + C(z) F)^{-1} D(z) },   Im z > 0, z != i.
///
/// Every entry is computed from inner products of the orthonormal families.
struct NevanlinnaCoefficients {
  int n = 0;
  int tau = 0;
  int delta = 0;
  int rho = 0;

  MatrixPolynomial k{1, 1};          // (z+i)^tau det A_{0;z}
  MatrixPolynomial a0_adj{0, 0};     // k(z)/(z+i) A_{0;z}^{-1}, tau x tau
  MatrixPolynomial psi{0, 0};        // N x N
  MatrixPolynomial a{0, 0};          // N x N
  MatrixPolynomial b{0, 0};          // N x delta
  MatrixPolynomial c{0, 0};          // delta x delta
  MatrixPolynomial d{0, 0};          // delta x N

  CMatrix xi;      // forbidden matrix, delta x delta
  CMatrix w;       // ((v'_l, u_j)), tau x delta
  CMatrix t;       // ((v'_l, u'_j)), delta x delta
  CMatrix c_hat;   // ((v_k, u'_j)), delta x tau; C_{0;z} = -(z-i)/(z+i) c_hat
  CMatrix kmat;    // ((y_k, u_j)), rho x N
  CMatrix a0;      // ((v_k, u_j)), tau x tau; A_{0;z} = I - (z-i)/(z+i) a0
  CMatrix m_s_plus;   // ((f'_k, u'_l))
  CMatrix m_s_minus;  // ((f'_k, v'_l))

  /// A_{0;z} = I - (z-i)/(z+i) a0.
  CMatrix a0_at(cplx z) const;
};

/// Matrix of the forbidden operator in the bases u', v'. Requires an
/// indeterminate problem. Throws InconsistencyError if ((f'_k, u'_l)) is
/// singular.
CMatrix forbidden_matrix(const BasisFamily& bases, const Tolerances& tol);

NevanlinnaCoefficients assemble_coefficients(const HilbertRep& rep, const BasisFamily& bases,
                                             const Tolerances& tol);

/// Identities that hold exactly: adj * A_0 = k/(z+i) I and sigma_max(Xi) <= 1.
/// Returns the largest relative residual of the adjugate identity over `points`.
double adjugate_identity_residual(const NevanlinnaCoefficients& nc, std::span<const cplx> points);

/// Right side of the linear-fractional formula for a constant parameter.
/// Throws DomainError when Im z <= 0 or z = i, and SingularPivotError when
/// the pivot (z+i)k(z) I + C(z)F is singular.
CMatrix evaluate_transform(const NevanlinnaCoefficients& nc, const CMatrix& f, cplx z,
                           double inv_tol = 1e-10);

/// Same, for a parameter function given by its values.
CMatrix evaluate_transform(const NevanlinnaCoefficients& nc,
                           const std::function<CMatrix(cplx)>& f, cplx z,
                           double inv_tol = 1e-10);

/// A constant contraction F is admissible unless some nonzero xi has
/// F xi = Xi xi and |F xi| = |xi|.
bool check_constant_admissible(const CMatrix& f, const CMatrix& xi, double inv_tol = 1e-10);

/// Self-adjoint extension of A in H defined by a unitary parameter.
struct Extension {
  CMatrix unitary;   // U = V (+) F on H
  CMatrix operator_; // A_F = i (U + I)(U - I)^{-1}
  double fixed_point_distance = 0.0;  // min |mu - 1| over eigenvalues of U
};

/// Throws DomainError if F is not unitary and FixedPointError if U has an
/// eigenvalue within 1e-8 of 1.
Extension build_extension(const BasisFamily& bases, const CMatrix& f, const Tolerances& tol);

struct CanonicalSolution {
  AtomicMeasure measure;
  bool admissible = true;
  bool fixed_point_free = true;
  /// Admissibility and fixed-point freedom disagree; reported, not fatal.
  bool diagnostic_disagreement = false;
};

CanonicalSolution canonical_solution(const HilbertRep& rep, const BasisFamily& bases,
                                     const CMatrix& xi, const CMatrix& f, const Tolerances& tol);

/// (j, k) entry ((A_F - z)^{-1} x_k, x_j): the transform of the canonical
/// solution computed from the resolvent of the extension.
CMatrix transform_via_resolvent(const HilbertRep& rep, const BasisFamily& bases, const CMatrix& f,
                                cplx z, const Tolerances& tol);

nlohmann::json to_json(const NevanlinnaCoefficients& nc);
nlohmann::json polynomial_to_json(const MatrixPolynomial& p);

// Stieltjes-Perron inversion ---------------------------------------------------

struct InversionResult {
  std::vector<double> grid;
  /// M(grid[k]) - M(grid[0]) for the measure M (transposed back from M^T).
  std::vector<CMatrix> distribution;
  /// Mass on (grid.front(), grid.back()) for each epsilon before extrapolation.
  std::vector<CMatrix> raw_mass;
  bool non_monotone = false;
};

inline constexpr double kDefaultEpsilons[] = {1e-2, 1e-3, 1e-4};

/// M((a, b)) ~ (1/pi) int_a^b Im T(x + i eps) dx, trapezoid rule with each
/// grid cell subdivided to resolve eps, then Richardson extrapolation in eps.
/// `transform` returns int dM^T/(t - z); Im is the matrix imaginary part
/// (T - T^*)/(2i).
InversionResult invert_transform(const std::function<CMatrix(cplx)>& transform,
                                 std::span<const double> grid,
                                 std::span<const double> eps_schedule = kDefaultEpsilons);

}  // namespace mmp

#endif  // MMP_NEVANLINNA_HPP
