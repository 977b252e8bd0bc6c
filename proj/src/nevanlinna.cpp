#include "mmp/nevanlinna.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mmp/determinate.hpp"
#include "mmp/errors.hpp"

namespace mmp {

namespace {

constexpr double kFixedPointTol = 1e-8;

void require_upper_half_plane(cplx z) {
  if (!(z.imag() > 0.0)) throw DomainError("evaluation point must lie in the upper half-plane");
  if (std::abs(z - kI) <= 1e-12) throw DomainError("evaluation point z = i is excluded");
}

// (z+i) A_{0;z} = (z+i) I - (z-i) a0
CMatrix scaled_a0(const CMatrix& a0, cplx z) {
  const auto n = a0.rows();
  return (z + kI) * CMatrix::Identity(n, n) - (z - kI) * a0;
}

}  // namespace

ParameterValue::ParameterValue(CMatrix f, double psd_tol) : f_(std::move(f)) {
  if (f_.rows() != f_.cols()) throw InputError("parameter value must be a square matrix");
  if (largest_singular_value(f_) > 1.0 + psd_tol)
    throw DomainError("parameter value is not a contraction");
}

bool ParameterValue::is_unitary(double tol) const {
  const auto n = f_.rows();
  return max_abs(f_.adjoint() * f_ - CMatrix::Identity(n, n)) <= tol;
}

CMatrix NevanlinnaCoefficients::a0_at(cplx z) const {
  const cplx zeta = (z - kI) / (z + kI);
  return CMatrix::Identity(tau, tau) - zeta * a0;
}

CMatrix forbidden_matrix(const BasisFamily& bases, const Tolerances& tol) {
  if (bases.kappa_prime() == 0)
    throw DomainError("forbidden matrix needs an indeterminate problem");
  const CMatrix m_plus = gram(bases.f_prime.vectors, bases.u_prime.vectors);
  const CMatrix m_minus = gram(bases.f_prime.vectors, bases.v_prime);
  if (m_plus.rows() != m_plus.cols())
    throw InconsistencyError("defect dimension differs from codimension of D(A)");
  if (smallest_singular_value(m_plus) <= tol.inv_tol * std::max(1.0, largest_singular_value(m_plus)))
    throw InconsistencyError("projection of H (-) D(A) onto N_i is singular");
  return m_minus * m_plus.partialPivLu().inverse();
}

NevanlinnaCoefficients assemble_coefficients(const HilbertRep& rep, const BasisFamily& bases,
                                             const Tolerances& tol) {
  if (bases.kappa_prime() == 0)
    throw DomainError("moment problem is determinate; no parametrization");
  NevanlinnaCoefficients nc;
  nc.n = rep.n;
  nc.tau = bases.tau();
  nc.delta = bases.delta();
  nc.rho = bases.rho;
  const int n = rep.n;
  const int tau = nc.tau;
  const int rho = nc.rho;

  const CMatrix& u = bases.u.vectors;
  const CMatrix& up = bases.u_prime.vectors;
  nc.a0 = gram(bases.v, u);
  nc.w = gram(bases.v_prime, u);
  nc.t = gram(bases.v_prime, up);
  nc.c_hat = gram(bases.v, up);
  const CMatrix y_first = rep.x.middleCols(n, n) - kI * rep.x.leftCols(n);
  nc.kmat = gram(y_first, u.leftCols(rho));
  nc.m_s_plus = gram(bases.f_prime.vectors, up);
  nc.m_s_minus = gram(bases.f_prime.vectors, bases.v_prime);
  nc.xi = forbidden_matrix(bases, tol);

  const CMatrix a0 = nc.a0;
  nc.k = interpolate(
             [&](cplx z) { return CMatrix::Constant(1, 1, determinant(scaled_a0(a0, z))); }, tau, 1,
             1)
             .trimmed();
  nc.a0_adj = tau == 0 ? MatrixPolynomial(0, 0)
                       : interpolate([&](cplx z) { return adjugate(scaled_a0(a0, z)); }, tau - 1,
                                     tau, tau);

  // psi_{j,k}(z) = -(z+i)/(2i) (g_{k+N,j+N} + (z-i) g_{k+N,j} + (z^2 - iz + 1) g_{k,j})
  const auto xn = rep.x.leftCols(n);
  const auto xn_shift = rep.x.middleCols(n, n);
  const CMatrix g0 = gram(xn, xn);
  const CMatrix g1 = gram(xn_shift, xn_shift);
  const CMatrix g2 = gram(xn_shift, xn);
  const MatrixPolynomial inner(std::vector<CMatrix>{g1 - kI * g2 + g0, g2 - kI * g0, g0});
  nc.psi = linear(-0.5, 0.5 * kI) * inner;

  const MatrixPolynomial a1 = nc.a0_adj.block(0, 0, rho, rho);
  const MatrixPolynomial a2 = nc.a0_adj.block(0, 0, rho, tau);
  const MatrixPolynomial a3 = nc.a0_adj.block(0, 0, tau, rho);
  const CMatrix kstar = nc.kmat.adjoint();

  nc.a = (linear(kI, 1.0) * (kstar * a1 * nc.kmat) + nc.k * nc.psi).trimmed();
  nc.b = (MatrixPolynomial::scalar({-1.0, 0.0, -1.0}) * (kstar * a2 * nc.w)).trimmed();
  nc.c = (linear(kI, -1.0) * (nc.k * MatrixPolynomial::constant(nc.t) +
                              linear(-kI, 1.0) * (nc.c_hat * nc.a0_adj * nc.w)))
             .trimmed();
  // (z+i) C_{0;z} = -(z-i) c_hat
  nc.d = (linear(kI, -1.0) * (nc.c_hat * a3 * nc.kmat)).trimmed();
  return nc;
}

double adjugate_identity_residual(const NevanlinnaCoefficients& nc, std::span<const cplx> points) {
  double worst = 0.0;
  for (cplx z : points) {
    const CMatrix lhs = nc.a0_adj(z) * nc.a0_at(z);
    const CMatrix rhs = nc.k.scalar_at(z) / (z + kI) * CMatrix::Identity(nc.tau, nc.tau);
    worst = std::max(worst, max_abs(lhs - rhs) / std::max(max_abs(rhs), 1e-300));
  }
  return worst;
}

CMatrix evaluate_transform(const NevanlinnaCoefficients& nc, const CMatrix& f, cplx z,
                           double inv_tol) {
  require_upper_half_plane(z);
  if (f.rows() != nc.delta || f.cols() != nc.delta)
    throw InputError("parameter value must be " + std::to_string(nc.delta) + "x" +
                     std::to_string(nc.delta));
  const cplx kz = nc.k.scalar_at(z);
  const CMatrix pivot =
      (z + kI) * kz * CMatrix::Identity(nc.delta, nc.delta) + nc.c(z) * f;
  const double smax = largest_singular_value(pivot);
  const double smin = smallest_singular_value(pivot);
  if (smin <= inv_tol * std::max(1.0, smax)) throw SingularPivotError(z, smin);
  const CMatrix body = nc.a(z) + nc.b(z) * f * pivot.partialPivLu().solve(nc.d(z));
  const cplx z2 = z * z + 1.0;
  return (2.0 * kI / (z2 * z2 * kz)) * body;
}

CMatrix evaluate_transform(const NevanlinnaCoefficients& nc,
                           const std::function<CMatrix(cplx)>& f, cplx z, double inv_tol) {
  return evaluate_transform(nc, f(z), z, inv_tol);
}

bool check_constant_admissible(const CMatrix& f, const CMatrix& xi, double inv_tol) {
  const CMatrix ns = null_space(f - xi, inv_tol);
  if (ns.cols() == 0) return true;
  return largest_singular_value(f * ns) < 1.0 - inv_tol;
}

Extension build_extension(const BasisFamily& bases, const CMatrix& f, const Tolerances& tol) {
  const int delta = bases.delta();
  if (f.rows() != delta || f.cols() != delta)
    throw InputError("parameter value must be " + std::to_string(delta) + "x" +
                     std::to_string(delta));
  if (!ParameterValue(f, tol.psd_tol).is_unitary(std::max(tol.psd_tol, 1e-12)))
    throw DomainError("canonical solutions need a unitary parameter");
  const auto r = bases.v.rows();
  CMatrix image(r, bases.tau() + delta);
  image << bases.v, bases.v_prime * f;
  CMatrix source(r, bases.tau() + delta);
  source << bases.u.vectors, bases.u_prime.vectors;

  Extension ext;
  ext.unitary = image * source.adjoint();
  const CMatrix id = CMatrix::Identity(r, r);
  if (r > 0) {
    Eigen::ComplexEigenSolver<CMatrix> es(ext.unitary, false);
    ext.fixed_point_distance = (es.eigenvalues().array() - 1.0).abs().minCoeff();
    if (ext.fixed_point_distance <= kFixedPointTol) throw FixedPointError(ext.fixed_point_distance);
  }
  ext.operator_ = hermitian_part(kI * (ext.unitary - id).partialPivLu().solve(ext.unitary + id));
  return ext;
}

CanonicalSolution canonical_solution(const HilbertRep& rep, const BasisFamily& bases,
                                     const CMatrix& xi, const CMatrix& f, const Tolerances& tol) {
  CanonicalSolution out;
  out.admissible = check_constant_admissible(f, xi, tol.inv_tol);
  const Extension ext = build_extension(bases, f, tol);
  out.fixed_point_free = true;
  out.diagnostic_disagreement = !out.admissible;
  out.measure = spectral_measure(ext.operator_, rep.generators());
  return out;
}

CMatrix transform_via_resolvent(const HilbertRep& rep, const BasisFamily& bases, const CMatrix& f,
                                cplx z, const Tolerances& tol) {
  if (z.imag() == 0.0) throw DomainError("resolvent needs a non-real point");
  const Extension ext = build_extension(bases, f, tol);
  const auto r = ext.operator_.rows();
  const CMatrix g = rep.generators();
  const CMatrix res = (ext.operator_ - z * CMatrix::Identity(r, r)).partialPivLu().solve(g);
  return g.adjoint() * res;
}

nlohmann::json polynomial_to_json(const MatrixPolynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : p.coefficients()) out.push_back(matrix_to_json(c));
  return out;
}

nlohmann::json to_json(const NevanlinnaCoefficients& nc) {
  nlohmann::json k = nlohmann::json::array();
  for (const auto& c : nc.k.coefficients()) k.push_back(complex_to_json(c(0, 0)));
  return {{"N", nc.n},
          {"tau", nc.tau},
          {"delta", nc.delta},
          {"rho", nc.rho},
          {"k", k},
          {"A", polynomial_to_json(nc.a)},
          {"B", polynomial_to_json(nc.b)},
          {"C", polynomial_to_json(nc.c)},
          {"D", polynomial_to_json(nc.d)},
          {"A0_adjugate", polynomial_to_json(nc.a0_adj)},
          {"Psi", polynomial_to_json(nc.psi)},
          {"Xi", matrix_to_json(nc.xi)},
          {"W", matrix_to_json(nc.w)},
          {"T", matrix_to_json(nc.t)},
          {"Chat", matrix_to_json(nc.c_hat)},
          {"K", matrix_to_json(nc.kmat)},
          {"A0", matrix_to_json(nc.a0)},
          {"M_S_i", matrix_to_json(nc.m_s_plus)},
          {"M_S_minus_i", matrix_to_json(nc.m_s_minus)}};
}

}  // namespace mmp
