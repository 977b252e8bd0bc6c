#include "mmp/hilbert_space.hpp"

#include <cmath>
#include <string>

#include "mmp/errors.hpp"

namespace mmp {

namespace {

// Tolerance on |v_j| = 1. The Cayley images go through Gram-Schmidt
// coefficients, so roundoff is amplified by the conditioning of y_k.
constexpr double kIsometryTol = 1e-6;

OrthoBasisSet select(const OrthoBasisSet& b, bool want_head, int split) {
  std::vector<Eigen::Index> cols;
  OrthoBasisSet out;
  for (int j = 0; j < b.size(); ++j) {
    if ((b.source_indices[j] < split) == want_head) {
      cols.push_back(j);
      out.source_indices.push_back(b.source_indices[j]);
    }
  }
  const auto m = static_cast<Eigen::Index>(cols.size());
  out.vectors.resize(b.vectors.rows(), m);
  out.coefficients.resize(b.coefficients.rows(), m);
  for (Eigen::Index c = 0; c < m; ++c) {
    out.vectors.col(c) = b.vectors.col(cols[c]);
    out.coefficients.col(c) = b.coefficients.col(cols[c]);
  }
  return out;
}

}  // namespace

HilbertRep factor_gram(const HankelPair& h, int n, int d, const Tolerances& tol) {
  HilbertRep rep;
  rep.n = n;
  rep.d = d;
  const auto e = eigh(h.gamma_d);
  const double lmax = e.values.size() ? e.values.maxCoeff() : 0.0;
  rep.scale = lmax > 0.0 ? lmax : 1.0;
  const auto size = h.gamma_d.rows();
  if (e.values.size() && e.values.minCoeff() < -tol.psd_tol * rep.scale)
    throw DomainError("block Hankel matrix is not positive semidefinite");

  std::vector<Eigen::Index> kept;
  if (lmax > 0.0)
    for (Eigen::Index j = 0; j < e.values.size(); ++j)
      if (e.values(j) > tol.rank_tol * lmax) kept.push_back(j);

  // Row j of X is sqrt(lambda_j) u_j^T, so that X^* X = conj(U) L U^T = gamma^T.
  rep.x.resize(static_cast<Eigen::Index>(kept.size()), size);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const auto j = kept[r];
    rep.x.row(static_cast<Eigen::Index>(r)) = std::sqrt(e.values(j)) * e.vectors.col(j).transpose();
  }
  return rep;
}

OrthoBasisSet OrthoBasisSet::head(int split) const { return select(*this, true, split); }
OrthoBasisSet OrthoBasisSet::tail(int split) const { return select(*this, false, split); }

OrthoBasisSet orthonormalize(const CMatrix& inputs, double rank_tol, double norm_floor) {
  const auto dim = inputs.rows();
  const auto count = inputs.cols();
  std::vector<CVector> q;
  std::vector<CVector> c;
  std::vector<int> src;
  const double reorth_ratio = std::sqrt(rank_tol);

  for (Eigen::Index i = 0; i < count; ++i) {
    CVector h = inputs.col(i);
    CVector hc = CVector::Zero(count);
    hc(i) = 1.0;
    const double input_norm = h.norm();
    auto sweep = [&] {
      for (std::size_t m = 0; m < q.size(); ++m) {
        const cplx p = q[m].dot(h);  // (h, q_m)
        h -= p * q[m];
        hc -= p * c[m];
      }
    };
    sweep();
    if (h.norm() < reorth_ratio * input_norm) sweep();
    const double res = h.norm();
    if (res <= rank_tol * std::max(norm_floor, input_norm)) continue;
    q.push_back(h / res);
    c.push_back(hc / res);
    src.push_back(static_cast<int>(i));
  }

  OrthoBasisSet out;
  const auto m = static_cast<Eigen::Index>(q.size());
  out.vectors.resize(dim, m);
  out.coefficients.resize(count, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    out.vectors.col(j) = q[j];
    out.coefficients.col(j) = c[j];
  }
  out.source_indices = std::move(src);
  return out;
}

OperatorModel build_operator_model(const HilbertRep& rep, const Tolerances& tol) {
  OperatorModel model;
  const int dn = rep.domain_size();
  const int n = rep.n;
  const double floor = std::sqrt(rep.scale);
  model.y = rep.shifted() - kI * rep.domain();
  model.y_plus = rep.shifted() + kI * rep.domain();

  CMatrix seq(rep.dim(), dn + n);
  seq << model.y, rep.generators();
  const auto pass = orthonormalize(seq, tol.rank_tol, floor);
  model.u = pass.head(dn);
  model.u_prime = pass.tail(dn);
  for (int s : pass.source_indices)
    if (s < n) ++model.rho;

  // u_j = sum_k c_kj y_k  =>  V u_j = sum_k c_kj (x_{k+N} + i x_k)
  model.v = model.y_plus * model.u.coefficients.topRows(dn);
  for (Eigen::Index j = 0; j < model.v.cols(); ++j) {
    const double err = std::abs(model.v.col(j).norm() - 1.0);
    if (err > kIsometryTol)
      throw InconsistencyError("Cayley image v_" + std::to_string(j) +
                               " is not a unit vector (|norm-1|=" + std::to_string(err) + ")");
  }
  return model;
}

BasisFamily build_all_bases(const HilbertRep& rep, const OperatorModel& model,
                            const Tolerances& tol) {
  BasisFamily b;
  const int dn = rep.domain_size();
  const int n = rep.n;
  const int r = rep.dim();
  const double floor = std::sqrt(rep.scale);

  const auto xs = orthonormalize(rep.x, tol.rank_tol, floor);
  b.f = xs.head(dn);
  b.f_prime = xs.tail(dn);
  b.u = model.u;
  b.u_prime = model.u_prime;
  b.rho = model.rho;

  const int tau = b.tau();
  CMatrix seq(r, tau + n);
  seq << model.v, rep.generators();
  const auto vs = orthonormalize(seq, tol.rank_tol, floor);
  const auto v_head = vs.head(tau);
  if (v_head.size() != tau)
    throw InconsistencyError("Cayley images are not linearly independent");
  b.v = v_head.vectors;
  b.v_prime = vs.tail(tau).vectors;

  if (b.v_prime.cols() != b.delta())
    throw InconsistencyError("defect subspaces have different dimensions (" +
                             std::to_string(b.delta()) + " vs " +
                             std::to_string(b.v_prime.cols()) + "); rank decision unstable");
  if (b.kappa() + b.kappa_prime() != r || tau + b.delta() != r)
    throw InconsistencyError("orthonormal families do not span H; rank decision unstable");
  return b;
}

Determinacy classify_determinacy(const BasisFamily& bases) {
  return bases.kappa_prime() == 0 ? Determinacy::Determinate : Determinacy::Indeterminate;
}

}  // namespace mmp
