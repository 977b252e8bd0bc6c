#include "mmp/determinate.hpp"

#include "mmp/errors.hpp"

namespace mmp {

DeterminateModel build_determinate_model(const HilbertRep& rep, const BasisFamily& bases) {
  if (bases.kappa_prime() != 0)
    throw DomainError("moment problem is indeterminate; no unique solution");
  DeterminateModel dm;
  dm.n = rep.n;
  const CMatrix& f = bases.f.vectors;
  dm.r = gram(rep.generators(), f);
  // f_k = sum_m c_mk x_m over m < dN, so A f_k = sum_m c_mk x_{m+N}.
  const CMatrix af = rep.shifted() * bases.f.coefficients.topRows(rep.domain_size());
  dm.ma = hermitian_part(gram(af, f));
  return dm;
}

AtomicMeasure spectral_measure(const CMatrix& op, const CMatrix& generators) {
  const int n = static_cast<int>(generators.cols());
  if (op.rows() == 0) return AtomicMeasure(n);
  const auto e = eigh(op);
  const double cluster_tol = 1e-8 * (1.0 + largest_singular_value(op));
  std::vector<Atom> atoms;
  Eigen::Index j = 0;
  const auto m = e.values.size();
  while (j < m) {
    Eigen::Index end = j + 1;
    while (end < m && e.values(end) - e.values(end - 1) <= cluster_tol) ++end;
    const CMatrix p = e.vectors.middleCols(j, end - j);
    const CMatrix proj = p.adjoint() * generators;  // coordinates of P g_k
    // (P g_k, g_l) = g_l^* P g_k = (proj^* proj)(l, k)
    CMatrix w = (proj.adjoint() * proj).transpose();
    atoms.push_back({e.values.segment(j, end - j).mean(), hermitian_part(w)});
    j = end;
  }
  return AtomicMeasure(n, std::move(atoms));
}

AtomicMeasure solve_determinate(const DeterminateModel& dm) {
  return spectral_measure(dm.ma, dm.r);
}

CMatrix stieltjes_determinate(const DeterminateModel& dm, cplx z) {
  if (z.imag() == 0.0) throw DomainError("Stieltjes transform needs a non-real point");
  if (dm.ma.rows() == 0) return CMatrix::Zero(dm.n, dm.n);
  const auto k = dm.ma.rows();
  const CMatrix res = (dm.ma - z * CMatrix::Identity(k, k)).partialPivLu().solve(dm.r);
  return dm.r.adjoint() * res;
}

}  // namespace mmp
