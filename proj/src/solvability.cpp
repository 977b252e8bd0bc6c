#include "mmp/solvability.hpp"

#include <algorithm>

namespace mmp {

namespace {

CMatrix hankel(const MomentSequence& ms, int blocks, int shift) {
  const int n = ms.matrix_size();
  CMatrix h(blocks * n, blocks * n);
  for (int i = 0; i < blocks; ++i)
    for (int j = 0; j < blocks; ++j) h.block(i * n, j * n, n, n) = ms[i + j + shift];
  return h;
}

}  // namespace

HankelPair build_block_hankel(const MomentSequence& ms) {
  const int d = ms.order();
  return {hankel(ms, d + 1, 0), hankel(ms, d, 2), hankel(ms, d, 0)};
}

SolvabilityReport check_solvable(const HankelPair& h, const Tolerances& tol) {
  SolvabilityReport r;
  const auto full = eigh(h.gamma_d);
  const double lmax = full.values.size() ? full.values.maxCoeff() : 0.0;
  r.scale = lmax > 0.0 ? lmax : 1.0;
  r.min_eigenvalue = full.values.size() ? full.values.minCoeff() : 0.0;

  const auto lower = eigh(h.gamma_dm1);
  for (Eigen::Index j = 0; j < lower.values.size(); ++j) {
    if (std::abs(lower.values(j)) > tol.rank_tol * r.scale) continue;
    ++r.kernel_dimension;
    const double image = (h.gamma_hat * lower.vectors.col(j)).norm();
    r.kernel_inclusion_defect = std::max(r.kernel_inclusion_defect, image);
  }
  r.solvable = r.min_eigenvalue >= -tol.psd_tol * r.scale &&
               r.kernel_inclusion_defect <= tol.psd_tol * r.scale;
  return r;
}

nlohmann::json to_json(const SolvabilityReport& r) {
  return {{"solvable", r.solvable},
          {"min_eigenvalue", r.min_eigenvalue},
          {"kernel_inclusion_defect", r.kernel_inclusion_defect},
          {"kernel_dimension", r.kernel_dimension},
          {"scale", r.scale}};
}

}  // namespace mmp
