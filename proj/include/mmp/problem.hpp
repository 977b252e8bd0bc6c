#ifndef MMP_PROBLEM_HPP
#define MMP_PROBLEM_HPP

#include <optional>

#include <json.hpp>

#include "mmp/determinate.hpp"
#include "mmp/gap.hpp"
#include "mmp/hilbert_space.hpp"
#include "mmp/moment_model.hpp"
#include "mmp/nevanlinna.hpp"
#include "mmp/solvability.hpp"

namespace mmp {

/// The whole pipeline for one moment sequence: solvability, the Hilbert
/// space model and every orthonormal family are computed on construction;
/// the parametrization is assembled on first use.
class MomentProblem {
 public:
  explicit MomentProblem(MomentSequence moments, Tolerances tol = {});

  const MomentSequence& moments() const { return moments_; }
  const Tolerances& tolerances() const { return tol_; }
  const HankelPair& hankel() const { return hankel_; }
  const SolvabilityReport& solvability() const { return report_; }
  bool solvable() const { return report_.solvable; }

  /// The accessors below throw DomainError when the problem is not solvable.
  const HilbertRep& rep() const;
  const BasisFamily& bases() const;
  Determinacy determinacy() const;
  bool determinate() const { return determinacy() == Determinacy::Determinate; }

  /// Unique solution; throws DomainError when the problem is indeterminate.
  AtomicMeasure solve() const;
  CMatrix determinate_transform(cplx z) const;

  /// Throws DomainError when the problem is determinate.
  const NevanlinnaCoefficients& coefficients() const;
  CMatrix transform(const CMatrix& f, cplx z) const;
  CanonicalSolution canonical(const CMatrix& f) const;

  GapAnalysis analyze_gap(const GapSpec& gap) const;

  /// r, kappa, kappa', tau, delta, rho and determinacy.
  nlohmann::json dimensions() const;

 private:
  void require_solvable() const;

  MomentSequence moments_;
  Tolerances tol_;
  HankelPair hankel_;
  SolvabilityReport report_;
  std::optional<HilbertRep> rep_;
  std::optional<BasisFamily> bases_;
  mutable std::optional<NevanlinnaCoefficients> coefficients_;
};

}  // namespace mmp

#endif  // MMP_PROBLEM_HPP
