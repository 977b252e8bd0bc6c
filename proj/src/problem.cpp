#include "mmp/problem.hpp"

#include "mmp/errors.hpp"

namespace mmp {

MomentProblem::MomentProblem(MomentSequence moments, Tolerances tol)
    : moments_(std::move(moments)), tol_(tol) {
  tol_.validate();
  hankel_ = build_block_hankel(moments_);
  report_ = check_solvable(hankel_, tol_);
  if (!report_.solvable) return;
  rep_ = factor_gram(hankel_, moments_.matrix_size(), moments_.order(), tol_);
  const OperatorModel model = build_operator_model(*rep_, tol_);
  bases_ = build_all_bases(*rep_, model, tol_);
}

void MomentProblem::require_solvable() const {
  if (!report_.solvable) throw DomainError("moment problem is not solvable");
}

const HilbertRep& MomentProblem::rep() const {
  require_solvable();
  return *rep_;
}

const BasisFamily& MomentProblem::bases() const {
  require_solvable();
  return *bases_;
}

Determinacy MomentProblem::determinacy() const { return classify_determinacy(bases()); }

AtomicMeasure MomentProblem::solve() const {
  return solve_determinate(build_determinate_model(rep(), bases()));
}

CMatrix MomentProblem::determinate_transform(cplx z) const {
  return stieltjes_determinate(build_determinate_model(rep(), bases()), z);
}

const NevanlinnaCoefficients& MomentProblem::coefficients() const {
  if (!coefficients_) coefficients_ = assemble_coefficients(rep(), bases(), tol_);
  return *coefficients_;
}

CMatrix MomentProblem::transform(const CMatrix& f, cplx z) const {
  return evaluate_transform(coefficients(), f, z, tol_.inv_tol);
}

CanonicalSolution MomentProblem::canonical(const CMatrix& f) const {
  return canonical_solution(rep(), bases(), coefficients().xi, f, tol_);
}

GapAnalysis MomentProblem::analyze_gap(const GapSpec& gap) const {
  if (determinate()) throw DomainError("moment problem is determinate; no parameter to constrain");
  return mmp::analyze_gap(rep(), bases(), gap, tol_);
}

nlohmann::json MomentProblem::dimensions() const {
  const BasisFamily& b = bases();
  return {{"r", rep().dim()},          {"kappa", b.kappa()}, {"kappa_prime", b.kappa_prime()},
          {"tau", b.tau()},            {"delta", b.delta()}, {"rho", b.rho},
          {"determinate", determinate()}};
}

}  // namespace mmp
