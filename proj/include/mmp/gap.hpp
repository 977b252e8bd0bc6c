#ifndef MMP_GAP_HPP
#define MMP_GAP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmp/hilbert_space.hpp"
#include "mmp/linalg.hpp"
#include "mmp/moment_model.hpp"

namespace mmp {

/// g: Gram-Schmidt over (A - lambda) f_0, ..., (A - lambda) f_{kappa-1}.
/// Each f_k is a triangular combination of x_0 .. x_k with a positive leading
/// coefficient, so this is the family that x_{k+N} - lambda x_k would give,
/// computed from orthonormal rather than raw inputs.
///
/// g': an orthonormal basis of the orthogonal complement of g. Continuing the
/// Gram-Schmidt pass with x_0 .. x_{N-1} spans the same space, but for large
/// |lambda| their components there shrink like |lambda|^{-d} and fall below
/// any rank cutoff. Every quantity built from g' is invariant under a unitary
/// change of this basis.
struct GapBasis {
  OrthoBasisSet g;        // basis of the range of A - lambda
  OrthoBasisSet g_prime;  // basis of its orthogonal complement; no input coefficients
};

GapBasis gap_basis(const HilbertRep& rep, const BasisFamily& bases, double lambda,
                   const Tolerances& tol);

struct RegularTypeResult {
  CMatrix matrix;  // ((A - lambda) f_k, g_j)
  bool invertible = false;
  int tau_tilde = 0;
  GapBasis basis;
};

/// lambda is a point of regular type when the matrix of A - lambda from the
/// basis f of D(A) to the basis g is square and invertible.
RegularTypeResult regular_type_check(const HilbertRep& rep, const BasisFamily& bases,
                                     double lambda, const Tolerances& tol);

/// ((lambda+i)/(lambda-i)) M_Q M_S^{-1} with M_S(j, k) = (g'_k, u'_j) and
/// M_Q(j, k) = (g'_k, v'_j). Throws DomainError when lambda is not of regular
/// type and InconsistencyError when M_S is singular.
CMatrix w_tilde(const HilbertRep& rep, const BasisFamily& bases, double lambda,
                const Tolerances& tol);
CMatrix w_tilde(const RegularTypeResult& reg, const BasisFamily& bases, double lambda,
                const Tolerances& tol);

struct GapRecord {
  double lambda = 0.0;
  int interval = 0;
  CMatrix m_al;  // matrix of A - lambda
  bool invertible = false;
  int tau_tilde = 0;
  CMatrix w_tilde;  // empty when lambda is not of regular type
};

struct GapAnalysis {
  GapSpec gap;
  std::vector<GapRecord> records;
  bool regular_type = true;
  std::optional<double> first_irregular;
  double max_unitarity_defect = 0.0;
  // Kept so that parameter checks can refine between grid points.
  HilbertRep rep;
  BasisFamily bases;
  Tolerances tol;
};

/// Sample points of each interval. Bounded intervals get
/// max(101, ceil(length / 0.01)) uniform interior points plus 101 Chebyshev
/// points. A half-line (a, inf) is sampled through lambda = a + L s/(1-s) with
/// s in (0, 1), and the whole line through lambda = L tan(pi (s - 1/2)).
std::vector<std::vector<double>> gap_grid(const GapSpec& gap, double length_scale = 1.0);

/// 1 + norm of A on D(A); used as the length scale of unbounded intervals.
double operator_scale(const HilbertRep& rep, const BasisFamily& bases);

GapAnalysis analyze_gap(const HilbertRep& rep, const BasisFamily& bases, const GapSpec& gap,
                        const Tolerances& tol);

struct GapVerdict {
  bool accepted = false;
  /// "regular", "admissibility", "B" (unitarity) or "C" (F - W(lambda) singular).
  std::string failed_condition;
  std::optional<double> witness_lambda;
};

/// Decides whether the constant F belongs to the gap class: F is admissible,
/// unitary, and F - W(lambda) is invertible for every lambda in the gap.
/// Besides the grid points, every eigenphase of F^* W(lambda) crossing zero
/// between neighbouring grid points is located by bisection.
GapVerdict check_gap_class(const CMatrix& f, const CMatrix& xi, const GapAnalysis& analysis);

struct GapSearchResult {
  bool found = false;
  CMatrix f;
  AtomicMeasure measure;
  int candidates_tried = 0;
  std::string note;
};

/// Searches constant unitary parameters whose canonical solution vanishes on
/// the gap. For delta = 1 the phases 2 pi k / budget are scanned and the
/// feasible arc around the first hit is refined by bisection; its midpoint is
/// returned. For delta > 1 Haar-random unitaries are drawn from a generator
/// seeded with `seed`. Failure is inconclusive: only constant parameters are
/// tried.
GapSearchResult gap_solvable_search(const CMatrix& xi, const GapAnalysis& analysis, int budget,
                                    std::uint64_t seed = 20240607);

/// No atom with weight trace above `tol` lies inside an interval of the gap.
/// Atoms within tol * (1 + |endpoint|) of an endpoint count as endpoint atoms,
/// which an open interval allows.
bool verify_gap(const AtomicMeasure& m, const GapSpec& gap, double tol);

nlohmann::json to_json(const GapVerdict& v);
nlohmann::json to_json(const GapAnalysis& a, bool include_records = false);

}  // namespace mmp

#endif  // MMP_GAP_HPP
