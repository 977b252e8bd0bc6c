#ifndef MMP_MOMENT_MODEL_HPP
#define MMP_MOMENT_MODEL_HPP

#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mmp/linalg.hpp"

namespace mmp {

/// Numerical cutoffs used throughout the pipeline.
///
/// `hermitian_tol` is relative: a moment S is accepted when
/// max|S - S^*| <= hermitian_tol * (1 + max|S|). `rank_tol`, `psd_tol` and
/// `inv_tol` are relative to the scale of the matrix they are applied to.
struct Tolerances {
  double hermitian_tol = 1e-10;
  double psd_tol = 1e-10;
  double rank_tol = 1e-10;
  double inv_tol = 1e-10;
  double moment_tol = 1e-8;
  double gap_tol = 1e-8;

  /// Throws InputError unless every field is finite and positive.
  void validate() const;
};

/// The prescribed moments S_0, ..., S_{2d} of an N x N matrix measure.
///
/// Construction validates the shape and Hermitian symmetry and then replaces
/// each S_n with its Hermitian part.
class MomentSequence {
 public:
  MomentSequence(int n, int d, std::vector<CMatrix> moments,
                 const Tolerances& tol = {});

  static MomentSequence zero(int n, int d);

  int matrix_size() const { return n_; }
  int order() const { return d_; }
  const std::vector<CMatrix>& moments() const { return moments_; }
  const CMatrix& operator[](int k) const { return moments_.at(k); }

 private:
  int n_;
  int d_;
  std::vector<CMatrix> moments_;
};

struct Atom {
  double t;
  CMatrix weight;
};

/// A finitely atomic N x N matrix measure sum_j W_j delta_{t_j}.
///
/// Atoms are kept sorted by location; atoms sharing a location are merged.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(int n = 0) : n_(n) {}

  /// Throws InputError when a weight is not N x N, not Hermitian, or has an
  /// eigenvalue below -psd_tol * (1 + max|W|).
  AtomicMeasure(int n, std::vector<Atom> atoms, double psd_tol = 1e-10);

  int matrix_size() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  /// sum_j t_j^k W_j
  CMatrix moment(int k) const;
  CMatrix total_mass() const { return moment(0); }

  /// Left-continuous distribution function M(lambda) = sum_{t_j < lambda} W_j.
  CMatrix distribution(double lambda) const;

 private:
  int n_;
  std::vector<Atom> atoms_;
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return lo < t && t < hi; }
  bool bounded() const;
};

/// A finite union of disjoint open intervals, sorted left to right.
class GapSpec {
 public:
  GapSpec() = default;
  explicit GapSpec(std::vector<Interval> intervals);

  /// Parses "(-1,1),(3,inf)". Endpoints accept `inf`, `+inf`, `-inf`.
  static GapSpec parse(std::string_view text);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool contains(double t) const;
  /// Every interval of `this` is contained in some interval of `other`.
  bool subset_of(const GapSpec& other) const;

 private:
  std::vector<Interval> intervals_;
};

struct MomentReport {
  std::vector<double> deviation;  // per n, max-abs-entry |sum t^n W - S_n|
  double max_deviation = 0.0;
  bool pass = true;
};

/// Compares the moments of `m` with S_0..S_{2d}.
MomentReport verify_moments(const AtomicMeasure& m, const MomentSequence& ms,
                            double tol);

// JSON and CSV ---------------------------------------------------------------

nlohmann::json complex_to_json(cplx c);
cplx complex_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const CMatrix& m);
/// Accepts rows of entries where each entry is a number or an [re, im] pair.
CMatrix matrix_from_json(const nlohmann::json& j);

MomentSequence parse_moments(const nlohmann::json& doc,
                             const Tolerances& tol = {});
MomentSequence parse_moments(std::istream& in, const Tolerances& tol = {});
nlohmann::json to_json(const MomentSequence& ms);

nlohmann::json to_json(const AtomicMeasure& m);
AtomicMeasure measure_from_json(const nlohmann::json& doc, int n,
                                double psd_tol = 1e-10);

nlohmann::json to_json(const MomentReport& r);

/// Writes columns lambda, m_k_l_re, m_k_l_im (row-major over k, l).
void write_distribution_csv(std::ostream& out, const AtomicMeasure& m,
                            std::span<const double> lambdas);

/// Sample points that show every step of the distribution: each atom, the
/// midpoints between atoms, and one point beyond either end.
std::vector<double> default_distribution_grid(const AtomicMeasure& m);

}  // namespace mmp

#endif  // MMP_MOMENT_MODEL_HPP
