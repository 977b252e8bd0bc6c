#include "mmp/gap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "mmp/errors.hpp"
#include "mmp/nevanlinna.hpp"

namespace mmp {

namespace {

constexpr int kBisectionDepth = 60;
constexpr int kArcBisections = 30;

std::vector<double> uniform_and_chebyshev(double a, double b, int uniform, int chebyshev) {
  std::vector<double> pts;
  for (int k = 1; k <= uniform; ++k) pts.push_back(a + (b - a) * k / (uniform + 1.0));
  for (int k = 1; k <= chebyshev; ++k) {
    const double c = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * chebyshev));
    pts.push_back(0.5 * (a + b) + 0.5 * (b - a) * c);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::erase_if(pts, [&](double x) { return !(a < x && x < b); });
  return pts;
}

struct PhaseCounts {
  int pos = 0;  // eigenphases in (0, pi/2]
  int neg = 0;  // eigenphases in [-pi/2, 0)
  bool operator==(const PhaseCounts&) const = default;
};

PhaseCounts phase_counts(const CMatrix& f, const CMatrix& w) {
  const CMatrix prod = f.adjoint() * w;
  Eigen::ComplexEigenSolver<CMatrix> es(prod, false);
  PhaseCounts c;
  for (const cplx& mu : es.eigenvalues()) {
    const double phase = std::arg(mu);
    if (phase > 0.0 && phase <= 0.5 * std::numbers::pi) ++c.pos;
    if (phase < 0.0 && phase >= -0.5 * std::numbers::pi) ++c.neg;
  }
  return c;
}

bool singular_difference(const CMatrix& f, const CMatrix& w, double inv_tol) {
  return smallest_singular_value(f - w) <= inv_tol;
}

int sign(int v) { return (v > 0) - (v < 0); }

// Looks for lambda in (a, b) with F - W(lambda) singular, given the phase
// counts at both ends. Returns the located point.
std::optional<double> locate_crossing(const CMatrix& f, const GapAnalysis& an, double a,
                                      PhaseCounts ca, double b, PhaseCounts cb, int depth) {
  if (ca == cb) return std::nullopt;
  const double mid = 0.5 * (a + b);
  if (depth >= kBisectionDepth || b - a <= 1e-13 * (1.0 + std::abs(mid))) {
    const int dp = sign(cb.pos - ca.pos);
    const int dn = sign(cb.neg - ca.neg);
    if (dp != 0 && dn != 0 && dp != dn) return mid;
    return std::nullopt;
  }
  CMatrix w;
  try {
    w = w_tilde(an.rep, an.bases, mid, an.tol);
  } catch (const Error&) {
    return mid;
  }
  if (singular_difference(f, w, an.tol.inv_tol)) return mid;
  const PhaseCounts cm = phase_counts(f, w);
  if (auto hit = locate_crossing(f, an, a, ca, mid, cm, depth + 1)) return hit;
  return locate_crossing(f, an, mid, cm, b, cb, depth + 1);
}

CMatrix phase_matrix(double theta) { return CMatrix::Constant(1, 1, std::polar(1.0, theta)); }

CMatrix haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = cplx(normal(rng), normal(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0.0) q.col(j) *= r(j, j) / mod;
  }
  return q;
}

}  // namespace

namespace {

// (A - lambda) f_k for the orthonormal basis f of D(A).
CMatrix shifted_images(const HilbertRep& rep, const BasisFamily& bases, double lambda) {
  const CMatrix af = rep.shifted() * bases.f.coefficients.topRows(rep.domain_size());
  return af - lambda * bases.f.vectors;
}

// Every eigenvalue of A is an eigenvalue of its compression to D(A).
std::vector<double> compression_spectrum(const HilbertRep& rep, const BasisFamily& bases) {
  if (bases.kappa() == 0) return {};
  const CMatrix af = rep.shifted() * bases.f.coefficients.topRows(rep.domain_size());
  const RVector ev = eigh(bases.f.vectors.adjoint() * af).values;
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

GapBasis gap_basis(const HilbertRep& rep, const BasisFamily& bases, double lambda,
                   const Tolerances& tol) {
  GapBasis out;
  out.g = orthonormalize(shifted_images(rep, bases, lambda), tol.rank_tol, std::sqrt(rep.scale));
  const int r = rep.dim();
  const int t = out.g.size();
  if (t == 0) {
    out.g_prime.vectors = CMatrix::Identity(r, r);
  } else {
    const Eigen::HouseholderQR<CMatrix> qr(out.g.vectors);
    const CMatrix q = qr.householderQ() * CMatrix::Identity(r, r);
    out.g_prime.vectors = q.rightCols(r - t);
  }
  out.g_prime.coefficients = CMatrix(0, r - t);
  return out;
}

RegularTypeResult regular_type_check(const HilbertRep& rep, const BasisFamily& bases,
                                     double lambda, const Tolerances& tol) {
  RegularTypeResult res;
  res.basis = gap_basis(rep, bases, lambda, tol);
  res.tau_tilde = res.basis.g.size();
  res.matrix = gram(shifted_images(rep, bases, lambda), res.basis.g.vectors);
  if (res.tau_tilde != bases.kappa() || res.matrix.size() == 0) {
    res.invertible = res.tau_tilde == bases.kappa();
    return res;
  }
  const double smax = largest_singular_value(res.matrix);
  res.invertible = smallest_singular_value(res.matrix) > tol.inv_tol * std::max(1.0, smax);
  return res;
}

CMatrix w_tilde(const RegularTypeResult& reg, const BasisFamily& bases, double lambda,
                const Tolerances& tol) {
  if (!reg.invertible) throw DomainError("lambda = " + std::to_string(lambda) +
                                         " is not a point of regular type");
  const CMatrix& gp = reg.basis.g_prime.vectors;
  const CMatrix m_s = gram(gp, bases.u_prime.vectors);
  const CMatrix m_q = gram(gp, bases.v_prime);
  if (m_s.rows() != m_s.cols() || m_s.rows() != bases.delta())
    throw InconsistencyError("complement of the range of A - lambda has the wrong dimension");
  if (smallest_singular_value(m_s) <= tol.inv_tol * std::max(1.0, largest_singular_value(m_s)))
    throw InconsistencyError("matrix of S_lambda is singular");
  const cplx factor = (lambda + kI) / (lambda - kI);
  return factor * m_q * m_s.partialPivLu().inverse();
}

CMatrix w_tilde(const HilbertRep& rep, const BasisFamily& bases, double lambda,
                const Tolerances& tol) {
  return w_tilde(regular_type_check(rep, bases, lambda, tol), bases, lambda, tol);
}

std::vector<std::vector<double>> gap_grid(const GapSpec& gap, double length_scale) {
  std::vector<std::vector<double>> out;
  for (const Interval& iv : gap.intervals()) {
    if (iv.bounded()) {
      const double len = iv.hi - iv.lo;
      const int n = std::max(101, static_cast<int>(std::ceil(len / 0.01)));
      out.push_back(uniform_and_chebyshev(iv.lo, iv.hi, n, 101));
      continue;
    }
    const bool whole = std::isinf(iv.lo) && std::isinf(iv.hi);
    const std::vector<double> s = uniform_and_chebyshev(0.0, 1.0, whole ? 2001 : 1001, 101);
    std::vector<double> pts;
    for (double v : s) {
      if (whole)
        pts.push_back(length_scale * std::tan(std::numbers::pi * (v - 0.5)));
      else if (std::isinf(iv.hi))
        pts.push_back(iv.lo + length_scale * v / (1.0 - v));
      else
        pts.push_back(iv.hi - length_scale * (1.0 - v) / v);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::erase_if(pts, [&](double x) { return !iv.contains(x) || !std::isfinite(x); });
    out.push_back(std::move(pts));
  }
  return out;
}

double operator_scale(const HilbertRep& rep, const BasisFamily& bases) {
  if (bases.kappa() == 0) return 1.0;
  const CMatrix images = rep.shifted() * bases.f.coefficients.topRows(rep.domain_size());
  return 1.0 + largest_singular_value(images);
}

GapAnalysis analyze_gap(const HilbertRep& rep, const BasisFamily& bases, const GapSpec& gap,
                        const Tolerances& tol) {
  GapAnalysis an;
  an.gap = gap;
  an.rep = rep;
  an.bases = bases;
  an.tol = tol;
  const auto grid = gap_grid(gap, operator_scale(rep, bases));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (double lambda : grid[i]) {
      GapRecord rec;
      rec.lambda = lambda;
      rec.interval = static_cast<int>(i);
      const RegularTypeResult reg = regular_type_check(rep, bases, lambda, tol);
      rec.m_al = reg.matrix;
      rec.tau_tilde = reg.tau_tilde;
      rec.invertible = reg.invertible;
      if (rec.invertible) {
        rec.w_tilde = w_tilde(reg, bases, lambda, tol);
        const auto n = rec.w_tilde.rows();
        an.max_unitarity_defect =
            std::max(an.max_unitarity_defect,
                     max_abs(rec.w_tilde.adjoint() * rec.w_tilde - CMatrix::Identity(n, n)));
      } else if (an.regular_type) {
        an.regular_type = false;
        an.first_irregular = lambda;
      }
      an.records.push_back(std::move(rec));
    }
  }
  if (an.regular_type) {
    for (double mu : compression_spectrum(rep, bases)) {
      if (!gap.contains(mu) || regular_type_check(rep, bases, mu, tol).invertible) continue;
      an.regular_type = false;
      an.first_irregular = mu;
      break;
    }
  }
  return an;
}

GapVerdict check_gap_class(const CMatrix& f, const CMatrix& xi, const GapAnalysis& an) {
  GapVerdict v;
  if (!an.regular_type) {
    v.failed_condition = "regular";
    v.witness_lambda = an.first_irregular;
    return v;
  }
  const int delta = an.bases.delta();
  if (f.rows() != delta || f.cols() != delta) {
    v.failed_condition = "B";
    return v;
  }
  if (!check_constant_admissible(f, xi, an.tol.inv_tol)) {
    v.failed_condition = "admissibility";
    return v;
  }
  if (max_abs(f.adjoint() * f - CMatrix::Identity(delta, delta)) > an.tol.psd_tol) {
    v.failed_condition = "B";
    return v;
  }
  std::optional<PhaseCounts> prev_counts;
  const GapRecord* prev = nullptr;
  for (const GapRecord& rec : an.records) {
    if (singular_difference(f, rec.w_tilde, an.tol.inv_tol)) {
      v.failed_condition = "C";
      v.witness_lambda = rec.lambda;
      return v;
    }
    const PhaseCounts counts = phase_counts(f, rec.w_tilde);
    if (prev != nullptr && prev->interval == rec.interval) {
      if (auto hit = locate_crossing(f, an, prev->lambda, *prev_counts, rec.lambda, counts, 0)) {
        v.failed_condition = "C";
        v.witness_lambda = *hit;
        return v;
      }
    }
    prev = &rec;
    prev_counts = counts;
  }
  v.accepted = true;
  return v;
}

GapSearchResult gap_solvable_search(const CMatrix& xi, const GapAnalysis& an, int budget,
                                    std::uint64_t seed) {
  GapSearchResult res;
  if (budget < 1) throw InputError("search budget must be positive");
  if (!an.regular_type)
    throw DomainError("gap contains a point that is not of regular type (lambda = " +
                      std::to_string(an.first_irregular.value_or(0.0)) + ")");
  const int delta = an.bases.delta();
  if (delta == 0) throw DomainError("moment problem is determinate; no parameter to search");

  auto accepted = [&](const CMatrix& f) { return check_gap_class(f, xi, an).accepted; };
  auto try_candidate = [&](const CMatrix& f) {
    ++res.candidates_tried;
    try {
      CanonicalSolution sol = canonical_solution(an.rep, an.bases, xi, f, an.tol);
      if (!verify_gap(sol.measure, an.gap, an.tol.gap_tol)) return false;
      res.found = true;
      res.f = f;
      res.measure = std::move(sol.measure);
      return true;
    } catch (const FixedPointError&) {
      return false;
    }
  };

  if (delta == 1) {
    const double step = 2.0 * std::numbers::pi / budget;
    std::vector<char> ok(static_cast<std::size_t>(budget));
    for (int k = 0; k < budget; ++k) ok[k] = accepted(phase_matrix(step * k));
    auto at = [&](long k) { return ok[((k % budget) + budget) % budget] != 0; };
    for (int k = 0; k < budget; ++k) {
      if (!ok[k]) continue;
      if (k > 0 && ok[k - 1]) continue;  // not the start of an arc
      long lo = k;
      long hi = k;
      while (at(lo - 1) && lo - 1 > k - budget) --lo;
      while (at(hi + 1) && hi + 1 < lo + budget) ++hi;
      const bool full = hi - lo + 1 >= budget;
      CMatrix candidate = phase_matrix(0.0);
      if (!full) {
        // Bisect both arc boundaries between an infeasible and a feasible phase.
        double bad = step * (lo - 1), good = step * lo;
        for (int it = 0; it < kArcBisections; ++it) {
          const double mid = 0.5 * (bad + good);
          (accepted(phase_matrix(mid)) ? good : bad) = mid;
        }
        const double theta_lo = good;
        bad = step * (hi + 1);
        good = step * hi;
        for (int it = 0; it < kArcBisections; ++it) {
          const double mid = 0.5 * (bad + good);
          (accepted(phase_matrix(mid)) ? good : bad) = mid;
        }
        candidate = phase_matrix(0.5 * (theta_lo + good));
      }
      if (accepted(candidate) && try_candidate(candidate)) return res;
      if (try_candidate(phase_matrix(step * k))) return res;
      if (full) break;
    }
  } else {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < budget; ++k) {
      const CMatrix f = k == 0 ? CMatrix::Identity(delta, delta) : haar_unitary(delta, rng);
      if (accepted(f) && try_candidate(f)) return res;
    }
  }
  res.note = "no constant-parameter witness found within budget " + std::to_string(budget) +
             "; this does not prove that no solution with the gap exists";
  return res;
}

bool verify_gap(const AtomicMeasure& m, const GapSpec& gap, double tol) {
  for (const Atom& a : m.atoms()) {
    if (a.weight.trace().real() <= tol) continue;
    for (const Interval& iv : gap.intervals()) {
      const double lo = std::isfinite(iv.lo) ? iv.lo + tol * (1.0 + std::abs(iv.lo)) : iv.lo;
      const double hi = std::isfinite(iv.hi) ? iv.hi - tol * (1.0 + std::abs(iv.hi)) : iv.hi;
      if (lo < a.t && a.t < hi) return false;
    }
  }
  return true;
}

nlohmann::json to_json(const GapVerdict& v) {
  nlohmann::json out = {{"accepted", v.accepted}};
  if (!v.failed_condition.empty()) out["failed_condition"] = v.failed_condition;
  if (v.witness_lambda) out["witness_lambda"] = *v.witness_lambda;
  return out;
}

nlohmann::json to_json(const GapAnalysis& a, bool include_records) {
  nlohmann::json out = {{"regular_type", a.regular_type},
                        {"grid_points", a.records.size()},
                        {"max_unitarity_defect", a.max_unitarity_defect}};
  if (a.first_irregular) out["first_irregular_lambda"] = *a.first_irregular;
  if (include_records) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : a.records) {
      nlohmann::json jr = {{"lambda", r.lambda}, {"invertible", r.invertible}};
      if (r.w_tilde.size() > 0) jr["W"] = matrix_to_json(r.w_tilde);
      recs.push_back(std::move(jr));
    }
    out["records"] = std::move(recs);
  }
  return out;
}

}  // namespace mmp
