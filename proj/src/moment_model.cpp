#include "mmp/moment_model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mmp/errors.hpp"

namespace mmp {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void Tolerances::validate() const {
  for (double v : {hermitian_tol, psd_tol, rank_tol, inv_tol, moment_tol, gap_tol}) {
    if (!(std::isfinite(v) && v > 0.0))
      throw InputError("tolerances must be finite and positive");
  }
}

MomentSequence::MomentSequence(int n, int d, std::vector<CMatrix> moments,
                               const Tolerances& tol)
    : n_(n), d_(d), moments_(std::move(moments)) {
  if (n < 1) throw InputError("N must be a positive integer");
  if (d < 1) throw InputError("d must be a positive integer");
  const auto expected = static_cast<std::size_t>(2 * d + 1);
  if (moments_.size() != expected)
    throw InputError("expected " + std::to_string(expected) +
                     " moment matrices, got " + std::to_string(moments_.size()));
  for (std::size_t k = 0; k < moments_.size(); ++k) {
    CMatrix& s = moments_[k];
    if (s.rows() != n || s.cols() != n)
      throw InputError("moment S_" + std::to_string(k) + " is not " +
                       std::to_string(n) + "x" + std::to_string(n));
    if (!s.allFinite())
      throw InputError("moment S_" + std::to_string(k) + " has non-finite entries");
    const double dev = max_abs(s - s.adjoint());
    if (dev > tol.hermitian_tol * (1.0 + max_abs(s)))
      throw InputError("not Hermitian at n=" + std::to_string(k) +
                       " (max deviation " + format_double(dev) + ")");
    s = hermitian_part(s);
  }
}

MomentSequence MomentSequence::zero(int n, int d) {
  return MomentSequence(n, d,
                        std::vector<CMatrix>(2 * d + 1, CMatrix::Zero(n, n)));
}

AtomicMeasure::AtomicMeasure(int n, std::vector<Atom> atoms, double psd_tol)
    : n_(n) {
  for (auto& a : atoms) {
    if (!std::isfinite(a.t)) throw InputError("atom location is not finite");
    if (a.weight.rows() != n || a.weight.cols() != n)
      throw InputError("atom weight has wrong shape");
    const double scale = 1.0 + max_abs(a.weight);
    if (max_abs(a.weight - a.weight.adjoint()) > psd_tol * scale)
      throw InputError("atom weight is not Hermitian");
    a.weight = hermitian_part(a.weight);
    if (n > 0 && eigh(a.weight).values(0) < -psd_tol * scale)
      throw InputError("atom weight is not positive semidefinite");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.t < b.t; });
  for (auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().t == a.t)
      atoms_.back().weight += a.weight;
    else
      atoms_.push_back(std::move(a));
  }
}

CMatrix AtomicMeasure::moment(int k) const {
  CMatrix s = CMatrix::Zero(n_, n_);
  for (const auto& a : atoms_) s += std::pow(a.t, k) * a.weight;
  return s;
}

CMatrix AtomicMeasure::distribution(double lambda) const {
  CMatrix m = CMatrix::Zero(n_, n_);
  for (const auto& a : atoms_) {
    if (!(a.t < lambda)) break;
    m += a.weight;
  }
  return m;
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

GapSpec::GapSpec(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    const auto& iv = intervals_[k];
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo < iv.hi))
      throw InputError("gap interval needs lo < hi");
    if (k + 1 < intervals_.size() && iv.hi > intervals_[k + 1].lo)
      throw InputError("gap intervals overlap");
  }
}

namespace {

double parse_endpoint(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("bad interval endpoint '" + s + "'");
  }
  if (used != s.size()) throw InputError("bad interval endpoint '" + s + "'");
  return v;
}

}  // namespace

GapSpec GapSpec::parse(std::string_view text) {
  std::vector<Interval> out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw InputError("expected '(' in gap spec");
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw InputError("unterminated interval in gap spec");
    const std::string body(text.substr(pos + 1, close - pos - 1));
    const auto comma = body.find(',');
    if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos)
      throw InputError("interval must be '(lo,hi)'");
    out.push_back({parse_endpoint(body.substr(0, comma)), parse_endpoint(body.substr(comma + 1))});
    pos = close + 1;
    skip_ws();
    if (pos < text.size()) {
      if (text[pos] != ',') throw InputError("expected ',' between intervals");
      ++pos;
      skip_ws();
    }
  }
  return GapSpec(std::move(out));
}

bool GapSpec::contains(double t) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [t](const Interval& iv) { return iv.contains(t); });
}

bool GapSpec::subset_of(const GapSpec& other) const {
  return std::all_of(intervals_.begin(), intervals_.end(), [&](const Interval& a) {
    return std::any_of(other.intervals_.begin(), other.intervals_.end(),
                       [&](const Interval& b) { return b.lo <= a.lo && a.hi <= b.hi; });
  });
}

MomentReport verify_moments(const AtomicMeasure& m, const MomentSequence& ms, double tol) {
  MomentReport r;
  const int count = 2 * ms.order() + 1;
  if (m.matrix_size() != ms.matrix_size() && !m.empty())
    throw InputError("measure and moments have different matrix sizes");
  for (int k = 0; k < count; ++k) {
    CMatrix sk = CMatrix::Zero(ms.matrix_size(), ms.matrix_size());
    for (const auto& a : m.atoms()) sk += std::pow(a.t, k) * a.weight;
    const double dev = max_abs(sk - ms[k]);
    r.deviation.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

json complex_to_json(cplx c) {
  // Adding 0.0 turns -0.0 into +0.0.
  return json::array({c.real() + 0.0, c.imag() + 0.0});
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("complex entries must be numbers or [re, im] pairs");
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return CMatrix(0, 0);
  if (!j[0].is_array()) throw InputError("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError("matrix rows have inconsistent lengths");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

MomentSequence parse_moments(const json& doc, const Tolerances& tol) {
  if (!doc.is_object()) throw InputError("moment document must be a JSON object");
  for (const char* key : {"N", "d", "moments"})
    if (!doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  if (!doc["N"].is_number_integer() || !doc["d"].is_number_integer())
    throw InputError("N and d must be integers");
  const int n = doc["N"].get<int>();
  const int d = doc["d"].get<int>();
  const auto& list = doc["moments"];
  if (!list.is_array()) throw InputError("'moments' must be an array");
  if (n < 1 || d < 1) throw InputError("N and d must be positive");
  if (list.size() != static_cast<std::size_t>(2 * d + 1))
    throw InputError("expected " + std::to_string(2 * d + 1) + " moment matrices, got " +
                     std::to_string(list.size()));
  std::vector<CMatrix> moments;
  for (std::size_t k = 0; k < list.size(); ++k) {
    CMatrix s = matrix_from_json(list[k]);
    if (s.rows() != n || s.cols() != n)
      throw InputError("moment S_" + std::to_string(k) + " is not " + std::to_string(n) + "x" +
                       std::to_string(n));
    moments.push_back(std::move(s));
  }
  return MomentSequence(n, d, std::move(moments), tol);
}

MomentSequence parse_moments(std::istream& in, const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_moments(doc, tol);
}

json to_json(const MomentSequence& ms) {
  json list = json::array();
  for (const auto& s : ms.moments()) list.push_back(matrix_to_json(s));
  return {{"N", ms.matrix_size()}, {"d", ms.order()}, {"moments", std::move(list)}};
}

json to_json(const AtomicMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"t", a.t}, {"W", matrix_to_json(a.weight)}});
  return {{"atoms", std::move(atoms)}};
}

AtomicMeasure measure_from_json(const json& doc, int n, double psd_tol) {
  if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array())
    throw InputError("measure document needs an 'atoms' array");
  std::vector<Atom> atoms;
  for (const auto& a : doc["atoms"]) {
    if (!a.is_object() || !a.contains("t") || !a.contains("W") || !a["t"].is_number())
      throw InputError("each atom needs numeric 't' and matrix 'W'");
    atoms.push_back({a["t"].get<double>(), matrix_from_json(a["W"])});
  }
  return AtomicMeasure(n, std::move(atoms), psd_tol);
}

json to_json(const MomentReport& r) {
  return {{"pass", r.pass}, {"max_deviation", r.max_deviation}, {"deviation", r.deviation}};
}

void write_distribution_csv(std::ostream& out, const AtomicMeasure& m,
                            std::span<const double> lambdas) {
  const int n = m.matrix_size();
  out << "lambda";
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) out << ",m_" << k << '_' << l << "_re,m_" << k << '_' << l << "_im";
  out << '\n';
  const auto old = out.precision(17);
  for (double lambda : lambdas) {
    const CMatrix d = m.distribution(lambda);
    out << lambda;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) out << ',' << d(k, l).real() << ',' << d(k, l).imag();
    out << '\n';
  }
  out.precision(old);
}

std::vector<double> default_distribution_grid(const AtomicMeasure& m) {
  std::vector<double> grid;
  const auto& atoms = m.atoms();
  if (atoms.empty()) return {0.0};
  grid.push_back(atoms.front().t - 1.0);
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    grid.push_back(atoms[j].t);
    if (j + 1 < atoms.size()) grid.push_back(0.5 * (atoms[j].t + atoms[j + 1].t));
  }
  grid.push_back(atoms.back().t + 1.0);
  return grid;
}

}  // namespace mmp
