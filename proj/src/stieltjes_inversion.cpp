#include <algorithm>
#include <cmath>
#include <numbers>

#include "mmp/errors.hpp"
#include "mmp/nevanlinna.hpp"

namespace mmp {

namespace {

CMatrix imaginary_part(const CMatrix& t) { return (t - t.adjoint()) / (2.0 * kI); }

// Cumulative (1/pi) int_{grid[0]}^{grid[k]} Im T(x + i eps) dx.
std::vector<CMatrix> cumulative(const std::function<CMatrix(cplx)>& transform,
                                std::span<const double> grid, double eps) {
  std::vector<CMatrix> out;
  out.reserve(grid.size());
  CMatrix prev = imaginary_part(transform({grid[0], eps}));
  CMatrix acc = CMatrix::Zero(prev.rows(), prev.cols());
  out.push_back(acc);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double a = grid[k];
    const double b = grid[k + 1];
    const auto steps = static_cast<long>(std::max(1.0, std::ceil((b - a) / (0.5 * eps))));
    const double h = (b - a) / static_cast<double>(steps);
    for (long s = 1; s <= steps; ++s) {
      const double x = s == steps ? b : a + h * static_cast<double>(s);
      CMatrix cur = imaginary_part(transform({x, eps}));
      acc += (0.5 * h / std::numbers::pi) * (prev + cur);
      prev = std::move(cur);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace

InversionResult invert_transform(const std::function<CMatrix(cplx)>& transform,
                                 std::span<const double> grid,
                                 std::span<const double> eps_schedule) {
  if (grid.size() < 2) throw InputError("inversion grid needs at least two points");
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    if (!(grid[k] < grid[k + 1])) throw InputError("inversion grid must be strictly increasing");
  if (eps_schedule.empty()) throw InputError("empty epsilon schedule");
  for (double e : eps_schedule)
    if (!(e > 0.0)) throw InputError("epsilon must be positive");

  std::vector<std::vector<CMatrix>> runs;
  for (double e : eps_schedule) runs.push_back(cumulative(transform, grid, e));

  // Polynomial extrapolation in eps to eps = 0 (Richardson).
  const std::size_t m = eps_schedule.size();
  std::vector<double> weight(m, 1.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) weight[i] *= eps_schedule[j] / (eps_schedule[j] - eps_schedule[i]);

  InversionResult res;
  res.grid.assign(grid.begin(), grid.end());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    CMatrix value = CMatrix::Zero(runs[0][g].rows(), runs[0][g].cols());
    for (std::size_t i = 0; i < m; ++i) value += weight[i] * runs[i][g];
    res.distribution.push_back(hermitian_part(value).transpose());
  }
  for (const auto& run : runs) res.raw_mass.push_back(hermitian_part(run.back()).transpose());

  if (m >= 3) {
    std::vector<double> trace;
    for (const auto& mass : res.raw_mass) trace.push_back(mass.trace().real());
    bool up = true;
    bool down = true;
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
      up = up && trace[i + 1] >= trace[i];
      down = down && trace[i + 1] <= trace[i];
    }
    res.non_monotone = !(up || down);
  }
  return res;
}

}  // namespace mmp
