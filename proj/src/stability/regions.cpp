#include <algorithm>
#include <cmath>
#include <limits>

#include "nprk/errors.hpp"
#include "nprk/stability.hpp"

namespace nprk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double abs_or_inf(const StabilityModel& m, Complex z1, Complex z2) {
  try {
    const double v = std::abs(stability_value(m, z1, z2));
    return std::isnan(v) ? kInf : v;
  } catch (const PoleEncountered&) {
    return kInf;
  }
}

void check_grid(const GridSpec& g) {
  if (g.n < 1) throw InvalidConfig("grid resolution must be positive");
  for (double v : {g.re0, g.re1, g.im0, g.im1}) {
    if (!std::isfinite(v)) throw InvalidConfig("grid bounds must be finite");
  }
}

RegionSlice fill(const GridSpec& grid, SliceKind kind,
                 const std::function<double(Complex)>& value) {
  check_grid(grid);
  RegionSlice s;
  s.grid = grid;
  s.kind = kind;
  const auto n = static_cast<std::size_t>(grid.n);
  s.values.assign(n * n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      s.values[i * n + j] = value(grid.point(static_cast<int>(i), static_cast<int>(j)));
    }
  });
  return s;
}

}  // namespace

Complex GridSpec::point(int i, int j) const {
  auto lerp = [this](double a, double b, int k) {
    return n == 1 ? a : a + (b - a) * static_cast<double>(k) / (n - 1);
  };
  return {lerp(re0, re1, i), lerp(im0, im1, j)};
}

RegionSlice region_slice(const StabilityModel& model, Complex z1, const GridSpec& grid) {
  return fill(grid, SliceKind::Fixed, [&](Complex z2) {
    return std::max(abs_or_inf(model, z1, z2), abs_or_inf(model, std::conj(z1), z2));
  });
}

std::vector<double> default_wedge_samples() {
  std::vector<double> g(64);
  for (int k = 0; k < 64; ++k) g[k] = std::pow(10.0, -3.0 + 9.0 * k / 63.0);
  return g;
}

RegionSlice wedge_slice(const StabilityModel& model, double theta, const GridSpec& grid,
                        const std::vector<double>& gammas) {
  const auto limit = stiff_limit_polynomials(model, StiffVariable::Z1);
  const Complex up = std::polar(1.0, theta), down = std::polar(1.0, -theta);
  return fill(grid, SliceKind::Wedge, [&](Complex z2) {
    double v = limit.divergent ? kInf : std::abs(limit.value(z2));
    if (std::isnan(v)) v = kInf;
    for (double g : gammas) {
      if (v == kInf) break;
      v = std::max({v, abs_or_inf(model, g * up, z2), abs_or_inf(model, g * down, z2)});
    }
    return v;
  });
}

LocalDahlquist local_dahlquist(const NonlinearPartitionProblem& problem,
                               std::span<const double> y, double fd_step) {
  const std::size_t n = problem.dim();
  if (n > kNewtonFallbackMaxDim) {
    throw DimensionTooLarge("local_dahlquist: dimension " + std::to_string(n) +
                            " exceeds 512");
  }
  if (y.size() != n) throw DimensionMismatch("local_dahlquist: state size mismatch");
  RealMatrix ju(n, n), jv(n, n);
  Vector plus(n), minus(n), fp(n), fm(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double h = fd_step * std::max(1.0, std::abs(y[k]));
    for (int which = 0; which < 2; ++which) {
      plus.assign(y.begin(), y.end());
      minus.assign(y.begin(), y.end());
      plus[k] += h;
      minus[k] -= h;
      if (which == 0) {
        problem.rhs(plus, y, fp);
        problem.rhs(minus, y, fm);
      } else {
        problem.rhs(y, plus, fp);
        problem.rhs(y, minus, fm);
      }
      RealMatrix& j = which == 0 ? ju : jv;
      for (std::size_t i = 0; i < n; ++i) j(i, k) = (fp[i] - fm[i]) / (2.0 * h);
    }
  }
  return {eigenvalues(ju), eigenvalues(jv)};
}

}  // namespace nprk
