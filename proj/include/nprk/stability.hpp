#pragma once

#include <string>
#include <vector>

#include "nprk/numerics.hpp"
#include "nprk/problem.hpp"
#include "nprk/tableau.hpp"

namespace nprk {

/// Two-parameter linear stability data of a method, taken from its
/// underlying additive tableau pair (A1, b1), (A2, b2):
///
///   R(z1, z2) = det(I - z1 A1 - z2 A2 + e (z1 b1 + z2 b2)^T)
///             / det(I - z1 A1 - z2 A2).
struct StabilityModel {
  std::string name;
  int stages = 0;
  RealMatrix A1, A2;
  Vector b1, b2;
  /// numerator(i, j) multiplies z1^i z2^j; zero whenever i + j > stages.
  RealMatrix numerator;
  /// Same layout for the denominator.
  RealMatrix denominator;
  /// A1 lower triangular and A2 strictly lower triangular.
  bool imex = false;
};

StabilityModel build_stability_model(const NprkMethod& m);
StabilityModel build_stability_model(const SequentialImexMethod& m);

/// Direct determinant ratio. Throws PoleEncountered.
Complex stability_value(const StabilityModel& model, Complex z1, Complex z2);

/// Ratio of the stored polynomials; used to cross-check the coefficients.
Complex stability_value_polynomial(const StabilityModel& model, Complex z1, Complex z2);

/// Signed limit of R(z1, eps z1) as |z1| grows, as a polynomial in eps.
struct EpsPolynomial {
  Vector coeffs;  // coeffs[k] multiplies eps^k
  [[nodiscard]] Complex operator()(Complex eps) const;
};

/// Uses the degree q of the denominator in z1 (the number of nonzero
/// diagonal entries of A1). Throws NotImexModel, ZeroDiagonal when q = 0,
/// and DivergentLimit when a numerator term of total degree above q
/// survives.
EpsPolynomial beta_infinity(const StabilityModel& model);

/// gamma(theta) = |beta_inf(e^{i theta})|^2 = sum_n d_n cos(n theta).
struct CosineSeries {
  Vector d;
  [[nodiscard]] double operator()(double theta) const;
};

CosineSeries gamma_series(const StabilityModel& model);
CosineSeries gamma_series(const EpsPolynomial& beta);

struct CoupledStiffResult {
  bool stable = false;
  double max_gamma = 0.0;
  double theta_at_max = 0.0;
};

/// Max of gamma over [0, 2 pi) from 4096 samples refined by golden-section
/// search; stable iff the max is at most 1 + tol. A model whose coupled
/// limit diverges is reported unstable with an infinite max.
CoupledStiffResult coupled_stiff_z2_stable(const StabilityModel& model, double tol = 1e-9);

enum class StiffVariable { Z1, Z2 };

/// Leading coefficients of numerator and denominator in the stiff
/// variable, each a polynomial in the other variable.
struct StiffLimitPolynomials {
  bool divergent = false;
  Vector numerator;
  Vector denominator;
  [[nodiscard]] Complex value(Complex other) const;
};

StiffLimitPolynomials stiff_limit_polynomials(const StabilityModel& model, StiffVariable which);

/// lim R as the stiff variable grows, at a fixed value of the other one.
/// Throws DivergentLimit when the numerator outgrows the denominator.
Complex stiff_limit(const StabilityModel& model, StiffVariable which, Complex other);

struct StiffLimitClass {
  bool divergent = false;
  /// |limit| <= 1 + 1e-10 on the sampled closed left half-plane.
  bool a_stable = false;
  /// Limit numerator vanishes to 1e-12 relative to the denominator.
  bool l_stable = false;
  double max_abs = 0.0;
};

StiffLimitClass classify_stiff_limit(const StabilityModel& model, StiffVariable which);

/// Sample points for classify_stiff_limit: the imaginary axis, the
/// negative real axis and a polar grid of `n` radii by `n` angles covering
/// the closed left half-plane with radii in [1e-3, 1e6].
std::vector<Complex> left_half_plane_samples(int n = 64);

struct GridSpec {
  double re0 = -5.0, re1 = 5.0, im0 = -5.0, im1 = 5.0;
  int n = 101;
  /// Point (i, j) with i along the real axis; endpoints included.
  [[nodiscard]] Complex point(int i, int j) const;
};

enum class SliceKind { Fixed, Wedge };

struct RegionSlice {
  GridSpec grid;
  SliceKind kind = SliceKind::Fixed;
  /// values[i * n + j] belongs to grid.point(i, j); poles give +inf.
  std::vector<double> values;
  [[nodiscard]] double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * grid.n + j];
  }
};

/// max(|R(z1, z2)|, |R(conj z1, z2)|) at every z2 of the grid.
RegionSlice region_slice(const StabilityModel& model, Complex z1, const GridSpec& grid);

/// Default gamma samples: 64 log-spaced points in [1e-3, 1e6].
std::vector<double> default_wedge_samples();

/// max over gamma and both rays gamma e^{+-i theta} of |R(., z2)|, plus the
/// z1 -> infinity limit. A finite sample set, so this under-approximates
/// the supremum over all gamma > 0.
RegionSlice wedge_slice(const StabilityModel& model, double theta, const GridSpec& grid,
                        const std::vector<double>& gammas = default_wedge_samples());

struct LocalDahlquist {
  std::vector<Complex> eigs1;
  std::vector<Complex> eigs2;
};

/// Eigenvalues of dF/du and dF/dv at (y, y) by central differences with
/// step fd_step * max(1, |y_j|). They describe the local dynamics only
/// when the two Jacobians are simultaneously diagonalizable. Throws
/// DimensionTooLarge above 512 unknowns.
LocalDahlquist local_dahlquist(const NonlinearPartitionProblem& problem,
                               std::span<const double> y, double fd_step = 1e-6);

}  // namespace nprk
