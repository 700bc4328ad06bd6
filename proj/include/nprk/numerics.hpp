#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nprk {

using Vector = std::vector<double>;
using Complex = std::complex<double>;

/// Row-major dense matrix with 0-based indexing.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T value = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  [[nodiscard]] std::span<T> data() { return data_; }
  [[nodiscard]] std::span<const T> data() const { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<Complex>;

template <typename T>
struct LuFactorization {
  DenseMatrix<T> lu;
  std::vector<std::size_t> pivots;
  int sign = 1;
  bool singular = false;
};

/// Gaussian elimination with partial pivoting. Never throws; a zero pivot
/// marks the factorization singular.
template <typename T>
LuFactorization<T> lu_factor(DenseMatrix<T> m);

/// Throws SingularMatrix when the factorization is singular.
template <typename T>
std::vector<T> lu_solve(const LuFactorization<T>& f, std::span<const T> rhs);

template <typename T>
T determinant(const DenseMatrix<T>& m);

/// Determinant via pivoted LU with tracked row-swap sign; singular input
/// yields exactly zero.
Complex complex_det(const ComplexMatrix& m);

Vector dense_solve(const RealMatrix& m, std::span<const double> rhs);
std::vector<Complex> dense_solve(const ComplexMatrix& m,
                                 std::span<const Complex> rhs);

/// General band matrix. Entries outside [i - lower, i + upper] are
/// structurally zero.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::size_t lower() const { return lower_; }
  [[nodiscard]] std::size_t upper() const { return upper_; }

  [[nodiscard]] bool in_band(std::size_t i, std::size_t j) const {
    return j + lower_ >= i && j <= i + upper_;
  }
  /// Throws std::out_of_range outside the band.
  double& operator()(std::size_t i, std::size_t j);
  /// Zero outside the band.
  [[nodiscard]] double at(std::size_t i, std::size_t j) const;

  [[nodiscard]] Vector multiply(std::span<const double> x) const;
  [[nodiscard]] RealMatrix to_dense() const;

 private:
  std::size_t n_;
  std::size_t lower_;
  std::size_t upper_;
  std::vector<double> band_;  // (lower + upper + 1) x n, column-major
};

/// Banded LU with partial pivoting (fill-in of `lower` extra
/// superdiagonals). Throws SingularMatrix on a zero pivot.
Vector banded_solve(const BandedMatrix& m, std::span<const double> rhs);

/// Fast path for tridiagonal systems given as three diagonals; same
/// pivoting guarantees as banded_solve.
Vector tridiagonal_solve(std::span<const double> sub, std::span<const double> diag,
                         std::span<const double> super, std::span<const double> rhs);

struct NewtonOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_iterations = 50;
};

struct NewtonResult {
  Vector x;
  int iterations = 0;
  double residual_norm = 0.0;
};

using ResidualFn =
    std::function<void(std::span<const double> x, std::span<double> residual)>;
/// Returns the Newton correction d solving J(x) d = -residual.
using NewtonUpdateFn = std::function<Vector(std::span<const double> x,
                                            std::span<const double> residual)>;

/// Plain Newton, no line search. Converged when
/// |residual(x)| <= max(abs_tol, rel_tol |x|). An empty update function
/// selects a dense forward-difference Jacobian.
/// Throws MaxIterExceeded carrying the last iterate.
NewtonResult newton_solve(const ResidualFn& residual, const NewtonUpdateFn& update,
                          std::span<const double> x0,
                          const NewtonOptions& options = {});

/// Forward differences with step sqrt(eps) * max(1, |x|_inf).
RealMatrix fd_jacobian(const ResidualFn& fn, std::span<const double> x);

/// Least-squares slope of log(error) against log(h).
double fit_loglog_slope(std::span<const double> hs, std::span<const double> errors);

/// Eigenvalues of a small dense real matrix.
std::vector<Complex> eigenvalues(const RealMatrix& m);

double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
bool all_finite(std::span<const double> x);
/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

/// Worker count: NPRK_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nprk
