#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nprk/errors.hpp"
#include "nprk/numerics.hpp"

namespace nprk {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
    : n_(n), lower_(lower), upper_(upper) {
  if (n == 0) throw DimensionMismatch("BandedMatrix: empty matrix");
  if (lower > n - 1 || upper > n - 1) {
    throw DimensionMismatch("BandedMatrix: bandwidth exceeds n - 1");
  }
  band_.assign((lower + upper + 1) * n, 0.0);
}

// Entry (i, j) lives in column j at row offset upper + i - j.
double& BandedMatrix::operator()(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_ || !in_band(i, j)) {
    throw std::out_of_range("BandedMatrix: (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") outside band");
  }
  return band_[j * (lower_ + upper_ + 1) + upper_ + i - j];
}

double BandedMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_ || !in_band(i, j)) return 0.0;
  return band_[j * (lower_ + upper_ + 1) + upper_ + i - j];
}

Vector BandedMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw DimensionMismatch("BandedMatrix::multiply: size mismatch");
  Vector y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > lower_ ? i - lower_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + upper_);
    double sum = 0.0;
    for (std::size_t j = j0; j <= j1; ++j) sum += at(i, j) * x[j];
    y[i] = sum;
  }
  return y;
}

RealMatrix BandedMatrix::to_dense() const {
  RealMatrix d(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) d(i, j) = at(i, j);
  }
  return d;
}

Vector banded_solve(const BandedMatrix& m, std::span<const double> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw DimensionMismatch("banded_solve: rhs size mismatch");
  const std::size_t kl = m.lower();
  // Row swaps can push fill up to kl extra superdiagonals.
  const std::size_t ku = std::min(n - 1, m.upper() + kl);
  const std::size_t width = kl + ku + 1;

  // Row-oriented work storage: row i holds columns [i - kl, i + ku].
  std::vector<double> w(n * width, 0.0);
  auto cell = [&](std::size_t i, std::size_t j) -> double& {
    return w[i * width + (j + kl - i)];
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j0 = i > kl ? i - kl : 0;
    const std::size_t j1 = std::min(n - 1, i + m.upper());
    for (std::size_t j = j0; j <= j1; ++j) cell(i, j) = m.at(i, j);
  }
  Vector x(rhs.begin(), rhs.end());

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t last_row = std::min(n - 1, k + kl);
    std::size_t p = k;
    double best = std::abs(cell(k, k));
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      if (std::abs(cell(i, k)) > best) {
        best = std::abs(cell(i, k));
        p = i;
      }
    }
    if (best == 0.0 || !std::isfinite(best)) {
      throw SingularMatrix("banded_solve: zero pivot in column " + std::to_string(k));
    }
    const std::size_t last_col = std::min(n - 1, k + ku);
    if (p != k) {
      for (std::size_t j = k; j <= last_col; ++j) {
        // Columns beyond a row's stored range are zero in both rows.
        const bool in_k = j <= k + ku;
        const bool in_p = j + kl >= p && j <= p + ku;
        double vk = in_k ? cell(k, j) : 0.0;
        double vp = in_p ? cell(p, j) : 0.0;
        if (in_k) cell(k, j) = vp;
        if (in_p) cell(p, j) = vk;
      }
      std::swap(x[k], x[p]);
    }
    const double pivot = cell(k, k);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double l = cell(i, k) / pivot;
      if (l == 0.0) continue;
      cell(i, k) = 0.0;
      const std::size_t jmax = std::min(last_col, i + ku);
      for (std::size_t j = k + 1; j <= jmax; ++j) cell(i, j) -= l * cell(k, j);
      x[i] -= l * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t last_col = std::min(n - 1, k + ku);
    double sum = x[k];
    for (std::size_t j = k + 1; j <= last_col; ++j) sum -= cell(k, j) * x[j];
    x[k] = sum / cell(k, k);
  }
  return x;
}

Vector tridiagonal_solve(std::span<const double> sub, std::span<const double> diag,
                         std::span<const double> super, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || rhs.size() != n || sub.size() + 1 != n || super.size() + 1 != n) {
    throw DimensionMismatch("tridiagonal_solve: inconsistent diagonal lengths");
  }
  if (n == 1) {
    if (diag[0] == 0.0) throw SingularMatrix("tridiagonal_solve: zero pivot");
    return {rhs[0] / diag[0]};
  }
  BandedMatrix m(n, 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i + 1 < n) {
      m(i, i + 1) = super[i];
      m(i + 1, i) = sub[i];
    }
  }
  return banded_solve(m, rhs);
}

}  // namespace nprk
