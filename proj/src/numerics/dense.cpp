#include <cmath>
#include <utility>

#include "nprk/errors.hpp"
#include "nprk/numerics.hpp"

namespace nprk {

template <typename T>
LuFactorization<T> lu_factor(DenseMatrix<T> m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("lu_factor: matrix is not square");
  }
  const std::size_t n = m.rows();
  LuFactorization<T> f;
  f.pivots.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        p = i;
      }
    }
    f.pivots[k] = p;
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T l = m(i, k) / m(k, k);
      m(i, k) = l;
      if (l == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  f.lu = std::move(m);
  return f;
}

template <typename T>
std::vector<T> lu_solve(const LuFactorization<T>& f, std::span<const T> rhs) {
  const std::size_t n = f.lu.rows();
  if (rhs.size() != n) throw DimensionMismatch("lu_solve: rhs size mismatch");
  if (f.singular) throw SingularMatrix("lu_solve: matrix is singular");
  std::vector<T> x(rhs.begin(), rhs.end());
  // Row swaps were applied to whole rows, so permute first.
  for (std::size_t k = 0; k < n; ++k) {
    if (f.pivots[k] != k) std::swap(x[k], x[f.pivots[k]]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = k + 1; i < n; ++i) x[i] -= f.lu(i, k) * x[k];
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = k + 1; j < n; ++j) x[k] -= f.lu(k, j) * x[j];
    x[k] /= f.lu(k, k);
  }
  return x;
}

template <typename T>
T determinant(const DenseMatrix<T>& m) {
  const auto f = lu_factor(m);
  if (f.singular) return T{};
  T det = T(static_cast<double>(f.sign));
  for (std::size_t i = 0; i < m.rows(); ++i) det *= f.lu(i, i);
  return det;
}

template LuFactorization<double> lu_factor(RealMatrix);
template LuFactorization<Complex> lu_factor(ComplexMatrix);
template Vector lu_solve(const LuFactorization<double>&, std::span<const double>);
template std::vector<Complex> lu_solve(const LuFactorization<Complex>&,
                                       std::span<const Complex>);
template double determinant(const RealMatrix&);
template Complex determinant(const ComplexMatrix&);

Complex complex_det(const ComplexMatrix& m) { return determinant(m); }

Vector dense_solve(const RealMatrix& m, std::span<const double> rhs) {
  return lu_solve(lu_factor(m), rhs);
}

std::vector<Complex> dense_solve(const ComplexMatrix& m,
                                 std::span<const Complex> rhs) {
  return lu_solve(lu_factor(m), rhs);
}

double norm2(std::span<const double> x) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (double v : x) sum += (v / scale) * (v / scale);
  return scale * std::sqrt(sum);
}

double norm_inf(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) {
    if (std::isnan(v)) return v;
    r = std::max(r, std::abs(v));
  }
  return r;
}

bool all_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace nprk
