#include <cmath>

#include <Eigen/Eigenvalues>

#include "nprk/errors.hpp"
#include "nprk/numerics.hpp"

namespace nprk {

double fit_loglog_slope(std::span<const double> hs, std::span<const double> errors) {
  if (hs.size() != errors.size()) {
    throw DimensionMismatch("fit_loglog_slope: h and error lengths differ");
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs[i] > 0.0 && errors[i] > 0.0 && std::isfinite(errors[i])) {
      lx.push_back(std::log(hs[i]));
      ly.push_back(std::log(errors[i]));
    }
  }
  if (lx.size() < 2) {
    throw InsufficientData("fit_loglog_slope: need at least two positive points");
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("fit_loglog_slope: all h values equal");
  return sxy / sxx;
}

std::vector<Complex> eigenvalues(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eigenvalues: matrix is not square");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(i, j);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(e, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalues: QR iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = ev(i);
  return out;
}

}  // namespace nprk
