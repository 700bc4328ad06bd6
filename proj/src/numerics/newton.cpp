#include <cmath>
#include <limits>

#include "nprk/errors.hpp"
#include "nprk/numerics.hpp"

namespace nprk {

RealMatrix fd_jacobian(const ResidualFn& fn, std::span<const double> x) {
  const std::size_t n = x.size();
  const double step =
      std::sqrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, norm_inf(x));
  Vector base(n), shifted(n), xp(x.begin(), x.end());
  fn(x, base);
  RealMatrix jac(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double saved = xp[j];
    xp[j] = saved + step;
    fn(xp, shifted);
    xp[j] = saved;
    for (std::size_t i = 0; i < n; ++i) jac(i, j) = (shifted[i] - base[i]) / step;
  }
  return jac;
}

NewtonResult newton_solve(const ResidualFn& residual, const NewtonUpdateFn& update,
                          std::span<const double> x0, const NewtonOptions& options) {
  NewtonResult out;
  out.x.assign(x0.begin(), x0.end());
  Vector r(out.x.size());
  auto converged = [&](double rnorm) {
    return rnorm <= std::max(options.abs_tol, options.rel_tol * norm2(out.x));
  };
  residual(out.x, r);
  out.residual_norm = norm2(r);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (!std::isfinite(out.residual_norm)) break;
    if (converged(out.residual_norm)) {
      out.iterations = it;
      return out;
    }
    Vector d;
    if (update) {
      d = update(out.x, r);
    } else {
      const RealMatrix jac = fd_jacobian(residual, out.x);
      Vector neg(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
      try {
        d = dense_solve(jac, neg);
      } catch (const SingularMatrix&) {
        throw MaxIterExceeded("newton_solve: singular Jacobian", out.x, out.residual_norm);
      }
    }
    axpy(1.0, d, out.x);
    residual(out.x, r);
    out.residual_norm = norm2(r);
  }
  if (std::isfinite(out.residual_norm) && converged(out.residual_norm)) {
    out.iterations = options.max_iterations;
    return out;
  }
  throw MaxIterExceeded("newton_solve: no convergence after " +
                            std::to_string(options.max_iterations) + " iterations",
                        out.x, out.residual_norm);
}

}  // namespace nprk
