#include "nprk/errors.hpp"
#include "nprk/integrator.hpp"

namespace nprk {

Vector imex_step(const NonlinearPartitionProblem& p, const SequentialImexMethod& m,
                 std::span<const double> y, double h, const NewtonOptions& opts,
                 int* iterations) {
  const std::size_t n = p.dim();
  if (y.size() != n) throw DimensionMismatch("imex_step: state size mismatch");
  const int s = m.stages();
  // r[i] = y_n + h sum_{l<i} a_{i,l,l-1} F(Y_l, Y_{l-1}), filled as stages finish.
  std::vector<Vector> r(static_cast<std::size_t>(s) + 1, Vector(y.begin(), y.end()));
  Vector out(y.begin(), y.end());
  Vector y_old(y.begin(), y.end());
  Vector y_new(n), delta(n);
  int total_iterations = 0;
  for (int j = 2; j <= s; ++j) {
    const double a = m.a(j, j);
    Vector& rj = r[static_cast<std::size_t>(j)];
    if (a != 0.0) {
      // delta = h F_E(Y_old); solve Y = rj + a delta + h a F_I(Y, Y_old).
      p.rhs_explicit(y_old, delta);
      for (double& d : delta) d *= h;
      axpy(a, delta, rj);
      int its = 0;
      try {
        y_new = solve_stage_first(p, h * a, y_old, rj, y_old, opts, &its);
      } catch (const MaxIterExceeded& e) {
        throw SolverDiverged(j, e.what());
      } catch (const SingularMatrix& e) {
        throw SolverDiverged(j, e.what());
      }
      total_iterations += its;
      // Recover h F_I(Y_new, Y_old) from the solve instead of applying F_I.
      for (std::size_t q = 0; q < n; ++q) delta[q] += (y_new[q] - rj[q]) / a;
    } else {
      y_new = rj;
      p.rhs(y_new, y_old, delta);
      for (double& d : delta) d *= h;
    }
    for (int i = j + 1; i <= s; ++i) {
      const double c = m.a(i, j);
      if (c != 0.0) axpy(c, delta, r[static_cast<std::size_t>(i)]);
    }
    if (m.w(j) != 0.0) axpy(m.w(j), delta, out);
    std::swap(y_old, y_new);
  }
  if (iterations) *iterations = total_iterations;
  return out;
}

}  // namespace nprk
