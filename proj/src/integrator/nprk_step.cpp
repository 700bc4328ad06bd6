#include <optional>

#include "nprk/errors.hpp"
#include "nprk/integrator.hpp"

namespace nprk {

Vector nprk_step(const NonlinearPartitionProblem& p, const NprkMethod& m,
                 std::span<const double> y, double h, const NewtonOptions& opts,
                 int* iterations) {
  if (!m.in_restricted_ansatz()) {
    throw NotInAnsatz(m.name() + ": not in the restricted diagonally-implicit ansatz");
  }
  const std::size_t n = p.dim();
  if (y.size() != n) throw DimensionMismatch("nprk_step: state size mismatch");
  const int s = m.stages();
  std::vector<Vector> stage(static_cast<std::size_t>(s));
  // F(Y_j, Y_k), evaluated at most once per step.
  std::vector<std::optional<Vector>> evals(static_cast<std::size_t>(s * s));
  auto eval = [&](int j, int k) -> const Vector& {
    auto& slot = evals[static_cast<std::size_t>((j - 1) * s + (k - 1))];
    if (!slot) {
      slot.emplace(n);
      p.rhs(stage[j - 1], stage[k - 1], *slot);
    }
    return *slot;
  };
  int total_iterations = 0;
  const auto& entries = m.entries();
  std::size_t next = 0;
  for (int i = 1; i <= s; ++i) {
    Vector r(y.begin(), y.end());
    for (; next < entries.size() && entries[next].i == i; ++next) {
      const auto& e = entries[next];
      if (e.j >= i || e.k >= i) continue;  // the implicit coefficient, handled below
      axpy(h * e.value, eval(e.j, e.k), r);
    }
    const StageKind kind = i == 1 ? StageKind::Explicit : m.stage_kind(i);
    try {
      int its = 0;
      if (kind == StageKind::Explicit) {
        stage[i - 1] = std::move(r);
      } else if (kind == StageKind::ImplicitFirst) {
        const double tau = h * m.a(i, i, i - 1);
        const Vector& v = stage[i - 2];
        if (p.has_split()) {
          Vector fe(n);
          p.rhs_explicit(v, fe);
          axpy(tau, fe, r);
        }
        stage[i - 1] = solve_stage_first(p, tau, v, r, v, opts, &its);
      } else {
        const double tau = h * m.a(i, i - 1, i);
        const Vector& u = stage[i - 2];
        stage[i - 1] = solve_stage_second(p, tau, u, r, u, opts, &its);
      }
      total_iterations += its;
    } catch (const MaxIterExceeded& e) {
      throw SolverDiverged(i, e.what());
    } catch (const SingularMatrix& e) {
      throw SolverDiverged(i, e.what());
    }
  }
  Vector out(y.begin(), y.end());
  const RealMatrix& b = m.weights();
  for (int j = 1; j <= s; ++j) {
    for (int k = 1; k <= s; ++k) {
      const double w = b(j - 1, k - 1);
      if (w != 0.0) axpy(h * w, eval(j, k), out);
    }
  }
  if (iterations) *iterations = total_iterations;
  return out;
}

}  // namespace nprk
