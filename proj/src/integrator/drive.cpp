#include <cmath>

#include "nprk/errors.hpp"
#include "nprk/integrator.hpp"

namespace nprk {

void StepConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidConfig("step size must be positive and finite");
  if (n_steps < 1) throw InvalidConfig("at least one step is required");
}

NamedMethod resolve_method(const std::string& name) {
  constexpr std::string_view suffix = ":imex";
  if (name.size() > suffix.size() && name.ends_with(suffix)) {
    const auto& e = find_method(name.substr(0, name.size() - suffix.size()));
    if (!e.sequential) throw UnknownMethod(name);
    return {name, *e.sequential};
  }
  for (EulerVariant v : all_euler_variants()) {
    if (name == to_string(v)) return {name, v};
  }
  return {name, find_method(name).method};
}

namespace {

Vector step_once(const NonlinearPartitionProblem& p, const TimeMethod& method,
                 std::span<const double> y, double h, const NewtonOptions& opts, int& its) {
  return std::visit(
      [&](const auto& m) -> Vector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NprkMethod>) {
          return nprk_step(p, m, y, h, opts, &its);
        } else if constexpr (std::is_same_v<T, SequentialImexMethod>) {
          return imex_step(p, m, y, h, opts, &its);
        } else {
          return euler_family_step(p, m, y, h, opts, &its);
        }
      },
      method);
}

}  // namespace

Trajectory integrate(const NonlinearPartitionProblem& p, const TimeMethod& method,
                     std::span<const double> y0, double t0, const StepConfig& cfg) {
  cfg.validate();
  if (y0.size() != p.dim()) throw DimensionMismatch("integrate: initial state size mismatch");
  Trajectory traj;
  traj.times.push_back(t0);
  traj.states.emplace_back(y0.begin(), y0.end());
  const double norm0 = norm2(y0);
  const double limit = kBlowUpFactor * (norm0 > 0.0 ? norm0 : 1.0);
  Vector y(y0.begin(), y0.end());
  for (int k = 1; k <= cfg.n_steps; ++k) {
    int its = 0;
    try {
      y = step_once(p, method, y, cfg.h, cfg.newton, its);
    } catch (const NumericalError& e) {
      traj.diverged = true;
      traj.diverged_at = k;
      traj.failure = e.what();
      break;
    }
    traj.solve_iterations.push_back(its);
    const bool blown = !all_finite(y) || norm2(y) > limit;
    if (cfg.record_all || k == cfg.n_steps || blown) {
      traj.times.push_back(t0 + k * cfg.h);
      traj.states.push_back(y);
    }
    if (blown) {
      traj.diverged = true;
      traj.diverged_at = k;
      traj.failure = "state norm exceeded the blow-up threshold";
      break;
    }
  }
  return traj;
}

int step_count(double t0, double t_final, double h) {
  if (!(h > 0.0) || !(t_final > t0)) throw InvalidConfig("step_count: need h > 0 and t_final > t0");
  return std::max(1, static_cast<int>(std::lround((t_final - t0) / h)));
}

Vector reference_solution(const NonlinearPartitionProblem& p, const TimeMethod& method,
                          std::span<const double> y0, double t0, double t_final, double h) {
  StepConfig cfg;
  cfg.n_steps = step_count(t0, t_final, h);
  cfg.h = (t_final - t0) / cfg.n_steps;
  cfg.record_all = false;
  const Trajectory t = integrate(p, method, y0, t0, cfg);
  if (t.diverged) throw NumericalError("reference run diverged: " + t.failure);
  return t.final_state();
}

}  // namespace nprk
