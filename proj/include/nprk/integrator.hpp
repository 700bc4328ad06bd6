#pragma once

#include <string>
#include <variant>
#include <vector>

#include "nprk/problem.hpp"
#include "nprk/tableau.hpp"

namespace nprk {

struct StepConfig {
  double h = 0.0;
  int n_steps = 0;
  NewtonOptions newton;
  /// Keep every state; otherwise only the initial and final ones.
  bool record_all = true;
  /// Throws InvalidConfig unless h > 0 is finite and n_steps >= 1.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  /// Total implicit-solve iterations per completed step (1 per direct solve).
  std::vector<int> solve_iterations;
  bool diverged = false;
  /// Step index (1-based) at which divergence was detected.
  int diverged_at = 0;
  std::string failure;
  [[nodiscard]] const Vector& final_state() const { return states.back(); }
};

/// One step of the restricted-ansatz method. Stages are computed in order:
/// explicit, implicit in the first argument (Y = r + h a_{i,i,i-1} F(Y, Y_{i-1}))
/// or implicit in the second (Y = r + h a_{i,i-1,i} F(Y_{i-1}, Y)).
/// Throws NotInAnsatz, MissingSolver and SolverDiverged.
Vector nprk_step(const NonlinearPartitionProblem& p, const NprkMethod& m,
                 std::span<const double> y, double h, const NewtonOptions& opts = {},
                 int* iterations = nullptr);

/// One step of a sequentially coupled method with running stage
/// accumulators, using only F_E and the first-argument solve of F_I.
Vector imex_step(const NonlinearPartitionProblem& p, const SequentialImexMethod& m,
                 std::span<const double> y, double h, const NewtonOptions& opts = {},
                 int* iterations = nullptr);

enum class EulerVariant { Explicit, Implicit, Rosenbrock, ImexAdditive, Nprk };

std::string to_string(EulerVariant v);
EulerVariant euler_variant_from_string(const std::string& name);
std::vector<EulerVariant> all_euler_variants();

/// explicit:      y1 = y + h G(y)
/// implicit:      y1 = y + h G(y1)
/// rosenbrock:    (I - h J(y)) (y1 - y) = h G(y)
/// imex-additive: y1 = y + h G1(y1) + h G2(y)
/// nprk:          y1 = y + h F(y1, y)
/// Throws MissingCapability when the problem lacks what the variant needs.
Vector euler_family_step(const NonlinearPartitionProblem& p, EulerVariant v,
                         std::span<const double> y, double h, const NewtonOptions& opts = {},
                         int* iterations = nullptr);

using TimeMethod = std::variant<NprkMethod, SequentialImexMethod, EulerVariant>;

struct NamedMethod {
  std::string name;
  TimeMethod method;
};

/// Catalog names give the general NPRK stepper, "<name>:imex" the
/// sequential stepper, and Euler variant names the Euler family.
/// Throws UnknownMethod.
NamedMethod resolve_method(const std::string& name);

/// Fixed-step loop. Blow-up (norm above 1e10 times the initial norm, or a
/// non-finite state) and failed implicit solves end the run with the
/// divergence flag set instead of throwing.
Trajectory integrate(const NonlinearPartitionProblem& p, const TimeMethod& method,
                     std::span<const double> y0, double t0, const StepConfig& cfg);

inline constexpr double kBlowUpFactor = 1e10;

struct ConvergenceRow {
  std::string method;
  double h = 0.0;
  double error = 0.0;
  bool diverged = false;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Fitted slope per method over its kFitPoints smallest eligible h, in the
  /// order the methods were given; NaN when fewer than two points qualify.
  std::vector<std::pair<std::string, double>> orders;
  [[nodiscard]] double order_of(const std::string& method) const;
};

/// Points entering the slope fit: not diverged, error above the
/// saturation floor 1e-11 (1 + |y_ref|), and error below 0.1 (1 + |y_ref|).
bool fit_eligible(const ConvergenceRow& row, double reference_norm);

/// The slope is an asymptotic quantity, so only the finest eligible points
/// enter the fit.
inline constexpr std::size_t kFitPoints = 4;

/// Runs every method at every h (concurrently, see NPRK_THREADS) to
/// t_final and compares with `reference` in the problem's error norm.
ConvergenceTable convergence_study(const NonlinearPartitionProblem& p,
                                   const std::vector<NamedMethod>& methods,
                                   std::span<const double> y0, double t0, double t_final,
                                   const std::vector<double>& h_list,
                                   std::span<const double> reference);

/// Final state of `method` run with step t_final / round(t_final / h).
/// Throws NumericalError if the reference run diverges.
Vector reference_solution(const NonlinearPartitionProblem& p, const TimeMethod& method,
                          std::span<const double> y0, double t0, double t_final, double h);

/// Number of steps of size ~h covering [t0, t_final].
int step_count(double t0, double t_final, double h);

}  // namespace nprk
