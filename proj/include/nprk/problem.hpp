#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "nprk/numerics.hpp"

namespace nprk {

/// y' = F(y, y) with a two-argument right-hand side F(u, v).
///
/// Only `dim` and `rhs` are required. Everything else is a capability the
/// integrators query before use. All methods are const and must not touch
/// shared mutable state, so one instance can serve concurrent runs.
class NonlinearPartitionProblem {
 public:
  virtual ~NonlinearPartitionProblem() = default;

  [[nodiscard]] virtual std::size_t dim() const = 0;
  [[nodiscard]] virtual std::string name() const { return "problem"; }

  /// out = F(u, v)
  virtual void rhs(std::span<const double> u, std::span<const double> v,
                   std::span<double> out) const = 0;

  /// F = F_E(v) + F_I(u, v). Without an explicit split F_E = 0, F_I = F.
  [[nodiscard]] virtual bool has_split() const { return false; }
  virtual void rhs_explicit(std::span<const double> v, std::span<double> out) const;
  virtual void rhs_implicit(std::span<const double> u, std::span<const double> v,
                            std::span<double> out) const;

  /// Y = rhs + tau * F_I(Y, v)
  [[nodiscard]] virtual bool has_first_solver() const { return false; }
  virtual void solve_first(double tau, std::span<const double> v,
                           std::span<const double> rhs, std::span<double> out) const;

  /// Y = rhs + tau * F(u, Y)
  [[nodiscard]] virtual bool has_second_solver() const { return false; }
  virtual void solve_second(double tau, std::span<const double> u,
                            std::span<const double> rhs, std::span<double> out) const;

  /// G(y) = F(y, y) unless overridden.
  virtual void monolithic(std::span<const double> y, std::span<double> out) const;

  /// G = G1 + G2 with G1 treated implicitly.
  [[nodiscard]] virtual bool has_additive() const { return false; }
  virtual void additive_first(std::span<const double> y, std::span<double> out) const;
  virtual void additive_second(std::span<const double> y, std::span<double> out) const;
  /// Y = rhs + tau * G1(Y)
  virtual void solve_additive_first(double tau, std::span<const double> rhs,
                                    std::span<double> out) const;

  /// dG/dy at y.
  [[nodiscard]] virtual bool has_jacobian() const { return false; }
  [[nodiscard]] virtual BandedMatrix jacobian(std::span<const double> y) const;

  [[nodiscard]] virtual bool has_exact_solution() const { return false; }
  [[nodiscard]] virtual Vector exact_solution(double t, std::span<const double> y0,
                                              double t0) const;

  [[nodiscard]] virtual std::optional<Vector> initial_state() const { return std::nullopt; }

  /// Error norm sqrt(weight * sum e_i^2); grid problems use the mesh width.
  [[nodiscard]] virtual double norm_weight() const { return 1.0; }
};

/// Largest dimension for which the generic finite-difference Newton
/// fallback is attempted.
inline constexpr std::size_t kNewtonFallbackMaxDim = 512;

/// Y = rhs + tau * F_I(Y, v) using the problem's solver when available and
/// finite-difference Newton (started from `guess`) otherwise. Throws
/// MissingSolver or MaxIterExceeded. `iterations`, when given, receives the
/// Newton iteration count (1 for a direct solve).
Vector solve_stage_first(const NonlinearPartitionProblem& p, double tau,
                         std::span<const double> v, std::span<const double> rhs,
                         std::span<const double> guess, const NewtonOptions& opts,
                         int* iterations = nullptr);

/// Y = rhs + tau * F(u, Y), same dispatch as solve_stage_first.
Vector solve_stage_second(const NonlinearPartitionProblem& p, double tau,
                          std::span<const double> u, std::span<const double> rhs,
                          std::span<const double> guess, const NewtonOptions& opts,
                          int* iterations = nullptr);

/// Weighted discrete L2 norm of a - b.
double error_norm(const NonlinearPartitionProblem& p, std::span<const double> a,
                  std::span<const double> b);

/// Problem assembled from callables; unset members are missing capabilities.
struct CallbackProblem final : NonlinearPartitionProblem {
  using Rhs = std::function<void(std::span<const double>, std::span<const double>,
                                 std::span<double>)>;
  using Unary = std::function<void(std::span<const double>, std::span<double>)>;
  using Solve = std::function<void(double, std::span<const double>,
                                   std::span<const double>, std::span<double>)>;

  std::size_t n = 1;
  std::string label = "callback";
  Rhs f;
  Unary f_explicit;
  Rhs f_implicit;
  Solve first;
  Solve second;
  std::function<Vector(double, std::span<const double>, double)> exact;

  [[nodiscard]] std::size_t dim() const override { return n; }
  [[nodiscard]] std::string name() const override { return label; }
  void rhs(std::span<const double> u, std::span<const double> v,
           std::span<double> out) const override {
    f(u, v, out);
  }
  [[nodiscard]] bool has_split() const override { return f_explicit && f_implicit; }
  void rhs_explicit(std::span<const double> v, std::span<double> out) const override;
  void rhs_implicit(std::span<const double> u, std::span<const double> v,
                    std::span<double> out) const override;
  [[nodiscard]] bool has_first_solver() const override { return static_cast<bool>(first); }
  void solve_first(double tau, std::span<const double> v, std::span<const double> rhs,
                   std::span<double> out) const override;
  [[nodiscard]] bool has_second_solver() const override {
    return static_cast<bool>(second);
  }
  void solve_second(double tau, std::span<const double> u, std::span<const double> rhs,
                    std::span<double> out) const override;
  [[nodiscard]] bool has_exact_solution() const override { return static_cast<bool>(exact); }
  [[nodiscard]] Vector exact_solution(double t, std::span<const double> y0,
                                      double t0) const override {
    return exact(t, y0, t0);
  }
};

}  // namespace nprk
