#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nprk/integrator.hpp"
#include "nprk/problem.hpp"

namespace nprk {

/// y' = lambda1 y + lambda2 y with F(u, v) = lambda1 u + lambda2 v.
///
/// Real rates give a scalar state. Complex rates are carried as a real
/// 2-vector (re, im).
class DahlquistProblem final : public NonlinearPartitionProblem {
 public:
  DahlquistProblem(Complex lambda1, Complex lambda2);

  [[nodiscard]] Complex lambda1() const { return l1_; }
  [[nodiscard]] Complex lambda2() const { return l2_; }

  [[nodiscard]] std::size_t dim() const override { return complex_ ? 2 : 1; }
  [[nodiscard]] std::string name() const override { return "dahlquist"; }
  void rhs(std::span<const double> u, std::span<const double> v,
           std::span<double> out) const override;
  [[nodiscard]] bool has_split() const override { return true; }
  void rhs_explicit(std::span<const double> v, std::span<double> out) const override;
  void rhs_implicit(std::span<const double> u, std::span<const double> v,
                    std::span<double> out) const override;
  [[nodiscard]] bool has_first_solver() const override { return true; }
  void solve_first(double tau, std::span<const double> v, std::span<const double> rhs,
                   std::span<double> out) const override;
  [[nodiscard]] bool has_second_solver() const override { return true; }
  void solve_second(double tau, std::span<const double> u, std::span<const double> rhs,
                    std::span<double> out) const override;
  [[nodiscard]] bool has_additive() const override { return true; }
  void additive_first(std::span<const double> y, std::span<double> out) const override;
  void additive_second(std::span<const double> y, std::span<double> out) const override;
  void solve_additive_first(double tau, std::span<const double> rhs,
                            std::span<double> out) const override;
  [[nodiscard]] bool has_jacobian() const override { return true; }
  [[nodiscard]] BandedMatrix jacobian(std::span<const double> y) const override;
  [[nodiscard]] bool has_exact_solution() const override { return true; }
  [[nodiscard]] Vector exact_solution(double t, std::span<const double> y0,
                                      double t0) const override;
  [[nodiscard]] std::optional<Vector> initial_state() const override;

 private:
  Complex l1_, l2_;
  bool complex_;
};

enum class BurgersPartition { NonConservative, Conservative };

std::string to_string(BurgersPartition p);

struct BurgersSpec {
  double epsilon = 1.0 / 200.0;
  int n = 1000;
  double x0 = -2.0;
  double x1 = 2.0;
  BurgersPartition partition = BurgersPartition::NonConservative;

  [[nodiscard]] double hx() const { return (x1 - x0) / (n + 1); }
};

/// Method-of-lines u_t = eps u_xx + u u_x with homogeneous Dirichlet
/// boundaries and centered differences D (second derivative) and A (first).
class BurgersProblem final : public NonlinearPartitionProblem {
 public:
  explicit BurgersProblem(BurgersSpec spec);

  [[nodiscard]] const BurgersSpec& spec() const { return spec_; }
  [[nodiscard]] Vector grid() const;

  [[nodiscard]] std::size_t dim() const override { return static_cast<std::size_t>(spec_.n); }
  [[nodiscard]] std::string name() const override;
  void rhs(std::span<const double> u, std::span<const double> v,
           std::span<double> out) const override;
  [[nodiscard]] bool has_first_solver() const override { return true; }
  void solve_first(double tau, std::span<const double> v, std::span<const double> rhs,
                   std::span<double> out) const override;
  [[nodiscard]] bool has_second_solver() const override { return true; }
  void solve_second(double tau, std::span<const double> u, std::span<const double> rhs,
                    std::span<double> out) const override;
  void monolithic(std::span<const double> y, std::span<double> out) const override;
  [[nodiscard]] bool has_additive() const override { return true; }
  void additive_first(std::span<const double> y, std::span<double> out) const override;
  void additive_second(std::span<const double> y, std::span<double> out) const override;
  void solve_additive_first(double tau, std::span<const double> rhs,
                            std::span<double> out) const override;
  [[nodiscard]] bool has_jacobian() const override { return true; }
  [[nodiscard]] BandedMatrix jacobian(std::span<const double> y) const override;
  [[nodiscard]] std::optional<Vector> initial_state() const override;
  [[nodiscard]] double norm_weight() const override { return spec_.hx(); }

  /// Tridiagonal D and A as banded matrices, for checks and linearization.
  [[nodiscard]] BandedMatrix diffusion_matrix() const;
  [[nodiscard]] BandedMatrix advection_matrix() const;

 private:
  void apply_d(std::span<const double> y, std::span<double> out) const;
  void apply_a(std::span<const double> y, std::span<double> out) const;

  BurgersSpec spec_;
  double d_;  // 1 / hx^2
  double a_;  // 1 / (2 hx)
};

/// A Burgers convergence study: one sub-study per problem (partition or
/// viscosity), each run with every listed method on the h grid.
struct BurgersSubStudy {
  std::string label;
  std::shared_ptr<const BurgersProblem> problem;
};

enum class MethodFamily { Euler, Nprk };

struct BurgersExperiment {
  std::string which;
  std::vector<BurgersSubStudy> studies;
  MethodFamily family;
  /// Catalog names, or Euler variant names for the Euler family.
  std::vector<std::string> methods;
  double t_final;
  std::vector<double> h_grid;
  /// Reference is computed with this catalog method at h_min / ref_divisor.
  std::string reference_method;
  int ref_divisor;
};

/// Preconfigured studies. `n` overrides the grid size (0 keeps the
/// full-scale default of 1000).
BurgersExperiment burgers_experiment(const std::string& which, int n = 0);

std::vector<std::string> burgers_experiment_names();

struct BurgersResult {
  std::string label;
  ConvergenceTable table;
  /// Weighted L2 norm of the reference state.
  double reference_norm = 0.0;
  /// Reference state at t_final the errors are measured against.
  Vector reference;
};

/// Per sub-study: reference with the reference method at h_min / divisor on
/// that sub-study's own problem, then every method at every h.
std::vector<BurgersResult> run_burgers_experiment(const BurgersExperiment& e);

}  // namespace nprk
