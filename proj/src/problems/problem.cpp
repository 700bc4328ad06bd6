#include "nprk/problem.hpp"

#include <algorithm>
#include <cmath>

#include "nprk/errors.hpp"

namespace nprk {

void NonlinearPartitionProblem::rhs_explicit(std::span<const double>,
                                             std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
}

void NonlinearPartitionProblem::rhs_implicit(std::span<const double> u,
                                             std::span<const double> v,
                                             std::span<double> out) const {
  rhs(u, v, out);
}

void NonlinearPartitionProblem::solve_first(double, std::span<const double>,
                                            std::span<const double>,
                                            std::span<double>) const {
  throw MissingSolver(name() + ": no solver for the first argument");
}

void NonlinearPartitionProblem::solve_second(double, std::span<const double>,
                                             std::span<const double>,
                                             std::span<double>) const {
  throw MissingSolver(name() + ": no solver for the second argument");
}

void NonlinearPartitionProblem::monolithic(std::span<const double> y,
                                           std::span<double> out) const {
  rhs(y, y, out);
}

void NonlinearPartitionProblem::additive_first(std::span<const double>,
                                               std::span<double>) const {
  throw MissingCapability(name() + ": no additive split");
}

void NonlinearPartitionProblem::additive_second(std::span<const double>,
                                                std::span<double>) const {
  throw MissingCapability(name() + ": no additive split");
}

void NonlinearPartitionProblem::solve_additive_first(double, std::span<const double>,
                                                     std::span<double>) const {
  throw MissingCapability(name() + ": no additive split");
}

BandedMatrix NonlinearPartitionProblem::jacobian(std::span<const double>) const {
  throw MissingCapability(name() + ": no Jacobian");
}

Vector NonlinearPartitionProblem::exact_solution(double, std::span<const double>,
                                                 double) const {
  throw MissingCapability(name() + ": no exact solution");
}

namespace {

Vector newton_stage(const NonlinearPartitionProblem& p, double tau,
                    std::span<const double> rhs, std::span<const double> guess,
                    const NewtonOptions& opts,
                    const std::function<void(std::span<const double>, std::span<double>)>& g,
                    const char* which, int* iterations) {
  if (p.dim() > kNewtonFallbackMaxDim) {
    throw MissingSolver(p.name() + ": no " + which +
                        "-argument solver and dimension too large for dense Newton");
  }
  Vector work(p.dim());
  auto residual = [&](std::span<const double> y, std::span<double> r) {
    g(y, work);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = y[i] - rhs[i] - tau * work[i];
  };
  auto result = newton_solve(residual, {}, guess, opts);
  if (iterations) *iterations = result.iterations;
  return std::move(result.x);
}

}  // namespace

Vector solve_stage_first(const NonlinearPartitionProblem& p, double tau,
                         std::span<const double> v, std::span<const double> rhs,
                         std::span<const double> guess, const NewtonOptions& opts,
                         int* iterations) {
  if (p.has_first_solver()) {
    if (iterations) *iterations = 1;
    Vector out(p.dim());
    p.solve_first(tau, v, rhs, out);
    return out;
  }
  return newton_stage(
      p, tau, rhs, guess, opts,
      [&](std::span<const double> y, std::span<double> out) { p.rhs_implicit(y, v, out); },
      "first", iterations);
}

Vector solve_stage_second(const NonlinearPartitionProblem& p, double tau,
                          std::span<const double> u, std::span<const double> rhs,
                          std::span<const double> guess, const NewtonOptions& opts,
                         int* iterations) {
  if (p.has_second_solver()) {
    if (iterations) *iterations = 1;
    Vector out(p.dim());
    p.solve_second(tau, u, rhs, out);
    return out;
  }
  return newton_stage(
      p, tau, rhs, guess, opts,
      [&](std::span<const double> y, std::span<double> out) { p.rhs(u, y, out); },
      "second", iterations);
}

double error_norm(const NonlinearPartitionProblem& p, std::span<const double> a,
                  std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("error_norm: size mismatch");
  Vector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return std::sqrt(p.norm_weight()) * norm2(d);
}

void CallbackProblem::rhs_explicit(std::span<const double> v, std::span<double> out) const {
  if (f_explicit) {
    f_explicit(v, out);
  } else {
    NonlinearPartitionProblem::rhs_explicit(v, out);
  }
}

void CallbackProblem::rhs_implicit(std::span<const double> u, std::span<const double> v,
                                   std::span<double> out) const {
  if (f_implicit) {
    f_implicit(u, v, out);
  } else {
    NonlinearPartitionProblem::rhs_implicit(u, v, out);
  }
}

void CallbackProblem::solve_first(double tau, std::span<const double> v,
                                  std::span<const double> rhs,
                                  std::span<double> out) const {
  if (!first) NonlinearPartitionProblem::solve_first(tau, v, rhs, out);
  first(tau, v, rhs, out);
}

void CallbackProblem::solve_second(double tau, std::span<const double> u,
                                   std::span<const double> rhs,
                                   std::span<double> out) const {
  if (!second) NonlinearPartitionProblem::solve_second(tau, u, rhs, out);
  second(tau, u, rhs, out);
}

}  // namespace nprk
