#pragma once

// Scalar problems with closed-form or exactly converged stage solves, and
// a directly coded ARK step, shared by the unit and acceptance tests.

#include <cmath>
#include <span>
#include <vector>

#include "nprk/problem.hpp"
#include "nprk/tableau.hpp"

namespace oracle {

using nprk::CallbackProblem;
using nprk::NprkMethod;

// Scalar x - tau g(x) = c by Newton with the analytic derivative, iterated
// to a fixed point in floating point.
template <class G, class DG>
inline double scalar_solve(double tau, double c, G g, DG dg) {
  double x = c;
  for (int it = 0; it < 100; ++it) {
    const double dx = (x - tau * g(x) - c) / (1.0 - tau * dg(x));
    x -= dx;
    if (std::abs(dx) <= 1e-17 * (1.0 + std::abs(x))) break;
  }
  return x;
}

// F(u, v) = -(1 + v^2) u + sin(v), split as F_E(v) = sin(v) and
// F_I(u, v) = -(1 + v^2) u, with the first-argument solve in closed form.
inline CallbackProblem linear_in_first(double c) {
  CallbackProblem p;
  p.label = "scalar-nonlinear";
  p.f = [c](std::span<const double> u, std::span<const double> v, std::span<double> out) {
    out[0] = -(c + v[0] * v[0]) * u[0] + std::sin(v[0]);
  };
  p.f_explicit = [](std::span<const double> v, std::span<double> out) { out[0] = std::sin(v[0]); };
  p.f_implicit = [c](std::span<const double> u, std::span<const double> v,
                     std::span<double> out) { out[0] = -(c + v[0] * v[0]) * u[0]; };
  p.first = [c](double tau, std::span<const double> v, std::span<const double> rhs,
                std::span<double> out) { out[0] = rhs[0] / (1.0 + tau * (c + v[0] * v[0])); };
  return p;
}

// F(u, v) = g1(u) + g2(v) with scalar solvers for both arguments.
inline double g1(double x) { return -x - 0.5 * x * x * x; }
inline double dg1(double x) { return -1.0 - 1.5 * x * x; }
inline double g2(double x) { return 0.5 * std::sin(x) - 0.3 * x; }
inline double dg2(double x) { return 0.5 * std::cos(x) - 0.3; }

inline CallbackProblem additive_problem() {
  CallbackProblem p;
  p.label = "additive";
  p.f = [](std::span<const double> u, std::span<const double> v, std::span<double> out) {
    out[0] = g1(u[0]) + g2(v[0]);
  };
  p.first = [](double tau, std::span<const double> v, std::span<const double> rhs,
               std::span<double> out) { out[0] = scalar_solve(tau, rhs[0] + tau * g2(v[0]), g1, dg1); };
  p.second = [](double tau, std::span<const double> u, std::span<const double> rhs,
                std::span<double> out) { out[0] = scalar_solve(tau, rhs[0] + tau * g1(u[0]), g2, dg2); };
  return p;
}

// ARK step on y' = g1(y) + g2(y) with the underlying tableau pair.
inline double ark_step(const NprkMethod& m, double y, double h) {
  const auto [t1, t2] = nprk::underlying_pair(m);
  const std::size_t s = t1.stages();
  std::vector<double> k1(s), k2(s);
  for (std::size_t i = 0; i < s; ++i) {
    double r = y;
    for (std::size_t j = 0; j < i; ++j) r += h * (t1.A(i, j) * k1[j] + t2.A(i, j) * k2[j]);
    double yi = r;
    if (t1.A(i, i) != 0.0) {
      yi = scalar_solve(h * t1.A(i, i), r, g1, dg1);
    } else if (t2.A(i, i) != 0.0) {
      yi = scalar_solve(h * t2.A(i, i), r, g2, dg2);
    }
    k1[i] = g1(yi);
    k2[i] = g2(yi);
  }
  for (std::size_t j = 0; j < s; ++j) y += h * (t1.b[j] * k1[j] + t2.b[j] * k2[j]);
  return y;
}

}  // namespace oracle
