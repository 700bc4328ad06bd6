#include <algorithm>

#include "nprk/errors.hpp"
#include "nprk/integrator.hpp"

namespace nprk {

namespace {

constexpr std::pair<EulerVariant, const char*> kNames[] = {
    {EulerVariant::Explicit, "explicit"},
    {EulerVariant::Implicit, "implicit"},
    {EulerVariant::Rosenbrock, "rosenbrock"},
    {EulerVariant::ImexAdditive, "imex-additive"},
    {EulerVariant::Nprk, "nprk"},
};

// (I - h J) d = rhs with the problem Jacobian when available.
Vector solve_shifted(const NonlinearPartitionProblem& p, std::span<const double> at, double h,
                     std::span<const double> rhs) {
  const BandedMatrix j = p.jacobian(at);
  const std::size_t n = j.size();
  BandedMatrix m(n, j.lower(), j.upper());
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c0 = r > j.lower() ? r - j.lower() : 0;
    const std::size_t c1 = std::min(n - 1, r + j.upper());
    for (std::size_t c = c0; c <= c1; ++c) m(r, c) = (r == c ? 1.0 : 0.0) - h * j.at(r, c);
  }
  return banded_solve(m, rhs);
}

}  // namespace

std::string to_string(EulerVariant v) {
  for (const auto& [k, name] : kNames) {
    if (k == v) return name;
  }
  return "unknown";
}

EulerVariant euler_variant_from_string(const std::string& name) {
  for (const auto& [k, n] : kNames) {
    if (name == n) return k;
  }
  throw UnknownMethod(name);
}

std::vector<EulerVariant> all_euler_variants() {
  std::vector<EulerVariant> out;
  for (const auto& kv : kNames) out.push_back(kv.first);
  return out;
}

Vector euler_family_step(const NonlinearPartitionProblem& p, EulerVariant v,
                         std::span<const double> y, double h, const NewtonOptions& opts,
                         int* iterations) {
  const std::size_t n = p.dim();
  if (y.size() != n) throw DimensionMismatch("euler_family_step: state size mismatch");
  Vector g(n);
  int its = 0;
  Vector out;
  try {
    switch (v) {
      case EulerVariant::Explicit: {
        p.monolithic(y, g);
        out.assign(y.begin(), y.end());
        axpy(h, g, out);
        break;
      }
      case EulerVariant::Implicit: {
        auto residual = [&](std::span<const double> x, std::span<double> r) {
          p.monolithic(x, r);
          for (std::size_t i = 0; i < n; ++i) r[i] = x[i] - y[i] - h * r[i];
        };
        NewtonUpdateFn update;
        if (p.has_jacobian()) {
          update = [&](std::span<const double> x, std::span<const double> r) {
            Vector neg(r.begin(), r.end());
            for (double& q : neg) q = -q;
            return solve_shifted(p, x, h, neg);
          };
        } else if (n > kNewtonFallbackMaxDim) {
          throw MissingCapability(p.name() + ": implicit Euler needs a Jacobian at this size");
        }
        auto res = newton_solve(residual, update, y, opts);
        its = res.iterations;
        out = std::move(res.x);
        break;
      }
      case EulerVariant::Rosenbrock: {
        if (!p.has_jacobian()) throw MissingCapability(p.name() + ": no Jacobian");
        p.monolithic(y, g);
        for (double& q : g) q *= h;
        out = solve_shifted(p, y, h, g);
        for (std::size_t i = 0; i < n; ++i) out[i] += y[i];
        its = 1;
        break;
      }
      case EulerVariant::ImexAdditive: {
        if (!p.has_additive()) throw MissingCapability(p.name() + ": no additive split");
        p.additive_second(y, g);
        Vector rhs(y.begin(), y.end());
        axpy(h, g, rhs);
        out.resize(n);
        p.solve_additive_first(h, rhs, out);
        its = 1;
        break;
      }
      case EulerVariant::Nprk: {
        Vector rhs(y.begin(), y.end());
        if (p.has_split()) {
          p.rhs_explicit(y, g);
          axpy(h, g, rhs);
        }
        out = solve_stage_first(p, h, y, rhs, y, opts, &its);
        break;
      }
    }
  } catch (const MaxIterExceeded& e) {
    throw SolverDiverged(1, e.what());
  } catch (const SingularMatrix& e) {
    throw SolverDiverged(1, e.what());
  }
  if (iterations) *iterations = its;
  return out;
}

}  // namespace nprk
