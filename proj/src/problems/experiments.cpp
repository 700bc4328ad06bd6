#include <algorithm>
#include <cmath>

#include "nprk/errors.hpp"
#include "nprk/problems.hpp"

namespace nprk {

namespace {

constexpr int kFullScaleN = 1000;
constexpr int kMinExponent = 4;
constexpr int kMaxExponent = 14;
// Viscosity of the partition comparison is not fixed by the experiment
// description; reuse the one of the Euler study.
constexpr double kFig3Epsilon = 1.0 / 200.0;

std::vector<double> dyadic_grid(double t_final) {
  std::vector<double> h;
  for (int k = kMinExponent; k <= kMaxExponent; ++k) h.push_back(t_final / std::ldexp(1.0, k));
  return h;
}

std::shared_ptr<const BurgersProblem> make(double eps, int n, double x0, double x1,
                                           BurgersPartition p) {
  BurgersSpec s;
  s.epsilon = eps;
  s.n = n;
  s.x0 = x0;
  s.x1 = x1;
  s.partition = p;
  return std::make_shared<const BurgersProblem>(s);
}

}  // namespace

std::vector<std::string> burgers_experiment_names() {
  return {"fig1-eps200", "fig1-eps10000", "fig3"};
}

BurgersExperiment burgers_experiment(const std::string& which, int n) {
  if (n == 0) n = kFullScaleN;
  if (n < 3) throw InvalidConfig("burgers_experiment: need at least 3 grid points");
  BurgersExperiment e;
  e.which = which;
  e.reference_method = "IMEX-NPRK3[54]-Sa";
  e.ref_divisor = 32;
  if (which == "fig1-eps200" || which == "fig1-eps10000") {
    const double eps = which == "fig1-eps200" ? 1.0 / 200.0 : 1.0 / 10000.0;
    e.family = MethodFamily::Euler;
    e.methods = {"explicit", "implicit", "rosenbrock", "imex-additive", "nprk"};
    e.t_final = 0.6;
    e.studies.push_back(
        {which, make(eps, n, -2.0, 2.0, BurgersPartition::NonConservative)});
  } else if (which == "fig3") {
    e.family = MethodFamily::Nprk;
    e.methods = {"IMEX-NPRK1[21]",      "IMEX-NPRK2[31]",    "IMEX-NPRK2[42]a",
                 "IMEX-NPRK2[42]b",     "IMEX-NPRK2[43]-SiSa", "IMEX-NPRK3[54]-Sa",
                 "IMEX-NPRK3[54]-Si"};
    e.t_final = 20.0;
    for (auto p : {BurgersPartition::NonConservative, BurgersPartition::Conservative}) {
      e.studies.push_back({"fig3-" + to_string(p), make(kFig3Epsilon, n, -8.0, 8.0, p)});
    }
  } else {
    throw InvalidConfig("unknown burgers experiment '" + which + "'");
  }
  e.h_grid = dyadic_grid(e.t_final);
  return e;
}

std::vector<BurgersResult> run_burgers_experiment(const BurgersExperiment& e) {
  std::vector<NamedMethod> methods;
  for (const auto& name : e.methods) methods.push_back(resolve_method(name));
  const TimeMethod ref_method = find_method(e.reference_method).method;
  const double h_min = *std::min_element(e.h_grid.begin(), e.h_grid.end());
  std::vector<BurgersResult> out;
  for (const auto& study : e.studies) {
    const auto& p = *study.problem;
    const Vector y0 = *p.initial_state();
    const Vector ref = reference_solution(p, ref_method, y0, 0.0, e.t_final, h_min / e.ref_divisor);
    BurgersResult r;
    r.label = study.label;
    r.reference_norm = error_norm(p, ref, Vector(p.dim(), 0.0));
    r.reference = ref;
    r.table = convergence_study(p, methods, y0, 0.0, e.t_final, e.h_grid, ref);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nprk
