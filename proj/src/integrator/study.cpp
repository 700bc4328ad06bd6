#include <algorithm>
#include <cmath>
#include <limits>

#include "nprk/errors.hpp"
#include "nprk/integrator.hpp"

namespace nprk {

double ConvergenceTable::order_of(const std::string& method) const {
  for (const auto& [name, slope] : orders) {
    if (name == method) return slope;
  }
  throw UnknownMethod(method);
}

bool fit_eligible(const ConvergenceRow& row, double reference_norm) {
  const double scale = 1.0 + reference_norm;
  return !row.diverged && std::isfinite(row.error) && row.error > 1e-11 * scale &&
         row.error < 0.1 * scale;
}

ConvergenceTable convergence_study(const NonlinearPartitionProblem& p,
                                   const std::vector<NamedMethod>& methods,
                                   std::span<const double> y0, double t0, double t_final,
                                   const std::vector<double>& h_list,
                                   std::span<const double> reference) {
  if (reference.size() != p.dim()) throw DimensionMismatch("reference size mismatch");
  ConvergenceTable table;
  const std::size_t nh = h_list.size();
  table.rows.resize(methods.size() * nh);
  parallel_for(table.rows.size(), [&](std::size_t idx) {
    const auto& m = methods[idx / nh];
    StepConfig cfg;
    cfg.n_steps = step_count(t0, t_final, h_list[idx % nh]);
    cfg.h = (t_final - t0) / cfg.n_steps;
    cfg.record_all = false;
    const Trajectory t = integrate(p, m.method, y0, t0, cfg);
    ConvergenceRow& row = table.rows[idx];
    row.method = m.name;
    row.h = cfg.h;
    row.diverged = t.diverged;
    row.error = t.diverged ? std::numeric_limits<double>::infinity()
                           : error_norm(p, t.final_state(), reference);
  });
  const Vector zero(p.dim(), 0.0);
  const double ref_norm = error_norm(p, reference, zero);
  for (std::size_t k = 0; k < methods.size(); ++k) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t j = 0; j < nh; ++j) {
      const auto& row = table.rows[k * nh + j];
      if (fit_eligible(row, ref_norm)) pts.emplace_back(row.h, row.error);
    }
    std::sort(pts.begin(), pts.end());
    if (pts.size() > kFitPoints) pts.resize(kFitPoints);
    std::vector<double> hs, errs;
    for (const auto& [h, e] : pts) {
      hs.push_back(h);
      errs.push_back(e);
    }
    const double slope =
        hs.size() >= 2 ? fit_loglog_slope(hs, errs) : std::numeric_limits<double>::quiet_NaN();
    table.orders.emplace_back(methods[k].name, slope);
  }
  return table;
}

}  // namespace nprk
