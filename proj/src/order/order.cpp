#include "nprk/order.hpp"

#include <cmath>

#include "nprk/errors.hpp"

namespace nprk {
namespace {

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector times(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

Vector apply(const RealMatrix& m, const Vector& x) {
  Vector r(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * x[j];
  }
  return r;
}

void require_shared(const PrkPair& p) {
  const auto& b = p.implicit_part.b;
  const auto& bh = p.explicit_part.b;
  if (b.size() != bh.size() || p.implicit_part.A.rows() != p.explicit_part.A.rows()) {
    throw SharedWeightViolation("PRK tableaux have different stage counts");
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (std::abs(b[i] - bh[i]) > 1e-14 * std::max(1.0, std::abs(b[i]))) {
      throw SharedWeightViolation("PRK weights differ at stage " + std::to_string(i + 1));
    }
  }
}

}  // namespace

Residual3 residual3(const PrkPair& p) {
  require_shared(p);
  const auto& b = p.implicit_part.b;
  const auto& c = p.implicit_part.c;
  const auto& ch = p.explicit_part.c;
  const auto& A = p.implicit_part.A;
  const auto& Ah = p.explicit_part.A;
  Residual3 out;
  out.r = {dot(b, times(c, c)) - 1.0 / 3.0,  dot(b, times(c, ch)) - 1.0 / 3.0,
           dot(b, times(ch, ch)) - 1.0 / 3.0, dot(b, apply(A, c)) - 1.0 / 6.0,
           dot(b, apply(A, ch)) - 1.0 / 6.0,  dot(b, apply(Ah, c)) - 1.0 / 6.0,
           dot(b, apply(Ah, ch)) - 1.0 / 6.0};
  double sum = 0.0;
  for (double v : out.r) sum += v * v;
  out.norm2 = std::sqrt(sum);
  return out;
}

OrderReport check_order(const PrkPair& p, int order, double tol) {
  if (order < 1 || order > 3) throw InvalidConfig("order must be 1, 2 or 3");
  require_shared(p);
  const auto& b = p.implicit_part.b;
  OrderReport rep;
  rep.order = order;
  double sum_b = 0.0;
  for (double v : b) sum_b += v;
  rep.conditions.push_back({"b", 1, sum_b - 1.0});
  if (order >= 2) {
    rep.conditions.push_back({"bc", 2, dot(b, p.implicit_part.c) - 0.5});
    rep.conditions.push_back({"bchat", 2, dot(b, p.explicit_part.c) - 0.5});
  }
  if (order >= 3) {
    static const std::array<const char*, 7> ids = {
        "bcc", "bcchat", "bchatchat", "bAc", "bAchat", "bAhatc", "bAhatchat"};
    const auto r3 = residual3(p);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      rep.conditions.push_back({ids[i], 3, r3.r[i]});
    }
  }
  for (const auto& c : rep.conditions) {
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(c.residual));
  }
  rep.satisfied = rep.max_abs_residual <= tol;
  return rep;
}

PairRoute order_pair(const NprkMethod& m) {
  try {
    return {reduced_underlying(to_sequential(m)), "sequential"};
  } catch (const NotInAnsatz&) {
    return {evaluation_pair(m), "evaluation"};
  }
}

VerificationRow verify_method(const CatalogEntry& entry, std::optional<double> tol) {
  VerificationRow row;
  row.name = entry.name();
  row.design_order = entry.design_order;
  row.tol = tol.value_or(entry.order_tol);
  auto [pair, route] = order_pair(entry.method);
  row.route = route;
  row.report = check_order(pair, entry.design_order, row.tol);
  if (entry.design_order == 2) row.residual3 = residual3(pair);
  return row;
}

std::vector<VerificationRow> verify_catalog(std::optional<double> tol) {
  std::vector<VerificationRow> rows;
  for (const auto& e : catalog()) rows.push_back(verify_method(e, tol));
  return rows;
}

}  // namespace nprk
