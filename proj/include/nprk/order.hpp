#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nprk/tableau.hpp"

namespace nprk {

struct ConditionResidual {
  std::string id;  // e.g. "bAhatc" for sum b_i ahat_ij c_j - 1/6
  int order = 0;
  double residual = 0.0;
};

struct OrderReport {
  int order = 0;
  std::vector<ConditionResidual> conditions;
  bool satisfied = false;
  double max_abs_residual = 0.0;
};

/// The seven order-three residuals: bcc, bc chat, bchat chat, bAc, bA chat,
/// bAhat c, bAhat chat.
struct Residual3 {
  std::array<double, 7> r{};
  double norm2 = 0.0;
};

/// Evaluates 1, 2 and 7 conditions at orders 1, 2 and 3 respectively, up to
/// `order`. Throws SharedWeightViolation when the weights differ.
OrderReport check_order(const PrkPair& p, int order, double tol);

Residual3 residual3(const PrkPair& p);

/// Order-condition substrate of a catalog method: the reduced pair of its
/// sequential form, or the evaluation pair when the method is implicit in
/// the second argument.
struct PairRoute {
  PrkPair pair;
  std::string route;  // "sequential" or "evaluation"
};
PairRoute order_pair(const NprkMethod& m);

struct VerificationRow {
  std::string name;
  int design_order = 0;
  OrderReport report;
  std::optional<Residual3> residual3;
  std::string route;
  double tol = 0.0;
};

/// Checks every catalog method at its design order. `tol` overrides the
/// per-method default tolerance when given.
std::vector<VerificationRow> verify_catalog(std::optional<double> tol = std::nullopt);
VerificationRow verify_method(const CatalogEntry& entry, std::optional<double> tol);

}  // namespace nprk
