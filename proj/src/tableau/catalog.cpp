#include <cmath>

#include "nprk/errors.hpp"
#include "nprk/tableau.hpp"

namespace nprk {
namespace {

// Builds a sequential method from rows of the two-dimensional tableau:
// rows[i-2] = (a_{i,2,1}, ..., a_{i,i,i-1}) for i = 2..s, and the weights
// (b_{21}, ..., b_{s,s-1}).
SequentialImexMethod sequential(const std::string& name,
                                const std::vector<std::vector<double>>& rows,
                                const std::vector<double>& weights) {
  const std::size_t s = rows.size() + 1;
  RealMatrix a(s, s);
  Vector w(s, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t i = r + 2;
    if (rows[r].size() != i - 1) throw InvalidMethod(name + ": malformed catalog row");
    for (std::size_t c = 0; c < rows[r].size(); ++c) a(i - 1, c + 1) = rows[r][c];
  }
  for (std::size_t c = 0; c < weights.size(); ++c) w[c + 1] = weights[c];
  return SequentialImexMethod(name, static_cast<int>(s), std::move(a), std::move(w));
}

CatalogEntry imex_entry(const SequentialImexMethod& m, int order, bool stiffly_accurate,
                        bool singly_implicit, std::optional<bool> z2_stable,
                        bool l_stable, double tol = 1e-12) {
  CatalogEntry e{m.to_nprk(), m, order, m.implicit_solves(), stiffly_accurate,
                 singly_implicit, z2_stable, l_stable, tol};
  e.method = NprkMethod(m.name(), m.stages(), e.method.entries(), e.method.weights(),
                        SparsityClass::ImexFirstImplicit);
  return e;
}

NprkMethod imim(const std::string& name, int s, std::vector<TensorEntry> a,
                const std::vector<std::tuple<int, int, double>>& b) {
  RealMatrix w(static_cast<std::size_t>(s), static_cast<std::size_t>(s));
  for (const auto& [j, k, v] : b) w(j - 1, k - 1) = v;
  return NprkMethod(name, s, std::move(a), std::move(w), SparsityClass::ImimDiag);
}

CatalogEntry imim_entry(NprkMethod m) {
  const int solves = [&] {
    int n = 0;
    for (int i = 1; i <= m.stages(); ++i) n += m.stage_kind(i) != StageKind::Explicit;
    return n;
  }();
  return CatalogEntry{std::move(m), std::nullopt, 2, solves, false, true,
                      std::nullopt, false, 1e-12};
}

// Singly-implicit four-stage family with free weights b32, b43.
SequentialImexMethod nprk243_si() {
  const double g = 0.553658;
  const double b32 = -0.0054849;
  const double b43 = 0.237378;
  const double q = 2.0 * g * (b32 + b43) - 1.0;
  const double a321 = (1.0 - 2.0 * g * (b32 + b43)) / (2.0 * b43);
  const double a432 = g * (-2.0 * (g - 2.0) * g - 1.0) / q;
  const double a421 = 0.5 * (b32 * (2.0 * b32 * g - 1.0) / (b43 * b43) +
                             (2.0 * (b32 - 1.0) * g + 1.0) / b43 +
                             2.0 * g * (2.0 * (g - 2.0) * g + 1.0) / q);
  const double b21 = 1.0 - b32 - b43;
  return sequential("IMEX-NPRK2[43]-Si", {{g}, {a321, g}, {a421, a432, g}},
                    {b21, b32, b43});
}

// Singly-implicit, stiffly accurate four-stage families; `branch` selects
// the sign of the square root.
SequentialImexMethod nprk243_sisa(const std::string& name, double g, double branch) {
  const double f = branch * std::sqrt(1.0 - 4.0 * g * g * (g * (3.0 * g - 8.0) + 3.0));
  const double a321 = (1.0 - 2.0 * g * g + f) / (4.0 * g);
  const double a421 = (-1.0 + 4.0 * g - 2.0 * g * g + f) / (4.0 * g);
  const double a432 = (1.0 - 2.0 * g * g - f) / (4.0 * g);
  return sequential(name, {{g}, {a321, g}, {a421, a432, g}}, {a421, a432, g});
}

std::vector<CatalogEntry> build_catalog() {
  const double r2 = std::sqrt(2.0);
  const double ir2 = 1.0 / r2;
  std::vector<CatalogEntry> out;

  out.push_back(imex_entry(sequential("IMEX-NPRK1[21]", {{1.0}}, {1.0}), 1, true,
                           true, true, true));

  out.push_back(imex_entry(
      sequential("IMEX-NPRK2[31]", {{0.5}, {0.5, 0.0}}, {0.0, 1.0}), 2, false, true,
      false, false));

  for (double sgn : {1.0, -1.0}) {
    const double g = 1.0 + sgn * ir2;
    out.push_back(imex_entry(
        sequential(sgn > 0 ? "IMEX-NPRK2[32]a" : "IMEX-NPRK2[32]b",
                   {{g}, {-2.0 - sgn * 3.0 * ir2, g}}, {sgn * ir2, 1.0 - sgn * ir2}),
        2, false, true, sgn > 0, true));
  }

  for (double sgn : {1.0, -1.0}) {
    const double g = 1.0 + sgn * ir2;
    out.push_back(imex_entry(
        sequential(sgn > 0 ? "IMEX-NPRK2[42]a" : "IMEX-NPRK2[42]b",
                   {{g}, {(26.0 - sgn * 3.0 * r2) / 42.0, 0.0},
                    {(-20.0 - sgn * 23.0 * r2) / 42.0, 0.0, g}},
                   {(16.0 - sgn * 9.0 * r2) / 94.0, 0.0, (78.0 + sgn * 9.0 * r2) / 94.0}),
        2, false, false, sgn > 0, true));
  }

  out.push_back(imex_entry(nprk243_si(), 2, false, true, std::nullopt, true));
  out.push_back(imex_entry(nprk243_sisa("IMEX-NPRK2[43]-SiSa", 0.386585, 1.0), 2,
                           true, true, true, true));
  out.push_back(imex_entry(nprk243_sisa("IMEX-NPRK2[43]b-SiSa", 0.325754, -1.0), 2,
                           true, true, true, true));

  out.push_back(imex_entry(
      sequential("IMEX-NPRK3[54]-Sa",
                 {{1.0},
                  {-2.0 / 3.0, 2.0 / 3.0},
                  {5.0 / 12.0, -5.0 / 12.0, 0.5},
                  {-0.5, 1.0 / 6.0, 2.0 / 3.0, 2.0 / 3.0}},
                 {-0.5, 1.0 / 6.0, 2.0 / 3.0, 2.0 / 3.0}),
      3, true, false, true, true));

  {
    const double g = parse_decimal("0.54");
    const auto d = parse_decimal;
    out.push_back(imex_entry(
        sequential("IMEX-NPRK3[54]-Si",
                   {{g},
                    {d("0.10402085874596586377"), g},
                    {d("-1.2409681743028102473"), d("0.42383482979738431001"), g},
                    {d("0.42903447708369521671"), d("-1.0829950086155536734"),
                     d("0.24651165580639138296"), g}},
                   {d("-0.32058288115984556996"), d("1.0095140978756513629"),
                    d("0.044585281470753018014"), d("0.26648350181344118903")}),
        3, false, true, false, false, 1e-9));
  }

  out.push_back(imim_entry(imim("IMIM-Midpoint", 3, {{2, 2, 1, 0.5}, {3, 2, 3, 0.5}},
                                {{2, 3, 1.0}})));
  out.push_back(imim_entry(imim("IMIM-Midpoint/CrankNicolson", 3,
                                {{2, 2, 1, 0.5}, {3, 2, 1, 0.5}, {3, 2, 3, 0.5}},
                                {{2, 1, 0.5}, {2, 3, 0.5}})));
  out.push_back(imim_entry(imim("IMIM-Midpoint-T", 3, {{2, 1, 2, 0.5}, {3, 3, 2, 0.5}},
                                {{3, 2, 1.0}})));
  out.push_back(imim_entry(imim("IMIM-Midpoint/CrankNicolson-T", 3,
                                {{2, 1, 2, 0.5}, {3, 1, 2, 0.5}, {3, 3, 2, 0.5}},
                                {{1, 2, 0.5}, {3, 2, 0.5}})));
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& find_method(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.name() == name || e.name() == "IMEX-NPRK" + name) return e;
  }
  throw UnknownMethod(name);
}

}  // namespace nprk
