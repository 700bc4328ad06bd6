#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "nprk/errors.hpp"
#include "nprk/tableau.hpp"

namespace nprk {

RkTableau RkTableau::from(RealMatrix A, Vector b) {
  if (A.rows() != A.cols() || A.rows() != b.size()) {
    throw DimensionMismatch("RkTableau: A must be square with one weight per stage");
  }
  Vector c(b.size(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) c[i] += A(i, j);
  }
  return {std::move(A), std::move(b), std::move(c)};
}

std::pair<RkTableau, RkTableau> underlying_pair(const NprkMethod& m, double tol) {
  const auto n = static_cast<std::size_t>(m.stages());
  RealMatrix a1(n, n), a2(n, n);
  for (const auto& e : m.entries()) {
    a1(e.i - 1, e.j - 1) += e.value;
    a2(e.i - 1, e.k - 1) += e.value;
  }
  Vector b1(n, 0.0), b2(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      b1[j] += m.weights()(j, k);
      b2[k] += m.weights()(j, k);
    }
  }
  auto first = RkTableau::from(std::move(a1), std::move(b1));
  auto second = RkTableau::from(std::move(a2), std::move(b2));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::max(1.0, std::abs(first.c[i]));
    worst = std::max(worst, std::abs(first.c[i] - second.c[i]) / scale);
  }
  if (worst > tol) {
    throw AbscissaMismatch("method '" + m.name() + "': underlying abscissae differ by " +
                               std::to_string(worst),
                           worst);
  }
  return {std::move(first), std::move(second)};
}

PrkPair reduced_underlying(const SequentialImexMethod& m) {
  const int s = m.stages();
  if (s < 2) throw InvalidMethod("reduced_underlying: need at least two stages");
  const auto n = static_cast<std::size_t>(s - 1);
  RealMatrix A(n, n), Ahat(n, n);
  Vector b(n);
  for (int i = 1; i <= s - 1; ++i) {
    for (int j = 1; j <= s - 1; ++j) {
      A(i - 1, j - 1) = m.a(i + 1, j + 1);
      Ahat(i - 1, j - 1) = m.a(i, j + 1);
    }
    b[i - 1] = m.w(i + 1);
  }
  return {RkTableau::from(std::move(A), b), RkTableau::from(std::move(Ahat), b)};
}

PrkPair evaluation_pair(const NprkMethod& m) {
  std::set<std::pair<int, int>> used;
  for (const auto& e : m.entries()) used.insert({e.j, e.k});
  const int s = m.stages();
  for (int j = 1; j <= s; ++j) {
    for (int k = 1; k <= s; ++k) {
      if (m.b(j, k) != 0.0) used.insert({j, k});
    }
  }
  const std::vector<std::pair<int, int>> pairs(used.begin(), used.end());
  const std::size_t n = pairs.size();
  RealMatrix A(n, n), Ahat(n, n);
  Vector b(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto [jp, kp] = pairs[p];
    for (std::size_t q = 0; q < n; ++q) {
      const auto [jq, kq] = pairs[q];
      A(p, q) = m.a(jp, jq, kq);
      Ahat(p, q) = m.a(kp, jq, kq);
    }
    b[p] = m.b(jp, kp);
  }
  return {RkTableau::from(std::move(A), b), RkTableau::from(std::move(Ahat), b)};
}

namespace {

// Row of a sequential stage: coefficient of F(Ytilde_nu, Ytilde_{nu-1}),
// indexed by nu (1-based, entry 0 unused).
using SeqRow = std::vector<double>;

// Removes stage nu when it duplicates stage nu-1 exactly and its own
// evaluation F(Ytilde_nu, Ytilde_{nu-1}) carries no coefficient. The
// evaluation that followed it, F(Ytilde_{nu+1}, Ytilde_nu), keeps its value
// because Ytilde_nu == Ytilde_{nu-1}.
void merge_adjacent_copies(std::vector<SeqRow>& rows, SeqRow& w) {
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t count = rows.size() - 1;
    for (std::size_t nu = count; nu >= 2; --nu) {
      if (rows[nu] != rows[nu - 1]) continue;
      bool referenced = w[nu] != 0.0;
      for (std::size_t i = nu; i <= count && !referenced; ++i) {
        referenced = rows[i][nu] != 0.0;
      }
      if (referenced) continue;
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(nu));
      for (auto& r : rows) r.erase(r.begin() + static_cast<std::ptrdiff_t>(nu));
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(nu));
      changed = true;
      break;
    }
  }
}

}  // namespace

SequentialImexMethod to_sequential(const NprkMethod& m) {
  const int s = m.stages();
  for (int i = 1; i <= s; ++i) {
    if (m.stage_kind(i) == StageKind::ImplicitSecond) {
      throw NotInAnsatz("method '" + m.name() + "': stage " + std::to_string(i) +
                        " is implicit in the second argument");
    }
  }

  // Coefficients of original stage sigma (sigma = s + 1 is the output).
  auto expression = [&](int sigma) {
    std::map<std::pair<int, int>, double> expr;
    if (sigma <= s) {
      for (const auto& e : m.entries()) {
        if (e.i == sigma) expr[{e.j, e.k}] += e.value;
      }
    } else {
      for (int j = 1; j <= s; ++j) {
        for (int k = 1; k <= s; ++k) {
          if (m.b(j, k) != 0.0) expr[{j, k}] += m.b(j, k);
        }
      }
    }
    return expr;
  };

  std::vector<SeqRow> rows(2);  // rows[1]: Ytilde_1 = y_n
  std::vector<int> seq_of(static_cast<std::size_t>(s) + 2, 0);
  seq_of[1] = 1;
  std::map<std::pair<int, int>, int> ell;  // (j, k) -> nu
  SeqRow w;

  auto append = [&](SeqRow row) {
    rows.push_back(std::move(row));
    return static_cast<int>(rows.size()) - 1;
  };
  auto express = [&](const std::map<std::pair<int, int>, double>& expr, int sigma,
                     int self) {
    SeqRow row;
    for (const auto& [pair, value] : expr) {
      int nu = 0;
      if (pair.first == sigma && pair.second == sigma - 1) {
        nu = self;
      } else {
        auto it = ell.find(pair);
        if (it == ell.end()) {
          throw NotInAnsatz("method '" + m.name() + "': evaluation F(Y_" +
                            std::to_string(pair.first) + ", Y_" +
                            std::to_string(pair.second) + ") is not reachable");
        }
        nu = it->second;
      }
      if (row.size() <= static_cast<std::size_t>(nu)) row.resize(nu + 1, 0.0);
      row[nu] += value;
    }
    return row;
  };

  for (int sigma = 2; sigma <= s + 1; ++sigma) {
    const int prev = seq_of[sigma - 1];
    for (int mm = 0; mm <= sigma - 2; ++mm) {
      const int a = append(rows[seq_of[mm + 1]]);
      ell.emplace(std::pair{mm + 1, sigma - 1}, a);
      const int b = append(rows[prev]);
      ell.emplace(std::pair{sigma - 1, mm + 1}, b);
    }
    const auto expr = expression(sigma);
    if (sigma <= s) {
      const int self = static_cast<int>(rows.size());
      seq_of[sigma] = append(express(expr, sigma, self));
      ell.emplace(std::pair{sigma, sigma - 1}, self);
    } else {
      w = express(expr, sigma, -1);
    }
  }

  const std::size_t count = rows.size() - 1;
  for (auto& r : rows) r.resize(count + 1, 0.0);
  w.resize(count + 1, 0.0);
  merge_adjacent_copies(rows, w);

  const std::size_t shat = rows.size() - 1;
  RealMatrix a_seq(shat, shat);
  Vector weights(shat, 0.0);
  for (std::size_t i = 1; i <= shat; ++i) {
    for (std::size_t j = 2; j <= i; ++j) a_seq(i - 1, j - 1) = rows[i][j];
    weights[i - 1] = w[i];
  }
  return SequentialImexMethod(m.name() + " (sequential)", static_cast<int>(shat),
                              std::move(a_seq), std::move(weights));
}

NprkMethod from_sirk(const RkTableau& implicit_tab, const RkTableau& explicit_tab,
                     const Vector& b_shared, std::string name) {
  const std::size_t n = b_shared.size();
  if (n == 0 || implicit_tab.A.rows() != n || implicit_tab.A.cols() != n ||
      explicit_tab.A.rows() != n || explicit_tab.A.cols() != n) {
    throw DimensionMismatch("from_sirk: tableaux and weights must share the stage count");
  }
  const int s = static_cast<int>(n);
  std::vector<TensorEntry> entries;
  RealMatrix b(2 * n, 2 * n);
  for (int i = 1; i <= s; ++i) {
    for (int j = 1; j <= s; ++j) {
      const double ae = explicit_tab.A(i - 1, j - 1);
      const double ai = implicit_tab.A(i - 1, j - 1);
      if (ae != 0.0) entries.push_back({2 * i - 1, 2 * j, 2 * j - 1, ae});
      if (ai != 0.0) entries.push_back({2 * i, 2 * j, 2 * j - 1, ai});
    }
    b(2 * i - 1, 2 * i - 2) = b_shared[i - 1];
  }
  return NprkMethod(std::move(name), 2 * s, std::move(entries), std::move(b));
}

}  // namespace nprk
