#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nprk/numerics.hpp"

namespace nprk {

/// One nonzero coefficient a_{ijk} (1-based indices).
struct TensorEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

enum class SparsityClass { ImimDiag, Exex, ImexFirstImplicit, General };

std::string to_string(SparsityClass c);
/// Throws InvalidMethod for unknown tags.
SparsityClass sparsity_class_from_string(const std::string& tag);

/// Stage type inside the restricted diagonally-implicit ansatz.
enum class StageKind { Explicit, ImplicitFirst, ImplicitSecond };

/// Full two-argument method: Y_i = y_n + h sum_{j,k} a_{ijk} F(Y_j, Y_k),
/// y_{n+1} = y_n + h sum_{j,k} b_{jk} F(Y_j, Y_k).
class NprkMethod {
 public:
  /// `b` is s x s with b(j-1, k-1) = b_{jk}. When `declared` is empty the
  /// most restrictive matching class is stored. Throws InvalidMethod on
  /// repeated or out-of-range indices, non-finite values, or a declared
  /// class the coefficients violate.
  NprkMethod(std::string name, int s, std::vector<TensorEntry> a, RealMatrix b,
             std::optional<SparsityClass> declared = std::nullopt);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int stages() const { return s_; }
  [[nodiscard]] SparsityClass sparsity_class() const { return class_; }
  /// Nonzero entries sorted by (i, j, k).
  [[nodiscard]] const std::vector<TensorEntry>& entries() const { return a_; }
  [[nodiscard]] double a(int i, int j, int k) const;
  [[nodiscard]] double b(int j, int k) const { return b_(j - 1, k - 1); }
  [[nodiscard]] const RealMatrix& weights() const { return b_; }

  /// True if every stage fits the restricted diagonally-implicit ansatz.
  [[nodiscard]] bool in_restricted_ansatz() const;
  /// Throws NotInAnsatz when stage i violates the restricted ansatz.
  [[nodiscard]] StageKind stage_kind(int i) const;

  NprkMethod with_name(std::string name) const;

 private:
  std::string name_;
  int s_;
  std::vector<TensorEntry> a_;
  std::map<std::tuple<int, int, int>, double> lookup_;
  RealMatrix b_;
  SparsityClass class_;
};

/// Most restrictive class whose sparsity pattern the method satisfies.
SparsityClass classify_sparsity(const NprkMethod& m);
bool satisfies_class(const NprkMethod& m, SparsityClass c);

/// Sequentially coupled IMEX method: only F(Y_j, Y_{j-1}) is evaluated.
class SequentialImexMethod {
 public:
  /// `a_seq` is s x s with a_seq(i-1, j-1) = a_{i,j,j-1}; `w` has length s
  /// with w[j-1] = b_{j,j-1}. Row 1, column 1, entries above the diagonal
  /// and w[0] must be zero.
  SequentialImexMethod(std::string name, int s, RealMatrix a_seq, Vector w);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int stages() const { return s_; }
  /// a_{i,j,j-1} for 1-based i, j.
  [[nodiscard]] double a(int i, int j) const { return a_(i - 1, j - 1); }
  /// b_{j,j-1} for 1-based j.
  [[nodiscard]] double w(int j) const { return w_[j - 1]; }
  [[nodiscard]] bool implicit_stage(int i) const { return i >= 2 && a(i, i) != 0.0; }
  [[nodiscard]] int implicit_solves() const;
  [[nodiscard]] const RealMatrix& matrix() const { return a_; }
  [[nodiscard]] const Vector& weights() const { return w_; }

  [[nodiscard]] NprkMethod to_nprk() const;

 private:
  std::string name_;
  int s_;
  RealMatrix a_;
  Vector w_;
};

/// Classical tableau; c is always the row sum of A.
struct RkTableau {
  RealMatrix A;
  Vector b;
  Vector c;

  static RkTableau from(RealMatrix A, Vector b);
  [[nodiscard]] std::size_t stages() const { return b.size(); }
};

/// Partitioned pair with shared weights.
struct PrkPair {
  RkTableau implicit_part;
  RkTableau explicit_part;
};

/// First tableau sums over k, second over j. Throws AbscissaMismatch when
/// the two abscissa vectors differ by more than `tol`.
std::pair<RkTableau, RkTableau> underlying_pair(const NprkMethod& m,
                                                double tol = 1e-14);

/// (s-1)-stage pair A_{ij} = a_{i+1,j+1,j}, Ahat_{ij} = a_{i,j+1,j},
/// b_i = b_{i+1,i}.
PrkPair reduced_underlying(const SequentialImexMethod& m);

/// Pair obtained by treating every distinct evaluation F(Y_j, Y_k) as one
/// partitioned stage with U = Y_j and V = Y_k. For a sequential method this
/// coincides with reduced_underlying; unlike it, it also covers methods
/// that are implicit in the second argument.
PrkPair evaluation_pair(const NprkMethod& m);

/// Rewrites a restricted-ansatz IMEX method as a sequentially coupled one
/// by appending copy stages, then merges adjacent copies whose own
/// evaluation is never used. Throws NotInAnsatz for stages outside the
/// ansatz or implicit in the second argument.
SequentialImexMethod to_sequential(const NprkMethod& m);

/// 2s-stage method embedding a partitioned pair: odd stages carry the
/// explicit rows, even stages the implicit rows.
NprkMethod from_sirk(const RkTableau& implicit_tab, const RkTableau& explicit_tab,
                     const Vector& b_shared, std::string name = "SIRK");

struct CatalogEntry {
  NprkMethod method;
  std::optional<SequentialImexMethod> sequential;
  int design_order = 0;
  int implicit_solves = 0;
  bool stiffly_accurate = false;
  bool singly_implicit = false;
  /// Empty when the property is undefined (IMIM) or not asserted.
  std::optional<bool> coupled_stiff_z2_stable;
  /// Stiff z1 limit claimed to vanish identically.
  bool l_stable_z1 = false;
  /// Residual tolerance appropriate for the stored coefficients.
  double order_tol = 1e-12;

  [[nodiscard]] const std::string& name() const { return method.name(); }
};

const std::vector<CatalogEntry>& catalog();
/// Accepts the full name or the name without the "IMEX-NPRK" prefix.
/// Throws UnknownMethod.
const CatalogEntry& find_method(const std::string& name);

/// Parses a decimal literal to the nearest double (round-to-nearest).
double parse_decimal(const std::string& literal);

}  // namespace nprk
