#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "nprk/errors.hpp"
#include "nprk/tableau.hpp"

namespace nprk {

std::string to_string(SparsityClass c) {
  switch (c) {
    case SparsityClass::ImimDiag:
      return "IMIM-diag";
    case SparsityClass::Exex:
      return "EXEX";
    case SparsityClass::ImexFirstImplicit:
      return "IMEX-first-implicit";
    case SparsityClass::General:
      return "general";
  }
  return "general";
}

SparsityClass sparsity_class_from_string(const std::string& tag) {
  for (auto c : {SparsityClass::ImimDiag, SparsityClass::Exex,
                 SparsityClass::ImexFirstImplicit, SparsityClass::General}) {
    if (to_string(c) == tag) return c;
  }
  throw InvalidMethod("unknown sparsity class '" + tag + "'");
}

namespace {

std::string where(const std::string& name) { return "method '" + name + "': "; }

}  // namespace

NprkMethod::NprkMethod(std::string name, int s, std::vector<TensorEntry> a, RealMatrix b,
                       std::optional<SparsityClass> declared)
    : name_(std::move(name)), s_(s), b_(std::move(b)), class_(SparsityClass::General) {
  if (s_ < 1) throw InvalidMethod(where(name_) + "stage count must be positive");
  const auto n = static_cast<std::size_t>(s_);
  if (b_.rows() != n || b_.cols() != n) {
    throw InvalidMethod(where(name_) + "weight matrix must be s x s");
  }
  for (double v : b_.data()) {
    if (!std::isfinite(v)) throw InvalidMethod(where(name_) + "non-finite weight");
  }
  for (const auto& e : a) {
    if (e.i < 1 || e.i > s_ || e.j < 1 || e.j > s_ || e.k < 1 || e.k > s_) {
      throw InvalidMethod(where(name_) + "coefficient index out of range");
    }
    if (!std::isfinite(e.value)) throw InvalidMethod(where(name_) + "non-finite coefficient");
    if (!lookup_.emplace(std::tuple{e.i, e.j, e.k}, e.value).second) {
      throw InvalidMethod(where(name_) + "coefficient (" + std::to_string(e.i) + "," +
                          std::to_string(e.j) + "," + std::to_string(e.k) +
                          ") given twice");
    }
  }
  for (const auto& [key, value] : lookup_) {
    if (value != 0.0) {
      a_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), value});
    }
  }
  class_ = classify_sparsity(*this);
  if (declared) {
    if (!satisfies_class(*this, *declared)) {
      throw InvalidMethod(where(name_) + "coefficients violate declared class " +
                          to_string(*declared));
    }
    class_ = *declared;
  }
}

double NprkMethod::a(int i, int j, int k) const {
  auto it = lookup_.find(std::tuple{i, j, k});
  return it == lookup_.end() ? 0.0 : it->second;
}

StageKind NprkMethod::stage_kind(int i) const {
  bool first = false;
  bool second = false;
  for (const auto& e : a_) {
    if (e.i != i) continue;
    if (e.j == i && e.k == i - 1) {
      first = true;
    } else if (e.k == i && e.j == i - 1) {
      second = true;
    } else if (e.j >= i || e.k >= i) {
      throw NotInAnsatz(where(name_) + "stage " + std::to_string(i) +
                        " couples to itself outside the diagonal pattern");
    }
  }
  if (first && second) {
    throw NotInAnsatz(where(name_) + "stage " + std::to_string(i) +
                      " is implicit in both arguments");
  }
  if (first) return StageKind::ImplicitFirst;
  if (second) return StageKind::ImplicitSecond;
  return StageKind::Explicit;
}

bool NprkMethod::in_restricted_ansatz() const {
  try {
    for (int i = 1; i <= s_; ++i) (void)stage_kind(i);
  } catch (const NotInAnsatz&) {
    return false;
  }
  return true;
}

NprkMethod NprkMethod::with_name(std::string name) const {
  NprkMethod copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool satisfies_class(const NprkMethod& m, SparsityClass c) {
  for (const auto& e : m.entries()) {
    switch (c) {
      case SparsityClass::ImimDiag:
        if (e.j > e.i || e.k > e.i) return false;
        break;
      case SparsityClass::Exex:
        if (e.j >= e.i || e.k >= e.i) return false;
        break;
      case SparsityClass::ImexFirstImplicit:
        if (e.j > e.i || e.k >= e.i) return false;
        break;
      case SparsityClass::General:
        break;
    }
  }
  return true;
}

SparsityClass classify_sparsity(const NprkMethod& m) {
  for (auto c : {SparsityClass::Exex, SparsityClass::ImexFirstImplicit,
                 SparsityClass::ImimDiag}) {
    if (satisfies_class(m, c)) return c;
  }
  return SparsityClass::General;
}

SequentialImexMethod::SequentialImexMethod(std::string name, int s, RealMatrix a_seq,
                                           Vector w)
    : name_(std::move(name)), s_(s), a_(std::move(a_seq)), w_(std::move(w)) {
  if (s_ < 1) throw InvalidMethod(where(name_) + "stage count must be positive");
  const auto n = static_cast<std::size_t>(s_);
  if (a_.rows() != n || a_.cols() != n || w_.size() != n) {
    throw InvalidMethod(where(name_) + "sequential tableau must be s x s with s weights");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a_(i, j);
      if (!std::isfinite(v)) throw InvalidMethod(where(name_) + "non-finite coefficient");
      if (v != 0.0 && (i == 0 || j == 0 || j > i)) {
        throw InvalidMethod(where(name_) + "sequential tableau entry outside 2 <= j <= i");
      }
    }
    if (!std::isfinite(w_[i])) throw InvalidMethod(where(name_) + "non-finite weight");
  }
  if (w_[0] != 0.0) throw InvalidMethod(where(name_) + "stage 1 cannot carry a weight");
}

int SequentialImexMethod::implicit_solves() const {
  int count = 0;
  for (int i = 2; i <= s_; ++i) count += implicit_stage(i) ? 1 : 0;
  return count;
}

NprkMethod SequentialImexMethod::to_nprk() const {
  std::vector<TensorEntry> entries;
  RealMatrix b(a_.rows(), a_.cols());
  for (int i = 2; i <= s_; ++i) {
    for (int j = 2; j <= i; ++j) {
      if (a(i, j) != 0.0) entries.push_back({i, j, j - 1, a(i, j)});
    }
    b(i - 1, i - 2) = w(i);
  }
  return NprkMethod(name_, s_, std::move(entries), std::move(b));
}

double parse_decimal(const std::string& literal) {
  char* end = nullptr;
  const double v = std::strtod(literal.c_str(), &end);
  if (end == literal.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw InvalidMethod("malformed decimal literal '" + literal + "'");
  }
  return v;
}

}  // namespace nprk
