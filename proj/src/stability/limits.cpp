#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nprk/errors.hpp"
#include "nprk/stability.hpp"

namespace nprk {

namespace {

constexpr double kDivergenceTol = 1e-10;

double max_abs(const RealMatrix& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
  }
  return r;
}

Complex eval(const Vector& c, Complex x) {
  Complex sum = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) sum = sum * x + c[k];
  return sum;
}

}  // namespace

Complex EpsPolynomial::operator()(Complex eps) const { return eval(coeffs, eps); }

EpsPolynomial beta_infinity(const StabilityModel& model) {
  if (!model.imex) throw NotImexModel(model.name + ": beta_infinity needs an IMEX model");
  int q = 0;
  for (std::size_t i = 0; i < model.A1.rows(); ++i) q += model.A1(i, i) != 0.0 ? 1 : 0;
  if (q == 0) throw ZeroDiagonal(model.name + ": A1 has no nonzero diagonal entry");
  const RealMatrix& c = model.numerator;
  const double scale = std::max(1.0, max_abs(c));
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      if (static_cast<int>(i + j) > q && std::abs(c(i, j)) > kDivergenceTol * scale) {
        throw DivergentLimit(model.name + ": R(z1, eps z1) grows without bound");
      }
    }
  }
  const double dq = model.denominator(static_cast<std::size_t>(q), 0);
  EpsPolynomial beta;
  beta.coeffs.resize(static_cast<std::size_t>(q) + 1);
  for (int k = 0; k <= q; ++k) {
    beta.coeffs[static_cast<std::size_t>(k)] =
        c(static_cast<std::size_t>(q - k), static_cast<std::size_t>(k)) / dq;
  }
  return beta;
}

double CosineSeries::operator()(double theta) const {
  double sum = 0.0;
  for (std::size_t n = 0; n < d.size(); ++n) sum += d[n] * std::cos(n * theta);
  return sum;
}

CosineSeries gamma_series(const EpsPolynomial& beta) {
  const Vector& c = beta.coeffs;
  CosineSeries g;
  g.d.assign(c.size(), 0.0);
  for (std::size_t n = 0; n < c.size(); ++n) {
    double sum = 0.0;
    for (std::size_t j = n; j < c.size(); ++j) sum += c[j] * c[j - n];
    g.d[n] = n == 0 ? sum : 2.0 * sum;
  }
  return g;
}

CosineSeries gamma_series(const StabilityModel& model) {
  return gamma_series(beta_infinity(model));
}

CoupledStiffResult coupled_stiff_z2_stable(const StabilityModel& model, double tol) {
  CosineSeries g;
  try {
    g = gamma_series(model);
  } catch (const DivergentLimit&) {
    return {false, std::numeric_limits<double>::infinity(), 0.0};
  }
  constexpr int kSamples = 4096;
  const double step = 2.0 * std::numbers::pi / kSamples;
  double best = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const double v = g(k * step);
    if (v > best) {
      best = v;
      best_theta = k * step;
    }
  }
  // Golden-section search for the max in the bracketing sample cell.
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - step, hi = best_theta + step;
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  while (hi - lo > 1e-13) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = g(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  if (g(mid) > best) {
    best = g(mid);
    best_theta = mid;
  }
  best_theta = std::fmod(best_theta + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  if (2.0 * std::numbers::pi - best_theta < 1e-12) best_theta = 0.0;
  return {best <= 1.0 + tol, best, best_theta};
}

Complex StiffLimitPolynomials::value(Complex other) const {
  const Complex den = eval(denominator, other);
  if (den == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
  return eval(numerator, other) / den;
}

StiffLimitPolynomials stiff_limit_polynomials(const StabilityModel& model,
                                              StiffVariable which) {
  const bool first = which == StiffVariable::Z1;
  const RealMatrix& num = model.numerator;
  const RealMatrix& den = model.denominator;
  const std::size_t m = num.rows();
  auto at = [first](const RealMatrix& c, std::size_t stiff, std::size_t other) {
    return first ? c(stiff, other) : c(other, stiff);
  };
  const double den_scale = max_abs(den);
  std::size_t q = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (std::abs(at(den, i, j)) > 1e-14 * den_scale) q = std::max(q, i);
    }
  }
  StiffLimitPolynomials out;
  const double num_scale = std::max(1.0, max_abs(num));
  for (std::size_t i = q + 1; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (std::abs(at(num, i, j)) > kDivergenceTol * num_scale) out.divergent = true;
    }
  }
  out.numerator.resize(m);
  out.denominator.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.numerator[j] = at(num, q, j);
    out.denominator[j] = at(den, q, j);
  }
  return out;
}

Complex stiff_limit(const StabilityModel& model, StiffVariable which, Complex other) {
  const auto p = stiff_limit_polynomials(model, which);
  if (p.divergent) {
    throw DivergentLimit(model.name + ": numerator outgrows denominator in the stiff limit");
  }
  return p.value(other);
}

std::vector<Complex> left_half_plane_samples(int n) {
  std::vector<Complex> pts{0.0};
  const double lo = std::log10(1e-3), hi = std::log10(1e6);
  for (int k = 0; k < n; ++k) {
    const double r = std::pow(10.0, lo + (hi - lo) * k / (n - 1));
    pts.emplace_back(0.0, r);
    pts.emplace_back(0.0, -r);
    pts.emplace_back(-r, 0.0);
    for (int a = 0; a < n; ++a) {
      const double phi = std::numbers::pi * (0.5 + static_cast<double>(a) / (n - 1));
      pts.push_back(std::polar(r, phi));
    }
  }
  return pts;
}

StiffLimitClass classify_stiff_limit(const StabilityModel& model, StiffVariable which) {
  const auto p = stiff_limit_polynomials(model, which);
  StiffLimitClass c;
  if (p.divergent) {
    c.divergent = true;
    c.max_abs = std::numeric_limits<double>::infinity();
    return c;
  }
  for (Complex z : left_half_plane_samples()) {
    const double v = std::abs(p.value(z));
    c.max_abs = std::isnan(v) ? std::numeric_limits<double>::infinity()
                              : std::max(c.max_abs, v);
  }
  c.a_stable = c.max_abs <= 1.0 + 1e-10;
  double num = 0.0, den = 0.0;
  for (double v : p.numerator) num = std::max(num, std::abs(v));
  for (double v : p.denominator) den = std::max(den, std::abs(v));
  c.l_stable = num <= 1e-12 * den;
  return c;
}

}  // namespace nprk
