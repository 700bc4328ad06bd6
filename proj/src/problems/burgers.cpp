#include <cmath>

#include "nprk/errors.hpp"
#include "nprk/problems.hpp"

namespace nprk {

std::string to_string(BurgersPartition p) {
  return p == BurgersPartition::NonConservative ? "non-conservative" : "conservative";
}

BurgersProblem::BurgersProblem(BurgersSpec spec) : spec_(spec) {
  if (spec_.n < 3) throw InvalidConfig("burgers: need at least 3 interior points");
  if (!(spec_.x1 > spec_.x0)) throw InvalidConfig("burgers: empty domain");
  const double hx = spec_.hx();
  d_ = 1.0 / (hx * hx);
  a_ = 1.0 / (2.0 * hx);
}

std::string BurgersProblem::name() const { return "burgers-" + to_string(spec_.partition); }

Vector BurgersProblem::grid() const {
  Vector x(dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = spec_.x0 + (i + 1) * spec_.hx();
  return x;
}

std::optional<Vector> BurgersProblem::initial_state() const {
  Vector u = grid();
  for (double& x : u) x = std::exp(-3.0 * x * x);
  return u;
}

void BurgersProblem::apply_d(std::span<const double> y, std::span<double> out) const {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? y[i - 1] : 0.0;
    const double right = i + 1 < n ? y[i + 1] : 0.0;
    out[i] = d_ * (left - 2.0 * y[i] + right);
  }
}

void BurgersProblem::apply_a(std::span<const double> y, std::span<double> out) const {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? y[i - 1] : 0.0;
    const double right = i + 1 < n ? y[i + 1] : 0.0;
    out[i] = a_ * (right - left);
  }
}

void BurgersProblem::rhs(std::span<const double> u, std::span<const double> v,
                         std::span<double> out) const {
  const std::size_t n = dim();
  Vector du(n), adv(n);
  apply_d(u, du);
  if (spec_.partition == BurgersPartition::NonConservative) {
    apply_a(u, adv);
    for (std::size_t i = 0; i < n; ++i) out[i] = spec_.epsilon * du[i] + v[i] * adv[i];
  } else {
    Vector vu(n);
    for (std::size_t i = 0; i < n; ++i) vu[i] = v[i] * u[i];
    apply_a(vu, adv);
    for (std::size_t i = 0; i < n; ++i) out[i] = spec_.epsilon * du[i] + 0.5 * adv[i];
  }
}

void BurgersProblem::solve_first(double tau, std::span<const double> v,
                                 std::span<const double> rhs, std::span<double> out) const {
  // (I - tau eps D - tau M(v)) Y = rhs
  const std::size_t n = dim();
  const double diff = tau * spec_.epsilon * d_;
  Vector sub(n - 1), diag(n, 1.0 + 2.0 * diff), super(n - 1);
  const bool nc = spec_.partition == BurgersPartition::NonConservative;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // sub[i] sits in row i+1, super[i] in row i.
    sub[i] = -diff + tau * a_ * (nc ? v[i + 1] : 0.5 * v[i]);
    super[i] = -diff - tau * a_ * (nc ? v[i] : 0.5 * v[i + 1]);
  }
  const Vector y = tridiagonal_solve(sub, diag, super, rhs);
  std::copy(y.begin(), y.end(), out.begin());
}

void BurgersProblem::solve_second(double tau, std::span<const double> u,
                                  std::span<const double> rhs, std::span<double> out) const {
  const std::size_t n = dim();
  Vector r(n);
  apply_d(u, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] + tau * spec_.epsilon * r[i];
  if (spec_.partition == BurgersPartition::NonConservative) {
    // diag(Y) A u is diagonal in Y.
    Vector au(n);
    apply_a(u, au);
    for (std::size_t i = 0; i < n; ++i) {
      const double den = 1.0 - tau * au[i];
      if (den == 0.0) throw SingularMatrix("burgers: zero pivot in second-argument solve");
      out[i] = r[i] / den;
    }
    return;
  }
  // (I - tau/2 A diag(u)) Y = r
  Vector sub(n - 1), diag(n, 1.0), super(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sub[i] = 0.5 * tau * a_ * u[i];
    super[i] = -0.5 * tau * a_ * u[i + 1];
  }
  const Vector y = tridiagonal_solve(sub, diag, super, r);
  std::copy(y.begin(), y.end(), out.begin());
}

void BurgersProblem::monolithic(std::span<const double> y, std::span<double> out) const {
  rhs(y, y, out);
}

void BurgersProblem::additive_first(std::span<const double> y, std::span<double> out) const {
  apply_d(y, out);
  for (double& x : out) x *= spec_.epsilon;
}

void BurgersProblem::additive_second(std::span<const double> y,
                                     std::span<double> out) const {
  const std::size_t n = dim();
  Vector lin(n);
  additive_first(y, lin);
  rhs(y, y, out);
  for (std::size_t i = 0; i < n; ++i) out[i] -= lin[i];
}

void BurgersProblem::solve_additive_first(double tau, std::span<const double> rhs,
                                          std::span<double> out) const {
  const std::size_t n = dim();
  const double diff = tau * spec_.epsilon * d_;
  Vector sub(n - 1, -diff), diag(n, 1.0 + 2.0 * diff), super(n - 1, -diff);
  const Vector y = tridiagonal_solve(sub, diag, super, rhs);
  std::copy(y.begin(), y.end(), out.begin());
}

BandedMatrix BurgersProblem::jacobian(std::span<const double> y) const {
  const std::size_t n = dim();
  const double e = spec_.epsilon * d_;
  BandedMatrix j(n, 1, 1);
  if (spec_.partition == BurgersPartition::NonConservative) {
    // eps D + diag(A y) + diag(y) A
    Vector ay(n);
    apply_a(y, ay);
    for (std::size_t i = 0; i < n; ++i) {
      j(i, i) = -2.0 * e + ay[i];
      if (i > 0) j(i, i - 1) = e - a_ * y[i];
      if (i + 1 < n) j(i, i + 1) = e + a_ * y[i];
    }
  } else {
    // eps D + A diag(y)
    for (std::size_t i = 0; i < n; ++i) {
      j(i, i) = -2.0 * e;
      if (i > 0) j(i, i - 1) = e - a_ * y[i - 1];
      if (i + 1 < n) j(i, i + 1) = e + a_ * y[i + 1];
    }
  }
  return j;
}

BandedMatrix BurgersProblem::diffusion_matrix() const {
  const std::size_t n = dim();
  BandedMatrix m(n, 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = -2.0 * d_;
    if (i > 0) m(i, i - 1) = d_;
    if (i + 1 < n) m(i, i + 1) = d_;
  }
  return m;
}

BandedMatrix BurgersProblem::advection_matrix() const {
  const std::size_t n = dim();
  BandedMatrix m(n, 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) m(i, i - 1) = -a_;
    if (i + 1 < n) m(i, i + 1) = a_;
  }
  return m;
}

}  // namespace nprk
