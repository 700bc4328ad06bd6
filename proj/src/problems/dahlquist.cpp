#include <cmath>

#include "nprk/errors.hpp"
#include "nprk/problems.hpp"

namespace nprk {

namespace {

Complex load(std::span<const double> y, bool complex) {
  return complex ? Complex(y[0], y[1]) : Complex(y[0], 0.0);
}

void store(Complex z, std::span<double> out, bool complex) {
  out[0] = z.real();
  if (complex) out[1] = z.imag();
}

}  // namespace

DahlquistProblem::DahlquistProblem(Complex lambda1, Complex lambda2)
    : l1_(lambda1), l2_(lambda2), complex_(lambda1.imag() != 0.0 || lambda2.imag() != 0.0) {}

void DahlquistProblem::rhs(std::span<const double> u, std::span<const double> v,
                           std::span<double> out) const {
  store(l1_ * load(u, complex_) + l2_ * load(v, complex_), out, complex_);
}

void DahlquistProblem::rhs_explicit(std::span<const double> v, std::span<double> out) const {
  store(l2_ * load(v, complex_), out, complex_);
}

void DahlquistProblem::rhs_implicit(std::span<const double> u, std::span<const double>,
                                    std::span<double> out) const {
  store(l1_ * load(u, complex_), out, complex_);
}

void DahlquistProblem::solve_first(double tau, std::span<const double>,
                                   std::span<const double> rhs,
                                   std::span<double> out) const {
  const Complex den = 1.0 - tau * l1_;
  if (den == 0.0) throw SingularMatrix("dahlquist: 1 - tau*lambda1 = 0");
  store(load(rhs, complex_) / den, out, complex_);
}

void DahlquistProblem::solve_second(double tau, std::span<const double> u,
                                    std::span<const double> rhs,
                                    std::span<double> out) const {
  const Complex den = 1.0 - tau * l2_;
  if (den == 0.0) throw SingularMatrix("dahlquist: 1 - tau*lambda2 = 0");
  store((load(rhs, complex_) + tau * l1_ * load(u, complex_)) / den, out, complex_);
}

void DahlquistProblem::additive_first(std::span<const double> y, std::span<double> out) const {
  store(l1_ * load(y, complex_), out, complex_);
}

void DahlquistProblem::additive_second(std::span<const double> y,
                                       std::span<double> out) const {
  store(l2_ * load(y, complex_), out, complex_);
}

void DahlquistProblem::solve_additive_first(double tau, std::span<const double> rhs,
                                            std::span<double> out) const {
  solve_first(tau, rhs, rhs, out);
}

BandedMatrix DahlquistProblem::jacobian(std::span<const double>) const {
  const Complex l = l1_ + l2_;
  if (!complex_) {
    BandedMatrix j(1, 0, 0);
    j(0, 0) = l.real();
    return j;
  }
  // Multiplication by l as a real 2x2 map on (re, im).
  BandedMatrix j(2, 1, 1);
  j(0, 0) = l.real();
  j(0, 1) = -l.imag();
  j(1, 0) = l.imag();
  j(1, 1) = l.real();
  return j;
}

Vector DahlquistProblem::exact_solution(double t, std::span<const double> y0,
                                        double t0) const {
  Vector out(dim());
  store(std::exp((l1_ + l2_) * (t - t0)) * load(y0, complex_), out, complex_);
  return out;
}

std::optional<Vector> DahlquistProblem::initial_state() const {
  return complex_ ? Vector{1.0, 0.0} : Vector{1.0};
}

}  // namespace nprk
