#include <cmath>
#include <numbers>

#include "nprk/errors.hpp"
#include "nprk/stability.hpp"

namespace nprk {

namespace {

bool lower_triangular(const RealMatrix& a, bool strict) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = strict ? i : i + 1; j < a.cols(); ++j) {
      if (a(i, j) != 0.0) return false;
    }
  }
  return true;
}

ComplexMatrix shifted(const StabilityModel& m, Complex z1, Complex z2) {
  const std::size_t s = m.A1.rows();
  ComplexMatrix out(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      out(i, j) = (i == j ? 1.0 : 0.0) - z1 * m.A1(i, j) - z2 * m.A2(i, j);
    }
  }
  return out;
}

Complex numerator_det(const StabilityModel& m, Complex z1, Complex z2) {
  ComplexMatrix mat = shifted(m, z1, z2);
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    for (std::size_t j = 0; j < mat.cols(); ++j) mat(i, j) += z1 * m.b1[j] + z2 * m.b2[j];
  }
  return complex_det(mat);
}

// Coefficients c(i, j) of z1^i z2^j, i, j <= s, of a polynomial of total
// degree at most s, recovered from samples on a roots-of-unity grid. The
// unit radius keeps the sampled values and the coefficients on one scale;
// radius 1/2 loses a factor 2^s in the high-order terms.
RealMatrix interpolate(const std::function<Complex(Complex, Complex)>& f, int s) {
  const std::size_t m = static_cast<std::size_t>(s) + 1;
  const std::size_t n = m * m;
  struct Grid {
    double radius, phase;
  };
  for (const Grid g : {Grid{1.0, 0.0}, Grid{0.8, 0.1234}}) {
    ComplexMatrix v(n, n);
    std::vector<Complex> rhs(n);
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = 0; q < m; ++q) {
        const double t = 2.0 * std::numbers::pi / static_cast<double>(m);
        const Complex z1 = std::polar(g.radius, t * p + g.phase);
        const Complex z2 = std::polar(g.radius, t * q + 2.0 * g.phase);
        const std::size_t row = p * m + q;
        Complex p1 = 1.0;
        for (std::size_t i = 0; i < m; ++i, p1 *= z1) {
          Complex p2 = 1.0;
          for (std::size_t j = 0; j < m; ++j, p2 *= z2) v(row, i * m + j) = p1 * p2;
        }
        rhs[row] = f(z1, z2);
      }
    }
    const auto lu = lu_factor(std::move(v));
    if (lu.singular) continue;
    const auto c = lu_solve(lu, std::span<const Complex>(rhs));
    RealMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; i + j < m; ++j) out(i, j) = c[i * m + j].real();
    }
    return out;
  }
  throw SingularInterpolation("stability numerator: interpolation system is singular");
}

RealMatrix product_denominator(const RealMatrix& a1, const RealMatrix& a2) {
  const std::size_t m = a1.rows() + 1;
  RealMatrix p(m, m);
  p(0, 0) = 1.0;
  for (std::size_t k = 0; k < a1.rows(); ++k) {
    const double u = -a1(k, k), w = -a2(k, k);
    if (u == 0.0 && w == 0.0) continue;
    RealMatrix next(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; i + j < m; ++j) {
        if (p(i, j) == 0.0) continue;
        next(i, j) += p(i, j);
        if (i + 1 < m) next(i + 1, j) += u * p(i, j);
        if (j + 1 < m) next(i, j + 1) += w * p(i, j);
      }
    }
    p = std::move(next);
  }
  return p;
}

Complex eval_bivariate(const RealMatrix& c, Complex z1, Complex z2) {
  Complex sum = 0.0;
  Complex p1 = 1.0;
  for (std::size_t i = 0; i < c.rows(); ++i, p1 *= z1) {
    Complex p2 = 1.0;
    for (std::size_t j = 0; j < c.cols(); ++j, p2 *= z2) sum += c(i, j) * p1 * p2;
  }
  return sum;
}

}  // namespace

StabilityModel build_stability_model(const NprkMethod& m) {
  const auto [t1, t2] = underlying_pair(m);
  StabilityModel model;
  model.name = m.name();
  model.stages = m.stages();
  model.A1 = t1.A;
  model.A2 = t2.A;
  model.b1 = t1.b;
  model.b2 = t2.b;
  model.imex = lower_triangular(model.A1, false) && lower_triangular(model.A2, true);
  model.numerator = interpolate(
      [&](Complex z1, Complex z2) { return numerator_det(model, z1, z2); }, model.stages);
  if (lower_triangular(model.A1, false) && lower_triangular(model.A2, false)) {
    model.denominator = product_denominator(model.A1, model.A2);
  } else {
    model.denominator = interpolate(
        [&](Complex z1, Complex z2) { return complex_det(shifted(model, z1, z2)); },
        model.stages);
  }
  return model;
}

StabilityModel build_stability_model(const SequentialImexMethod& m) {
  return build_stability_model(m.to_nprk());
}

Complex stability_value(const StabilityModel& model, Complex z1, Complex z2) {
  const ComplexMatrix d = shifted(model, z1, z2);
  // Hadamard bound on |det| sets the scale for the pole test.
  double bound = 1.0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < d.cols(); ++j) row += std::abs(d(i, j));
    bound *= row;
  }
  const Complex den = complex_det(d);
  if (!(std::abs(den) > 1e-14 * bound)) {
    throw PoleEncountered(model.name + ": denominator vanishes");
  }
  return numerator_det(model, z1, z2) / den;
}

Complex stability_value_polynomial(const StabilityModel& model, Complex z1, Complex z2) {
  const Complex den = eval_bivariate(model.denominator, z1, z2);
  if (den == 0.0) throw PoleEncountered(model.name + ": denominator vanishes");
  return eval_bivariate(model.numerator, z1, z2) / den;
}

}  // namespace nprk
