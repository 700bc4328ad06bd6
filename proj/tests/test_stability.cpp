#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "nprk/errors.hpp"
#include "nprk/problems.hpp"
#include "nprk/stability.hpp"

using namespace nprk;

namespace {

StabilityModel model_of(const char* name) { return build_stability_model(find_method(name).method); }

// R = 1 + (z1 b1 + z2 b2)^T (I - z1 A1 - z2 A2)^{-1} e, an independent
// route to the same function through a linear solve.
Complex ark_stability(const StabilityModel& m, Complex z1, Complex z2) {
  const std::size_t s = m.A1.rows();
  ComplexMatrix k(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      k(i, j) = (i == j ? 1.0 : 0.0) - z1 * m.A1(i, j) - z2 * m.A2(i, j);
    }
  }
  const std::vector<Complex> e(s, 1.0);
  const auto x = dense_solve(k, e);
  Complex r = 1.0;
  for (std::size_t j = 0; j < s; ++j) r += (z1 * m.b1[j] + z2 * m.b2[j]) * x[j];
  return r;
}

NprkMethod explicit_heun() {
  // Y2 = y + h F(Y1, Y1); y1 = y + h/2 (F(Y1, Y1) + F(Y2, Y2))
  RealMatrix b(2, 2);
  b(0, 0) = 0.5;
  b(1, 1) = 0.5;
  return NprkMethod("heun", 2, {{2, 1, 1, 1.0}}, b);
}

}  // namespace

TEST_CASE("first-order method has R = (1 + z2) / (1 - z1)") {
  const auto m = model_of("IMEX-NPRK1[21]");
  CHECK(std::abs(m.numerator(0, 0) - 1.0) <= 1e-14);
  CHECK(std::abs(m.numerator(0, 1) - 1.0) <= 1e-14);
  CHECK(std::abs(m.numerator(1, 0)) <= 1e-14);
  CHECK(m.denominator(1, 0) == -1.0);
  CHECK(std::abs(stability_value(m, -1.0, 0.5) - 0.75) <= 1e-15);
  CHECK_THROWS_AS((void)stability_value(m, 1.0, 0.0), PoleEncountered);
}

TEST_CASE("R(0, 0) = 1 for every catalog method") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name());
    CHECK(std::abs(stability_value(build_stability_model(e.method), 0.0, 0.0) - 1.0) <= 1e-14);
  }
}

TEST_CASE("explicit methods have a unit denominator") {
  const auto m = build_stability_model(explicit_heun());
  for (std::size_t i = 0; i < m.denominator.rows(); ++i) {
    for (std::size_t j = 0; j < m.denominator.cols(); ++j) {
      CHECK(m.denominator(i, j) == (i == 0 && j == 0 ? 1.0 : 0.0));
    }
  }
  // Each partition alone is the classical Heun polynomial.
  const Complex z(-0.7, 0.4);
  CHECK(gen::rel_diff(stability_value(m, z, 0.0), 1.0 + z + z * z / 2.0) <= 1e-14);
  CHECK(gen::rel_diff(stability_value(m, 0.0, z), 1.0 + z + z * z / 2.0) <= 1e-14);
}

TEST_CASE("IMIM midpoint factorizes into two trapezoidal functions") {
  const auto m = model_of("IMIM-Midpoint");
  CHECK_FALSE(m.imex);
  gen::Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Complex z1 = rng.complex_in_box(10.0), z2 = rng.complex_in_box(10.0);
    const Complex expected = (z1 + 2.0) * (z2 + 2.0) / ((z1 - 2.0) * (z2 - 2.0));
    CHECK(gen::rel_diff(stability_value(m, z1, z2), expected) <= 1e-13);
  }
}

TEST_CASE("determinant ratio matches the linear-solve form") {
  gen::Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto m = build_stability_model(gen::random_imex_method(rng, rng.integer(2, 5)));
    const Complex z1 = rng.left_half_plane(5.0), z2 = rng.left_half_plane(5.0);
    CHECK(gen::rel_diff(stability_value(m, z1, z2), ark_stability(m, z1, z2)) <= 1e-12);
  }
}

TEST_CASE("interpolated polynomials agree with the determinant ratio") {
  gen::Rng rng(5);
  for (const auto& e : catalog()) {
    CAPTURE(e.name());
    const auto m = build_stability_model(e.method);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const Complex z1 = rng.complex_in_box(100.0);
      const Complex z2 = t % 10 == 0 ? z1 : rng.complex_in_box(100.0);
      worst = std::max(worst, gen::rel_diff(stability_value_polynomial(m, z1, z2),
                                            stability_value(m, z1, z2)));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("numerator respects the total-degree bound") {
  for (const auto& e : catalog()) {
    const auto m = build_stability_model(e.method);
    for (std::size_t i = 0; i < m.numerator.rows(); ++i) {
      for (std::size_t j = 0; j < m.numerator.cols(); ++j) {
        if (static_cast<int>(i + j) > m.stages) CHECK(m.numerator(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("z1 = 0 slice is the explicit method's classical region") {
  const auto m = model_of("IMEX-NPRK2[42]a");
  GridSpec g{-3.0, 1.0, -2.0, 2.0, 9};
  const auto slice = region_slice(m, 0.0, g);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      CHECK(gen::rel_diff(slice.at(i, j), std::abs(ark_stability(m, 0.0, g.point(i, j)))) <=
            1e-13);
    }
  }
}

TEST_CASE("very stiff z1 leaves the first-order method stable on the window") {
  const auto m = model_of("IMEX-NPRK1[21]");
  const auto slice = region_slice(m, -1e6, GridSpec{-5.0, 5.0, -5.0, 5.0, 21});
  for (double v : slice.values) CHECK(v <= 1.0);
}

TEST_CASE("2[31] tends to -(1 + z2) as z1 grows") {
  const auto m = model_of("IMEX-NPRK2[31]");
  for (Complex z2 : {Complex(0.0), Complex(-1.5, 0.5), Complex(0.3, -2.0)}) {
    CHECK(std::abs(stability_value(m, -1e10, z2) + (1.0 + z2)) <= 1e-8);
    CHECK(std::abs(stiff_limit(m, StiffVariable::Z1, z2) + (1.0 + z2)) <= 1e-12);
  }
  CHECK_FALSE(classify_stiff_limit(m, StiffVariable::Z1).l_stable);
}

TEST_CASE("stiff z1 limit vanishes for methods marked L-stable") {
  for (const auto& e : catalog()) {
    if (e.method.sparsity_class() != SparsityClass::ImexFirstImplicit) continue;
    CAPTURE(e.name());
    const auto c = classify_stiff_limit(build_stability_model(e.method), StiffVariable::Z1);
    CHECK_FALSE(c.divergent);
    CHECK(c.l_stable == e.l_stable_z1);
  }
  CHECK(stiff_limit(model_of("IMEX-NPRK1[21]"), StiffVariable::Z1, 0.0) == 0.0);
}

TEST_CASE("IMIM midpoint methods are A-stable in both stiff limits") {
  for (const char* name : {"IMIM-Midpoint", "IMIM-Midpoint/CrankNicolson"}) {
    CAPTURE(name);
    const auto m = model_of(name);
    for (auto v : {StiffVariable::Z1, StiffVariable::Z2}) {
      const auto c = classify_stiff_limit(m, v);
      CHECK(c.a_stable);
      CHECK_FALSE(c.l_stable);
    }
  }
  const auto m = model_of("IMIM-Midpoint");
  const Complex z2(-0.4, 3.0);
  CHECK(gen::rel_diff(stiff_limit(m, StiffVariable::Z1, z2), (z2 + 2.0) / (z2 - 2.0)) <= 1e-13);
}

TEST_CASE("explicit models diverge in the stiff limit") {
  const auto m = build_stability_model(explicit_heun());
  CHECK(stiff_limit_polynomials(m, StiffVariable::Z1).divergent);
  CHECK_THROWS_AS((void)stiff_limit(m, StiffVariable::Z1, 0.0), DivergentLimit);
  const auto w = wedge_slice(m, std::numbers::pi, GridSpec{-1.0, 0.0, -1.0, 1.0, 3});
  for (double v : w.values) CHECK(std::isinf(v));
}

TEST_CASE("beta limit of the first-order method is -eps") {
  // Signed limit; its modulus is |eps|.
  const auto beta = beta_infinity(model_of("IMEX-NPRK1[21]"));
  REQUIRE(beta.coeffs.size() == 2);
  CHECK(std::abs(beta.coeffs[0]) <= 1e-15);
  CHECK(std::abs(beta.coeffs[1] + 1.0) <= 1e-14);
  const auto g = gamma_series(beta);
  CHECK(std::abs(g.d[0] - 1.0) <= 1e-14);
  CHECK(std::abs(g.d[1]) <= 1e-14);
}

TEST_CASE("SiSa methods have beta = -eps^3") {
  for (const char* name : {"IMEX-NPRK2[43]-SiSa", "IMEX-NPRK2[43]b-SiSa"}) {
    CAPTURE(name);
    const auto beta = beta_infinity(model_of(name));
    for (std::size_t k = 0; k < beta.coeffs.size(); ++k) {
      CHECK(std::abs(beta.coeffs[k] - (k == 3 ? -1.0 : 0.0)) <= 1e-12);
    }
  }
}

static bool has_beta(const CatalogEntry& e) {
  return e.method.sparsity_class() == SparsityClass::ImexFirstImplicit &&
         e.name() != "IMEX-NPRK2[31]";
}

TEST_CASE("2[31] has no finite coupled limit") {
  const auto m = model_of("IMEX-NPRK2[31]");
  CHECK_THROWS_AS((void)beta_infinity(m), DivergentLimit);
  const auto r = coupled_stiff_z2_stable(m);
  CHECK_FALSE(r.stable);
  CHECK(std::isinf(r.max_gamma));
}

TEST_CASE("beta polynomial matches R(z1, eps z1) at large z1") {
  // R(z1, eps z1) = beta(eps) + c/z1 + O(1/z1^2) with c up to ~100 in the
  // catalog, so one Richardson step removes the leading remainder.
  gen::Rng rng(23);
  for (const auto& e : catalog()) {
    if (!has_beta(e)) continue;
    CAPTURE(e.name());
    const auto m = build_stability_model(e.method);
    const auto beta = beta_infinity(m);
    for (int t = 0; t < 10; ++t) {
      const Complex eps = std::polar(rng.uniform(0.0, 1.0), rng.uniform(0.0, 6.28));
      const Complex z1 = std::polar(1e6, rng.uniform(1.6, 4.6));
      const Complex r1 = stability_value(m, z1, eps * z1);
      const Complex r2 = stability_value(m, 2.0 * z1, 2.0 * eps * z1);
      CHECK(std::abs(2.0 * r2 - r1 - beta(eps)) <= 1e-8);
      CHECK(std::abs(r1 - beta(eps)) <= 1e-3);
    }
  }
}

TEST_CASE("gamma series equals |beta(e^{i theta})|^2") {
  for (const auto& e : catalog()) {
    if (!has_beta(e)) continue;
    const auto beta = beta_infinity(build_stability_model(e.method));
    const auto g = gamma_series(beta);
    for (int k = 0; k < 1024; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 1024.0;
      CHECK(std::abs(g(th) - std::norm(beta(std::polar(1.0, th)))) <= 1e-12);
    }
  }
}

TEST_CASE("2[32] gamma at theta = 0 and pi") {
  const auto a = gamma_series(model_of("IMEX-NPRK2[32]a"));
  CHECK(std::abs(a(0.0) - (57.0 - 40.0 * std::sqrt(2.0))) <= 1e-10);
  CHECK(std::abs(a(std::numbers::pi) - 1.0) <= 1e-10);
  const auto b = gamma_series(model_of("IMEX-NPRK2[32]b"));
  CHECK(std::abs(b(0.0) - (57.0 + 40.0 * std::sqrt(2.0))) <= 1e-8);
}

TEST_CASE("coupled stiff z2 stability matches the catalog flags") {
  for (const auto& e : catalog()) {
    if (!e.coupled_stiff_z2_stable) continue;
    CAPTURE(e.name());
    const auto r = coupled_stiff_z2_stable(build_stability_model(e.method));
    CHECK(r.stable == *e.coupled_stiff_z2_stable);
  }
  const auto si = coupled_stiff_z2_stable(model_of("IMEX-NPRK3[54]-Si"));
  CHECK(si.max_gamma > 1.0);
}

TEST_CASE("refined gamma max is at least every sample") {
  const auto m = model_of("IMEX-NPRK2[32]b");
  const auto r = coupled_stiff_z2_stable(m);
  const auto g = gamma_series(m);
  for (int k = 0; k < 10000; ++k) CHECK(g(2.0 * std::numbers::pi * k / 10000.0) <= r.max_gamma + 1e-12);
}

TEST_CASE("beta requires an IMEX model with an implicit stage") {
  CHECK_THROWS_AS((void)beta_infinity(model_of("IMIM-Midpoint")), NotImexModel);
  CHECK_THROWS_AS((void)beta_infinity(build_stability_model(explicit_heun())), ZeroDiagonal);
}

TEST_CASE("wedge slice of the first-order method at theta = pi") {
  const auto m = model_of("IMEX-NPRK1[21]");
  const GridSpec g{-2.5, 0.5, -1.5, 1.5, 31};
  const auto w = wedge_slice(m, std::numbers::pi, g);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const double r = std::abs(1.0 + g.point(i, j));
      if (std::abs(r - 1.0) < 1e-9) continue;
      CHECK((w.at(i, j) <= 1.0) == (r <= 1.0));
    }
  }
}

TEST_CASE("wedge region of 2[42]a at theta = pi/2 is nonempty") {
  const auto w = wedge_slice(model_of("IMEX-NPRK2[42]a"), std::numbers::pi / 2.0,
                             GridSpec{-3.0, 0.0, -3.0, 3.0, 31});
  CHECK(std::any_of(w.values.begin(), w.values.end(), [](double v) { return v <= 1.0; }));
  for (double v : w.values) CHECK(v >= 0.0);
}

TEST_CASE("region slice is symmetric under conjugating z1 and z2") {
  const auto m = model_of("IMEX-NPRK2[32]a");
  const GridSpec g{-4.0, 1.0, -3.0, 3.0, 11};
  const auto s = region_slice(m, Complex(-5.0, 2.0), g);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) CHECK(gen::rel_diff(s.at(i, j), s.at(i, g.n - 1 - j)) <= 1e-12);
  }
}

TEST_CASE("local linearization of the Dahlquist problem") {
  DahlquistProblem p(-3.0, -0.5);
  const Vector y{0.7};
  const auto l = local_dahlquist(p, y);
  REQUIRE(l.eigs1.size() == 1);
  CHECK(std::abs(l.eigs1[0] - Complex(-3.0)) <= 1e-8);
  CHECK(std::abs(l.eigs2[0] - Complex(-0.5)) <= 1e-8);
}

TEST_CASE("local linearization of Burgers at rest") {
  for (auto part : {BurgersPartition::NonConservative, BurgersPartition::Conservative}) {
    BurgersSpec spec;
    spec.n = 20;
    spec.epsilon = 0.1;
    spec.partition = part;
    BurgersProblem p(spec);
    const auto l = local_dahlquist(p, Vector(20, 0.0));
    std::vector<double> got, want;
    for (auto z : l.eigs1) {
      CHECK(std::abs(z.imag()) <= 1e-8);
      got.push_back(z.real());
    }
    const double hx = spec.hx();
    for (int k = 1; k <= 20; ++k) {
      const double s = std::sin(k * std::numbers::pi / (2.0 * 21.0));
      want.push_back(-4.0 * spec.epsilon / (hx * hx) * s * s);
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int k = 0; k < 20; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-6 * std::abs(want[0]));
    for (auto z : l.eigs2) CHECK(std::abs(z) <= 1e-8);
  }
}

TEST_CASE("local linearization refuses large systems") {
  BurgersSpec spec;
  spec.n = 600;
  BurgersProblem p(spec);
  CHECK_THROWS_AS((void)local_dahlquist(p, Vector(600, 0.0)), DimensionTooLarge);
}

TEST_CASE("grid validation") {
  const auto m = model_of("IMEX-NPRK1[21]");
  CHECK_THROWS_AS((void)region_slice(m, 0.0, GridSpec{0, 1, 0, 1, 0}), InvalidConfig);
  const auto one = region_slice(m, 0.0, GridSpec{-1, 1, 0, 1, 1});
  CHECK(one.values.size() == 1);
  CHECK(one.values[0] == 0.0);
}
