#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "nprk/errors.hpp"
#include "nprk/order.hpp"

using namespace nprk;

namespace {

PrkPair pair_of(const char* name) {
  return reduced_underlying(*find_method(name).sequential);
}

PrkPair append_zero_stage(const PrkPair& p) {
  const std::size_t n = p.implicit_part.stages();
  auto grow = [n](const RkTableau& t) {
    RealMatrix A(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) A(i, j) = t.A(i, j);
    }
    Vector b = t.b;
    b.push_back(0.0);
    return RkTableau::from(A, b);
  };
  return {grow(p.implicit_part), grow(p.explicit_part)};
}

}  // namespace

TEST_CASE("Euler pair fails order two by one half") {
  const auto rep = check_order(pair_of("IMEX-NPRK1[21]"), 2, 1e-12);
  REQUIRE(rep.conditions.size() == 3);
  CHECK(rep.conditions[0].residual == 0.0);
  CHECK(rep.conditions[1].id == "bc");
  CHECK(rep.conditions[1].residual == 0.5);
  CHECK(rep.conditions[2].residual == -0.5);
  CHECK_FALSE(rep.satisfied);
  CHECK(check_order(pair_of("IMEX-NPRK1[21]"), 1, 1e-12).satisfied);
}

TEST_CASE("midpoint pair is second order") {
  const auto rep = check_order(pair_of("IMEX-NPRK2[31]"), 2, 1e-15);
  CHECK(rep.satisfied);
}

TEST_CASE("condition counts per order") {
  const auto p = pair_of("IMEX-NPRK3[54]-Sa");
  CHECK(check_order(p, 1, 1e-12).conditions.size() == 1);
  CHECK(check_order(p, 2, 1e-12).conditions.size() == 3);
  CHECK(check_order(p, 3, 1e-12).conditions.size() == 10);
  CHECK(check_order(p, 3, 1e-12).satisfied);
  CHECK_THROWS_AS(check_order(p, 4, 1e-12), InvalidConfig);
}

TEST_CASE("midpoint residual norm is sqrt(13)/12") {
  CHECK(std::abs(residual3(pair_of("IMEX-NPRK2[31]")).norm2 - std::sqrt(13.0) / 12.0) <=
        1e-15);
}

TEST_CASE("residual norms of the second-order methods") {
  const std::pair<const char*, double> expected[] = {
      {"IMEX-NPRK2[31]", 0.300463},       {"IMEX-NPRK2[32]a", 4.15904},
      {"IMEX-NPRK2[32]b", 0.302179},      {"IMEX-NPRK2[42]a", 1.69593},
      {"IMEX-NPRK2[42]b", 0.191112},      {"IMEX-NPRK2[43]-SiSa", 0.500262},
      {"IMEX-NPRK2[43]b-SiSa", 0.286004}};
  for (const auto& [name, value] : expected) {
    CAPTURE(name);
    CHECK(std::abs(residual3(pair_of(name)).norm2 - value) <= 1e-4);
  }
}

TEST_CASE("residual3 norm is the Euclidean norm of its entries") {
  for (const auto& e : catalog()) {
    const auto r = residual3(order_pair(e.method).pair);
    double sum = 0.0;
    for (double v : r.r) sum += v * v;
    CHECK(r.norm2 == doctest::Approx(std::sqrt(sum)).epsilon(1e-15));
  }
}

TEST_CASE("shared weights are required") {
  auto p = pair_of("IMEX-NPRK2[31]");
  p.explicit_part.b[0] = 0.25;
  CHECK_THROWS_AS(check_order(p, 2, 1e-12), SharedWeightViolation);
}

TEST_CASE("catalog verification at design order") {
  const auto rows = verify_catalog();
  CHECK(rows.size() == catalog().size());
  for (const auto& row : rows) {
    CAPTURE(row.name);
    CHECK(row.report.satisfied);
    CHECK(row.report.order == row.design_order);
    CHECK(row.residual3.has_value() == (row.design_order == 2));
  }
  CHECK(verify_method(find_method("IMEX-NPRK3[54]-Si"), std::nullopt).tol == 1e-9);
  CHECK(verify_method(find_method("IMIM-Midpoint"), std::nullopt).route == "evaluation");
  CHECK(verify_method(find_method("IMEX-NPRK2[42]a"), std::nullopt).route == "sequential");
}

TEST_CASE("stiffly accurate flags match the coefficients") {
  for (const auto& e : catalog()) {
    if (!e.sequential) continue;
    CAPTURE(e.name());
    const auto& m = *e.sequential;
    bool sa = true;
    for (int j = 2; j <= m.stages(); ++j) sa = sa && m.w(j) == m.a(m.stages(), j);
    CHECK(sa == e.stiffly_accurate);
  }
}

TEST_CASE("appending a zero stage leaves every residual unchanged") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name());
    const auto p = order_pair(e.method).pair;
    const auto a = check_order(p, 3, 1e-12);
    const auto b = check_order(append_zero_stage(p), 3, 1e-12);
    for (std::size_t i = 0; i < a.conditions.size(); ++i) {
      CHECK(a.conditions[i].residual == b.conditions[i].residual);
    }
  }
}

TEST_CASE("order conditions are nested") {
  gen::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = gen::random_imex_method(rng, rng.integer(2, 5));
    const auto p = order_pair(m).pair;
    for (int q = 2; q <= 3; ++q) {
      if (check_order(p, q, 1e-12).satisfied) CHECK(check_order(p, q - 1, 1e-12).satisfied);
    }
  }
  for (const auto& e : catalog()) {
    const auto p = order_pair(e.method).pair;
    for (int q = e.design_order; q >= 1; --q) {
      CHECK(check_order(p, q, e.order_tol).satisfied);
    }
  }
}

TEST_CASE("each underlying tableau inherits the order of the pair") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name());
    const auto p = order_pair(e.method).pair;
    for (const auto* t : {&p.implicit_part, &p.explicit_part}) {
      const PrkPair single{*t, *t};
      CHECK(check_order(single, e.design_order, e.order_tol).satisfied);
    }
  }
}

TEST_CASE("sequential and evaluation routes give the same residuals") {
  for (const auto& e : catalog()) {
    if (!e.sequential) continue;
    CAPTURE(e.name());
    const auto seq = check_order(reduced_underlying(to_sequential(e.method)), 3, 1.0);
    const auto ev = check_order(evaluation_pair(e.method), 3, 1.0);
    for (std::size_t i = 0; i < seq.conditions.size(); ++i) {
      CHECK(std::abs(seq.conditions[i].residual - ev.conditions[i].residual) <= 1e-13);
    }
  }
}
