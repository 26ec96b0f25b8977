#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfluid/liealg.hpp"

using namespace cfluid;
using namespace cfluid::liealg;

namespace {
PolyVectorField3 xfield(int i) {
  return generators()[static_cast<std::size_t>(i)];
}
}  // namespace

TEST_CASE("generator coefficients") {
  // X8 has d_t coefficient x^2/2.
  const auto& X8 = xfield(8);
  CHECK(X8.ct.coefficient({2, 0, 0}) == Rational(1, 2));
  CHECK(X8.cx.coefficient({1, 0, 1}) == Rational(-1));
  CHECK(X8.cs.coefficient({0, 0, 2}) == Rational(-1));

  // X3 evaluated at (1,2,3) points along (2, 0, -1).
  auto v = xfield(3).evaluate(1.0, 2.0, 3.0);
  CHECK(v[0] == 2.0);
  CHECK(v[1] == 0.0);
  CHECK(v[2] == -1.0);

  // X0 is the constant time translation.
  auto w = xfield(0).evaluate(-4.0, 0.7, 2.2);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 1.0);
  CHECK(w[2] == 0.0);
}

TEST_CASE("hand-computed brackets") {
  // [X0, X3] = d_x = -X1.
  CHECK(lie_bracket(xfield(0), xfield(3)) == Rational(-1) * xfield(1));
  // Bracket of the boost with X8 reproduces X9.
  CHECK(lie_bracket(xfield(3), xfield(8)) == xfield(9));
  // [X2, X8] = x d_x + 2 s d_s = -2(X6 - X4).
  CHECK(lie_bracket(xfield(2), xfield(8)) ==
        Rational(2) * xfield(4) - Rational(2) * xfield(6));
  // [X7, X3] = s d_s - t d_t = -X6.
  CHECK(lie_bracket(xfield(7), xfield(3)) == Rational(-1) * xfield(6));
}

TEST_CASE("antisymmetry, Jacobi and degree bound, exactly") {
  const auto& gens = generators();
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      auto bij = lie_bracket(gens[i], gens[j]);
      CHECK(bij.degree() <= 2);
      CHECK((bij + lie_bracket(gens[j], gens[i])).is_zero());
    }
  }
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j)
      for (int k = j + 1; k < 10; ++k) {
        auto cyc = lie_bracket(gens[i], lie_bracket(gens[j], gens[k])) +
                   lie_bracket(gens[j], lie_bracket(gens[k], gens[i])) +
                   lie_bracket(gens[k], lie_bracket(gens[i], gens[j]));
        CHECK(cyc.is_zero());
      }
}

TEST_CASE("conformal factors of the flat extended metric") {
  // Isometries: X0..X3, X6, X7.
  for (int i : {0, 1, 2, 3, 6, 7}) {
    auto lambda = conformal_factor(xfield(i));
    REQUIRE(lambda.has_value());
    CHECK(lambda->is_zero());
  }
  // X4: lambda = 1 (infinitesimal Omega = e^{lambda/2}).
  {
    auto lambda = conformal_factor(xfield(4));
    REQUIRE(lambda.has_value());
    CHECK(*lambda == RPoly::constant(Rational(1)));
  }
  // X5: lambda = 2t (infinitesimal 1/(1 - kappa t)).
  {
    auto lambda = conformal_factor(xfield(5));
    REQUIRE(lambda.has_value());
    RPoly expected;
    expected.add_term({0, 1, 0}, Rational(2));
    CHECK(*lambda == expected);
  }
  // X8: lambda = -2s (infinitesimal 1/(1 + eps1 s)).
  {
    auto lambda = conformal_factor(xfield(8));
    REQUIRE(lambda.has_value());
    RPoly expected;
    expected.add_term({0, 0, 1}, Rational(-2));
    CHECK(*lambda == expected);
  }
  // X9: lambda = 2x.
  {
    auto lambda = conformal_factor(xfield(9));
    REQUIRE(lambda.has_value());
    RPoly expected;
    expected.add_term({1, 0, 0}, Rational(2));
    CHECK(*lambda == expected);
  }
  // A non-conformal field is rejected.
  PolyVectorField3 stretch{RPoly::variable(0), RPoly{}, RPoly{}};  // x d_x
  CHECK_FALSE(conformal_factor(stretch).has_value());
  // All conformal factors have degree <= 1.
  for (int i = 0; i < 10; ++i) CHECK(conformal_factor(xfield(i))->degree() <= 1);
}

TEST_CASE("structure table closes and matches the Poisson table with one sign") {
  auto table = structure_table();
  CHECK(table.closed);
  CHECK(table.entries.size() == 45);
  CHECK(table.sigma == 1);
  CHECK(table.sigma_unique);
}

TEST_CASE("decomposition rejects fields outside the span") {
  PolyVectorField3 bad{RPoly::variable(1) * RPoly::variable(1), RPoly{},
                       RPoly{}};  // t^2 d_x
  CHECK_THROWS_WITH_AS(decompose_in_basis(bad), doctest::Contains("closure"),
                       Error);
}

TEST_CASE("dictionary to the standard o(3,2) basis is exact") {
  auto report = dictionary_check();
  for (const auto& f : report.failures) {
    INFO("failed identity: ", f);
    CHECK(false);
  }
  CHECK(report.all_exact);
}
