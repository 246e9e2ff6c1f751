/*
 * Copyright 2026 The verra authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include "verra/ideal.hpp"
#include "verra/serialize.hpp"

using namespace verra::algebra;

using QP = MultiPoly<Rational>;
using FP = MultiPoly<Fp>;
using QI = PolyIdeal<Rational>;
using FI = PolyIdeal<Fp>;

TEST_CASE("groebner basis of a univariate pair is the gcd") {
  auto R = make_ring({"x"}, 0);
  auto I = QI::parse(R, {"x^2 - 1", "x^3 - 1"});
  const auto& gb = I.groebner();
  REQUIRE(gb.size() == 1);
  CHECK(gb[0].str() == "x - 1");
}

TEST_CASE("classic bivariate example") {
  // <x^2 + y^2 - 1, x - y> cuts out two points
  auto R = make_ring({"x", "y"}, 0);
  auto I = QI::parse(R, {"x^2 + y^2 - 1", "x - y"});
  const auto& gb = I.groebner();
  REQUIRE(gb.size() == 2);
  CHECK(gb[0].str() == "y^2 - 1/2");
  CHECK(gb[1].str() == "x - y");
  CHECK(I.dimension() == 0);
  CHECK(I.contains(QP::parse(R, "x^2 - y^2")));
  CHECK_FALSE(I.contains(QP::parse(R, "x + y")));
}

TEST_CASE("canonical basis is generator-order independent") {
  auto R = make_ring({"x", "y", "z"}, 0);
  const std::vector<std::string> gens = {"x*y - z", "y*z - x", "x*z - y",
                                         "x^2 + y^2 + z^2 - 1"};
  std::vector<std::string> perm = gens;
  auto base = QI::parse(R, gens).groebner();
  std::sort(perm.begin(), perm.end());
  do {
    auto gb = QI::parse(R, perm).groebner();
    REQUIRE(gb == base);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("unit ideal detection") {
  auto R = make_ring({"x", "y"}, 0);
  CHECK(QI::parse(R, {"x", "x + 1"}).is_unit());
  CHECK(QI::parse(R, {"7"}).is_unit());
  CHECK_FALSE(QI::parse(R, {"x", "y"}).is_unit());
  CHECK(QI(R, {}).is_zero_ideal());
  CHECK(QI::parse(R, {"0"}).is_zero_ideal());
}

TEST_CASE("dimension of standard examples") {
  auto R = make_ring({"x", "y", "z"}, 0);
  CHECK(QI(R, {}).dimension() == 3);
  CHECK(QI::parse(R, {"x"}).dimension() == 2);
  CHECK(QI::parse(R, {"x", "y"}).dimension() == 1);
  CHECK(QI::parse(R, {"x", "y", "z"}).dimension() == 0);
  CHECK(QI::parse(R, {"1"}).dimension() == -1);
  CHECK(QI::parse(R, {"x*y", "x*z"}).dimension() == 2);  // plane union line
  CHECK(QI::parse(R, {"x*y"}).dimension() == 2);
}

TEST_CASE("saturation and intersection") {
  auto R = make_ring({"x", "y"}, 0);

  auto I1 = QI::parse(R, {"x*y"});
  auto S1 = saturate_one(I1, QP::parse(R, "x"));
  CHECK(same_ideal(S1, QI::parse(R, {"y"})));

  // embedded component at the origin disappears into the unit ideal
  auto I2 = QI::parse(R, {"x^2", "x*y"});
  auto S2 = saturate_one(I2, QP::parse(R, "x"));
  CHECK(S2.is_unit());

  auto J = QI::parse(R, {"x"});
  CHECK(saturate(I2, J).is_unit());

  auto A = QI::parse(R, {"x"});
  auto B = QI::parse(R, {"y"});
  CHECK(same_ideal(intersect(A, B), QI::parse(R, {"x*y"})));

  // saturating by the zero ideal gives the whole ring
  CHECK(saturate(I1, QI(R, {})).is_unit());
}

TEST_CASE("radical membership") {
  auto R = make_ring({"x", "y"}, 0);
  auto I = QI::parse(R, {"x^2", "y^3"});
  CHECK(radical_membership(I, QP::parse(R, "x")));
  CHECK(radical_membership(I, QP::parse(R, "y")));
  CHECK(radical_membership(I, QP::parse(R, "x + y")));
  CHECK_FALSE(radical_membership(I, QP::parse(R, "x + 1")));
  CHECK(radical_membership(I, QP::parse(R, "0")));

  auto F = make_ring({"x", "y"}, 101);
  auto J = FI::parse(F, {"x^2 + y^2", "x*y"});
  CHECK(radical_membership(J, FP::parse(F, "x")));
  CHECK(radical_membership(J, FP::parse(F, "y")));
  CHECK_FALSE(radical_membership(J, FP::parse(F, "x + y + 1")));
}

TEST_CASE("budget limits raise instead of degrading") {
  auto R = make_ring({"x", "y", "z"}, 0);
  auto I = QI::parse(R, {"x*y - z", "y*z - x", "x*z - y"});
  GroebnerBudget tiny;
  tiny.max_pairs = 1;
  CHECK_THROWS_AS(groebner_basis(R, I.generators(), tiny), BudgetExceeded);

  GroebnerBudget shallow;
  shallow.max_degree = 1;
  CHECK_THROWS_AS(groebner_basis(R, I.generators(), shallow), BudgetExceeded);
}

TEST_CASE("finite field groebner") {
  auto F = make_ring({"x", "y"}, 101);
  auto I = FI::parse(F, {"x^2 + y^2 - 1", "x - y"});
  const auto& gb = I.groebner();
  REQUIRE(gb.size() == 2);
  // y^2 = 1/2, and -1/2 = 50 mod 101
  CHECK(gb[0].str() == "y^2 + 50");
  CHECK(gb[1].str() == "x + 100*y");
  CHECK(I.dimension() == 0);
}

TEST_CASE("elimination through the order, not ad hoc") {
  // the twisted cubic: eliminate t from <x - t, y - t^2, z - t^3>
  auto E = make_ring({"t", "x", "y", "z"}, 0, TermOrder::elim(1));
  std::vector<QP> cubic = {QP::parse(E, "x - t"), QP::parse(E, "y - t^2"),
                           QP::parse(E, "z - t^3")};
  auto gb = groebner_basis(E, cubic);
  auto R = make_ring({"x", "y", "z"}, 0);
  auto down = detail::eliminate_front(gb, 1, R);
  auto J = QI(R, down);
  CHECK(J.contains(QP::parse(R, "x^2 - y")));
  CHECK(J.contains(QP::parse(R, "x*y - z")));
  CHECK(J.contains(QP::parse(R, "y^2 - x*z")));
  CHECK_FALSE(J.contains(QP::parse(R, "x - y")));
}

TEST_CASE("ideal json round trip") {
  auto F = make_ring({"x", "y", "z"}, 10007, TermOrder::elim(1));
  auto I = FI::parse(F, {"x^2 + 3*y - 1", "z^4 - x*y*z"});
  auto j = ideal_to_json(I);
  auto I2 = ideal_from_json<Fp>(j);
  CHECK(same_ring(I.ring(), I2.ring()));
  CHECK(I.generators() == I2.generators());
  // through a string, as the CLI persists it
  auto j2 = nlohmann::json::parse(j.dump());
  auto I3 = ideal_from_json<Fp>(j2);
  CHECK(I.generators() == I3.generators());

  auto R0 = make_ring({"u", "v"}, 0);
  auto Q = QI::parse(R0, {"1/2*u^2 - v"});
  CHECK(ideal_from_json<Rational>(ideal_to_json(Q)).generators() ==
        Q.generators());
}
