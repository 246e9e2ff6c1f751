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

#include "verra/multipoly.hpp"

using namespace verra::algebra;

using QP = MultiPoly<Rational>;
using FP = MultiPoly<Fp>;

namespace {

RingPtr qring() { return make_ring({"x", "y", "z"}, 0); }
RingPtr fring(std::uint64_t p) { return make_ring({"x", "y", "z"}, p); }

}  // namespace

TEST_CASE("grevlex term order") {
  auto R = qring();
  // x^2 > x*y > y^2 > x*z > y*z > z^2 in grevlex(x,y,z)
  auto f = QP::parse(R, "z^2 + y*z + x*z + y^2 + x*y + x^2");
  REQUIRE(f.nterms() == 6);
  std::vector<std::string> expect = {"x^2", "x*y", "y^2", "x*z", "y*z", "z^2"};
  for (std::size_t i = 0; i < expect.size(); ++i) {
    auto mono = QP::monomial(R, f.terms()[i].first, Rational(1));
    CHECK(mono.str() == expect[i]);
  }
  // degree dominates
  CHECK(mono_cmp(R->order(), QP::parse(R, "z^3").leading_mono(),
                 QP::parse(R, "x^2").leading_mono()) > 0);
}

TEST_CASE("elimination order blocks") {
  auto R = make_ring({"t", "x", "y"}, 0, TermOrder::elim(1));
  // anything containing t beats anything t-free
  auto cmp = [&](const char* a, const char* b) {
    return mono_cmp(R->order(), QP::parse(R, a).leading_mono(),
                    QP::parse(R, b).leading_mono());
  };
  CHECK(cmp("t", "x^5*y^5") > 0);
  CHECK(cmp("t^2", "t*x^4") > 0);
  CHECK(cmp("t*x^2", "t*x*y") > 0);  // grevlex tie-break on the tail
  CHECK(cmp("x*y", "x*y") == 0);
}

TEST_CASE("arithmetic and normal form") {
  auto R = qring();
  auto f = QP::parse(R, "x + y");
  auto g = QP::parse(R, "x - y");
  CHECK((f * g).str() == "x^2 - y^2");
  CHECK((f * f).str() == "x^2 + 2*x*y + y^2");
  CHECK((f - f).is_zero());
  CHECK((f - f).str() == "0");
  auto h = QP::parse(R, "1/2*x^2 + 2/4*x^2");
  CHECK(h.str() == "x^2");
  CHECK(f.pow(3).str() == "x^3 + 3*x^2*y + 3*x*y^2 + y^3");
  CHECK(QP::parse(R, "0").is_zero());
  CHECK(QP::parse(R, "x - x + 5").str() == "5");
}

TEST_CASE("parser round trips") {
  auto R = qring();
  for (const char* s : {"x^2 - y^2", "-x + 1/3", "2*x*y*z - z^3 + 7",
                        "x^11*y^2 - 1/2*z", "0", "-1"}) {
    auto f = QP::parse(R, s);
    CHECK(QP::parse(R, f.str()) == f);
    CHECK(f.str() == s);
  }
  // implicit products and spacing survive a reparse
  CHECK(QP::parse(R, "3 x y") == QP::parse(R, "3*x*y"));
  CHECK(QP::parse(R, "x x") == QP::parse(R, "x^2"));
  CHECK_THROWS_AS(QP::parse(R, "x + w"), std::invalid_argument);
  CHECK_THROWS_AS(QP::parse(R, "x +"), std::invalid_argument);
  CHECK_THROWS_AS(QP::parse(R, "(x)"), std::invalid_argument);

  auto F = fring(101);
  auto f = FP::parse(F, "100*x + 103");
  CHECK(f.str() == "100*x + 2");
  CHECK(FP::parse(F, f.str()) == f);
  CHECK_THROWS_AS(FP::parse(F, "1/2*x"), std::invalid_argument);
}

TEST_CASE("derivatives track the characteristic") {
  auto R = qring();
  auto f = QP::parse(R, "x^3*y + 2*x*z - 7");
  CHECK(f.derivative("x").str() == "3*x^2*y + 2*z");
  CHECK(f.derivative("y").str() == "x^3");

  auto F5 = fring(5);
  CHECK(FP::parse(F5, "x^5").derivative("x").is_zero());
  CHECK(FP::parse(F5, "x^6").derivative("x").str() == "x^5");
}

TEST_CASE("substitution") {
  auto R = qring();
  auto f = QP::parse(R, "x^2 + y");
  std::map<std::string, QP> images;
  images.emplace("x", QP::parse(R, "y + z"));
  CHECK(f.substitute(R, images) == QP::parse(R, "y^2 + 2*y*z + z^2 + y"));

  // into a larger ring with a different order
  auto E = make_ring({"t", "x", "y", "z"}, 0, TermOrder::elim(1));
  auto g = QP::parse(R, "x*y - z^2");
  auto moved = g.into_ring(E);
  CHECK(moved.ring()->nvars() == 4);
  CHECK(moved == QP::parse(E, "x*y - z^2"));
  // round trip back
  CHECK(moved.into_ring(R) == g);
  CHECK_THROWS_AS(QP::parse(E, "t*x").into_ring(R), std::invalid_argument);
}

TEST_CASE("linear substitution with unknown matrix entries") {
  // (z1*x + z2*y)^2 expanded through a generic 2x2 matrix row
  auto T = make_ring({"z1", "z2", "z3", "z4", "x", "y"}, 0);
  auto S = make_ring({"x", "y"}, 0);
  auto f = QP::parse(S, "x^2");
  std::vector<std::vector<QP>> M = {
      {QP::variable(T, "z1"), QP::variable(T, "z2")},
      {QP::variable(T, "z3"), QP::variable(T, "z4")}};
  auto g = substitute_linear(f, M, {"x", "y"}, T);
  CHECK(g == QP::parse(T, "z1^2*x^2 + 2*z1*z2*x*y + z2^2*y^2"));

  auto h = substitute_linear(QP::parse(S, "x*y"), M, {"x", "y"}, T);
  CHECK(h == QP::parse(T, "z1*z3*x^2 + z1*z4*x*y + z2*z3*x*y + z2*z4*y^2"));
}

TEST_CASE("coefficient decomposition reconstructs the input") {
  auto R = make_ring({"x0", "x1", "y0", "y1"}, 0);
  auto f = QP::parse(R, "3*x0^2*y0 + x0*x1*y1 - x1^2*y0 + x0*x1");
  auto parts = coefficient_decomposition(f, {"x0", "x1"});
  QP rebuilt = QP::zero(R);
  for (const auto& [key, coeff] : parts) {
    Mono m = mono_one(R->nvars());
    m.e[0] = key[0];
    m.e[1] = key[1];
    m.deg = static_cast<std::uint32_t>(key[0] + key[1]);
    rebuilt += QP::monomial(R, m, Rational(1)) * coeff;
  }
  CHECK(rebuilt == f);
  CHECK(coefficient_in(f, {"x0", "x1"}, {2, 0}) == QP::parse(R, "3*y0"));
  CHECK(coefficient_in(f, {"x0", "x1"}, {1, 1}) == QP::parse(R, "y1 + 1"));
  CHECK(coefficient_in(f, {"x0", "x1"}, {0, 5}).is_zero());
}

TEST_CASE("polynomial determinants") {
  auto R = qring();
  std::vector<std::vector<QP>> M = {
      {QP::parse(R, "x"), QP::parse(R, "y")},
      {QP::parse(R, "z"), QP::parse(R, "x")}};
  CHECK(poly_det(M) == QP::parse(R, "x^2 - y*z"));

  std::vector<std::vector<QP>> I3(3, std::vector<QP>(3, QP::zero(R)));
  for (int i = 0; i < 3; ++i) I3[i][i] = QP::constant(R, 1);
  CHECK(poly_det(I3) == QP::constant(R, 1));
  I3[0][1] = QP::parse(R, "x");
  I3[1][0] = QP::parse(R, "y");
  CHECK(poly_det(I3) == QP::parse(R, "1 - x*y"));
}

TEST_CASE("homogeneity helpers") {
  auto R = make_ring({"x0", "x1", "y0", "y1"}, 0);
  auto f = QP::parse(R, "x0^2*y0*y1 + x0*x1*y1^2");
  const auto xs = var_indices(R, {"x0", "x1"});
  const auto ys = var_indices(R, {"y0", "y1"});
  CHECK(is_homogeneous_in_set(f, xs, 2));
  CHECK(is_homogeneous_in_set(f, ys, 2));
  CHECK_FALSE(is_homogeneous_in_set(f, xs, 3));
  CHECK(degree_in_set(f, xs) == 2);
}

TEST_CASE("ring guards") {
  auto R = qring();
  auto F = fring(101);
  CHECK_THROWS_AS(QP::zero(nullptr), std::invalid_argument);
  CHECK_THROWS_AS(FP::zero(R), std::invalid_argument);   // Fp coeffs, char 0
  CHECK_THROWS_AS(QP::zero(F), std::invalid_argument);   // Q coeffs, char p
  CHECK_THROWS_AS(make_ring({"x", "x"}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_ring({"2x"}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_ring({"x"}, 6), std::invalid_argument);

  auto F2 = fring(103);
  auto a = FP::parse(F, "x");
  auto b = FP::parse(F2, "x");
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}
