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

#include "verra/lattice.hpp"
#include "verra/rng.hpp"

using namespace verra::lattice;

TEST_CASE("smith normal form invariants") {
  auto check_snf = [](const ZMat& a) {
    SmithResult s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(abs(bareiss_det(s.U)) == 1);
    CHECK(abs(bareiss_det(s.V)) == 1);
    CHECK(s.Vinv * s.V == ZMat::identity(a.cols()));
    for (std::size_t i = 1; i < s.elementary_divisors.size(); ++i)
      CHECK(s.elementary_divisors[i] % s.elementary_divisors[i - 1] == 0);
    for (int i = 0; i < s.D.rows(); ++i)
      for (int j = 0; j < s.D.cols(); ++j)
        if (i != j) CHECK(s.D.at(i, j) == 0);
  };

  check_snf(ZMat::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}));
  check_snf(ZMat::from_rows({{1, 2}, {3, 4}, {5, 6}}));
  check_snf(ZMat::from_rows({{0, 0}, {0, 0}}));
  check_snf(ZMat::from_rows({{6}}));

  verra::Pcg32 rng(2026);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(5));
    const int n = 1 + static_cast<int>(rng.below(5));
    ZMat a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        a.at(i, j) = static_cast<long>(rng.below(21)) - 10;
    check_snf(a);
  }

  SmithResult s =
      smith_normal_form(ZMat::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}));
  REQUIRE(s.elementary_divisors.size() == 3);
  CHECK(s.elementary_divisors[0] == 2);
  CHECK(s.elementary_divisors[1] == 2);
  CHECK(s.elementary_divisors[2] == 156);
}

TEST_CASE("bareiss determinant") {
  CHECK(bareiss_det(ZMat::identity(4)) == 1);
  CHECK(bareiss_det(ZMat::from_rows({{1, 2}, {3, 4}})) == -2);
  CHECK(bareiss_det(ZMat::from_rows({{0, 1}, {1, 0}})) == -1);
  CHECK(bareiss_det(ZMat::from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}})) == 30);
  CHECK(bareiss_det(ZMat::from_rows({{1, 1}, {2, 2}})) == 0);
}

TEST_CASE("kernel and saturation") {
  ZMat a = ZMat::from_rows({{1, 2, 3}});
  ZMat k = kernel_basis(a);
  REQUIRE(k.rows() == 2);
  for (int i = 0; i < k.rows(); ++i) {
    BigInt dot = 0;
    for (int j = 0; j < 3; ++j) dot += a.at(0, j) * k.at(i, j);
    CHECK(dot == 0);
  }
  // kernel basis is saturated: its saturation index is 1
  CHECK(saturation_index(k) == 1);

  ZMat span = ZMat::from_rows({{2, 0}, {0, 3}});
  CHECK(saturation_index(span) == 6);
  ZMat sat = row_saturation(span);
  CHECK(hermite_form(sat) == ZMat::identity(2));

  // full-rank span: saturation is the whole lattice, index = |det|
  ZMat span2 = ZMat::from_rows({{2, 2}, {0, 4}});
  CHECK(saturation_index(span2) == 8);
  CHECK(hermite_form(row_saturation(span2)) == ZMat::identity(2));

  // rank-one span inside Z^2: (2, 4) saturates to (1, 2)
  ZMat span3 = ZMat::from_rows({{2, 4}});
  CHECK(saturation_index(span3) == 2);
  CHECK(hermite_form(row_saturation(span3)) == ZMat::from_rows({{1, 2}}));
}

TEST_CASE("hermite form is a row-span invariant") {
  ZMat a = ZMat::from_rows({{1, 2, 3}, {4, 5, 6}});
  ZMat b = ZMat::from_rows({{5, 7, 9}, {4, 5, 6}, {1, 2, 3}});
  CHECK(hermite_form(a) == hermite_form(b));
  CHECK(hermite_form(a).rows() == 2);
  ZMat c = ZMat::from_rows({{1, 2, 4}, {4, 5, 6}});
  CHECK(hermite_form(a) != hermite_form(c));
}

TEST_CASE("rational solve and inverse") {
  QMat a = {{Rational(2), Rational(1)}, {Rational(1), Rational(3)}};
  auto x = solve_rational(a, {Rational(5), Rational(10)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rational(1));
  CHECK((*x)[1] == Rational(3));

  QMat sing = {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  CHECK_FALSE(solve_rational(sing, {Rational(1), Rational(3)}).has_value());
  CHECK(solve_rational(sing, {Rational(1), Rational(2)}).has_value());
  CHECK_FALSE(rational_inverse(sing).has_value());

  auto inv = rational_inverse(a);
  REQUIRE(inv.has_value());
  CHECK((*inv)[0][0] == Rational(BigInt(3), BigInt(5)));
  CHECK((*inv)[0][1] == Rational(BigInt(-1), BigInt(5)));
}

TEST_CASE("standard lattices") {
  auto U = hyperbolic_plane("e", "f");
  CHECK(U.is_even());
  CHECK(U.is_unimodular());
  CHECK(signature(U) == Signature{1, 1, 0});

  auto E8m = e8_lattice({"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"}, -1);
  CHECK(E8m.is_even());
  CHECK(E8m.det() == 1);
  CHECK(signature(E8m) == Signature{0, 8, 0});

  auto E8p = e8_lattice({"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"}, +1);
  CHECK(signature(E8p) == Signature{8, 0, 0});

  auto D = diagonal_lattice({"a", "b", "c"}, {2, -3, 0});
  CHECK(signature(D) == Signature{1, 1, 1});
  CHECK_FALSE(D.is_even());

  auto sum = direct_sum(U, E8m);
  CHECK(sum.rank() == 10);
  CHECK(signature(sum) == Signature{1, 9, 0});
  CHECK(sum.pairing(sum.basis_vector("e"), sum.basis_vector("f")) == 1);
  CHECK(sum.pairing(sum.basis_vector("e"), sum.basis_vector("e3")) == 0);
  CHECK_THROWS_AS(direct_sum(U, U), std::invalid_argument);
}

TEST_CASE("sublattice operations") {
  auto U = hyperbolic_plane("e", "f");
  ZMat diag = ZMat::from_rows({{1, 1}});  // e + f, norm 2
  auto ind = induced_lattice(U, diag, {"d"});
  CHECK(ind.gram().at(0, 0) == 2);

  ZMat comp = orthogonal_complement(U, diag);
  REQUIRE(comp.rows() == 1);
  // e - f up to sign
  CHECK(abs(comp.at(0, 0)) == 1);
  CHECK(comp.at(0, 0) + comp.at(0, 1) == 0);
  CHECK(induced_gram(U, comp).at(0, 0) == -2);
}

TEST_CASE("discriminant forms") {
  auto A1 = diagonal_lattice({"a"}, {2});
  DiscForm d(A1);
  REQUIRE(d.orders().size() == 1);
  CHECK(d.orders()[0] == 2);
  DiscForm::Elem g = {1};
  CHECK(d.q_of(g) == Rational(BigInt(1), BigInt(2)));
  CHECK(d.b_of(g, g) == Rational(BigInt(1), BigInt(2)));

  auto A1m = diagonal_lattice({"a"}, {-2});
  DiscForm dm(A1m);
  CHECK(dm.q_of({1}) == Rational(BigInt(3), BigInt(2)));  // -1/2 mod 2

  auto U2 = rescaled(hyperbolic_plane("e", "f"), 2);
  DiscForm du(U2);
  CHECK(du.group_order() == 4);
  CHECK(du.orders() == std::vector<BigInt>{2, 2});
  CHECK(du.elements(16).size() == 4);
}

TEST_CASE("genus comparison fixtures") {
  auto U = hyperbolic_plane("e", "f");
  auto U2 = rescaled(U, 2);
  auto U2m = rescaled(U, -2);

  GenusInvariants g = genus_invariants(U2);
  CHECK(g.rank == 2);
  CHECK(g.sig == Signature{1, 1, 0});
  CHECK(g.even);
  CHECK(g.factors == std::vector<BigInt>{2, 2});

  CHECK(same_genus(U2, U2m) == GenusMatch::Equal);
  CHECK(same_genus(U, U2) == GenusMatch::Different);
  CHECK(same_genus(U, hyperbolic_plane("a", "b")) == GenusMatch::Equal);

  // the rank-3 comparison the fourfold side relies on
  auto A = direct_sum(diagonal_lattice({"h"}, {2}), U2);
  auto B = direct_sum(diagonal_lattice({"h"}, {2}), U2m);
  CHECK(same_genus(A, B) == GenusMatch::Equal);

  auto C = direct_sum(diagonal_lattice({"h"}, {-2}), U2);
  CHECK(same_genus(A, C) == GenusMatch::Different);
}

TEST_CASE("index-two even overlattices") {
  // unimodular: trivial discriminant, no room to grow
  CHECK(count_index_two_even_overlattices(hyperbolic_plane("e", "f")) == 0);

  // <-2> + <-2>: q-values 3/2, 3/2, 1 on the nonzero classes, none isotropic
  auto two = diagonal_lattice({"a", "b"}, {-2, -2});
  CHECK(count_index_two_even_overlattices(two) == 0);

  // U(2): e/2 and f/2 are isotropic, e/2 + f/2 has q = 1
  auto U2 = rescaled(hyperbolic_plane("e", "f"), 2);
  CHECK(count_index_two_even_overlattices(U2) == 2);

  DiscForm d(U2);
  auto iso = isotropic_two_torsion(d);
  REQUIRE(iso.size() == 2);
  for (const auto& e : iso) {
    IntLattice over = overlattice_from_isotropic(U2, d, e);
    CHECK(over.is_even());
    CHECK(abs(over.det()) == 1);
    CHECK(same_genus(over, hyperbolic_plane("x", "y")) == GenusMatch::Equal);
  }
}
