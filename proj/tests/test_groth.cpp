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

#include "verra/groth.hpp"
#include "verra/rng.hpp"

using namespace verra;
using groth::GrothClass;

TEST_CASE("class arithmetic") {
  const auto ring = groth::groth_ring();
  auto c = [&](const std::string& s) { return groth::parse_class(ring, s); };

  const GrothClass lp1 = c("L + 1");
  CHECK(lp1 * lp1 == c("L^2 + 2*L + 1"));
  CHECK((c("3*s1*L - p2") - c("3*s1*L - p2")).is_zero());
  CHECK(c("L") * c("L") == c("L^2"));
}

TEST_CASE("projective space expansion") {
  const auto ring = groth::groth_ring();
  auto c = [&](const std::string& s) { return groth::parse_class(ring, s); };
  CHECK(groth::expand_projective_space(ring, 0) == c("1"));
  CHECK(groth::expand_projective_space(ring, 1) == c("1 + L"));
  CHECK(groth::expand_projective_space(ring, 2) == c("1 + L + L^2"));
  CHECK_THROWS_AS(groth::expand_projective_space(ring, -1),
                  std::invalid_argument);
}

TEST_CASE("quadric and blow-up share a class") {
  const auto ring = groth::groth_ring();
  const GrothClass p1 = groth::expand_projective_space(ring, 1);
  const GrothClass p2 = groth::expand_projective_space(ring, 2);
  const GrothClass l = GrothClass::variable(ring, "L");
  CHECK(p1 * p1 == p2 + l);
  CHECK(p1 * p1 == groth::parse_class(ring, "L^2 + 2*L + 1"));
}

TEST_CASE("verra relation") { CHECK(groth::verify_verra_relation()); }

TEST_CASE("ring axioms on random classes") {
  const auto ring = groth::groth_ring();
  Pcg32 rng(4242);
  auto random_class = [&]() {
    GrothClass acc = GrothClass::zero(ring);
    const int nterms = 1 + static_cast<int>(rng.below(4));
    for (int t = 0; t < nterms; ++t) {
      std::vector<std::uint16_t> e(5, 0);
      for (auto& x : e) x = static_cast<std::uint16_t>(rng.below(3));
      const long coeff = static_cast<long>(rng.below(9)) - 4;
      acc = acc + GrothClass::monomial(ring, algebra::mono_make(std::move(e)),
                                       algebra::Rational(coeff));
    }
    return acc;
  };
  for (int it = 0; it < 40; ++it) {
    const GrothClass a = random_class(), b = random_class(), x = random_class();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * x == a * x + b * x);
    CHECK((a * b) * x == a * (b * x));
    CHECK((a - a).is_zero());
  }
}
