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

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "verra/multipoly.hpp"
#include "verra/rational.hpp"

// Free polynomial model of the handful of motivic identities we need:
// formal generators L (affine line), surface classes s1, s2, the plane
// class p2, and the fourfold class x_cl.  No scissor relations.

namespace verra::groth {

using algebra::Rational;

using GrothClass = algebra::MultiPoly<Rational>;

inline algebra::RingPtr groth_ring(
    const std::vector<std::string>& extra = {}) {
  std::vector<std::string> names = {"L", "s1", "s2", "p2", "x_cl"};
  names.insert(names.end(), extra.begin(), extra.end());
  return algebra::make_ring(names, 0, algebra::TermOrder::grevlex());
}

inline GrothClass parse_class(const algebra::RingPtr& ring,
                              const std::string& text) {
  return GrothClass::parse(ring, text);
}

// 1 + L + ... + L^n
inline GrothClass expand_projective_space(const algebra::RingPtr& ring, int n) {
  if (n < 0)
    throw std::invalid_argument("expand_projective_space: negative dimension");
  const GrothClass l = GrothClass::variable(ring, "L");
  GrothClass acc = GrothClass::constant(ring, 1);
  GrothClass pw = GrothClass::constant(ring, 1);
  for (int k = 1; k <= n; ++k) {
    pw = pw * l;
    acc = acc + pw;
  }
  return acc;
}

// x_cl = p2 (1 + L^2) + s_i L for i = 1, 2; the difference of the two
// substitutions must be (s1 - s2) L identically, with or without p2
// expanded to an explicit plane class.
inline bool verify_verra_relation() {
  const auto ring = groth_ring();
  const GrothClass x = GrothClass::variable(ring, "x_cl");
  const GrothClass l = GrothClass::variable(ring, "L");
  const GrothClass p2 = GrothClass::variable(ring, "p2");
  const GrothClass s1 = GrothClass::variable(ring, "s1");
  const GrothClass s2 = GrothClass::variable(ring, "s2");
  const GrothClass shell = p2 * (GrothClass::constant(ring, 1) + l * l);

  const GrothClass x1 = x.substitute(ring, {{"x_cl", shell + s1 * l}});
  const GrothClass x2 = x.substitute(ring, {{"x_cl", shell + s2 * l}});
  const GrothClass want = (s1 - s2) * l;
  if (!((x1 - x2) - want).is_zero()) return false;

  // s1 = s2 collapses the difference
  const GrothClass tied = (x1 - x2).substitute(ring, {{"s2", s1}});
  if (!tied.is_zero()) return false;

  // p2 plays no role
  const GrothClass plane = expand_projective_space(ring, 2);
  const GrothClass y1 = x1.substitute(ring, {{"p2", plane}});
  const GrothClass y2 = x2.substitute(ring, {{"p2", plane}});
  return ((y1 - y2) - want).is_zero();
}

}  // namespace verra::groth
