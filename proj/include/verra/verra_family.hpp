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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "verra/ideal.hpp"
#include "verra/multipoly.hpp"
#include "verra/prime_field.hpp"
#include "verra/rng.hpp"

// Bidegree-(2,2) divisors in P2 x P2 of the shape
//
//   F = q(x) q(y) + (x0 y1 - x1 y0) l1 + (x0 y2 - x2 y0) l2
//                 + (x1 y2 - x2 y1) l3
//
// with q a ternary quadric and each l_i a rank-one (1,1) form.  F restricts
// to q(x)^2 on the diagonal.  Each projection to P2 is a conic bundle; its
// discriminant is a plane sextic.  Everything here works over F_p and the
// verdicts are finite-field evidence, not characteristic-zero proofs.

namespace verra::family {

using algebra::BudgetExceeded;
using algebra::Fp;
using algebra::GroebnerBudget;
using algebra::MultiPoly;
using algebra::PolyIdeal;
using algebra::RingPtr;

using FPoly = MultiPoly<Fp>;
using FIdeal = PolyIdeal<Fp>;

inline const std::vector<std::string>& x_names() {
  static const std::vector<std::string> n = {"x0", "x1", "x2"};
  return n;
}
inline const std::vector<std::string>& y_names() {
  static const std::vector<std::string> n = {"y0", "y1", "y2"};
  return n;
}

inline RingPtr member_ring(long p) {
  return algebra::make_ring({"x0", "x1", "x2", "y0", "y1", "y2"},
                            static_cast<std::uint64_t>(p));
}

/* Plane curves live in a 3-variable ring; axis picks the variable names so
 * that discriminants keep the names of the base they live over. */
inline RingPtr plane_ring(long p, char axis) {
  if (axis == 'x') return algebra::make_ring(x_names(), static_cast<std::uint64_t>(p));
  if (axis == 'y') return algebra::make_ring(y_names(), static_cast<std::uint64_t>(p));
  throw std::invalid_argument("plane_ring: axis must be 'x' or 'y'");
}

struct VerraMember {
  RingPtr ring;            // F_p[x0,x1,x2,y0,y1,y2]
  FPoly q;                 // ternary quadric in the x variables
  std::array<FPoly, 3> l;  // bidegree (1,1)
  FPoly f;                 // the assembled bidegree-(2,2) equation
  long prime = 0;
  std::uint64_t seed = 0;  // 0 for hand-built members
};

namespace detail {

inline FPoly var(const RingPtr& r, const std::string& n) {
  return FPoly::variable(r, n);
}

/* x0 y1 - x1 y0 and friends */
inline FPoly minor2(const RingPtr& r, int a, int b) {
  return var(r, x_names()[static_cast<std::size_t>(a)]) *
             var(r, y_names()[static_cast<std::size_t>(b)]) -
         var(r, x_names()[static_cast<std::size_t>(b)]) *
             var(r, y_names()[static_cast<std::size_t>(a)]);
}

inline FPoly swap_xy(const FPoly& f) {
  std::map<std::string, FPoly> images;
  const RingPtr& r = f.ring();
  for (int i = 0; i < 3; ++i) {
    images.emplace(x_names()[static_cast<std::size_t>(i)],
                   var(r, y_names()[static_cast<std::size_t>(i)]));
    images.emplace(y_names()[static_cast<std::size_t>(i)],
                   var(r, x_names()[static_cast<std::size_t>(i)]));
  }
  return f.substitute(r, images);
}

}  // namespace detail

inline VerraMember build_verra(const RingPtr& ring, const FPoly& q,
                               const FPoly& l1, const FPoly& l2,
                               const FPoly& l3) {
  const auto xi = algebra::var_indices(ring, x_names());
  const auto yi = algebra::var_indices(ring, y_names());
  if (q.is_zero() || !algebra::is_homogeneous_in_set(q, xi, 2) ||
      algebra::degree_in_set(q, yi) > 0)
    throw std::invalid_argument("build_verra: q must be a ternary x-quadric");
  const std::array<const FPoly*, 3> ls = {&l1, &l2, &l3};
  for (const FPoly* l : ls) {
    if (l->is_zero()) continue;
    if (!algebra::is_homogeneous_in_set(*l, xi, 1) ||
        !algebra::is_homogeneous_in_set(*l, yi, 1))
      throw std::invalid_argument("build_verra: l_i must have bidegree (1,1)");
  }
  std::map<std::string, FPoly> to_y;
  for (int i = 0; i < 3; ++i)
    to_y.emplace(x_names()[static_cast<std::size_t>(i)],
                 detail::var(ring, y_names()[static_cast<std::size_t>(i)]));
  const FPoly qy = q.substitute(ring, to_y);
  VerraMember m;
  m.ring = ring;
  m.q = q;
  m.l = {l1, l2, l3};
  m.f = q * qy + detail::minor2(ring, 0, 1) * l1 +
        detail::minor2(ring, 0, 2) * l2 + detail::minor2(ring, 1, 2) * l3;
  m.prime = static_cast<long>(ring->characteristic());
  return m;
}

/* Coefficients are drawn as integers below 2^30 and reduced mod p, so the
 * same seed names one integral member and its reductions at every prime.
 * Point counts at several small primes then describe one object. */
inline constexpr std::uint32_t kCoeffRange = 1u << 30;

inline VerraMember random_member(std::uint64_t seed, long p,
                                 bool fixed_fermat = false) {
  if (p < 2) throw std::invalid_argument("random_member: prime required");
  const RingPtr ring = member_ring(p);
  Pcg32 rng(seed);
  auto draw = [&]() {
    return Fp(rng.below(kCoeffRange) % static_cast<std::uint64_t>(p),
              static_cast<std::uint64_t>(p));
  };
  auto linear_form = [&](const std::vector<std::string>& names) {
    for (;;) {
      std::array<Fp, 3> c = {draw(), draw(), draw()};
      FPoly out = FPoly::zero(ring);
      for (int i = 0; i < 3; ++i)
        out += FPoly::constant(ring, c[static_cast<std::size_t>(i)]) *
               detail::var(ring, names[static_cast<std::size_t>(i)]);
      if (!out.is_zero()) return out;
    }
  };
  FPoly q = FPoly::zero(ring);
  if (fixed_fermat) {
    for (const auto& n : x_names()) q += detail::var(ring, n) * detail::var(ring, n);
  } else {
    // slot order x0^2, x0x1, x1^2, x0x2, x1x2, x2^2
    static const int kSlots[6][2] = {{0, 0}, {0, 1}, {1, 1},
                                     {0, 2}, {1, 2}, {2, 2}};
    while (q.is_zero()) {
      q = FPoly::zero(ring);
      for (const auto& s : kSlots)
        q += FPoly::constant(ring, draw()) *
             detail::var(ring, x_names()[static_cast<std::size_t>(s[0])]) *
             detail::var(ring, x_names()[static_cast<std::size_t>(s[1])]);
    }
  }
  std::array<FPoly, 3> l;
  for (int i = 0; i < 3; ++i)
    l[static_cast<std::size_t>(i)] = linear_form(x_names()) * linear_form(y_names());
  VerraMember m = build_verra(ring, q, l[0], l[1], l[2]);
  m.seed = seed;
  return m;
}

struct SexticPair {
  FPoly s1;  // in y0,y1,y2: F read as a conic in x degenerates over {s1 = 0}
  FPoly s2;  // in x0,x1,x2, same with the roles of x and y exchanged
};

namespace detail {

/* Discriminant of f read as a quadratic form in fiber_names: coefficients
 * V0..V5 in slot order v0^2, v0v1, v1^2, v0v2, v1v2, v2^2, then
 * det {{2V0,V1,V3},{V1,2V2,V4},{V3,V4,2V5}}. */
inline FPoly fiber_discriminant(const FPoly& f,
                                const std::vector<std::string>& fiber_names) {
  const RingPtr& r = f.ring();
  static const std::uint16_t kExp[6][3] = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0},
                                           {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  std::array<FPoly, 6> v = {FPoly::zero(r), FPoly::zero(r), FPoly::zero(r),
                            FPoly::zero(r), FPoly::zero(r), FPoly::zero(r)};
  for (int k = 0; k < 6; ++k)
    v[static_cast<std::size_t>(k)] = algebra::coefficient_in(
        f, fiber_names, {kExp[k][0], kExp[k][1], kExp[k][2]});
  const FPoly two = FPoly::constant(r, 2);
  const std::vector<std::vector<FPoly>> m = {
      {two * v[0], v[1], v[3]},
      {v[1], two * v[2], v[4]},
      {v[3], v[4], two * v[5]}};
  return algebra::poly_det(m);
}

}  // namespace detail

inline SexticPair discriminant_sextics(const VerraMember& m) {
  if (m.ring->characteristic() == 2)
    throw std::invalid_argument(
        "discriminant_sextics: characteristic 2 unsupported");
  const FPoly d1 = detail::fiber_discriminant(m.f, x_names());
  const FPoly d2 = detail::fiber_discriminant(m.f, y_names());
  SexticPair out;
  out.s1 = d1.into_ring(plane_ring(m.prime, 'y'));
  out.s2 = d2.into_ring(plane_ring(m.prime, 'x'));
  return out;
}

/* Smooth iff the Jacobian ideal cuts out nothing in P2, i.e. its saturation
 * by the irrelevant ideal is the unit ideal.  Euler's identity puts f itself
 * in the Jacobian ideal when p does not divide deg f, hence p | 6 rejected. */
inline bool is_smooth_plane_curve(const FPoly& f,
                                  const GroebnerBudget& budget = {}) {
  const RingPtr& r = f.ring();
  if (r->nvars() != 3)
    throw std::invalid_argument("is_smooth_plane_curve: need 3 variables");
  const std::uint64_t p = r->characteristic();
  if (p == 0 || p % 2 == 0 || p % 3 == 0)
    throw std::invalid_argument(
        "is_smooth_plane_curve: characteristic must be a prime not dividing 6");
  if (f.is_zero()) return false;
  std::vector<FPoly> jac;
  std::vector<FPoly> irrelevant;
  for (int i = 0; i < 3; ++i) {
    jac.push_back(f.derivative(r->var(i)));
    irrelevant.push_back(FPoly::variable(r, r->var(i)));
  }
  const FIdeal sat =
      algebra::saturate(FIdeal(r, jac), FIdeal(r, irrelevant), budget);
  return sat.is_unit(budget);
}

/* Singular locus of {F = 0} in P2 x P2 is empty iff every product x_i y_j
 * lies in the radical of <F, all partials>; that is the generator-wise form
 * of "saturation by the product of the irrelevant ideals is the unit ideal".
 * Radical membership has an early exit, a full bigraded saturation does not. */
inline bool is_smooth_verra_threefold(const VerraMember& m,
                                      const GroebnerBudget& budget = {}) {
  const RingPtr& r = m.ring;
  std::vector<FPoly> gens = {m.f};
  for (int i = 0; i < 6; ++i) gens.push_back(m.f.derivative(r->var(i)));
  const FIdeal sing(r, gens);
  for (const auto& xn : x_names())
    for (const auto& yn : y_names()) {
      const FPoly g = detail::var(r, xn) * detail::var(r, yn);
      if (!algebra::radical_membership(sing, g, budget)) return false;
    }
  return true;
}

inline constexpr long kPointCountPrimeCap = 20011;

/* Exact count of {f = 0} in P2(F_p) over the standard representatives
 * [1:a:b], [0:1:b], [0:0:1]. */
inline long count_points_plane_curve(const FPoly& f, long p) {
  const RingPtr& r = f.ring();
  if (r->nvars() != 3)
    throw std::invalid_argument("count_points_plane_curve: need 3 variables");
  if (static_cast<std::uint64_t>(p) != r->characteristic())
    throw std::invalid_argument(
        "count_points_plane_curve: prime does not match the coefficient field");
  if (p > kPointCountPrimeCap)
    throw BudgetExceeded("point count at p = " + std::to_string(p) +
                         " past the cap " + std::to_string(kPointCountPrimeCap));
  if (f.is_zero()) return p * p + p + 1;
  const std::uint64_t up = static_cast<std::uint64_t>(p);
  auto eval = [&](Fp v0, Fp v1, Fp v2) {
    Fp acc(0, up);
    for (const auto& t : f.terms()) {
      Fp c = t.second;
      const std::array<Fp, 3> v = {v0, v1, v2};
      for (int i = 0; i < 3; ++i)
        for (std::uint16_t e = 0; e < t.first.e[static_cast<std::size_t>(i)]; ++e)
          c *= v[static_cast<std::size_t>(i)];
      acc += c;
    }
    return acc.value() == 0;
  };
  long count = 0;
  const Fp zero(0, up), one(1, up);
  for (std::uint64_t a = 0; a < up; ++a)
    for (std::uint64_t b = 0; b < up; ++b)
      if (eval(one, Fp(a, up), Fp(b, up))) ++count;
  for (std::uint64_t b = 0; b < up; ++b)
    if (eval(zero, one, Fp(b, up))) ++count;
  if (eval(zero, zero, one)) ++count;
  return count;
}

/* Projective equivalence as a polynomial system over F_p: unknown matrix
 * A = (z1..z9), scale lambda, and one Rabinowitsch variable u enforcing
 * u * det(A) * lambda = 1.  The forms are equivalent over the algebraic
 * closure iff the system has a solution, i.e. iff the ideal is not the unit
 * ideal.  Passing s2 = s1 asks for automorphisms instead; the identity
 * always solves that system.
 *
 * Equivalence is symmetric, so the system is assembled with the sparser of
 * the two forms on the transformed side.  The Groebner cost is driven by the
 * term count of the transformed form; both orientations decide the same
 * predicate.  Dense-against-dense instances routinely exhaust the budget. */
inline bool sextics_projectively_equivalent(const FPoly& s1_in,
                                            const FPoly& s2_in,
                                            const GroebnerBudget& budget = {}) {
  const bool flip = s1_in.nterms() < s2_in.nterms();
  const FPoly& s1 = flip ? s2_in : s1_in;
  const FPoly& s2 = flip ? s1_in : s2_in;
  const RingPtr& r1 = s1.ring();
  const RingPtr& r2 = s2.ring();
  if (r1->nvars() != 3 || r2->nvars() != 3)
    throw std::invalid_argument(
        "sextics_projectively_equivalent: need ternary forms");
  if (r1->characteristic() != r2->characteristic() ||
      r1->characteristic() == 0)
    throw std::invalid_argument(
        "sextics_projectively_equivalent: need a common prime field");
  const std::uint64_t p = r1->characteristic();
  std::vector<std::string> wnames;
  for (int i = 1; i <= 9; ++i) wnames.push_back("z" + std::to_string(i));
  wnames.push_back("lam");
  wnames.push_back("u");
  std::vector<std::string> snames = wnames;
  for (const auto& n : x_names()) wnames.push_back(n);
  const RingPtr work = algebra::make_ring(wnames, p);
  const RingPtr sys = algebra::make_ring(snames, p);

  std::vector<std::vector<FPoly>> A(3, std::vector<FPoly>());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      A[static_cast<std::size_t>(i)].push_back(
          detail::var(work, "z" + std::to_string(3 * i + j + 1)));

  /* read both forms in the x names so one substitution applies to either */
  std::map<std::string, FPoly> rename;
  for (int i = 0; i < 3; ++i)
    rename.emplace(r2->var(i), detail::var(work, x_names()[static_cast<std::size_t>(i)]));
  const FPoly s2w = s2.substitute(work, rename);
  rename.clear();
  for (int i = 0; i < 3; ++i)
    rename.emplace(r1->var(i), detail::var(work, x_names()[static_cast<std::size_t>(i)]));
  const FPoly s1w = s1.substitute(work, rename);

  const FPoly transformed = algebra::substitute_linear(s2w, A, x_names(), work);
  const FPoly diff = transformed - detail::var(work, "lam") * s1w;
  std::vector<FPoly> gens;
  for (auto& [exps, coeff] : algebra::coefficient_decomposition(diff, x_names()))
    gens.push_back(coeff.into_ring(sys));
  gens.push_back(detail::var(sys, "u") *
                     algebra::poly_det(A).into_ring(sys) *
                     detail::var(sys, "lam") -
                 FPoly::constant(sys, 1));
  return !FIdeal(sys, std::move(gens)).is_unit(budget);
}

struct CertifyOptions {
  bool fixed_fermat = false;
  bool force_zero_l = false;  // degenerate member, for exercising retry
  std::vector<long> count_primes = {101, 103, 107, 109, 113};
  bool with_pgl3 = false;
  long pgl3_prime = 101;
  GroebnerBudget budget = {};
};

struct CertificationReport {
  std::uint64_t seed = 0;
  long prime = 0;
  bool verra_smooth = false;
  std::pair<bool, bool> sextic_smooth = {false, false};
  std::vector<std::tuple<long, long, long>> point_counts;
  std::optional<bool> pgl3_unit_ideal;
  std::string conclusion;  // certified | retry | inconclusive
};

inline VerraMember certify_member(std::uint64_t seed, long p,
                                  const CertifyOptions& opt) {
  if (opt.force_zero_l) {
    const RingPtr ring = member_ring(p);
    FPoly q = FPoly::zero(ring);
    for (const auto& n : x_names()) q += detail::var(ring, n) * detail::var(ring, n);
    const FPoly z = FPoly::zero(ring);
    VerraMember m = build_verra(ring, q, z, z, z);
    m.seed = seed;
    return m;
  }
  return random_member(seed, p, opt.fixed_fermat);
}

inline CertificationReport certify(std::uint64_t seed, long p,
                                   const CertifyOptions& opt = {}) {
  if (p < 5 || p % 2 == 0 || p % 3 == 0)
    throw std::invalid_argument("certify: prime must not divide 6");
  CertificationReport rep;
  rep.seed = seed;
  rep.prime = p;
  try {
    const VerraMember m = certify_member(seed, p, opt);
    rep.verra_smooth = is_smooth_verra_threefold(m, opt.budget);
    const SexticPair s = discriminant_sextics(m);
    if (s.s1.total_degree() != 6 || s.s2.total_degree() != 6) {
      rep.conclusion = "retry";
      return rep;
    }
    rep.sextic_smooth.first = is_smooth_plane_curve(s.s1, opt.budget);
    rep.sextic_smooth.second = is_smooth_plane_curve(s.s2, opt.budget);
    if (!rep.verra_smooth || !rep.sextic_smooth.first ||
        !rep.sextic_smooth.second) {
      rep.conclusion = "retry";
      return rep;
    }
    bool counts_differ = false;
    for (long cp : opt.count_primes) {
      const VerraMember mc = certify_member(seed, cp, opt);
      const SexticPair sc = discriminant_sextics(mc);
      const long c1 = count_points_plane_curve(sc.s1, cp);
      const long c2 = count_points_plane_curve(sc.s2, cp);
      rep.point_counts.emplace_back(cp, c1, c2);
      if (c1 != c2) counts_differ = true;
    }
    if (counts_differ) {
      rep.conclusion = "certified";
      return rep;
    }
    if (opt.with_pgl3) {
      const VerraMember mp = certify_member(seed, opt.pgl3_prime, opt);
      const SexticPair sp = discriminant_sextics(mp);
      const bool equivalent =
          sextics_projectively_equivalent(sp.s1, sp.s2, opt.budget);
      rep.pgl3_unit_ideal = !equivalent;
      rep.conclusion = equivalent ? "retry" : "certified";
      return rep;
    }
    rep.conclusion = "inconclusive";
    return rep;
  } catch (const BudgetExceeded&) {
    rep.conclusion = "inconclusive";
    return rep;
  }
}

/* Moduli audit for the family: coefficients of (q, l1, l2, l3), minus
 * rescalings of the six linear factors, minus one overall scale, minus the
 * diagonal PGL3. */
inline int family_parameter_count() { return 6 + 3 * 9 - 6 - 1 - 8; }

}  // namespace verra::family
