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

#include <map>

#include "verra/verra_family.hpp"

using namespace verra;
using namespace verra::family;

// Seed 1 over F_10007 passes the whole pipeline: smooth threefold, smooth
// sextics, and point counts that differ at all five default primes.
static constexpr std::uint64_t kGoodSeed = 1;

namespace {

FPoly fermat_quadric(const algebra::RingPtr& ring) {
  FPoly q = FPoly::zero(ring);
  for (const auto& n : x_names())
    q += FPoly::variable(ring, n) * FPoly::variable(ring, n);
  return q;
}

FPoly pv(const algebra::RingPtr& r, const std::string& n, int e) {
  FPoly out = FPoly::constant(r, 1);
  for (int i = 0; i < e; ++i) out *= FPoly::variable(r, n);
  return out;
}

FPoly rename_y_to_x(const FPoly& f, const algebra::RingPtr& xr) {
  std::map<std::string, FPoly> images;
  for (int i = 0; i < 3; ++i)
    images.emplace(y_names()[static_cast<std::size_t>(i)],
                   FPoly::variable(xr, x_names()[static_cast<std::size_t>(i)]));
  return f.substitute(xr, images);
}

FPoly diagonal_restriction(const VerraMember& m) {
  std::map<std::string, FPoly> images;
  for (int i = 0; i < 3; ++i)
    images.emplace(
        y_names()[static_cast<std::size_t>(i)],
        FPoly::variable(m.ring, x_names()[static_cast<std::size_t>(i)]));
  return m.f.substitute(m.ring, images);
}

}  // namespace

TEST_CASE("build and diagonal tangency") {
  const long p = 10007;
  const auto ring = member_ring(p);
  const FPoly q = fermat_quadric(ring);
  const FPoly z = FPoly::zero(ring);

  SECTION("fermat with zero correction terms") {
    const VerraMember m = build_verra(ring, q, z, z, z);
    std::map<std::string, FPoly> to_y;
    for (int i = 0; i < 3; ++i)
      to_y.emplace(x_names()[static_cast<std::size_t>(i)],
                   FPoly::variable(ring, y_names()[static_cast<std::size_t>(i)]));
    CHECK(m.f == q * q.substitute(ring, to_y));
  }

  SECTION("tangency across 100 seeds") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const VerraMember m = random_member(seed, p);
      CHECK(diagonal_restriction(m) == m.q * m.q);
    }
  }

  SECTION("degree validation") {
    const FPoly x0 = FPoly::variable(ring, "x0");
    const FPoly y0 = FPoly::variable(ring, "y0");
    CHECK_THROWS_AS(build_verra(ring, x0, z, z, z), std::invalid_argument);
    CHECK_THROWS_AS(build_verra(ring, q, x0 * x0 * y0, z, z),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_verra(ring, q * y0, z, z, z), std::invalid_argument);
  }
}

TEST_CASE("random members") {
  const long p = 10007;

  SECTION("determinism and shape") {
    const VerraMember a = random_member(7, p);
    const VerraMember b = random_member(7, p);
    CHECK(a.f == b.f);
    CHECK(a.seed == 7);
    const auto xi = algebra::var_indices(a.ring, x_names());
    const auto yi = algebra::var_indices(a.ring, y_names());
    CHECK(algebra::is_homogeneous_in_set(a.f, xi, 2));
    CHECK(algebra::is_homogeneous_in_set(a.f, yi, 2));
  }

  SECTION("generic expansion size") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const VerraMember m = random_member(seed, p);
      CHECK(m.f.nterms() >= 25);
      CHECK(m.f.nterms() <= 36);
    }
  }

  SECTION("fixed fermat flag") {
    const VerraMember m = random_member(3, p, /*fixed_fermat=*/true);
    CHECK(m.q == fermat_quadric(m.ring));
  }

  SECTION("same seed reduces one member at two primes") {
    const VerraMember big = random_member(11, 10007);
    const VerraMember small = random_member(11, 101);
    CHECK(big.f.nterms() >= small.f.nterms());
  }
}

TEST_CASE("discriminant sextics") {
  const long p = 10007;

  SECTION("fermat with zero l gives 8 q(y)^3") {
    const auto ring = member_ring(p);
    const FPoly z = FPoly::zero(ring);
    const VerraMember m = build_verra(ring, fermat_quadric(ring), z, z, z);
    const SexticPair s = discriminant_sextics(m);
    const auto yr = s.s1.ring();
    FPoly qy = FPoly::zero(yr);
    for (const auto& n : y_names())
      qy += FPoly::variable(yr, n) * FPoly::variable(yr, n);
    CHECK(s.s1 == FPoly::constant(yr, 8) * qy * qy * qy);
    CHECK(s.s2 == rename_y_to_x(s.s1, s.s2.ring()));
  }

  SECTION("degree six for 20 random members") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const SexticPair s = discriminant_sextics(random_member(seed, p));
      CHECK(s.s1.total_degree() == 6);
      CHECK(s.s2.total_degree() == 6);
      const auto yi = algebra::var_indices(s.s1.ring(), y_names());
      CHECK(algebra::is_homogeneous_in_set(s.s1, yi, 6));
    }
  }

  SECTION("x-y symmetric member yields renamed sextics") {
    const auto ring = member_ring(p);
    const FPoly x0 = FPoly::variable(ring, "x0");
    const FPoly x1 = FPoly::variable(ring, "x1");
    const FPoly y0 = FPoly::variable(ring, "y0");
    const FPoly y1 = FPoly::variable(ring, "y1");
    // the minor and l1 = x0 y1 - x1 y0 both flip sign under the x-y swap,
    // so their product keeps F symmetric
    const FPoly skew = x0 * y1 - x1 * y0;
    const FPoly z = FPoly::zero(ring);
    const VerraMember m = build_verra(ring, fermat_quadric(ring), skew, z, z);
    const SexticPair s = discriminant_sextics(m);
    CHECK(s.s2 == rename_y_to_x(s.s1, s.s2.ring()));
  }

  SECTION("characteristic 2 rejected") {
    const auto ring = member_ring(2);
    const FPoly z = FPoly::zero(ring);
    const VerraMember m = build_verra(ring, fermat_quadric(ring), z, z, z);
    CHECK_THROWS_AS(discriminant_sextics(m), std::invalid_argument);
  }
}

TEST_CASE("family parameter audit") {
  CHECK(family_parameter_count() == 18);
  CHECK(family_parameter_count() == 6 + 3 * 9 - 6 - 1 - 8);
}

TEST_CASE("plane curve smoothness") {
  const auto xr = plane_ring(10007, 'x');

  SECTION("fermat sextic is smooth") {
    const FPoly f = pv(xr, "x0", 6) + pv(xr, "x1", 6) + pv(xr, "x2", 6);
    CHECK(is_smooth_plane_curve(f));
  }

  SECTION("binary sextic is singular at a coordinate point") {
    CHECK_FALSE(is_smooth_plane_curve(pv(xr, "x0", 6) + pv(xr, "x1", 6)));
  }

  SECTION("tripled conic is nowhere smooth") {
    const FPoly c = pv(xr, "x0", 2) + pv(xr, "x1", 2) + pv(xr, "x2", 2);
    CHECK_FALSE(is_smooth_plane_curve(c * c * c));
  }

  SECTION("bad characteristic rejected") {
    const auto r3 = plane_ring(3, 'x');
    CHECK_THROWS_AS(is_smooth_plane_curve(pv(r3, "x0", 6)),
                    std::invalid_argument);
  }
}

TEST_CASE("threefold smoothness") {
  const long p = 10007;
  const auto ring = member_ring(p);
  const FPoly z = FPoly::zero(ring);

  SECTION("product of quadrics is singular along the base locus") {
    const VerraMember m = build_verra(ring, fermat_quadric(ring), z, z, z);
    CHECK_FALSE(is_smooth_verra_threefold(m));
  }

  SECTION("degenerate monomial member") {
    VerraMember m;
    m.ring = ring;
    m.q = pv(ring, "x0", 2);
    m.l = {z, z, z};
    m.f = pv(ring, "x0", 2) * pv(ring, "y0", 2);
    m.prime = p;
    CHECK_FALSE(is_smooth_verra_threefold(m));
  }

  SECTION("recorded good seed is smooth") {
    CHECK(is_smooth_verra_threefold(random_member(kGoodSeed, p)));
  }
}

TEST_CASE("point counts") {
  const long p = 101;
  const auto xr = plane_ring(p, 'x');

  SECTION("known curves") {
    CHECK(count_points_plane_curve(FPoly::variable(xr, "x0"), p) == p + 1);
    const FPoly conic = FPoly::variable(xr, "x0") * FPoly::variable(xr, "x2") -
                        FPoly::variable(xr, "x1") * FPoly::variable(xr, "x1");
    CHECK(count_points_plane_curve(conic, p) == p + 1);
    CHECK(count_points_plane_curve(FPoly::zero(xr), p) == p * p + p + 1);
  }

  SECTION("prime cap") {
    const auto big = plane_ring(20023, 'x');
    CHECK_THROWS_AS(count_points_plane_curve(FPoly::variable(big, "x0"), 20023),
                    algebra::BudgetExceeded);
  }

  SECTION("count is a linear-change invariant for a smooth sextic") {
    const SexticPair s = discriminant_sextics(random_member(kGoodSeed, p));
    const FPoly base = rename_y_to_x(s.s1, xr);
    const long expected = count_points_plane_curve(base, p);
    Pcg32 rng(99);
    int tried = 0;
    while (tried < 5) {
      std::vector<std::vector<FPoly>> a(3, std::vector<FPoly>());
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          a[static_cast<std::size_t>(i)].push_back(
              FPoly::constant(xr, Fp(rng.below(101), 101)));
      if (algebra::poly_det(a).is_zero()) continue;
      ++tried;
      const FPoly moved = algebra::substitute_linear(base, a, x_names(), xr);
      CHECK(count_points_plane_curve(moved, p) == expected);
    }
  }
}

TEST_CASE("projective equivalence system") {
  const long p = 101;
  const auto xr = plane_ring(p, 'x');
  const FPoly fer = pv(xr, "x0", 6) + pv(xr, "x1", 6) + pv(xr, "x2", 6);

  SECTION("identity") { CHECK(sextics_projectively_equivalent(fer, fer)); }

  SECTION("permutation and scaling") {
    const FPoly g = pv(xr, "x0", 6) + FPoly::constant(xr, 2) * pv(xr, "x1", 6) +
                    FPoly::constant(xr, 3) * pv(xr, "x2", 6);
    const FPoly g_swapped = pv(xr, "x1", 6) +
                            FPoly::constant(xr, 2) * pv(xr, "x0", 6) +
                            FPoly::constant(xr, 3) * pv(xr, "x2", 6);
    CHECK(sextics_projectively_equivalent(g, g_swapped));
    const FPoly scaled = FPoly::constant(xr, 64) * pv(xr, "x0", 6) +
                         pv(xr, "x1", 6) + pv(xr, "x2", 6);
    CHECK(sextics_projectively_equivalent(fer, scaled));
  }

  SECTION("random linear change of a discriminant sextic") {
    const SexticPair s = discriminant_sextics(random_member(kGoodSeed, p));
    const FPoly base = rename_y_to_x(s.s1, xr);
    Pcg32 rng(4);
    std::vector<std::vector<FPoly>> a(3, std::vector<FPoly>());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        a[static_cast<std::size_t>(i)].push_back(
            FPoly::constant(xr, Fp(rng.below(101), 101)));
    REQUIRE_FALSE(algebra::poly_det(a).is_zero());
    const FPoly moved = algebra::substitute_linear(fer, a, x_names(), xr);
    // fermat transformed by a random matrix: still equivalent to fermat
    CHECK(sextics_projectively_equivalent(fer, moved));
    // and the dense discriminant sextic is not fermat's orbit, generically
    CHECK_FALSE(sextics_projectively_equivalent(base, fer));
  }

  SECTION("dense against dense exhausts a small budget") {
    const SexticPair s = discriminant_sextics(random_member(kGoodSeed, p));
    const FPoly s1x = rename_y_to_x(s.s1, xr);
    algebra::GroebnerBudget tight;
    tight.max_pairs = 200;
    CHECK_THROWS_AS(sextics_projectively_equivalent(s1x, s.s2, tight),
                    algebra::BudgetExceeded);
  }
}

TEST_CASE("certification pipeline") {
  SECTION("recorded good seed certifies through point counts") {
    const CertificationReport rep = certify(kGoodSeed, 10007);
    CHECK(rep.seed == kGoodSeed);
    CHECK(rep.prime == 10007);
    CHECK(rep.verra_smooth);
    CHECK(rep.sextic_smooth.first);
    CHECK(rep.sextic_smooth.second);
    CHECK(rep.point_counts.size() == 5);
    bool differ = false;
    for (const auto& [cp, c1, c2] : rep.point_counts)
      if (c1 != c2) differ = true;
    CHECK(differ);
    CHECK_FALSE(rep.pgl3_unit_ideal.has_value());
    CHECK(rep.conclusion == "certified");
  }

  SECTION("forced degenerate member retries") {
    CertifyOptions opt;
    opt.force_zero_l = true;
    const CertificationReport rep = certify(5, 10007, opt);
    CHECK_FALSE(rep.verra_smooth);
    CHECK(rep.conclusion == "retry");
  }

  SECTION("prime list controls the point count rows") {
    CertifyOptions opt;
    opt.count_primes = {101, 103, 107};
    const CertificationReport rep = certify(kGoodSeed, 10007, opt);
    CHECK(rep.point_counts.size() == 3);
    CHECK(std::get<0>(rep.point_counts[0]) == 101);
    CHECK(std::get<0>(rep.point_counts[2]) == 107);
  }

  SECTION("bad certification prime rejected") {
    CHECK_THROWS_AS(certify(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(certify(1, 3), std::invalid_argument);
  }
}
