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

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "verra/lattice.hpp"
#include "verra/multipoly.hpp"
#include "verra/rational.hpp"

// Twisted K3 lattice bookkeeping inside the extended Mukai lattice
// 4U + 2E8(-1).  Ambient basis order is fixed throughout:
//   [i1 i2 j1 j2 m1 m2 n1 n2 e1..e8 f1..f8]
// with hyperbolic planes I = <i1,i2>, J = <j1,j2>, M = <m1,m2>, N = <n1,n2>.

namespace verra::mukai {

using algebra::BigInt;
using algebra::Rational;
using lattice::IntLattice;
using lattice::QMat;
using lattice::ZMat;

using QPoly = algebra::MultiPoly<Rational>;

// Mukai vector (r, c, s) with c written over the rank-2 slice <H, B> of the
// degree-2 part.  H.H = 2, H.B = 0, B.B = 0.
struct MukaiVector {
  Rational r;
  Rational ch;  // H-component of c
  Rational cb;  // B-component of c
  Rational s;
};

// (r,c,s).(r',c',s') = c.c' - r s' - r' s
inline Rational mukai_pairing(const MukaiVector& a, const MukaiVector& b) {
  return a.ch * b.ch * Rational(2) - a.r * b.s - b.r * a.s;
}

inline ZMat mukai_gram(const std::vector<MukaiVector>& vs) {
  const int n = static_cast<int>(vs.size());
  ZMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational p = mukai_pairing(vs[static_cast<std::size_t>(i)],
                                       vs[static_cast<std::size_t>(j)]);
      if (!p.is_integer())
        throw std::invalid_argument("mukai_gram: non-integral pairing");
      g.at(i, j) = p.num();
    }
  return g;
}

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("mukai fixture: ") + what);
}

}  // namespace detail

// ambient index map
inline constexpr int kI1 = 0, kI2 = 1, kJ1 = 2, kJ2 = 3;
inline constexpr int kM1 = 4, kM2 = 5, kN1 = 6, kN2 = 7;
inline constexpr int kE0 = 8, kF0 = 16, kRank = 24;

inline IntLattice lambda_tilde() {
  using lattice::e8_lattice;
  using lattice::hyperbolic_plane;
  std::vector<std::string> es, fs;
  for (int k = 1; k <= 8; ++k) {
    es.push_back("e" + std::to_string(k));
    fs.push_back("f" + std::to_string(k));
  }
  return lattice::direct_sum(
      {hyperbolic_plane("i1", "i2"), hyperbolic_plane("j1", "j2"),
       hyperbolic_plane("m1", "m2"), hyperbolic_plane("n1", "n2"),
       e8_lattice(es, -1), e8_lattice(fs, -1)});
}

namespace detail {

inline std::vector<BigInt> unit24(int k) {
  std::vector<BigInt> v(kRank);
  v[static_cast<std::size_t>(k)] = 1;
  return v;
}

inline std::vector<BigInt> diff24(int a, int b) {
  std::vector<BigInt> v(kRank);
  v[static_cast<std::size_t>(a)] = 1;
  v[static_cast<std::size_t>(b)] = -1;
  return v;
}

inline std::vector<BigInt> sum24(int a, int b) {
  std::vector<BigInt> v(kRank);
  v[static_cast<std::size_t>(a)] = 1;
  v[static_cast<std::size_t>(b)] = 1;
  return v;
}

inline ZMat rows_of(const std::vector<std::vector<BigInt>>& rows) {
  ZMat m(static_cast<int>(rows.size()), kRank);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < kRank; ++j)
      m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

// j/e/f directions shared by T_SB and both splittings
inline std::vector<std::vector<BigInt>> tail_rows() {
  std::vector<std::vector<BigInt>> rows;
  rows.push_back(unit24(kJ1));
  rows.push_back(unit24(kJ2));
  for (int k = 0; k < 8; ++k) rows.push_back(unit24(kE0 + k));
  for (int k = 0; k < 8; ++k) rows.push_back(unit24(kF0 + k));
  return rows;
}

}  // namespace detail

// Pic(S,B) placement <i1+i2, m1+n1, m2+n2>; eta = i1+i2.
inline ZMat build_pic_SB() {
  return detail::rows_of({detail::sum24(kI1, kI2), detail::sum24(kM1, kN1),
                          detail::sum24(kM2, kN2)});
}

// rank-21 complement <i1-i2, m1-n1, m2-n2> + J + 2E8(-1)
inline ZMat build_T_SB() {
  std::vector<std::vector<BigInt>> rows = {detail::diff24(kI1, kI2),
                                           detail::diff24(kM1, kN1),
                                           detail::diff24(kM2, kN2)};
  for (auto& r : detail::tail_rows()) rows.push_back(std::move(r));
  return detail::rows_of(rows);
}

struct Splittings {
  ZMat u1, u2;          // hyperbolic planes <m1+n1, m2>, <m2+n2, m1>
  ZMat lambda1, lambda2;  // their rank-22 orthogonal complements
};

// Lambda_i bases start with the hyperbolic pair (w_i, z_i):
//   w1 = n2-m2, z1 = n1;  w2 = n1-m1, z2 = n2.
inline Splittings define_splittings() {
  Splittings s;
  s.u1 = detail::rows_of({detail::sum24(kM1, kN1), detail::unit24(kM2)});
  s.u2 = detail::rows_of({detail::sum24(kM2, kN2), detail::unit24(kM1)});
  std::vector<std::vector<BigInt>> l1 = {detail::diff24(kN2, kM2),
                                         detail::unit24(kN1),
                                         detail::unit24(kI1),
                                         detail::unit24(kI2)};
  std::vector<std::vector<BigInt>> l2 = {detail::diff24(kN1, kM1),
                                         detail::unit24(kN2),
                                         detail::unit24(kI1),
                                         detail::unit24(kI2)};
  for (auto& r : detail::tail_rows()) {
    l1.push_back(r);
    l2.push_back(std::move(r));
  }
  s.lambda1 = detail::rows_of(l1);
  s.lambda2 = detail::rows_of(l2);
  return s;
}

struct Fixture {
  IntLattice ambient;
  ZMat pic;      // 3 x 24
  ZMat t_sb;     // 21 x 24
  Splittings sp;
  QMat proj1, proj2;  // orthogonal projections onto Lambda_i, ambient coords
};

namespace detail {

// P(v) = v - (v.u2) u1 - (v.u1) u2 for a hyperbolic pair u1, u2
inline QMat projection_matrix(const IntLattice& amb, const ZMat& u) {
  require(u.rows() == 2, "projection: need a hyperbolic pair");
  const ZMat g = lattice::induced_gram(amb, u);
  require(g.at(0, 0) == 0 && g.at(1, 1) == 0 && g.at(0, 1) == 1,
          "projection: pair is not hyperbolic");
  QMat p(static_cast<std::size_t>(kRank),
         std::vector<Rational>(static_cast<std::size_t>(kRank)));
  for (int c = 0; c < kRank; ++c) {
    std::vector<BigInt> v = unit24(c);
    BigInt d0, d1;  // v.u1, v.u2
    for (int t = 0; t < kRank; ++t) {
      for (int r = 0; r < kRank; ++r) {
        d0 += u.at(0, t) * amb.gram().at(t, r) * v[static_cast<std::size_t>(r)];
        d1 += u.at(1, t) * amb.gram().at(t, r) * v[static_cast<std::size_t>(r)];
      }
    }
    for (int r = 0; r < kRank; ++r) {
      BigInt e = v[static_cast<std::size_t>(r)] - d1 * u.at(0, r) - d0 * u.at(1, r);
      p[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = Rational(e);
    }
  }
  return p;
}

}  // namespace detail

inline Fixture make_fixture() {
  Fixture fx{lambda_tilde(), build_pic_SB(), build_T_SB(), define_splittings(),
             {}, {}};
  detail::require(fx.ambient.is_unimodular() && fx.ambient.is_even(),
                  "ambient must be even unimodular");
  // each splitting is an internal orthogonal direct sum of full rank
  for (const auto* s : {&fx.sp.u1, &fx.sp.u2}) {
    const ZMat& l = (s == &fx.sp.u1) ? fx.sp.lambda1 : fx.sp.lambda2;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < l.rows(); ++j) {
        BigInt p;
        for (int a = 0; a < kRank; ++a)
          for (int b = 0; b < kRank; ++b)
            p += s->at(i, a) * fx.ambient.gram().at(a, b) * l.at(j, b);
        detail::require(p == 0, "U_i not orthogonal to Lambda_i");
      }
    ZMat stacked(kRank, kRank);
    for (int j = 0; j < kRank; ++j) {
      for (int i = 0; i < 2; ++i) stacked.at(i, j) = s->at(i, j);
      for (int i = 0; i < l.rows(); ++i) stacked.at(2 + i, j) = l.at(i, j);
    }
    const BigInt d = lattice::bareiss_det(stacked);
    detail::require(d == 1 || d == -1, "U_i + Lambda_i must span with index 1");
  }
  fx.proj1 = detail::projection_matrix(fx.ambient, fx.sp.u1);
  fx.proj2 = detail::projection_matrix(fx.ambient, fx.sp.u2);
  return fx;
}

inline const ZMat& lambda_basis(const Fixture& fx, int side) {
  if (side == 1) return fx.sp.lambda1;
  if (side == 2) return fx.sp.lambda2;
  throw std::invalid_argument("side must be 1 or 2");
}

inline std::vector<BigInt> eta_ambient() { return detail::sum24(kI1, kI2); }

// B_i = (m_i - n_i)/2; checked against B.B = B.H = 0
inline std::vector<Rational> brauer_lift(int side) {
  std::vector<Rational> b(static_cast<std::size_t>(kRank));
  const int m = (side == 1) ? kM1 : kM2;
  const int n = (side == 1) ? kN1 : kN2;
  b[static_cast<std::size_t>(m)] = Rational(1, 2);
  b[static_cast<std::size_t>(n)] = Rational(-1, 2);
  return b;
}

// --------------------------------------------------------------------------
// formal periods

// ambient vector with entries linear in lambda1, delta1, delta2, c1..c18
struct FormalPeriod {
  algebra::RingPtr ring;
  std::vector<QPoly> coords;  // length 24
};

inline algebra::RingPtr symbol_ring() {
  std::vector<std::string> names = {"lambda1", "delta1", "delta2"};
  for (int k = 1; k <= 18; ++k) names.push_back("c" + std::to_string(k));
  return algebra::make_ring(names, 0, algebra::TermOrder::grevlex());
}

inline int symbol_count() { return 21; }

// x = lambda1 (i1-i2) + delta1 (m1-n1) + delta2 (m2-n2) + sum c_k t_k
// with t_1..t_18 the j/e/f directions of build_T_SB
inline FormalPeriod generic_period() {
  auto ring = symbol_ring();
  FormalPeriod x{ring, std::vector<QPoly>(static_cast<std::size_t>(kRank),
                                          QPoly::zero(ring))};
  const ZMat t = build_T_SB();
  for (int s = 0; s < symbol_count(); ++s) {
    const QPoly v = QPoly::variable(ring, ring->var(s));
    for (int c = 0; c < kRank; ++c) {
      const BigInt& e = t.at(s, c);
      if (e != 0) {
        auto& dst = x.coords[static_cast<std::size_t>(c)];
        dst = dst + v.scaled(Rational(e));
      }
    }
  }
  return x;
}

inline QPoly formal_pairing(const Fixture& fx, const FormalPeriod& a,
                            const std::vector<BigInt>& b) {
  QPoly acc = QPoly::zero(a.ring);
  for (int i = 0; i < kRank; ++i) {
    BigInt w;
    for (int j = 0; j < kRank; ++j)
      w += fx.ambient.gram().at(i, j) * b[static_cast<std::size_t>(j)];
    if (w != 0)
      acc = acc + a.coords[static_cast<std::size_t>(i)].scaled(Rational(w));
  }
  return acc;
}

inline FormalPeriod project_period(const Fixture& fx, const FormalPeriod& x,
                                   int side) {
  if (side != 1 && side != 2) throw std::invalid_argument("side must be 1 or 2");
  const QMat& p = (side == 1) ? fx.proj1 : fx.proj2;
  FormalPeriod out{x.ring, std::vector<QPoly>(static_cast<std::size_t>(kRank),
                                              QPoly::zero(x.ring))};
  for (int r = 0; r < kRank; ++r) {
    QPoly acc = QPoly::zero(x.ring);
    for (int c = 0; c < kRank; ++c) {
      const Rational& e = p[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (!e.is_zero()) acc = acc + x.coords[static_cast<std::size_t>(c)].scaled(e);
    }
    out.coords[static_cast<std::size_t>(r)] = std::move(acc);
  }
  return out;
}

// coefficient of the k-th formal symbol in a linear form
inline Rational symbol_coeff(const QPoly& f, int k) {
  std::vector<std::uint16_t> e(static_cast<std::size_t>(symbol_count()), 0);
  e[static_cast<std::size_t>(k)] = 1;
  return f.coeff_of(algebra::mono_make(std::move(e)));
}

// --------------------------------------------------------------------------
// tau classes

// tau = gamma1 w + gamma2 z + tail over [i1 i2 j1 j2 e1..e8 f1..f8],
// where (w, z) = (n2-m2, n1) on side 1 and (n1-m1, n2) on side 2
struct TauClass {
  int side = 1;
  BigInt gamma1, gamma2;
  std::vector<BigInt> tail;  // length 20

  TauClass(int sd, BigInt g1, BigInt g2, std::vector<BigInt> tl)
      : side(sd), gamma1(std::move(g1)), gamma2(std::move(g2)),
        tail(std::move(tl)) {
    if (side != 1 && side != 2)
      throw std::invalid_argument("TauClass: side must be 1 or 2");
    if (tail.size() != 20)
      throw std::invalid_argument("TauClass: tail must have 20 entries");
  }
};

inline TauClass make_tau(int side, long g1, long g2,
                         std::vector<long> tail_head = {}) {
  std::vector<BigInt> tail(20);
  if (tail_head.size() > 20)
    throw std::invalid_argument("make_tau: tail too long");
  for (std::size_t k = 0; k < tail_head.size(); ++k) tail[k] = tail_head[k];
  return TauClass(side, BigInt(g1), BigInt(g2), std::move(tail));
}

inline std::vector<BigInt> tau_coords(const TauClass& t) {
  std::vector<BigInt> c;
  c.reserve(22);
  c.push_back(t.gamma1);
  c.push_back(t.gamma2);
  for (const auto& x : t.tail) c.push_back(x);
  return c;
}

inline std::vector<BigInt> tau_ambient(const Fixture& fx, const TauClass& t) {
  const ZMat& b = lambda_basis(fx, t.side);
  const auto c = tau_coords(t);
  std::vector<BigInt> v(static_cast<std::size_t>(kRank));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < kRank; ++j)
      v[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(i)] * b.at(i, j);
  return v;
}

inline bool brauer_trivial_by_parity(const TauClass& t) {
  if (t.gamma1 % 2 == 0) return false;
  if (t.gamma2 % 2 != 0) return false;
  for (const auto& x : t.tail)
    if (x % 2 != 0) return false;
  return true;
}

struct DegenerateTauError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// kernel oracle: integer basis of {v in Lambda_i : v.tau = 0, v.eta = 0},
// then parity of the z-coordinate (n1 on side 1, n2 on side 2) of each row
inline ZMat brauer_kernel_basis(const Fixture& fx, const TauClass& t) {
  const auto ta = tau_ambient(fx, t);
  const auto ea = eta_ambient();
  // degenerate when tau is proportional to eta
  {
    bool proportional = true;
    // eta has entries only at i1, i2; cross-minors of the 2 x 24 stack
    const BigInt& c = ta[static_cast<std::size_t>(kI1)];
    for (int j = 0; j < kRank && proportional; ++j) {
      const BigInt lhs = ta[static_cast<std::size_t>(j)];
      const BigInt rhs = (j == kI1 || j == kI2) ? c : BigInt(0);
      proportional = (lhs == rhs);
    }
    if (proportional) throw DegenerateTauError("tau proportional to eta");
  }
  const ZMat& b = lambda_basis(fx, t.side);
  ZMat m(2, b.rows());  // rows: pairings with tau, eta
  for (int i = 0; i < b.rows(); ++i) {
    BigInt pt, pe;
    for (int a = 0; a < kRank; ++a)
      for (int c = 0; c < kRank; ++c) {
        const BigInt g = b.at(i, a) * fx.ambient.gram().at(a, c);
        pt += g * ta[static_cast<std::size_t>(c)];
        pe += g * ea[static_cast<std::size_t>(c)];
      }
    m.at(0, i) = pt;
    m.at(1, i) = pe;
  }
  return lattice::kernel_basis(m);
}

inline bool brauer_trivial_by_kernel(const Fixture& fx, const TauClass& t) {
  const ZMat k = brauer_kernel_basis(fx, t);
  for (int i = 0; i < k.rows(); ++i)
    if (k.at(i, 1) % 2 != 0) return false;  // column 1 is the z-direction
  return true;
}

// --------------------------------------------------------------------------
// tau transfer

struct TransferError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solved transfer map Lambda_from -> Lambda_to in the 22-coordinate bases:
// pairing against the projected period is preserved identically in the formal
// symbols; the eta-ambiguity is pinned by keeping the i1 coordinate.
inline QMat transfer_matrix(const Fixture& fx, const FormalPeriod& x,
                            int from_side) {
  if (from_side != 1 && from_side != 2)
    throw std::invalid_argument("side must be 1 or 2");
  const int to_side = 3 - from_side;
  const FormalPeriod sf = project_period(fx, x, from_side);
  const FormalPeriod st = project_period(fx, x, to_side);
  const ZMat& bf = lambda_basis(fx, from_side);
  const ZMat& bt = lambda_basis(fx, to_side);
  const int n = bf.rows();
  const int ns = symbol_count();
  QMat lhs(static_cast<std::size_t>(n + 1),
           std::vector<Rational>(static_cast<std::size_t>(n)));
  QMat rhs(static_cast<std::size_t>(n + 1),
           std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int k = 0; k < n; ++k) {
    std::vector<BigInt> vf(static_cast<std::size_t>(kRank));
    std::vector<BigInt> vt(static_cast<std::size_t>(kRank));
    for (int j = 0; j < kRank; ++j) {
      vf[static_cast<std::size_t>(j)] = bf.at(k, j);
      vt[static_cast<std::size_t>(j)] = bt.at(k, j);
    }
    const QPoly pf = formal_pairing(fx, sf, vf);
    const QPoly pt = formal_pairing(fx, st, vt);
    for (int s = 0; s < ns; ++s) {
      lhs[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] =
          symbol_coeff(pt, s);
      rhs[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] =
          symbol_coeff(pf, s);
    }
  }
  // normalization row: i1 coordinate (index 2 in both bases) carried over
  lhs[static_cast<std::size_t>(ns)][2] = Rational(1);
  rhs[static_cast<std::size_t>(ns)][2] = Rational(1);
  // uniqueness guard: columns of lhs must be independent
  {
    QMat m(static_cast<std::size_t>(n),
           std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational acc;
        for (int k = 0; k <= n; ++k)
          acc = acc + lhs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                          lhs[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
      }
    if (!lattice::rational_inverse(m))
      throw std::invalid_argument("transfer: period is not generic");
  }
  QMat s(static_cast<std::size_t>(n),
         std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> col(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k)
      col[static_cast<std::size_t>(k)] =
          rhs[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    const auto sol = lattice::solve_rational(lhs, col);
    if (!sol) throw std::invalid_argument("transfer: period is not generic");
    // consistency: the solve must reproduce every pairing row exactly
    for (int k = 0; k <= n; ++k) {
      Rational acc;
      for (int i = 0; i < n; ++i)
        acc = acc + lhs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                        (*sol)[static_cast<std::size_t>(i)];
      if (!(acc == col[static_cast<std::size_t>(k)]))
        throw std::invalid_argument("transfer: inconsistent pairing system");
    }
    for (int i = 0; i < n; ++i)
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (*sol)[static_cast<std::size_t>(i)];
  }
  return s;
}

struct TransferReport {
  TauClass result;
  std::string solved_pattern;
  std::string display_pattern;
  bool matches_display = false;
  std::string note;
};

namespace detail {

inline std::string linear_pattern(const QMat& s, int row) {
  std::string out;
  const char* names[2] = {"gamma1", "gamma2"};
  for (int c = 0; c < 2; ++c) {
    const Rational& e = s[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
    if (e.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + e.str() + ")*" + names[c];
  }
  for (std::size_t c = 2; c < s[static_cast<std::size_t>(row)].size(); ++c)
    if (!s[static_cast<std::size_t>(row)][c].is_zero()) {
      out += out.empty() ? "tail terms" : " + tail terms";
      break;
    }
  return out.empty() ? "0" : out;
}

}  // namespace detail

inline TransferReport tau_transfer(const Fixture& fx, const TauClass& t,
                                   const FormalPeriod& x) {
  const QMat s = transfer_matrix(fx, x, t.side);
  const auto c = tau_coords(t);
  const int n = static_cast<int>(c.size());
  std::vector<Rational> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rational acc;
    for (int j = 0; j < n; ++j)
      acc = acc + s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                      Rational(c[static_cast<std::size_t>(j)]);
    y[static_cast<std::size_t>(i)] = acc;
  }
  for (const auto& v : y)
    if (!v.is_integer())
      throw TransferError("non-integral transfer (gamma2 must be even)");
  std::vector<BigInt> tail(20);
  for (int k = 0; k < 20; ++k) tail[static_cast<std::size_t>(k)] =
      y[static_cast<std::size_t>(k + 2)].num();
  TransferReport rep{
      TauClass(3 - t.side, y[0].num(), y[1].num(), std::move(tail)),
      "w: " + detail::linear_pattern(s, 0) + "; z: " + detail::linear_pattern(s, 1),
      "(-2*gamma1, -1/2*gamma2)", false, ""};
  const Rational w_g1 = s[0][0], w_g2 = s[0][1], z_g1 = s[1][0], z_g2 = s[1][1];
  rep.matches_display = (w_g1 == Rational(-2) && w_g2.is_zero() &&
                         z_g1.is_zero() && z_g2 == Rational(-1, 2));
  if (!rep.matches_display)
    rep.note =
        "solved pattern differs from the displayed pair in sign and "
        "coordinate order; the solved projection matrices are ground truth";
  return rep;
}

// --------------------------------------------------------------------------
// non-extension certificate

struct NonExtensionCertificate {
  QMat map;        // 22 x 22, Lambda_from -> Lambda_to coordinates
  ZMat kernel;     // rows: integer basis of tau^perp cap eta^perp
  bool kernel_gram_preserved = false;
  bool eta_fixed = false;
  bool tau_maps_to_transfer = false;
  std::vector<BigInt> witness;  // Lambda_from coordinates
  std::vector<Rational> witness_image;
  bool inconclusive = false;
};

namespace detail {

inline bool all_integer(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!x.is_integer()) return false;
  return true;
}

inline std::vector<Rational> apply_qmat(const QMat& m,
                                        const std::vector<BigInt>& v) {
  const std::size_t n = m.size();
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational acc;
    for (std::size_t j = 0; j < v.size(); ++j)
      acc = acc + m[i][j] * Rational(v[j]);
    out[i] = acc;
  }
  return out;
}

}  // namespace detail

inline NonExtensionCertificate non_extension_certificate(const Fixture& fx,
                                                         const TauClass& t) {
  if (t.gamma2 % 2 != 0 || t.gamma2 == 0)
    throw std::invalid_argument(
        "non_extension_certificate: gamma2 must be even and nonzero");
  const FormalPeriod x = generic_period();
  NonExtensionCertificate cert;
  cert.map = transfer_matrix(fx, x, t.side);
  cert.kernel = brauer_kernel_basis(fx, t);
  const int to_side = 3 - t.side;
  const ZMat gf = lattice::induced_gram(fx.ambient, lambda_basis(fx, t.side));
  const ZMat gt = lattice::induced_gram(fx.ambient, lambda_basis(fx, to_side));
  // Gram preservation on the kernel sublattice
  cert.kernel_gram_preserved = true;
  std::vector<std::vector<Rational>> images;
  for (int i = 0; i < cert.kernel.rows(); ++i) {
    std::vector<BigInt> v(static_cast<std::size_t>(cert.kernel.cols()));
    for (int j = 0; j < cert.kernel.cols(); ++j) v[static_cast<std::size_t>(j)] =
        cert.kernel.at(i, j);
    images.push_back(detail::apply_qmat(cert.map, v));
  }
  for (int i = 0; i < cert.kernel.rows() && cert.kernel_gram_preserved; ++i)
    for (int j = i; j < cert.kernel.rows(); ++j) {
      Rational lhs;
      for (int a = 0; a < cert.kernel.cols(); ++a)
        for (int b = 0; b < cert.kernel.cols(); ++b)
          lhs = lhs + Rational(BigInt(cert.kernel.at(i, a) * gf.at(a, b) *
                                      cert.kernel.at(j, b)));
      Rational rhs;
      const auto& vi = images[static_cast<std::size_t>(i)];
      const auto& vj = images[static_cast<std::size_t>(j)];
      for (std::size_t a = 0; a < vi.size(); ++a)
        for (std::size_t b = 0; b < vj.size(); ++b)
          rhs = rhs + vi[a] * Rational(gt.at(static_cast<int>(a),
                                             static_cast<int>(b))) * vj[b];
      if (!(lhs == rhs)) {
        cert.kernel_gram_preserved = false;
        break;
      }
    }
  // eta = i1 + i2 sits at coordinates 2, 3 in both bases
  {
    std::vector<BigInt> eta(22);
    eta[2] = 1;
    eta[3] = 1;
    const auto img = detail::apply_qmat(cert.map, eta);
    cert.eta_fixed = true;
    for (std::size_t k = 0; k < img.size(); ++k)
      if (!(img[k] == Rational(eta[k]))) cert.eta_fixed = false;
  }
  {
    const auto img = detail::apply_qmat(cert.map, tau_coords(t));
    const TransferReport rep = tau_transfer(fx, t, x);
    const auto want = tau_coords(rep.result);
    cert.tau_maps_to_transfer = true;
    for (std::size_t k = 0; k < img.size(); ++k)
      if (!(img[k] == Rational(want[k]))) cert.tau_maps_to_transfer = false;
  }
  // witness search: basis vectors, then pair sums
  const int n = 22;
  auto try_witness = [&](std::vector<BigInt> v) {
    if (!cert.witness.empty()) return;
    auto img = detail::apply_qmat(cert.map, v);
    if (!detail::all_integer(img)) {
      cert.witness = std::move(v);
      cert.witness_image = std::move(img);
    }
  };
  for (int k = 0; k < n && cert.witness.empty(); ++k) {
    std::vector<BigInt> v(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(k)] = 1;
    try_witness(std::move(v));
  }
  for (int a = 0; a < n && cert.witness.empty(); ++a)
    for (int b = a + 1; b < n && cert.witness.empty(); ++b) {
      std::vector<BigInt> v(static_cast<std::size_t>(n));
      v[static_cast<std::size_t>(a)] = 1;
      v[static_cast<std::size_t>(b)] = 1;
      try_witness(std::move(v));
    }
  cert.inconclusive = cert.witness.empty();
  return cert;
}

// --------------------------------------------------------------------------
// index-2 overlattice fixtures

// even index-2 overlattices of the rank-21 fixture matching the genus of
// <-2> + 2U + 2E8(-1)
inline long index_two_embedding_count_fixture() {
  const Fixture fx = make_fixture();
  std::vector<std::string> labels;
  for (int k = 0; k < 21; ++k) labels.push_back("t" + std::to_string(k));
  const IntLattice t = lattice::induced_lattice(fx.ambient, fx.t_sb, labels);
  std::vector<std::string> es, fs;
  for (int k = 1; k <= 8; ++k) {
    es.push_back("e" + std::to_string(k));
    fs.push_back("f" + std::to_string(k));
  }
  const IntLattice ref = lattice::direct_sum(
      {lattice::diagonal_lattice({"a"}, {-2}), lattice::hyperbolic_plane("u1", "u2"),
       lattice::hyperbolic_plane("u3", "u4"), lattice::e8_lattice(es, -1),
       lattice::e8_lattice(fs, -1)});
  const lattice::DiscForm d(t);
  long count = 0;
  for (const auto& e : lattice::isotropic_two_torsion(d)) {
    const IntLattice m = lattice::overlattice_from_isotropic(t, d, e);
    if (m.is_even() && lattice::same_genus(m, ref) == lattice::GenusMatch::Equal)
      ++count;
  }
  return count;
}

// image of the rank-21 fixture inside Lambda_1 under the side-1 projection;
// its saturation index is the order of the embedding cokernel
inline ZMat embedding_fixture(const Fixture& fx) {
  ZMat out(fx.t_sb.rows(), kRank);
  for (int i = 0; i < fx.t_sb.rows(); ++i) {
    std::vector<BigInt> v(static_cast<std::size_t>(kRank));
    for (int j = 0; j < kRank; ++j) v[static_cast<std::size_t>(j)] = fx.t_sb.at(i, j);
    for (int r = 0; r < kRank; ++r) {
      Rational acc;
      for (int c = 0; c < kRank; ++c)
        acc = acc + fx.proj1[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                        Rational(v[static_cast<std::size_t>(c)]);
      if (!acc.is_integer())
        throw std::logic_error("embedding_fixture: projection not integral");
      out.at(i, r) = acc.num();
    }
  }
  return out;
}

}  // namespace verra::mukai
