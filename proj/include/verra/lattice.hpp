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

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "verra/intmat.hpp"

namespace verra::lattice {

// ---------------------------------------------------------------------------
// lattices with labeled bases

class IntLattice {
 public:
  IntLattice(std::vector<std::string> labels, ZMat gram)
      : labels_(std::move(labels)), gram_(std::move(gram)) {
    const int n = static_cast<int>(labels_.size());
    if (gram_.rows() != n || gram_.cols() != n)
      throw std::invalid_argument("IntLattice: gram shape mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (gram_.at(i, j) != gram_.at(j, i))
          throw std::invalid_argument("IntLattice: gram not symmetric");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (static_cast<int>(seen.size()) != n)
      throw std::invalid_argument("IntLattice: duplicate basis labels");
  }

  int rank() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const ZMat& gram() const { return gram_; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < rank(); ++i)
      if (labels_[static_cast<std::size_t>(i)] == label) return i;
    throw std::invalid_argument("IntLattice: no basis vector '" + label + "'");
  }

  std::vector<BigInt> basis_vector(const std::string& label) const {
    std::vector<BigInt> v(static_cast<std::size_t>(rank()));
    v[static_cast<std::size_t>(index_of(label))] = 1;
    return v;
  }

  BigInt pairing(const std::vector<BigInt>& x,
                 const std::vector<BigInt>& y) const {
    if (static_cast<int>(x.size()) != rank() ||
        static_cast<int>(y.size()) != rank())
      throw std::invalid_argument("IntLattice: vector length mismatch");
    BigInt s = 0;
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        s += x[static_cast<std::size_t>(i)] * gram_.at(i, j) *
             y[static_cast<std::size_t>(j)];
    return s;
  }

  BigInt norm(const std::vector<BigInt>& x) const { return pairing(x, x); }

  bool is_even() const {
    for (int i = 0; i < rank(); ++i)
      if (gram_.at(i, i) % 2 != 0) return false;
    return true;
  }

  bool is_unimodular() const {
    const BigInt d = bareiss_det(gram_);
    return d == 1 || d == -1;
  }

  BigInt det() const { return bareiss_det(gram_); }

 private:
  std::vector<std::string> labels_;
  ZMat gram_;
};

// ---------------------------------------------------------------------------
// standard pieces

inline IntLattice hyperbolic_plane(const std::string& a, const std::string& b) {
  return IntLattice({a, b}, ZMat::from_rows({{0, 1}, {1, 0}}));
}

inline IntLattice diagonal_lattice(const std::vector<std::string>& labels,
                                   const std::vector<long>& entries) {
  if (labels.size() != entries.size())
    throw std::invalid_argument("diagonal_lattice: arity mismatch");
  ZMat g(static_cast<int>(labels.size()), static_cast<int>(labels.size()));
  for (int i = 0; i < g.rows(); ++i)
    g.at(i, i) = entries[static_cast<std::size_t>(i)];
  return IntLattice(labels, std::move(g));
}

// Dynkin diagram on nodes 1..8, branch node 4: edges
// 1-3, 3-4, 4-5, 5-6, 6-7, 7-8 and 2-4.
inline IntLattice e8_lattice(const std::vector<std::string>& labels, int sign) {
  if (labels.size() != 8) throw std::invalid_argument("e8_lattice: need 8 labels");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("e8_lattice: sign must be +-1");
  ZMat g(8, 8);
  for (int i = 0; i < 8; ++i) g.at(i, i) = 2 * sign;
  const int edges[7][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6},
                           {6, 7}, {7, 8}, {2, 4}};
  for (const auto& e : edges) {
    g.at(e[0] - 1, e[1] - 1) = -sign;
    g.at(e[1] - 1, e[0] - 1) = -sign;
  }
  return IntLattice(labels, std::move(g));
}

inline IntLattice rescaled(const IntLattice& l, long c) {
  ZMat g = l.gram();
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g.at(i, j) *= c;
  return IntLattice(l.labels(), std::move(g));
}

inline IntLattice direct_sum(const IntLattice& a, const IntLattice& b) {
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  ZMat g(a.rank() + b.rank(), a.rank() + b.rank());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) g.at(i, j) = a.gram().at(i, j);
  for (int i = 0; i < b.rank(); ++i)
    for (int j = 0; j < b.rank(); ++j)
      g.at(a.rank() + i, a.rank() + j) = b.gram().at(i, j);
  return IntLattice(std::move(labels), std::move(g));
}

inline IntLattice direct_sum(const std::vector<IntLattice>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty");
  IntLattice acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// sublattices

// rows of `span` are vectors in the coordinates of l's basis
inline ZMat induced_gram(const IntLattice& l, const ZMat& span) {
  if (span.cols() != l.rank())
    throw std::invalid_argument("induced_gram: wrong ambient rank");
  return span * l.gram() * span.transposed();
}

inline IntLattice induced_lattice(const IntLattice& l, const ZMat& span,
                                  const std::vector<std::string>& labels) {
  return IntLattice(labels, induced_gram(l, span));
}

// index of the row span inside its saturation
inline BigInt saturation_index(const ZMat& span) {
  BigInt idx = 1;
  for (const auto& d : smith_normal_form(span).elementary_divisors) idx *= d;
  return idx;
}

// saturated basis of {x : x . v = 0 for all rows v}
inline ZMat orthogonal_complement(const IntLattice& l, const ZMat& span) {
  if (span.cols() != l.rank())
    throw std::invalid_argument("orthogonal_complement: wrong ambient rank");
  return kernel_basis(span * l.gram());
}

// ---------------------------------------------------------------------------
// signature

struct Signature {
  int pos = 0, neg = 0, zero = 0;
  friend bool operator==(const Signature& a, const Signature& b) {
    return a.pos == b.pos && a.neg == b.neg && a.zero == b.zero;
  }
};

// inertia by rational congruence diagonalization; a hyperbolic block with an
// all-zero diagonal is broken open by adding one basis vector to another
inline Signature signature(const ZMat& gram) {
  const int n = gram.rows();
  if (gram.cols() != n) throw std::invalid_argument("signature: not square");
  QMat g = qmat_from(gram);
  Signature s;
  auto add_basis = [&](int i, int j) {  // v_i += v_j, congruent both sides
    for (int k = 0; k < n; ++k)
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
          g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    for (int k = 0; k < n; ++k)
      g[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
          g[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] +
          g[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
  };
  auto swap_basis = [&](int i, int j) {
    std::swap(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)]);
    for (int k = 0; k < n; ++k)
      std::swap(g[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)],
                g[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
  };
  for (int k = 0; k < n; ++k) {
    if (g[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)].is_zero()) {
      int jd = -1, jo = -1;
      for (int j = k + 1; j < n; ++j) {
        if (jd < 0 &&
            !g[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)].is_zero())
          jd = j;
        if (jo < 0 &&
            !g[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)].is_zero())
          jo = j;
      }
      if (jd >= 0)
        swap_basis(k, jd);
      else if (jo >= 0)
        add_basis(k, jo);  // diagonal becomes 2*g[k][jo] != 0
      else {
        ++s.zero;  // radical direction
        continue;
      }
    }
    const Rational pivot = g[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    if (pivot.sign() > 0)
      ++s.pos;
    else
      ++s.neg;
    for (int i = k + 1; i < n; ++i) {
      const Rational f =
          g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / pivot;
      if (f.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
            f * g[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      for (int j = 0; j < n; ++j)
        g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -
            f * g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
  }
  return s;
}

inline Signature signature(const IntLattice& l) { return signature(l.gram()); }

// ---------------------------------------------------------------------------
// discriminant group and form

namespace detail {

inline Rational mod_interval(const Rational& x, long period) {
  // representative in [0, period)
  const BigInt f = fdiv(x.num(), BigInt(x.den() * period));
  return x - Rational(BigInt(f * period));
}

}  // namespace detail

// L*/L for a nondegenerate lattice, as cyclic factors in divisor-chain order.
// Generator i lifts to gens[i] in rational basis coordinates of L.
class DiscForm {
 public:
  using Elem = std::vector<long>;

  explicit DiscForm(const IntLattice& l) : gram_(l.gram()), even_(l.is_even()) {
    if (bareiss_det(gram_) == 0)
      throw std::invalid_argument("DiscForm: degenerate lattice");
    SmithResult s = smith_normal_form(gram_);
    const int n = gram_.rows();
    for (int i = 0; i < n; ++i) {
      const BigInt& d = s.D.at(i, i);
      if (d == 1) continue;
      orders_.push_back(d);
      std::vector<Rational> gvec(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k)
        gvec[static_cast<std::size_t>(k)] = Rational(s.V.at(k, i), d);
      gens_.push_back(std::move(gvec));
    }
  }

  const std::vector<BigInt>& orders() const { return orders_; }
  int ngens() const { return static_cast<int>(orders_.size()); }
  bool source_even() const { return even_; }

  BigInt group_order() const {
    BigInt p = 1;
    for (const auto& d : orders_) p *= d;
    return p;
  }

  Elem zero() const { return Elem(static_cast<std::size_t>(ngens()), 0); }

  Elem add(const Elem& a, const Elem& b) const {
    Elem c = zero();
    for (int i = 0; i < ngens(); ++i) {
      const long d = orders_[static_cast<std::size_t>(i)].get_si();
      c[static_cast<std::size_t>(i)] =
          (a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]) % d;
    }
    return c;
  }

  long elem_order(const Elem& a) const {
    long o = 1;
    for (int i = 0; i < ngens(); ++i) {
      const long d = orders_[static_cast<std::size_t>(i)].get_si();
      const long v = a[static_cast<std::size_t>(i)];
      const long oi = v == 0 ? 1 : d / std::gcd(d, v);
      o = std::lcm(o, oi);
    }
    return o;
  }

  std::vector<Elem> elements(long cap) const {
    if (group_order() > cap)
      throw std::length_error("DiscForm: group too large to enumerate");
    std::vector<Elem> out;
    Elem cur = zero();
    while (true) {
      out.push_back(cur);
      int i = 0;
      for (; i < ngens(); ++i) {
        const long d = orders_[static_cast<std::size_t>(i)].get_si();
        if (++cur[static_cast<std::size_t>(i)] < d) break;
        cur[static_cast<std::size_t>(i)] = 0;
      }
      if (i == ngens()) break;
    }
    return out;
  }

  // rational lift of an element in basis coordinates of the source lattice
  std::vector<Rational> lift(const Elem& a) const {
    std::vector<Rational> v(static_cast<std::size_t>(gram_.rows()));
    for (int i = 0; i < ngens(); ++i) {
      const Rational c(a[static_cast<std::size_t>(i)]);
      for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = v[k] + c * gens_[static_cast<std::size_t>(i)][k];
    }
    return v;
  }

  // b(x, y) mod Z in [0, 1)
  Rational b_of(const Elem& a, const Elem& b) const {
    return detail::mod_interval(form_value(lift(a), lift(b)), 1);
  }

  // q(x) mod 2Z in [0, 2); meaningful for even source lattices
  Rational q_of(const Elem& a) const {
    if (!even_)
      throw std::domain_error("DiscForm: quadratic values need an even lattice");
    const auto v = lift(a);
    return detail::mod_interval(form_value(v, v), 2);
  }

 private:
  Rational form_value(const std::vector<Rational>& x,
                      const std::vector<Rational>& y) const {
    Rational s;
    for (int i = 0; i < gram_.rows(); ++i)
      for (int j = 0; j < gram_.cols(); ++j)
        s = s + x[static_cast<std::size_t>(i)] * Rational(gram_.at(i, j)) *
                    y[static_cast<std::size_t>(j)];
    return s;
  }

  ZMat gram_;
  bool even_;
  std::vector<BigInt> orders_;
  QMat gens_;
};

// ---------------------------------------------------------------------------
// genus comparison

struct GenusInvariants {
  int rank = 0;
  Signature sig;
  bool even = false;
  std::vector<BigInt> factors;  // discriminant group cyclic orders
};

inline GenusInvariants genus_invariants(const IntLattice& l) {
  GenusInvariants g;
  g.rank = l.rank();
  g.sig = signature(l);
  g.even = l.is_even();
  if (bareiss_det(l.gram()) != 0) g.factors = DiscForm(l).orders();
  return g;
}

enum class GenusMatch { Equal, Different, Inconclusive };

namespace detail {

// backtracking search for a form-preserving group isomorphism sending the
// standard generators of `a` to elements of `b`
inline bool disc_forms_isomorphic(const DiscForm& a, const DiscForm& b,
                                  long cap) {
  const auto elems = b.elements(cap);
  const int k = a.ngens();
  const bool both_even = a.source_even() && b.source_even();
  std::vector<DiscForm::Elem> image(static_cast<std::size_t>(k), b.zero());
  std::vector<DiscForm::Elem> agens;
  for (int i = 0; i < k; ++i) {
    DiscForm::Elem e = a.zero();
    e[static_cast<std::size_t>(i)] = 1;
    agens.push_back(e);
  }

  auto generates_all = [&]() {
    std::set<DiscForm::Elem> seen;
    std::vector<DiscForm::Elem> frontier = {b.zero()};
    seen.insert(b.zero());
    while (!frontier.empty()) {
      std::vector<DiscForm::Elem> next;
      for (const auto& x : frontier)
        for (const auto& g : image) {
          auto y = b.add(x, g);
          if (seen.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    return BigInt(static_cast<long>(seen.size())) == b.group_order();
  };

  std::function<bool(int)> place = [&](int i) -> bool {
    if (i == k) return generates_all();
    const long want_order = a.elem_order(agens[static_cast<std::size_t>(i)]);
    for (const auto& cand : elems) {
      if (b.elem_order(cand) != want_order) continue;
      if (both_even &&
          !(a.q_of(agens[static_cast<std::size_t>(i)]) == b.q_of(cand)))
        continue;
      bool ok = true;
      for (int j = 0; j <= i && ok; ++j) {
        const auto& other = (j == i) ? cand : image[static_cast<std::size_t>(j)];
        if (!(a.b_of(agens[static_cast<std::size_t>(i)],
                     agens[static_cast<std::size_t>(j)]) ==
              b.b_of(cand, other)))
          ok = false;
      }
      if (!ok) continue;
      image[static_cast<std::size_t>(i)] = cand;
      if (place(i + 1)) return true;
    }
    return false;
  };
  return place(0);
}

}  // namespace detail

// Equality of the displayed invariants plus an explicit discriminant-form
// isomorphism. Groups larger than 2^10 are not searched.
inline GenusMatch same_genus(const IntLattice& a, const IntLattice& b) {
  const GenusInvariants ga = genus_invariants(a);
  const GenusInvariants gb = genus_invariants(b);
  if (ga.rank != gb.rank || !(ga.sig == gb.sig) || ga.even != gb.even ||
      ga.factors != gb.factors)
    return GenusMatch::Different;
  if (bareiss_det(a.gram()) == 0 || bareiss_det(b.gram()) == 0)
    return GenusMatch::Inconclusive;
  DiscForm da(a), db(b);
  const long cap = 1L << 10;
  if (da.group_order() > cap) return GenusMatch::Inconclusive;
  return detail::disc_forms_isomorphic(da, db, cap) ? GenusMatch::Equal
                                                    : GenusMatch::Different;
}

// ---------------------------------------------------------------------------
// even overlattices of index two

// Index-two even overlattices correspond to nonzero 2-torsion elements of the
// discriminant group with q = 0 in Q/2Z.
inline std::vector<DiscForm::Elem> isotropic_two_torsion(const DiscForm& d,
                                                         long cap = 1L << 10) {
  std::vector<DiscForm::Elem> out;
  for (const auto& e : d.elements(cap)) {
    if (e == d.zero()) continue;
    if (d.elem_order(e) != 2) continue;
    if (d.q_of(e).is_zero()) out.push_back(e);
  }
  return out;
}

inline long count_index_two_even_overlattices(const IntLattice& l,
                                              long cap = 1L << 10) {
  if (!l.is_even())
    throw std::invalid_argument("overlattice count: lattice must be even");
  return static_cast<long>(isotropic_two_torsion(DiscForm(l), cap).size());
}

// Explicit construction witnessing one such overlattice: basis of L + Z*lift
// in the rational span, with its induced gram. Throws if the result fails to
// be integral, even, or of index two.
inline IntLattice overlattice_from_isotropic(const IntLattice& l,
                                             const DiscForm& d,
                                             const DiscForm::Elem& e) {
  const int n = l.rank();
  const auto v = d.lift(e);
  // common denominator 2 is enough for a 2-torsion class
  ZMat stacked(n + 1, n);
  for (int i = 0; i < n; ++i) stacked.at(i, i) = 2;
  for (int j = 0; j < n; ++j) {
    const Rational twice = v[static_cast<std::size_t>(j)] * Rational(2);
    if (!twice.is_integer())
      throw std::invalid_argument("overlattice: element is not 2-torsion");
    stacked.at(n, j) = twice.num();
  }
  const ZMat h = hermite_form(stacked);  // basis of 2*(L + Z v)
  if (h.rows() != n)
    throw std::logic_error("overlattice: rank drop in hermite form");
  // gram of (1/2) h against l.gram
  const ZMat g2 = h * l.gram() * h.transposed();
  ZMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (g2.at(i, j) % 4 != 0)
        throw std::logic_error("overlattice: non-integral pairing");
      g.at(i, j) = g2.at(i, j) / 4;
    }
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels.push_back("o" + std::to_string(i));
  IntLattice m(labels, std::move(g));
  if (!m.is_even()) throw std::logic_error("overlattice: odd result");
  // index check: det scales by the square of the index
  if (bareiss_det(l.gram()) != bareiss_det(m.gram()) * 4)
    throw std::logic_error("overlattice: index is not two");
  return m;
}

}  // namespace verra::lattice
