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

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "verra/multipoly.hpp"

namespace verra::algebra {

// Hard caps on Groebner work. Exceeding any of them raises BudgetExceeded;
// the engine never degrades to a partial or wrong answer.
struct GroebnerBudget {
  long max_pairs = 200000;     // S-polynomial reductions
  int max_degree = 40;         // total degree of any reduction head
  long max_coeff_bits = 65536; // num+den bits of any head coefficient (char 0)
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error("groebner budget exceeded: " + what) {}
};

namespace detail {

template <class K>
struct BudgetTracker {
  GroebnerBudget budget;
  long pairs = 0;

  void count_pair() {
    if (++pairs > budget.max_pairs)
      throw BudgetExceeded("more than " + std::to_string(budget.max_pairs) +
                           " pair reductions");
  }
  void check_head(const Mono& m, const K& c) const {
    if (static_cast<int>(m.deg) > budget.max_degree)
      throw BudgetExceeded("reduction head of degree " + std::to_string(m.deg) +
                           " past cap " + std::to_string(budget.max_degree));
    if (ScalarTraits<K>::coeff_bits(c) > budget.max_coeff_bits)
      throw BudgetExceeded("coefficient past " +
                           std::to_string(budget.max_coeff_bits) + " bits");
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// reduction

// Full normal form: every term of the result is irreducible modulo G.
template <class K>
MultiPoly<K> normal_form(const MultiPoly<K>& f,
                         const std::vector<MultiPoly<K>>& G,
                         detail::BudgetTracker<K>& tr) {
  using Term = typename MultiPoly<K>::Term;
  const TermOrder& ord = f.ring()->order();
  std::vector<Term> cur(f.terms());
  std::vector<Term> done;
  std::size_t from = 0;
  while (from < cur.size()) {
    const Term& head = cur[from];
    tr.check_head(head.first, head.second);
    const MultiPoly<K>* red = nullptr;
    for (const auto& g : G) {
      if (!g.is_zero() && mono_divides(g.leading_mono(), head.first)) {
        red = &g;
        break;
      }
    }
    if (red == nullptr) {
      done.push_back(head);
      ++from;
      continue;
    }
    const Mono q = mono_div(head.first, red->leading_mono());
    const K c = head.second / red->leading_coeff();
    // head cancels; merge -c*x^q*(tail of red) into the tail of cur
    const auto& gt = red->terms();
    std::vector<Term> next;
    next.reserve(cur.size() - from + gt.size());
    std::size_t i = from + 1, j = 1;
    while (i < cur.size() || j < gt.size()) {
      int cmp;
      Mono shifted;
      if (j < gt.size()) shifted = mono_mul(gt[j].first, q);
      if (i >= cur.size())
        cmp = -1;
      else if (j >= gt.size())
        cmp = 1;
      else
        cmp = mono_cmp(ord, cur[i].first, shifted);
      if (cmp > 0) {
        next.push_back(cur[i++]);
      } else if (cmp < 0) {
        next.emplace_back(std::move(shifted), -(c * gt[j].second));
        ++j;
      } else {
        K v = cur[i].second - c * gt[j].second;
        if (!v.is_zero()) next.emplace_back(cur[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    cur = std::move(next);
    from = 0;
  }
  return MultiPoly<K>::from_terms(f.ring(), std::move(done));
}

template <class K>
MultiPoly<K> normal_form(const MultiPoly<K>& f,
                         const std::vector<MultiPoly<K>>& G,
                         const GroebnerBudget& budget = {}) {
  detail::BudgetTracker<K> tr{budget, 0};
  return normal_form(f, G, tr);
}

namespace detail {

template <class K>
MultiPoly<K> spoly(const MultiPoly<K>& f, const MultiPoly<K>& g) {
  const Mono l = mono_lcm(f.leading_mono(), g.leading_mono());
  const Mono qf = mono_div(l, f.leading_mono());
  const Mono qg = mono_div(l, g.leading_mono());
  const K one = ScalarTraits<K>::from_long(*f.ring(), 1);
  // both inputs are monic here, so the heads cancel exactly
  MultiPoly<K> sf = MultiPoly<K>::monomial(f.ring(), qf, one) * f;
  return axpy_submul(sf, one, qg, g);
}

struct Pair {
  int i, j;
  Mono lcm;
};

// Gebauer-Moller pair update: adds generator index t with leading monomial
// lms[t], prunes both the surviving old pairs and the candidate new ones.
inline void gm_update(std::vector<Pair>& pairs, const std::vector<Mono>& lms,
                      int t, const TermOrder& ord) {
  const Mono& lt = lms[static_cast<std::size_t>(t)];

  std::vector<Mono> L;
  std::vector<char> coprime;
  L.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    L.push_back(mono_lcm(lms[static_cast<std::size_t>(i)], lt));
    coprime.push_back(mono_coprime(lms[static_cast<std::size_t>(i)], lt) ? 1
                                                                         : 0);
  }

  // old pair (i,j) dies when lt divides its lcm and both mixed lcms differ
  std::vector<Pair> kept_old;
  kept_old.reserve(pairs.size());
  for (auto& p : pairs) {
    const bool discard = mono_divides(lt, p.lcm) &&
                         !mono_equal(L[static_cast<std::size_t>(p.i)], p.lcm) &&
                         !mono_equal(L[static_cast<std::size_t>(p.j)], p.lcm);
    if (!discard) kept_old.push_back(std::move(p));
  }
  pairs = std::move(kept_old);

  // candidates processed in ascending lcm order; a candidate survives if it
  // is coprime or no other live candidate's lcm divides its own
  std::vector<int> order_idx(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) order_idx[static_cast<std::size_t>(i)] = i;
  std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
    const int c = mono_cmp(ord, L[static_cast<std::size_t>(a)],
                           L[static_cast<std::size_t>(b)]);
    if (c != 0) return c < 0;
    return a < b;
  });
  std::vector<char> alive(static_cast<std::size_t>(t), 1);
  std::vector<char> kept(static_cast<std::size_t>(t), 0);
  for (int k : order_idx) {
    alive[static_cast<std::size_t>(k)] = 0;
    if (coprime[static_cast<std::size_t>(k)]) {
      kept[static_cast<std::size_t>(k)] = 1;
      continue;
    }
    bool ok = true;
    for (int m = 0; m < t; ++m) {
      if (m == k || (!alive[static_cast<std::size_t>(m)] &&
                     !kept[static_cast<std::size_t>(m)]))
        continue;
      if (mono_divides(L[static_cast<std::size_t>(m)],
                       L[static_cast<std::size_t>(k)])) {
        ok = false;
        break;
      }
    }
    kept[static_cast<std::size_t>(k)] = ok ? 1 : 0;
  }
  for (int i = 0; i < t; ++i) {
    if (kept[static_cast<std::size_t>(i)] && !coprime[static_cast<std::size_t>(i)])
      pairs.push_back(Pair{i, t, L[static_cast<std::size_t>(i)]});
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Buchberger

// Canonical reduced Groebner basis: minimal, interreduced, monic, sorted by
// descending leading monomial. Unique for a given ideal and term order, so
// equal ideals compare equal through it.
template <class K>
std::vector<MultiPoly<K>> groebner_basis(const RingPtr& ring,
                                         const std::vector<MultiPoly<K>>& gens,
                                         const GroebnerBudget& budget = {}) {
  const TermOrder& ord = ring->order();
  detail::BudgetTracker<K> tr{budget, 0};

  auto unit_basis = [&] {
    return std::vector<MultiPoly<K>>{MultiPoly<K>::constant(ring, 1)};
  };

  std::vector<MultiPoly<K>> G;
  std::vector<Mono> lms;
  std::vector<detail::Pair> pairs;

  auto insert = [&](const MultiPoly<K>& h) {
    G.push_back(h.monic());
    lms.push_back(h.leading_mono());
    detail::gm_update(pairs, lms, static_cast<int>(G.size()) - 1, ord);
  };

  for (const auto& f : gens) {
    if (!same_ring(f.ring(), ring))
      throw std::invalid_argument("groebner_basis: generator in wrong ring");
    if (f.is_zero()) continue;
    if (f.leading_mono().deg == 0) return unit_basis();
    insert(f);
  }

  while (!pairs.empty()) {
    // normal strategy: smallest lcm first
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const int c = mono_cmp(ord, pairs[k].lcm, pairs[best].lcm);
      if (c < 0 || (c == 0 && (pairs[k].i < pairs[best].i ||
                               (pairs[k].i == pairs[best].i &&
                                pairs[k].j < pairs[best].j))))
        best = k;
    }
    const detail::Pair p = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

    tr.count_pair();
    const MultiPoly<K> s = detail::spoly(G[static_cast<std::size_t>(p.i)],
                                         G[static_cast<std::size_t>(p.j)]);
    const MultiPoly<K> h = normal_form(s, G, tr);
    if (h.is_zero()) continue;
    if (h.leading_mono().deg == 0) return unit_basis();
    insert(h);
  }

  // minimalize
  std::vector<std::size_t> idx(G.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return mono_cmp(ord, G[a].leading_mono(), G[b].leading_mono()) < 0;
  });
  std::vector<MultiPoly<K>> minimal;
  for (std::size_t i : idx) {
    bool redundant = false;
    for (const auto& g : minimal) {
      if (mono_divides(g.leading_mono(), G[i].leading_mono())) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(G[i]);
  }

  // interreduce to the unique reduced basis
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<MultiPoly<K>> others;
      others.reserve(minimal.size() - 1);
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      MultiPoly<K> r = normal_form(minimal[i], others, tr);
      if (r != minimal[i]) {
        minimal[i] = r.monic();
        changed = true;
      }
    }
  }

  std::sort(minimal.begin(), minimal.end(),
            [&](const MultiPoly<K>& a, const MultiPoly<K>& b) {
              return mono_cmp(ord, a.leading_mono(), b.leading_mono()) > 0;
            });
  return minimal;
}

// ---------------------------------------------------------------------------
// ideals

template <class K>
class PolyIdeal {
 public:
  PolyIdeal(RingPtr ring, std::vector<MultiPoly<K>> gens)
      : ring_(std::move(ring)), gens_(std::move(gens)) {
    if (!ring_) throw std::invalid_argument("PolyIdeal: null ring");
    for (const auto& g : gens_)
      if (!same_ring(g.ring(), ring_))
        throw std::invalid_argument("PolyIdeal: generator in wrong ring");
  }

  static PolyIdeal parse(RingPtr ring, const std::vector<std::string>& gens) {
    std::vector<MultiPoly<K>> ps;
    ps.reserve(gens.size());
    for (const auto& s : gens) ps.push_back(MultiPoly<K>::parse(ring, s));
    return PolyIdeal(std::move(ring), std::move(ps));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<MultiPoly<K>>& generators() const { return gens_; }

  const std::vector<MultiPoly<K>>& groebner(
      const GroebnerBudget& budget = {}) const {
    if (!gb_) gb_ = std::make_shared<const std::vector<MultiPoly<K>>>(
                  groebner_basis(ring_, gens_, budget));
    return *gb_;
  }

  bool is_unit(const GroebnerBudget& budget = {}) const {
    const auto& gb = groebner(budget);
    return gb.size() == 1 && gb[0].leading_mono().deg == 0;
  }

  bool is_zero_ideal(const GroebnerBudget& budget = {}) const {
    return groebner(budget).empty();
  }

  MultiPoly<K> reduce(const MultiPoly<K>& f,
                      const GroebnerBudget& budget = {}) const {
    return normal_form(f, groebner(budget), budget);
  }

  bool contains(const MultiPoly<K>& f,
                const GroebnerBudget& budget = {}) const {
    return reduce(f, budget).is_zero();
  }

  // Krull dimension of the quotient, via maximal independent variable sets
  // against the leading-term ideal. Unit ideal gives -1, zero ideal nvars.
  int dimension(const GroebnerBudget& budget = {}) const {
    const auto& gb = groebner(budget);
    const int n = ring_->nvars();
    if (gb.empty()) return n;
    if (n > 24)
      throw std::invalid_argument("dimension: too many variables");
    std::vector<std::uint32_t> support;
    support.reserve(gb.size());
    for (const auto& g : gb) {
      std::uint32_t m = 0;
      const auto& e = g.leading_mono().e;
      for (int i = 0; i < n; ++i)
        if (e[static_cast<std::size_t>(i)]) m |= (1u << i);
      if (m == 0) return -1;  // unit ideal
      support.push_back(m);
    }
    int best = -1;
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t S = 0;; ++S) {
      const int pc = __builtin_popcount(S);
      if (pc > best) {
        bool independent = true;
        for (std::uint32_t m : support) {
          if ((m & ~S) == 0) {
            independent = false;
            break;
          }
        }
        if (independent) best = pc;
      }
      if (S == full) break;
    }
    return best;
  }

  friend bool same_ideal(const PolyIdeal& a, const PolyIdeal& b,
                         const GroebnerBudget& budget = {}) {
    if (!same_ring(a.ring_, b.ring_)) return false;
    return a.groebner(budget) == b.groebner(budget);
  }

 private:
  RingPtr ring_;
  std::vector<MultiPoly<K>> gens_;
  mutable std::shared_ptr<const std::vector<MultiPoly<K>>> gb_;
};

// ---------------------------------------------------------------------------
// ring extension plumbing

inline std::string fresh_var_name(const PolyRing& r, const std::string& base) {
  if (!r.has_var(base)) return base;
  for (int i = 0;; ++i) {
    const std::string cand = base + std::to_string(i);
    if (!r.has_var(cand)) return cand;
  }
}

inline RingPtr extend_ring_front(const RingPtr& r, const std::string& name,
                                 TermOrder order) {
  std::vector<std::string> vars;
  vars.reserve(static_cast<std::size_t>(r->nvars()) + 1);
  vars.push_back(name);
  for (const auto& v : r->vars()) vars.push_back(v);
  return make_ring(std::move(vars), r->characteristic(), order);
}

inline RingPtr extend_ring_back(const RingPtr& r, const std::string& name) {
  std::vector<std::string> vars = r->vars();
  vars.push_back(name);
  return make_ring(std::move(vars), r->characteristic(), r->order());
}

// ---------------------------------------------------------------------------
// radical membership, saturation, intersection

// g lies in the radical of I iff I + <t*g - 1> is the unit ideal
// (any term order certifies unit-ness).
template <class K>
bool radical_membership(const PolyIdeal<K>& I, const MultiPoly<K>& g,
                        const GroebnerBudget& budget = {}) {
  if (g.is_zero()) return true;
  const std::string t = fresh_var_name(*I.ring(), "t");
  RingPtr ext = extend_ring_back(I.ring(), t);
  std::vector<MultiPoly<K>> gens;
  gens.reserve(I.generators().size() + 1);
  for (const auto& f : I.generators()) gens.push_back(f.into_ring(ext));
  gens.push_back(MultiPoly<K>::variable(ext, t) * g.into_ring(ext) -
                 MultiPoly<K>::constant(ext, 1));
  return PolyIdeal<K>(ext, std::move(gens)).is_unit(budget);
}

namespace detail {

// keep the members of a Groebner basis not involving the first `front`
// variables and push them down into `target`
template <class K>
std::vector<MultiPoly<K>> eliminate_front(const std::vector<MultiPoly<K>>& gb,
                                          int front, const RingPtr& target) {
  std::vector<MultiPoly<K>> out;
  for (const auto& g : gb) {
    bool uses_front = false;
    for (const auto& t : g.terms()) {
      for (int i = 0; i < front && !uses_front; ++i)
        if (t.first.e[static_cast<std::size_t>(i)]) uses_front = true;
      if (uses_front) break;
    }
    if (!uses_front) out.push_back(g.into_ring(target));
  }
  return out;
}

}  // namespace detail

// I : g^infinity by the Rabinowitsch trick: adjoin t, force g invertible,
// contract back by eliminating t.
template <class K>
PolyIdeal<K> saturate_one(const PolyIdeal<K>& I, const MultiPoly<K>& g,
                          const GroebnerBudget& budget = {}) {
  if (g.is_zero())
    return PolyIdeal<K>(I.ring(),
                        {MultiPoly<K>::constant(I.ring(), 1)});
  const std::string t = fresh_var_name(*I.ring(), "t");
  RingPtr ext = extend_ring_front(I.ring(), t, TermOrder::elim(1));
  std::vector<MultiPoly<K>> gens;
  gens.reserve(I.generators().size() + 1);
  for (const auto& f : I.generators()) gens.push_back(f.into_ring(ext));
  gens.push_back(MultiPoly<K>::variable(ext, t) * g.into_ring(ext) -
                 MultiPoly<K>::constant(ext, 1));
  const auto gb = groebner_basis(ext, gens, budget);
  return PolyIdeal<K>(I.ring(), detail::eliminate_front(gb, 1, I.ring()));
}

// A ∩ B = (t*A + (1-t)*B) ∩ k[x]
template <class K>
PolyIdeal<K> intersect(const PolyIdeal<K>& A, const PolyIdeal<K>& B,
                       const GroebnerBudget& budget = {}) {
  if (!same_ring(A.ring(), B.ring()))
    throw std::invalid_argument("intersect: mixed rings");
  const std::string t = fresh_var_name(*A.ring(), "t");
  RingPtr ext = extend_ring_front(A.ring(), t, TermOrder::elim(1));
  const MultiPoly<K> tv = MultiPoly<K>::variable(ext, t);
  const MultiPoly<K> omt = MultiPoly<K>::constant(ext, 1) - tv;
  std::vector<MultiPoly<K>> gens;
  gens.reserve(A.generators().size() + B.generators().size());
  for (const auto& f : A.generators()) gens.push_back(tv * f.into_ring(ext));
  for (const auto& f : B.generators()) gens.push_back(omt * f.into_ring(ext));
  const auto gb = groebner_basis(ext, gens, budget);
  return PolyIdeal<K>(A.ring(), detail::eliminate_front(gb, 1, A.ring()));
}

// I : J^infinity = intersection of I : g^infinity over the generators of J
template <class K>
PolyIdeal<K> saturate(const PolyIdeal<K>& I, const PolyIdeal<K>& J,
                      const GroebnerBudget& budget = {}) {
  if (!same_ring(I.ring(), J.ring()))
    throw std::invalid_argument("saturate: mixed rings");
  std::optional<PolyIdeal<K>> acc;
  for (const auto& g : J.generators()) {
    if (g.is_zero()) continue;
    PolyIdeal<K> part = saturate_one(I, g, budget);
    acc = acc ? intersect(*acc, part, budget) : std::move(part);
  }
  if (!acc)
    return PolyIdeal<K>(I.ring(), {MultiPoly<K>::constant(I.ring(), 1)});
  return *acc;
}

}  // namespace verra::algebra
