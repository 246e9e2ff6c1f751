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

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "verra/prime_field.hpp"
#include "verra/rational.hpp"

namespace verra::algebra {

// ---------------------------------------------------------------------------
// term orders

struct TermOrder {
  enum class Kind { Grevlex, Elim };
  Kind kind = Kind::Grevlex;
  // Elim: the first `split` variables form the eliminated block; the order is
  // grevlex on that block, ties broken by grevlex on the rest.
  int split = 0;

  static TermOrder grevlex() { return TermOrder{}; }
  static TermOrder elim(int split) {
    TermOrder o;
    o.kind = Kind::Elim;
    o.split = split;
    return o;
  }

  std::string tag() const {
    if (kind == Kind::Grevlex) return "grevlex";
    return "elim:" + std::to_string(split);
  }
  static TermOrder from_tag(const std::string& t) {
    if (t == "grevlex") return grevlex();
    if (t.rfind("elim:", 0) == 0) return elim(std::stoi(t.substr(5)));
    throw std::invalid_argument("TermOrder: unknown tag '" + t + "'");
  }
  friend bool operator==(const TermOrder& a, const TermOrder& b) {
    return a.kind == b.kind && (a.kind != Kind::Elim || a.split == b.split);
  }
};

// ---------------------------------------------------------------------------
// monomials

struct Mono {
  std::vector<std::uint16_t> e;
  std::uint32_t deg = 0;
};

inline Mono mono_one(int nvars) {
  Mono m;
  m.e.assign(static_cast<std::size_t>(nvars), 0);
  return m;
}

inline Mono mono_make(std::vector<std::uint16_t> e) {
  Mono m;
  m.deg = 0;
  for (auto x : e) m.deg += x;
  m.e = std::move(e);
  return m;
}

inline bool mono_equal(const Mono& a, const Mono& b) { return a.e == b.e; }

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) {
    const std::uint32_t s = static_cast<std::uint32_t>(r.e[i]) + b.e[i];
    if (s > 0xffffu) throw std::overflow_error("Mono: exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  return r;
}

// b | a
inline bool mono_divides(const Mono& b, const Mono& a) {
  if (b.deg > a.deg) return false;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (b.e[i] > a.e[i]) return false;
  return true;
}

inline Mono mono_div(const Mono& a, const Mono& b) {
  Mono r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) {
    if (b.e[i] > r.e[i]) throw std::domain_error("Mono: non-divisible");
    r.e[i] = static_cast<std::uint16_t>(r.e[i] - b.e[i]);
  }
  r.deg = a.deg - b.deg;
  return r;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r = a;
  r.deg = 0;
  for (std::size_t i = 0; i < r.e.size(); ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

inline bool mono_coprime(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != 0 && b.e[i] != 0) return false;
  return true;
}

namespace detail {

// grevlex on the variable range [lo, hi): higher degree wins, ties go to the
// monomial whose last differing exponent is smaller.
inline int grevlex_cmp_range(const Mono& a, const Mono& b, int lo, int hi) {
  std::uint32_t da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a.e[static_cast<std::size_t>(i)];
    db += b.e[static_cast<std::size_t>(i)];
  }
  if (da != db) return da < db ? -1 : 1;
  for (int i = hi - 1; i >= lo; --i) {
    const auto ea = a.e[static_cast<std::size_t>(i)];
    const auto eb = b.e[static_cast<std::size_t>(i)];
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

struct MonoHash {
  std::size_t operator()(const Mono& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : m.e) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};
struct MonoEq {
  bool operator()(const Mono& a, const Mono& b) const {
    return mono_equal(a, b);
  }
};

}  // namespace detail

inline int mono_cmp(const TermOrder& o, const Mono& a, const Mono& b) {
  const int n = static_cast<int>(a.e.size());
  if (o.kind == TermOrder::Kind::Grevlex) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (int i = n - 1; i >= 0; --i) {
      const auto ea = a.e[static_cast<std::size_t>(i)];
      const auto eb = b.e[static_cast<std::size_t>(i)];
      if (ea != eb) return ea < eb ? 1 : -1;
    }
    return 0;
  }
  const int c = detail::grevlex_cmp_range(a, b, 0, o.split);
  if (c != 0) return c;
  return detail::grevlex_cmp_range(a, b, o.split, n);
}

// ---------------------------------------------------------------------------
// rings

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  PolyRing(std::vector<std::string> vars, std::uint64_t characteristic,
           TermOrder order)
      : vars_(std::move(vars)), char_(characteristic), order_(order) {
    if (char_ != 0 && !is_prime_u64(char_))
      throw std::invalid_argument("PolyRing: characteristic must be 0 or prime");
    if (order_.kind == TermOrder::Kind::Elim &&
        (order_.split < 0 || order_.split > static_cast<int>(vars_.size())))
      throw std::invalid_argument("PolyRing: elimination split out of range");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const auto& v = vars_[i];
      if (!valid_name(v))
        throw std::invalid_argument("PolyRing: bad variable name '" + v + "'");
      if (!index_.emplace(v, static_cast<int>(i)).second)
        throw std::invalid_argument("PolyRing: duplicate variable '" + v + "'");
    }
  }

  static bool valid_name(const std::string& v) {
    if (v.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(v[0])) && v[0] != '_')
      return false;
    for (char c : v)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        return false;
    return true;
  }

  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var(int i) const {
    return vars_.at(static_cast<std::size_t>(i));
  }
  int var_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
  }
  bool has_var(const std::string& name) const { return var_index(name) >= 0; }
  std::uint64_t characteristic() const { return char_; }
  const TermOrder& order() const { return order_; }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.vars_ == b.vars_ && a.char_ == b.char_ && a.order_ == b.order_;
  }
  friend bool operator!=(const PolyRing& a, const PolyRing& b) {
    return !(a == b);
  }

 private:
  std::vector<std::string> vars_;
  std::uint64_t char_;
  TermOrder order_;
  std::map<std::string, int> index_;
};

inline RingPtr make_ring(std::vector<std::string> vars,
                         std::uint64_t characteristic,
                         TermOrder order = TermOrder::grevlex()) {
  return std::make_shared<PolyRing>(std::move(vars), characteristic, order);
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (!a || !b) return false;
  return a == b || *a == *b;
}

// ---------------------------------------------------------------------------
// scalar glue

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static bool matches_ring(const PolyRing& r) {
    return r.characteristic() == 0;
  }
  static bool coeff_ok(const PolyRing&, const Rational&) { return true; }
  static Rational from_long(const PolyRing&, long v) { return Rational(v); }
  static Rational from_bigint(const PolyRing&, const BigInt& v) {
    return Rational(v);
  }
  static Rational from_fraction(const PolyRing&, const BigInt& n,
                                const BigInt& d) {
    return Rational(n, d);
  }
  static std::pair<bool, std::string> split_sign(const Rational& v) {
    if (v.sign() < 0) return {true, (-v).str()};
    return {false, v.str()};
  }
  static bool is_one(const Rational& v) { return v == Rational(1); }
  static long coeff_bits(const Rational& v) {
    return static_cast<long>(mpz_sizeinbase(v.num().get_mpz_t(), 2) +
                             mpz_sizeinbase(v.den().get_mpz_t(), 2));
  }
};

template <>
struct ScalarTraits<Fp> {
  static bool matches_ring(const PolyRing& r) {
    return r.characteristic() != 0;
  }
  static bool coeff_ok(const PolyRing& r, const Fp& v) {
    return v.modulus() == r.characteristic();
  }
  static Fp from_long(const PolyRing& r, long v) {
    return Fp::from_signed(v, r.characteristic());
  }
  static Fp from_bigint(const PolyRing& r, const BigInt& v) {
    const BigInt m = v % BigInt(static_cast<unsigned long>(r.characteristic()));
    BigInt mm = m;
    if (sgn(mm) < 0) mm += BigInt(static_cast<unsigned long>(r.characteristic()));
    return Fp(mm.get_ui(), r.characteristic());
  }
  static Fp from_fraction(const PolyRing&, const BigInt&, const BigInt&) {
    throw std::invalid_argument(
        "polynomial parse: fractional coefficients need characteristic 0");
  }
  static std::pair<bool, std::string> split_sign(const Fp& v) {
    return {false, v.str()};
  }
  static bool is_one(const Fp& v) { return v.value() == 1; }
  static long coeff_bits(const Fp&) { return 0; }
};

// ---------------------------------------------------------------------------
// sparse polynomials

template <class K>
class MultiPoly {
 public:
  using Term = std::pair<Mono, K>;

  MultiPoly() = default;

  static MultiPoly zero(RingPtr ring) {
    MultiPoly p;
    p.ring_ = require_ring(std::move(ring));
    return p;
  }

  static MultiPoly constant(RingPtr ring, const K& c) {
    MultiPoly p = zero(std::move(ring));
    if (!is_zero_scalar(c)) {
      check_coeff(*p.ring_, c);
      p.terms_.emplace_back(mono_one(p.ring_->nvars()), c);
      p.deg_ = 0;
    }
    return p;
  }

  static MultiPoly constant(RingPtr ring, long c) {
    auto r = require_ring(std::move(ring));
    return constant(r, ScalarTraits<K>::from_long(*r, c));
  }

  static MultiPoly variable(RingPtr ring, const std::string& name) {
    auto r = require_ring(std::move(ring));
    const int i = r->var_index(name);
    if (i < 0)
      throw std::invalid_argument("MultiPoly: unknown variable '" + name + "'");
    Mono m = mono_one(r->nvars());
    m.e[static_cast<std::size_t>(i)] = 1;
    m.deg = 1;
    return monomial(r, m, ScalarTraits<K>::from_long(*r, 1));
  }

  static MultiPoly monomial(RingPtr ring, const Mono& m, const K& c) {
    MultiPoly p = zero(std::move(ring));
    if (static_cast<int>(m.e.size()) != p.ring_->nvars())
      throw std::invalid_argument("MultiPoly: monomial arity mismatch");
    if (!is_zero_scalar(c)) {
      check_coeff(*p.ring_, c);
      p.terms_.emplace_back(m, c);
      p.deg_ = static_cast<int>(m.deg);
    }
    return p;
  }

  // Terms may arrive unsorted and with repeats; the result is canonical.
  static MultiPoly from_terms(RingPtr ring, std::vector<Term>&& raw) {
    MultiPoly p = zero(std::move(ring));
    const TermOrder& ord = p.ring_->order();
    std::sort(raw.begin(), raw.end(), [&](const Term& a, const Term& b) {
      return mono_cmp(ord, a.first, b.first) > 0;
    });
    for (auto& t : raw) {
      if (static_cast<int>(t.first.e.size()) != p.ring_->nvars())
        throw std::invalid_argument("MultiPoly: term arity mismatch");
      if (!p.terms_.empty() && mono_equal(p.terms_.back().first, t.first)) {
        p.terms_.back().second += t.second;
      } else {
        p.terms_.emplace_back(std::move(t));
      }
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < p.terms_.size(); ++i) {
      if (!is_zero_scalar(p.terms_[i].second)) {
        check_coeff(*p.ring_, p.terms_[i].second);
        if (w != i) p.terms_[w] = std::move(p.terms_[i]);
        ++w;
      }
    }
    p.terms_.resize(w);
    p.recompute_degree();
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t nterms() const { return terms_.size(); }
  int total_degree() const { return deg_; }

  const Mono& leading_mono() const {
    require_nonzero();
    return terms_.front().first;
  }
  const K& leading_coeff() const {
    require_nonzero();
    return terms_.front().second;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.deg == 0);
  }
  K constant_coeff() const {
    for (const auto& t : terms_)
      if (t.first.deg == 0) return t.second;
    return ScalarTraits<K>::from_long(*ring_, 0);
  }

  K coeff_of(const Mono& m) const {
    for (const auto& t : terms_)
      if (mono_equal(t.first, m)) return t.second;
    return ScalarTraits<K>::from_long(*ring_, 0);
  }

  int degree_in(const std::string& name) const {
    const int i = var_index_checked(name);
    int d = 0;
    for (const auto& t : terms_)
      d = std::max(d, static_cast<int>(t.first.e[static_cast<std::size_t>(i)]));
    return d;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    return merge(a, b, false);
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    return merge(a, b, true);
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return zero(a.ring_);
    std::unordered_map<Mono, K, detail::MonoHash, detail::MonoEq> acc;
    acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 8);
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        Mono m = mono_mul(ta.first, tb.first);
        K c = ta.second * tb.second;
        auto it = acc.find(m);
        if (it == acc.end())
          acc.emplace(std::move(m), std::move(c));
        else
          it->second += c;
      }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& kv : acc) out.emplace_back(kv.first, kv.second);
    return from_terms(a.ring_, std::move(out));
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const K& c) const {
    if (is_zero_scalar(c)) return zero(ring_);
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.second = t.second * c;
    std::size_t w = 0;
    for (std::size_t i = 0; i < r.terms_.size(); ++i) {
      if (!is_zero_scalar(r.terms_[i].second)) {
        if (w != i) r.terms_[w] = std::move(r.terms_[i]);
        ++w;
      }
    }
    r.terms_.resize(w);
    r.recompute_degree();
    return r;
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly base = *this;
    MultiPoly r = constant(ring_, 1);
    while (e) {
      if (e & 1u) r *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return r;
  }

  MultiPoly monic() const {
    require_nonzero();
    K inv = ScalarTraits<K>::from_long(*ring_, 1) / leading_coeff();
    return scaled(inv);
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (!same_ring(a.ring_, b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!mono_equal(a.terms_[i].first, b.terms_[i].first) ||
          !(a.terms_[i].second == b.terms_[i].second))
        return false;
    }
    return true;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) {
    return !(a == b);
  }

  MultiPoly derivative(const std::string& name) const {
    const int i = var_index_checked(name);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      const auto e = t.first.e[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      K c = t.second * ScalarTraits<K>::from_long(*ring_, static_cast<long>(e));
      if (is_zero_scalar(c)) continue;
      Mono m = t.first;
      m.e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e - 1);
      m.deg -= 1;
      out.emplace_back(std::move(m), std::move(c));
    }
    return from_terms(ring_, std::move(out));
  }

  // General substitution. Variables without an image must exist verbatim in
  // the target ring. Characteristic must match; only the variable set and
  // term order may change.
  MultiPoly substitute(
      RingPtr target,
      const std::map<std::string, MultiPoly>& images) const {
    auto tr = require_ring(std::move(target));
    if (tr->characteristic() != ring_->characteristic())
      throw std::invalid_argument("substitute: characteristic mismatch");
    std::vector<const MultiPoly*> image_of(
        static_cast<std::size_t>(ring_->nvars()), nullptr);
    std::vector<MultiPoly> identity_cache;
    identity_cache.reserve(static_cast<std::size_t>(ring_->nvars()));
    for (int i = 0; i < ring_->nvars(); ++i) {
      auto it = images.find(ring_->var(i));
      if (it != images.end()) {
        if (!same_ring(it->second.ring(), tr))
          throw std::invalid_argument(
              "substitute: image not in the target ring");
        image_of[static_cast<std::size_t>(i)] = &it->second;
      }
    }
    // power cache per variable, built lazily
    std::vector<std::vector<MultiPoly>> pows(
        static_cast<std::size_t>(ring_->nvars()));
    auto power = [&](int i, unsigned e) -> const MultiPoly& {
      auto& cache = pows[static_cast<std::size_t>(i)];
      if (cache.empty()) {
        cache.push_back(constant(tr, 1));
        if (image_of[static_cast<std::size_t>(i)])
          cache.push_back(*image_of[static_cast<std::size_t>(i)]);
        else
          cache.push_back(variable(tr, ring_->var(i)));
      }
      while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
      return cache[e];
    };
    MultiPoly result = zero(tr);
    for (const auto& t : terms_) {
      MultiPoly acc = constant(tr, coerce_coeff(*tr, t.second));
      for (int i = 0; i < ring_->nvars(); ++i) {
        const auto e = t.first.e[static_cast<std::size_t>(i)];
        if (e) acc *= power(i, e);
      }
      result += acc;
    }
    return result;
  }

  // Structural move into a ring holding (at least) the variables this
  // polynomial actually uses. No arithmetic, just re-indexing.
  MultiPoly into_ring(RingPtr target) const {
    auto tr = require_ring(std::move(target));
    if (tr->characteristic() != ring_->characteristic())
      throw std::invalid_argument("into_ring: characteristic mismatch");
    std::vector<int> remap(static_cast<std::size_t>(ring_->nvars()), -1);
    for (int i = 0; i < ring_->nvars(); ++i)
      remap[static_cast<std::size_t>(i)] = tr->var_index(ring_->var(i));
    std::vector<typename MultiPoly<K>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Mono m = mono_one(tr->nvars());
      for (int i = 0; i < ring_->nvars(); ++i) {
        const auto e = t.first.e[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        const int j = remap[static_cast<std::size_t>(i)];
        if (j < 0)
          throw std::invalid_argument("into_ring: variable '" + ring_->var(i) +
                                      "' missing from target ring");
        m.e[static_cast<std::size_t>(j)] = e;
      }
      m.deg = t.first.deg;
      out.emplace_back(std::move(m), coerce_coeff(*tr, t.second));
    }
    return from_terms(tr, std::move(out));
  }

  std::string str() const;
  static MultiPoly parse(RingPtr ring, const std::string& text);

 private:
  static RingPtr require_ring(RingPtr r) {
    if (!r) throw std::invalid_argument("MultiPoly: null ring");
    if (!ScalarTraits<K>::matches_ring(*r))
      throw std::invalid_argument("MultiPoly: scalar type does not match ring");
    return r;
  }
  static void check_coeff(const PolyRing& r, const K& c) {
    if (!ScalarTraits<K>::coeff_ok(r, c))
      throw std::invalid_argument("MultiPoly: coefficient from wrong field");
  }
  static K coerce_coeff(const PolyRing& r, const K& c) {
    check_coeff(r, c);
    return c;
  }
  static bool is_zero_scalar(const K& c) { return c.is_zero(); }
  static void check_same(const MultiPoly& a, const MultiPoly& b) {
    if (!same_ring(a.ring_, b.ring_))
      throw std::invalid_argument("MultiPoly: mixed rings");
  }
  void require_nonzero() const {
    if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial");
  }
  int var_index_checked(const std::string& name) const {
    const int i = ring_->var_index(name);
    if (i < 0)
      throw std::invalid_argument("MultiPoly: unknown variable '" + name + "'");
    return i;
  }
  void recompute_degree() {
    deg_ = -1;
    for (const auto& t : terms_)
      deg_ = std::max(deg_, static_cast<int>(t.first.deg));
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool sub) {
    check_same(a, b);
    const TermOrder& ord = a.ring_->order();
    MultiPoly r = zero(a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i >= a.terms_.size())
        c = -1;
      else if (j >= b.terms_.size())
        c = 1;
      else
        c = mono_cmp(ord, a.terms_[i].first, b.terms_[j].first);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const auto& t = b.terms_[j++];
        r.terms_.emplace_back(t.first, sub ? -t.second : t.second);
      } else {
        K v = sub ? a.terms_[i].second - b.terms_[j].second
                  : a.terms_[i].second + b.terms_[j].second;
        if (!is_zero_scalar(v))
          r.terms_.emplace_back(a.terms_[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    r.recompute_degree();
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
  int deg_ = -1;
};

// f - c * x^m * g, the inner step of polynomial reduction. Multiplying by a
// monomial preserves term order, so this is a single merge pass.
template <class K>
MultiPoly<K> axpy_submul(const MultiPoly<K>& f, const K& c, const Mono& m,
                         const MultiPoly<K>& g) {
  std::vector<typename MultiPoly<K>::Term> shifted;
  shifted.reserve(g.terms().size());
  for (const auto& t : g.terms())
    shifted.emplace_back(mono_mul(t.first, m), c * t.second);
  const TermOrder& ord = f.ring()->order();
  std::vector<typename MultiPoly<K>::Term> out;
  out.reserve(f.terms().size() + shifted.size());
  std::size_t i = 0, j = 0;
  const auto& a = f.terms();
  while (i < a.size() || j < shifted.size()) {
    int cmp;
    if (i >= a.size())
      cmp = -1;
    else if (j >= shifted.size())
      cmp = 1;
    else
      cmp = mono_cmp(ord, a[i].first, shifted[j].first);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.emplace_back(shifted[j].first, -shifted[j].second);
      ++j;
    } else {
      K v = a[i].second - shifted[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return MultiPoly<K>::from_terms(f.ring(), std::move(out));
}

// ---------------------------------------------------------------------------
// parsing and printing

template <class K>
std::string MultiPoly<K>::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t idx = 0; idx < terms_.size(); ++idx) {
    const auto& [m, c] = terms_[idx];
    auto [neg, abs] = ScalarTraits<K>::split_sign(c);
    if (idx == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string monostr;
    for (int i = 0; i < ring_->nvars(); ++i) {
      const auto e = m.e[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      if (!monostr.empty()) monostr += "*";
      monostr += ring_->var(i);
      if (e > 1) monostr += "^" + std::to_string(e);
    }
    if (monostr.empty()) {
      out += abs;
    } else if (abs == "1") {
      out += monostr;
    } else {
      out += abs + "*" + monostr;
    }
  }
  return out;
}

namespace detail {

template <class K>
class PolyParser {
 public:
  PolyParser(RingPtr ring, const std::string& s) : ring_(ring), s_(s) {}

  MultiPoly<K> run() {
    MultiPoly<K> result = MultiPoly<K>::zero(ring_);
    skip_ws();
    bool first = true;
    while (true) {
      int sign = 1;
      if (first) {
        if (peek() == '+' || peek() == '-') sign = (get() == '-') ? -1 : 1;
      } else {
        if (pos_ >= s_.size()) break;
        const char c = get();
        if (c == '+')
          sign = 1;
        else if (c == '-')
          sign = -1;
        else
          fail("expected '+' or '-'");
      }
      skip_ws();
      result += parse_term(sign);
      skip_ws();
      first = false;
    }
    if (pos_ != s_.size()) fail("trailing input");
    return result;
  }

 private:
  MultiPoly<K> parse_term(int sign) {
    K coeff = ScalarTraits<K>::from_long(*ring_, sign);
    Mono m = mono_one(ring_->nvars());
    bool any = false;
    while (true) {
      skip_ws();
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        const BigInt n = read_number();
        skip_ws();
        if (peek() == '/') {
          get();
          skip_ws();
          if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected denominator");
          const BigInt d = read_number();
          coeff = coeff * ScalarTraits<K>::from_fraction(*ring_, n, d);
        } else {
          coeff = coeff * ScalarTraits<K>::from_bigint(*ring_, n);
        }
        any = true;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::string name = read_name();
        const int vi = ring_->var_index(name);
        if (vi < 0) fail("unknown variable '" + name + "'");
        unsigned long e = 1;
        skip_ws();
        if (peek() == '^') {
          get();
          skip_ws();
          if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected exponent");
          const BigInt be = read_number();
          if (be > 0xffff) fail("exponent too large");
          e = be.get_ui();
        }
        const unsigned long cur = m.e[static_cast<std::size_t>(vi)];
        if (cur + e > 0xffff) fail("exponent too large");
        m.e[static_cast<std::size_t>(vi)] =
            static_cast<std::uint16_t>(cur + e);
        m.deg += static_cast<std::uint32_t>(e);
        any = true;
      } else {
        fail("expected a coefficient or a variable");
      }
      skip_ws();
      if (peek() == '*') {
        get();
        continue;
      }
      const char n = peek();
      if (std::isdigit(static_cast<unsigned char>(n)) ||
          std::isalpha(static_cast<unsigned char>(n)) || n == '_')
        continue;  // implicit product across whitespace
      break;
    }
    if (!any) fail("empty term");
    return MultiPoly<K>::monomial(ring_, m, coeff);
  }

  BigInt read_number() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
    return BigInt(digits);
  }

  std::string read_name() {
    std::string name;
    name += get();
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      name += get();
    return name;
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("polynomial parse at offset " +
                                std::to_string(pos_) + ": " + msg);
  }

  RingPtr ring_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class K>
MultiPoly<K> MultiPoly<K>::parse(RingPtr ring, const std::string& text) {
  auto r = require_ring(std::move(ring));
  return detail::PolyParser<K>(r, text).run();
}

// ---------------------------------------------------------------------------
// structural helpers

template <class K>
int degree_in_set(const MultiPoly<K>& f, const std::vector<int>& var_idx) {
  int d = -1;
  for (const auto& t : f.terms()) {
    int s = 0;
    for (int i : var_idx) s += t.first.e[static_cast<std::size_t>(i)];
    d = std::max(d, s);
  }
  return d;
}

template <class K>
bool is_homogeneous_in_set(const MultiPoly<K>& f,
                           const std::vector<int>& var_idx, int d) {
  for (const auto& t : f.terms()) {
    int s = 0;
    for (int i : var_idx) s += t.first.e[static_cast<std::size_t>(i)];
    if (s != d) return false;
  }
  return true;
}

inline std::vector<int> var_indices(const RingPtr& ring,
                                    const std::vector<std::string>& names) {
  std::vector<int> idx;
  idx.reserve(names.size());
  for (const auto& n : names) {
    const int i = ring->var_index(n);
    if (i < 0)
      throw std::invalid_argument("var_indices: unknown variable '" + n + "'");
    idx.push_back(i);
  }
  return idx;
}

// ---------------------------------------------------------------------------
// coefficient extraction

// Splits f along the named variables: key = exponents on `vars` (in the given
// order), value = the coefficient polynomial (same ring, zero exponents on
// `vars`). Summing key-monomial * value over all entries rebuilds f.
template <class K>
std::map<std::vector<std::uint16_t>, MultiPoly<K>> coefficient_decomposition(
    const MultiPoly<K>& f, const std::vector<std::string>& vars) {
  const auto idx = var_indices(f.ring(), vars);
  std::map<std::vector<std::uint16_t>,
           std::vector<typename MultiPoly<K>::Term>>
      buckets;
  for (const auto& t : f.terms()) {
    std::vector<std::uint16_t> key(idx.size());
    Mono rest = t.first;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto i = static_cast<std::size_t>(idx[k]);
      key[k] = rest.e[i];
      rest.deg -= rest.e[i];
      rest.e[i] = 0;
    }
    buckets[std::move(key)].emplace_back(std::move(rest), t.second);
  }
  std::map<std::vector<std::uint16_t>, MultiPoly<K>> out;
  for (auto& [key, terms] : buckets)
    out.emplace(key, MultiPoly<K>::from_terms(f.ring(), std::move(terms)));
  return out;
}

template <class K>
MultiPoly<K> coefficient_in(const MultiPoly<K>& f,
                            const std::vector<std::string>& vars,
                            const std::vector<std::uint16_t>& exps) {
  if (vars.size() != exps.size())
    throw std::invalid_argument("coefficient_in: arity mismatch");
  auto decomp = coefficient_decomposition(f, vars);
  auto it = decomp.find(exps);
  if (it == decomp.end()) return MultiPoly<K>::zero(f.ring());
  return it->second;
}

// ---------------------------------------------------------------------------
// linear substitution and determinants

// Replaces each vars[i] by sum_j M[i][j] * vars[j], all read in the target
// ring. Matrix entries may be arbitrary polynomials there (scalars or
// unknowns alike).
template <class K>
MultiPoly<K> substitute_linear(const MultiPoly<K>& f,
                               const std::vector<std::vector<MultiPoly<K>>>& M,
                               const std::vector<std::string>& vars,
                               RingPtr target) {
  const std::size_t k = vars.size();
  if (M.size() != k)
    throw std::invalid_argument("substitute_linear: matrix row count");
  for (const auto& row : M)
    if (row.size() != k)
      throw std::invalid_argument("substitute_linear: matrix not square");
  std::map<std::string, MultiPoly<K>> images;
  for (std::size_t i = 0; i < k; ++i) {
    MultiPoly<K> img = MultiPoly<K>::zero(target);
    for (std::size_t j = 0; j < k; ++j)
      img += M[i][j] * MultiPoly<K>::variable(target, vars[j]);
    images.emplace(vars[i], std::move(img));
  }
  return f.substitute(target, images);
}

template <class K>
MultiPoly<K> poly_det(const std::vector<std::vector<MultiPoly<K>>>& M) {
  const std::size_t n = M.size();
  if (n == 0) throw std::invalid_argument("poly_det: empty matrix");
  for (const auto& row : M)
    if (row.size() != n) throw std::invalid_argument("poly_det: not square");
  if (n > 8) throw std::invalid_argument("poly_det: cofactor expansion cap");
  if (n == 1) return M[0][0];
  MultiPoly<K> acc = MultiPoly<K>::zero(M[0][0].ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<MultiPoly<K>>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly<K>> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(M[r][c]);
      minor.push_back(std::move(row));
    }
    MultiPoly<K> term = M[0][j] * poly_det(minor);
    if (j % 2 == 1) term = -term;
    acc += term;
  }
  return acc;
}

}  // namespace verra::algebra
