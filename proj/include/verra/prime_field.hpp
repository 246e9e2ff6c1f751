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
#include <stdexcept>
#include <string>

namespace verra::algebra {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e,
                                std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

// Deterministic Miller-Rabin. The fixed base set is a proven witness set for
// every n < 2^64, so the answer is exact, never probabilistic.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {

// Primality is checked once per modulus, then memoized; element construction
// stays cheap inside polynomial loops.
inline bool modulus_checked_prime(std::uint64_t p) {
  static thread_local std::uint64_t cached = 0;
  if (p == cached) return true;
  if (!is_prime_u64(p)) return false;
  cached = p;
  return true;
}

}  // namespace detail

// Element of F_p for a runtime prime modulus. Value is always in [0, p).
// Mixing elements of different moduli is a structural error.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(std::uint64_t value, std::uint64_t p) {
    if (!detail::modulus_checked_prime(p))
      throw std::invalid_argument("Fp: modulus " + std::to_string(p) +
                                  " is not prime");
    p_ = p;
    v_ = value % p;
  }

  static Fp from_signed(long long value, std::uint64_t p) {
    Fp r(0, p);
    const auto m = static_cast<long long>(p);
    long long v = value % m;
    if (v < 0) v += m;
    r.v_ = static_cast<std::uint64_t>(v);
    return r;
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator-() const {
    check_set();
    return make(v_ == 0 ? 0 : p_ - v_);
  }
  Fp& operator+=(const Fp& o) {
    check_pair(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    check_pair(o);
    v_ = (v_ >= o.v_) ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    check_pair(o);
    v_ = detail::mulmod_u64(v_, o.v_, p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  Fp inverse() const {
    check_set();
    if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
    return make(detail::powmod_u64(v_, p_ - 2, p_));
  }

  Fp pow(std::uint64_t e) const {
    check_set();
    return make(detail::powmod_u64(v_, e, p_));
  }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  std::string str() const { return std::to_string(v_); }

 private:
  Fp make(std::uint64_t v) const {
    Fp r;
    r.v_ = v;
    r.p_ = p_;
    return r;
  }
  void check_set() const {
    if (p_ == 0) throw std::logic_error("Fp: uninitialized modulus");
  }
  void check_pair(const Fp& o) const {
    check_set();
    if (p_ != o.p_)
      throw std::invalid_argument("Fp: mixed moduli " + std::to_string(p_) +
                                  " and " + std::to_string(o.p_));
  }

  std::uint64_t v_;
  std::uint64_t p_;
};

}  // namespace verra::algebra
