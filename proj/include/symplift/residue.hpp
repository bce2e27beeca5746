#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "symplift/error.hpp"

namespace symplift {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The coefficient ring Z/l^k Z, carried as the prime, the exponent and l^k.
struct Modulus {
  u64 l = 2;
  unsigned k = 1;
  u64 value = 2;

  /// l^j, for 0 <= j <= k.
  u64 power(unsigned j) const {
    u64 p = 1;
    for (unsigned i = 0; i < j; ++i) p *= l;
    return p;
  }

  std::string str() const { return std::to_string(l) + "^" + std::to_string(k); }

  friend bool operator==(const Modulus&, const Modulus&) = default;
};

inline constexpr u64 kMaxPrime = 97;
inline constexpr unsigned kMaxExponent = 12;

inline Modulus make_modulus(i64 l, i64 k) {
  if (l < 2 || !is_prime(static_cast<u64>(l)))
    fail(errc::not_prime, std::to_string(l) + " is not prime");
  if (static_cast<u64>(l) > kMaxPrime)
    fail(errc::range_error, "primes above " + std::to_string(kMaxPrime) + " are not supported");
  if (k < 1 || k > static_cast<i64>(kMaxExponent))
    fail(errc::range_error, "exponent " + std::to_string(k) + " outside [1, 12]");
  u128 v = 1;
  for (i64 i = 0; i < k; ++i) {
    v *= static_cast<u64>(l);
    if (v >= (u128(1) << 63)) fail(errc::range_error, "l^k does not fit below 2^63");
  }
  return Modulus{static_cast<u64>(l), static_cast<unsigned>(k), static_cast<u64>(v)};
}

inline Modulus make_modulus(const Modulus& m, unsigned k) { return make_modulus(m.l, k); }

inline u64 mod_normalize(i64 x, u64 m) {
  i64 r = x % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // a, b < 2^63
  return s >= m ? s - m : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }
inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128(a) * b) % m); }

/// Inverse of a modulo m via extended Euclid; nullopt-free: caller guarantees gcd(a, m) = 1.
inline u64 inv_mod_unchecked(u64 a, u64 m) {
  i64 old_r = static_cast<i64>(a), r = static_cast<i64>(m);
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tr = old_r - q * r;
    old_r = r;
    r = tr;
    __int128 ts = old_s - __int128(q) * s;
    old_s = s;
    s = ts;
  }
  __int128 res = old_s % static_cast<__int128>(m);
  if (res < 0) res += m;
  return static_cast<u64>(res);
}

/// An element of Z/l^k Z in canonical form [0, l^k).
struct Residue {
  u64 value = 0;
  Modulus modulus;

  Residue() = default;
  Residue(i64 v, const Modulus& m) : value(mod_normalize(v, m.value)), modulus(m) {}
  static Residue from_canonical(u64 v, const Modulus& m) {
    Residue r;
    r.value = v % m.value;
    r.modulus = m;
    return r;
  }

  bool is_unit() const { return value % modulus.l != 0; }

  friend bool operator==(const Residue&, const Residue&) = default;

  friend Residue operator+(const Residue& a, const Residue& b) {
    check_same(a, b);
    return from_canonical(add_mod(a.value, b.value, a.modulus.value), a.modulus);
  }
  friend Residue operator-(const Residue& a, const Residue& b) {
    check_same(a, b);
    return from_canonical(sub_mod(a.value, b.value, a.modulus.value), a.modulus);
  }
  friend Residue operator*(const Residue& a, const Residue& b) {
    check_same(a, b);
    return from_canonical(mul_mod(a.value, b.value, a.modulus.value), a.modulus);
  }

 private:
  static void check_same(const Residue& a, const Residue& b) {
    if (!(a.modulus == b.modulus)) fail(errc::mod_mismatch, a.modulus.str() + " vs " + b.modulus.str());
  }
};

inline Residue res_inv(const Residue& x) {
  if (!x.is_unit())
    fail(errc::non_unit, std::to_string(x.value) + " is not a unit mod " + std::to_string(x.modulus.value));
  return Residue::from_canonical(inv_mod_unchecked(x.value, x.modulus.value), x.modulus);
}

inline Residue res_reduce(const Residue& x, unsigned j) {
  if (j < 1 || j > x.modulus.k)
    fail(errc::range_error, "reduction level " + std::to_string(j) + " outside [1, " +
                                std::to_string(x.modulus.k) + "]");
  Modulus target = make_modulus(x.modulus, j);
  return Residue::from_canonical(x.value % target.value, target);
}

}  // namespace symplift
