#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "symplift/residue.hpp"

namespace symplift {

inline constexpr unsigned kMaxDim = 12;

/// Dense dim x dim matrix over Z/l^k Z, row-major, canonical entries.
class MatMod {
 public:
  MatMod() = default;

  MatMod(unsigned dim, const Modulus& m) : dim_(dim), modulus_(m), entries_(std::size_t(dim) * dim, 0) {
    if (dim < 2 || dim > kMaxDim || dim % 2 != 0)
      fail(errc::range_error, "matrix dimension " + std::to_string(dim) + " must be even in [2, 12]");
  }

  static MatMod identity(unsigned dim, const Modulus& m) {
    MatMod r(dim, m);
    for (unsigned i = 0; i < dim; ++i) r.entries_[i * dim + i] = 1 % m.value;
    return r;
  }

  /// Builds a matrix from signed integers, reducing each into [0, l^k).
  static MatMod from_ints(unsigned dim, const Modulus& m, std::span<const i64> values) {
    MatMod r(dim, m);
    if (values.size() != r.entries_.size())
      fail(errc::dim_mismatch, "expected " + std::to_string(r.entries_.size()) + " entries, got " +
                                   std::to_string(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) r.entries_[i] = mod_normalize(values[i], m.value);
    return r;
  }
  static MatMod from_ints(unsigned dim, const Modulus& m, std::initializer_list<i64> values) {
    return from_ints(dim, m, std::span<const i64>(values.begin(), values.size()));
  }

  unsigned dim() const noexcept { return dim_; }
  const Modulus& modulus() const noexcept { return modulus_; }
  std::span<const u64> entries() const noexcept { return entries_; }
  std::span<u64> raw() noexcept { return entries_; }

  u64 operator()(unsigned r, unsigned c) const { return entries_[std::size_t(r) * dim_ + c]; }
  void set(unsigned r, unsigned c, i64 v) { entries_[std::size_t(r) * dim_ + c] = mod_normalize(v, modulus_.value); }
  void set_canonical(unsigned r, unsigned c, u64 v) { entries_[std::size_t(r) * dim_ + c] = v; }

  bool is_identity() const {
    for (unsigned r = 0; r < dim_; ++r)
      for (unsigned c = 0; c < dim_; ++c)
        if ((*this)(r, c) != (r == c ? 1 % modulus_.value : 0)) return false;
    return true;
  }
  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](u64 v) { return v == 0; });
  }

  friend bool operator==(const MatMod&, const MatMod&) = default;

 private:
  unsigned dim_ = 0;
  Modulus modulus_;
  std::vector<u64> entries_;
};

namespace detail {

inline void check_compatible(const MatMod& a, const MatMod& b) {
  if (a.dim() != b.dim())
    fail(errc::dim_mismatch, std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  if (!(a.modulus() == b.modulus())) fail(errc::mod_mismatch, a.modulus().str() + " vs " + b.modulus().str());
}

/// True when dim * (m-1)^2 fits in 64 bits, so a dot product can accumulate without wrapping.
inline bool small_accumulate(unsigned dim, u64 m) {
  u128 bound = u128(m - 1) * (m - 1) * dim;
  return bound < (u128(1) << 64);
}

}  // namespace detail

inline MatMod mat_mul(const MatMod& a, const MatMod& b) {
  detail::check_compatible(a, b);
  const unsigned n = a.dim();
  const u64 m = a.modulus().value;
  MatMod out(n, a.modulus());
  auto dst = out.raw();
  auto x = a.entries();
  auto y = b.entries();
  if (detail::small_accumulate(n, m)) {
    for (unsigned r = 0; r < n; ++r)
      for (unsigned c = 0; c < n; ++c) {
        u64 acc = 0;
        for (unsigned i = 0; i < n; ++i) acc += x[r * n + i] * y[i * n + c];
        dst[r * n + c] = acc % m;
      }
  } else {
    for (unsigned r = 0; r < n; ++r)
      for (unsigned c = 0; c < n; ++c) {
        u128 acc = 0;
        for (unsigned i = 0; i < n; ++i) acc += (u128(x[r * n + i]) * y[i * n + c]) % m;
        dst[r * n + c] = static_cast<u64>(acc % m);
      }
  }
  return out;
}

inline MatMod operator*(const MatMod& a, const MatMod& b) { return mat_mul(a, b); }

inline MatMod mat_add(const MatMod& a, const MatMod& b) {
  detail::check_compatible(a, b);
  MatMod out = a;
  auto d = out.raw();
  auto y = b.entries();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = add_mod(d[i], y[i], a.modulus().value);
  return out;
}

inline MatMod mat_sub(const MatMod& a, const MatMod& b) {
  detail::check_compatible(a, b);
  MatMod out = a;
  auto d = out.raw();
  auto y = b.entries();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = sub_mod(d[i], y[i], a.modulus().value);
  return out;
}

inline MatMod mat_scale(const MatMod& a, i64 s) {
  MatMod out = a;
  const u64 m = a.modulus().value;
  const u64 sc = mod_normalize(s, m);
  for (auto& v : out.raw()) v = mul_mod(v, sc, m);
  return out;
}

inline MatMod mat_neg(const MatMod& a) { return mat_scale(a, -1); }

inline MatMod mat_transpose(const MatMod& a) {
  MatMod out(a.dim(), a.modulus());
  for (unsigned r = 0; r < a.dim(); ++r)
    for (unsigned c = 0; c < a.dim(); ++c) out.set_canonical(c, r, a(r, c));
  return out;
}

/// Gauss-Jordan elimination choosing unit pivots; a matrix over Z/l^k is
/// invertible exactly when its reduction mod l is.
inline MatMod mat_inv(const MatMod& a) {
  const unsigned n = a.dim();
  const Modulus& mod = a.modulus();
  const u64 m = mod.value;
  std::vector<u64> work(std::size_t(n) * 2 * n, 0);
  const unsigned w = 2 * n;
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned c = 0; c < n; ++c) work[r * w + c] = a(r, c);
    work[r * w + n + r] = 1 % m;
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = n;
    for (unsigned r = col; r < n; ++r)
      if (work[r * w + col] % mod.l != 0) {
        piv = r;
        break;
      }
    if (piv == n) fail(errc::not_invertible, "no unit pivot in column " + std::to_string(col));
    if (piv != col)
      for (unsigned c = 0; c < w; ++c) std::swap(work[piv * w + c], work[col * w + c]);
    const u64 inv = inv_mod_unchecked(work[col * w + col], m);
    for (unsigned c = 0; c < w; ++c) work[col * w + c] = mul_mod(work[col * w + c], inv, m);
    for (unsigned r = 0; r < n; ++r) {
      if (r == col) continue;
      const u64 f = work[r * w + col];
      if (f == 0) continue;
      for (unsigned c = 0; c < w; ++c)
        work[r * w + c] = sub_mod(work[r * w + c], mul_mod(f, work[col * w + c], m), m);
    }
  }
  MatMod out(n, mod);
  for (unsigned r = 0; r < n; ++r)
    for (unsigned c = 0; c < n; ++c) out.set_canonical(r, c, work[r * w + n + c]);
  return out;
}

inline MatMod mat_pow(const MatMod& a, u64 n) {
  MatMod result = MatMod::identity(a.dim(), a.modulus());
  MatMod base = a;
  while (n > 0) {
    if (n & 1) result = mat_mul(result, base);
    n >>= 1;
    if (n > 0) base = mat_mul(base, base);
  }
  return result;
}

/// Entry-wise reduction from l^k down to l^j.
inline MatMod mat_reduce(const MatMod& a, unsigned j) {
  if (j < 1 || j > a.modulus().k)
    fail(errc::range_error, "reduction level " + std::to_string(j) + " outside [1, " +
                                std::to_string(a.modulus().k) + "]");
  const Modulus target = make_modulus(a.modulus(), j);
  MatMod out(a.dim(), target);
  auto src = a.entries();
  auto dst = out.raw();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] % target.value;
  return out;
}

/// Reinterprets the canonical representatives at a higher level l^j (j >= k).
inline MatMod mat_lift(const MatMod& a, unsigned j) {
  if (j < a.modulus().k) fail(errc::range_error, "lift target below current level");
  const Modulus target = make_modulus(a.modulus(), j);
  MatMod out(a.dim(), target);
  std::copy(a.entries().begin(), a.entries().end(), out.raw().begin());
  return out;
}

/// Fixed-width packing of a matrix: entry e = r*dim + c occupies bits
/// [e*bits, (e+1)*bits) of a little-endian word array.
struct KeyCodec {
  unsigned dim = 0;
  Modulus modulus;
  unsigned bits = 1;   // per entry
  unsigned words = 1;  // 64-bit words per key

  KeyCodec() = default;
  KeyCodec(unsigned d, const Modulus& m) : dim(d), modulus(m) {
    bits = static_cast<unsigned>(std::bit_width(m.value - 1));
    if (bits == 0) bits = 1;
    words = (total_bits() + 63) / 64;
  }

  unsigned total_bits() const { return dim * dim * bits; }
  unsigned row_bits() const { return dim * bits; }
  unsigned byte_count() const { return (total_bits() + 7) / 8; }

  static u64 get_bits(const u64* words, unsigned offset, unsigned len) {
    const unsigned w = offset / 64, s = offset % 64;
    u64 v = words[w] >> s;
    if (s + len > 64) v |= words[w + 1] << (64 - s);
    return len == 64 ? v : (v & ((u64(1) << len) - 1));
  }
  static void or_bits(u64* words, unsigned offset, unsigned len, u64 value) {
    const unsigned w = offset / 64, s = offset % 64;
    words[w] |= value << s;
    if (s + len > 64) words[w + 1] |= value >> (64 - s);
  }

  void encode(const MatMod& a, u64* out) const {
    std::fill(out, out + words, u64(0));
    auto e = a.entries();
    for (std::size_t i = 0; i < e.size(); ++i) or_bits(out, static_cast<unsigned>(i * bits), bits, e[i]);
  }
  void encode_raw(const u64* entries, u64* out) const {
    std::fill(out, out + words, u64(0));
    for (unsigned i = 0; i < dim * dim; ++i) or_bits(out, i * bits, bits, entries[i]);
  }
  void decode_raw(const u64* key, u64* entries) const {
    for (unsigned i = 0; i < dim * dim; ++i) entries[i] = get_bits(key, i * bits, bits);
  }
  MatMod decode(const u64* key) const {
    MatMod a(dim, modulus);
    decode_raw(key, a.raw().data());
    return a;
  }
};

/// Byte string identifying a matrix: (dim, l, k) followed by the packed entries.
inline std::string canonical_key(const MatMod& a) {
  KeyCodec codec(a.dim(), a.modulus());
  std::vector<u64> words(codec.words);
  codec.encode(a, words.data());
  std::string key;
  key.reserve(3 + codec.byte_count());
  key.push_back(static_cast<char>(a.dim()));
  key.push_back(static_cast<char>(a.modulus().l));
  key.push_back(static_cast<char>(a.modulus().k));
  for (unsigned b = 0; b < codec.byte_count(); ++b)
    key.push_back(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFF));
  return key;
}

inline std::vector<i64> to_ints(const MatMod& a) {
  std::vector<i64> out(a.entries().begin(), a.entries().end());
  return out;
}

}  // namespace symplift
