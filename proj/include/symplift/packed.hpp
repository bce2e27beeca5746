#pragma once

#include <cstdint>
#include <cstring>
#include <optional>
#include <utility>
#include <vector>

#include "symplift/matmod.hpp"

namespace symplift {

/// Insert-only hash set of fixed-width packed matrices with open addressing.
/// Elements keep insertion order, so a BFS frontier is just an index cursor.
/// Single-word keys live directly in the table; wider keys are stored in the
/// arena and the table holds their indices.
class PackedSet {
 public:
  static constexpr u64 kEmpty = ~u64(0);

  explicit PackedSet(unsigned words = 1, bool track_index = false)
      : words_(words), track_index_(track_index || words > 1) {
    rehash(64);
  }

  unsigned words() const noexcept { return words_; }
  std::size_t size() const noexcept { return arena_.size() / words_; }
  const u64* at(std::size_t i) const noexcept { return arena_.data() + i * words_; }

  void reserve(std::size_t n) {
    arena_.reserve(n * words_);
    std::size_t cap = slots_.size();
    while (n * 10 >= cap * 6) cap *= 2;
    if (cap != slots_.size()) rehash(cap);
  }

  /// Returns (index, inserted).
  std::pair<std::uint32_t, bool> insert(const u64* key) {
    if ((size() + 1) * 10 >= slots_.size() * 6) rehash(slots_.size() * 2);
    if (words_ == 1 && key[0] == kEmpty) {
      if (sentinel_index_) return {*sentinel_index_, false};
      sentinel_index_ = static_cast<std::uint32_t>(size());
      arena_.push_back(key[0]);
      return {*sentinel_index_, true};
    }
    std::size_t slot = probe(key);
    if (slots_[slot] != kEmpty) return {index_at(slot), false};
    const auto idx = static_cast<std::uint32_t>(size());
    arena_.insert(arena_.end(), key, key + words_);
    place(slot, key, idx);
    return {idx, true};
  }

  std::optional<std::uint32_t> find(const u64* key) const {
    if (words_ == 1 && key[0] == kEmpty) return sentinel_index_;
    std::size_t slot = probe(key);
    if (slots_[slot] == kEmpty) return std::nullopt;
    return index_at(slot);
  }

  bool contains(const u64* key) const { return find(key).has_value(); }

  void clear_storage() {
    std::vector<u64>().swap(arena_);
    std::vector<u64>().swap(slots_);
    std::vector<std::uint32_t>().swap(slot_index_);
  }

 private:
  static u64 mix(u64 z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
  }
  u64 hash(const u64* key) const {
    u64 h = 0x9E3779B97F4A7C15ULL;
    for (unsigned i = 0; i < words_; ++i) h = mix(h ^ key[i]) + i;
    return h;
  }

  std::uint32_t index_at(std::size_t slot) const {
    if (words_ > 1) return static_cast<std::uint32_t>(slots_[slot]);
    return track_index_ ? slot_index_[slot] : 0;
  }

  std::size_t probe(const u64* key) const {
    const std::size_t mask = slots_.size() - 1;
    std::size_t slot = hash(key) & mask;
    for (;;) {
      const u64 s = slots_[slot];
      if (s == kEmpty) return slot;
      if (words_ == 1) {
        if (s == key[0]) return slot;
      } else if (std::memcmp(at(s), key, words_ * sizeof(u64)) == 0) {
        return slot;
      }
      slot = (slot + 1) & mask;
    }
  }

  void place(std::size_t slot, const u64* key, std::uint32_t idx) {
    if (words_ == 1) {
      slots_[slot] = key[0];
      if (track_index_) slot_index_[slot] = idx;
    } else {
      slots_[slot] = idx;
    }
  }

  void rehash(std::size_t cap) {
    slots_.assign(cap, kEmpty);
    if (track_index_ && words_ == 1) slot_index_.assign(cap, 0);
    for (std::size_t i = 0; i < size(); ++i) {
      const u64* key = at(i);
      if (words_ == 1 && key[0] == kEmpty) continue;
      place(probe(key), key, static_cast<std::uint32_t>(i));
    }
  }

  unsigned words_;
  bool track_index_;
  std::vector<u64> arena_;
  std::vector<u64> slots_;
  std::vector<std::uint32_t> slot_index_;
  std::optional<std::uint32_t> sentinel_index_;
};

/// Right multiplication X -> X*S acting directly on packed keys. When a packed
/// row fits in 16 bits, the product is computed row by row from a lookup table
/// of (row code) -> (row * S); otherwise it decodes, multiplies and re-encodes.
class RightMultiplier {
 public:
  RightMultiplier(const KeyCodec& codec, const MatMod& s) : codec_(codec), s_(s) {
    const unsigned rb = codec_.row_bits();
    if (rb <= 16) {
      table_.assign(std::size_t(1) << rb, 0);
      const unsigned n = codec_.dim;
      const u64 m = codec_.modulus.value;
      std::vector<u64> row(n);
      for (u64 code = 0; code < table_.size(); ++code) {
        bool valid = true;
        for (unsigned i = 0; i < n; ++i) {
          row[i] = (code >> (i * codec_.bits)) & ((u64(1) << codec_.bits) - 1);
          if (row[i] >= m) valid = false;
        }
        if (!valid) continue;
        u64 out = 0;
        for (unsigned c = 0; c < n; ++c) {
          u64 acc = 0;
          for (unsigned i = 0; i < n; ++i) acc += row[i] * s(i, c);
          out |= (acc % m) << (c * codec_.bits);
        }
        table_[code] = static_cast<std::uint16_t>(out);
      }
    }
  }

  const MatMod& matrix() const noexcept { return s_; }

  void apply(const u64* in, u64* out) const {
    const unsigned n = codec_.dim, rb = codec_.row_bits();
    if (!table_.empty()) {
      if (codec_.words == 1) {
        const u64 mask = (u64(1) << rb) - 1;
        const u64 x = in[0];
        u64 y = 0;
        for (unsigned r = 0; r < n; ++r) y |= u64(table_[(x >> (r * rb)) & mask]) << (r * rb);
        out[0] = y;
        return;
      }
      std::fill(out, out + codec_.words, u64(0));
      for (unsigned r = 0; r < n; ++r)
        KeyCodec::or_bits(out, r * rb, rb, table_[KeyCodec::get_bits(in, r * rb, rb)]);
      return;
    }
    u64 a[kMaxDim * kMaxDim], b[kMaxDim * kMaxDim];
    codec_.decode_raw(in, a);
    const u64 m = codec_.modulus.value;
    const bool small = detail::small_accumulate(n, m);
    auto y = s_.entries();
    for (unsigned r = 0; r < n; ++r)
      for (unsigned c = 0; c < n; ++c) {
        if (small) {
          u64 acc = 0;
          for (unsigned i = 0; i < n; ++i) acc += a[r * n + i] * y[i * n + c];
          b[r * n + c] = acc % m;
        } else {
          u128 acc = 0;
          for (unsigned i = 0; i < n; ++i) acc += (u128(a[r * n + i]) * y[i * n + c]) % m;
          b[r * n + c] = static_cast<u64>(acc % m);
        }
      }
    codec_.encode_raw(b, out);
  }

 private:
  KeyCodec codec_;
  MatMod s_;
  std::vector<std::uint16_t> table_;
};

}  // namespace symplift
