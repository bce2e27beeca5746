#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symplift/liealg.hpp"
#include "symplift/packed.hpp"

namespace symplift {

inline constexpr std::uint64_t kDefaultCap = std::uint64_t(1) << 24;

/// Finitely many symplectic generators at one level l^k.
struct GenSet {
  unsigned g = 1;
  Modulus modulus;
  FormKind form = FormKind::omega;
  std::vector<MatMod> generators;
  std::string label;
};

inline GenSet make_genset(unsigned g, const Modulus& m, FormKind form, std::vector<MatMod> gens, std::string label = {}) {
  check_genus(g);
  if (gens.empty()) fail(errc::input_error, "generator list is empty");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& x = gens[i];
    if (x.dim() != 2 * g) fail(errc::dim_mismatch, "generator " + std::to_string(i) + " has the wrong size");
    if (!(x.modulus() == m)) fail(errc::mod_mismatch, "generator " + std::to_string(i) + " has the wrong modulus");
    if (!is_symplectic(x, form))
      fail(errc::not_symplectic, "generator " + std::to_string(i) + " is not " + to_string(form) + "-symplectic");
  }
  return GenSet{g, m, form, std::move(gens), std::move(label)};
}

inline GenSet reduce_genset(const GenSet& gs, unsigned j) {
  GenSet out = gs;
  out.modulus = make_modulus(gs.modulus, j);
  for (auto& x : out.generators) x = mat_reduce(x, j);
  return out;
}

/// Generator i is word letter +(i+1); its inverse is -(i+1).
using Word = std::vector<int>;

struct Letter {
  int label;
  MatMod matrix;
};

/// The generators followed by those inverses that are not already in the list.
inline std::vector<Letter> letters_with_inverses(const GenSet& gs) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < gs.generators.size(); ++i) out.push_back({int(i) + 1, gs.generators[i]});
  for (std::size_t i = 0; i < gs.generators.size(); ++i) {
    MatMod inv = symplectic_inverse(gs.generators[i], gs.form);
    bool dup = false;
    for (const auto& l : out) dup = dup || l.matrix == inv;
    if (!dup) out.push_back({-(int(i) + 1), std::move(inv)});
  }
  return out;
}

inline MatMod evaluate_word(const GenSet& gs, const Word& w, u64 power = 1) {
  MatMod x = MatMod::identity(2 * gs.g, gs.modulus);
  for (int letter : w) {
    const auto idx = static_cast<std::size_t>(std::abs(letter) - 1);
    if (letter == 0 || idx >= gs.generators.size()) fail(errc::input_error, "word letter out of range");
    x = mat_mul(x, letter > 0 ? gs.generators[idx] : symplectic_inverse(gs.generators[idx], gs.form));
  }
  return power == 1 ? x : mat_pow(x, power);
}

inline Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

/// Elements of a generated subgroup, each stored packed; exhausted is true
/// when the set is closed under every generator.
class Closure {
 public:
  Closure(const KeyCodec& codec, FormKind form) : codec_(codec), form_(form), set_(codec.words) {}

  std::uint64_t order() const noexcept { return set_.size(); }
  bool exhausted() const noexcept { return exhausted_; }
  const KeyCodec& codec() const noexcept { return codec_; }
  FormKind form() const noexcept { return form_; }

  bool contains(const MatMod& a) const {
    if (a.dim() != codec_.dim || !(a.modulus() == codec_.modulus)) return false;
    std::vector<u64> key(codec_.words);
    codec_.encode(a, key.data());
    return set_.contains(key.data());
  }
  MatMod element(std::size_t i) const { return codec_.decode(set_.at(i)); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < set_.size(); ++i) f(element(i));
  }

  /// Appends one more generator and continues the breadth-first expansion.
  void add_generator(const MatMod& s) {
    mults_.emplace_back(codec_, s);
    const RightMultiplier& m = mults_.back();
    std::vector<u64> out(codec_.words);
    for (std::size_t i = 0; i < cursor_; ++i) {
      m.apply(set_.at(i), out.data());
      set_.insert(out.data());
    }
    exhausted_ = false;
  }

  /// Expands until closed or until the set holds more than `cap` elements.
  void run(std::uint64_t cap) {
    if (set_.size() == 0) {
      std::vector<u64> id(codec_.words);
      codec_.encode(MatMod::identity(codec_.dim, codec_.modulus), id.data());
      set_.insert(id.data());
    }
    std::vector<u64> out(codec_.words);
    while (cursor_ < set_.size()) {
      if (set_.size() > cap) {
        exhausted_ = false;
        return;
      }
      for (const auto& m : mults_) {
        m.apply(set_.at(cursor_), out.data());
        set_.insert(out.data());
      }
      ++cursor_;
    }
    exhausted_ = set_.size() <= cap;
  }

  void release() { set_.clear_storage(); }

 private:
  KeyCodec codec_;
  FormKind form_;
  PackedSet set_;
  std::vector<RightMultiplier> mults_;
  std::size_t cursor_ = 0;
  bool exhausted_ = false;
};

/// Breadth-first closure of the generators and their inverses. A capped run
/// returns the partial set with exhausted() == false.
inline Closure closure(const GenSet& gs, std::uint64_t cap = kDefaultCap) {
  Closure c(KeyCodec(2 * gs.g, gs.modulus), gs.form);
  for (const auto& l : letters_with_inverses(gs)) c.add_generator(l.matrix);
  c.run(cap);
  return c;
}

inline Closure closure_or_throw(const GenSet& gs, std::uint64_t cap = kDefaultCap) {
  Closure c = closure(gs, cap);
  if (!c.exhausted())
    fail(errc::cap_exceeded, "closure of '" + gs.label + "' exceeded " + std::to_string(cap) + " elements");
  return c;
}

struct SurjectivityResult {
  bool surjective = false;
  bool exhausted = false;
  std::uint64_t order = 0;
  std::uint64_t expected = 0;
  /// A standard generator missing from a proper image; re-checkable witness.
  std::optional<MatMod> missing;
};

inline SurjectivityResult surjectivity_mod_l(const GenSet& gs, std::uint64_t cap = kDefaultCap) {
  GenSet low = gs.modulus.k == 1 ? gs : reduce_genset(gs, 1);
  SurjectivityResult r;
  r.expected = static_cast<std::uint64_t>(group_order(gs.g, static_cast<i64>(gs.modulus.l), 1));
  Closure c = closure(low, std::min<std::uint64_t>(cap, r.expected));
  r.exhausted = c.exhausted();
  r.order = c.order();
  if (!r.exhausted) {
    // Larger than the whole group cannot happen; exceeding a smaller cap is inconclusive.
    return r;
  }
  r.surjective = r.order == r.expected;
  if (!r.surjective)
    for (const auto& s : standard_generators(gs.g, low.modulus, gs.form))
      if (!c.contains(s)) {
        r.missing = s;
        break;
      }
  return r;
}

inline bool is_surjective_mod_l(const GenSet& gs, std::uint64_t cap = kDefaultCap) {
  auto r = surjectivity_mod_l(gs, cap);
  if (!r.exhausted) fail(errc::cap_exceeded, "mod-l closure exceeded the cap");
  return r.surjective;
}

inline MatMod commutator(const MatMod& a, const MatMod& b, FormKind form) {
  return mat_mul(mat_mul(symplectic_inverse(a, form), symplectic_inverse(b, form)), mat_mul(a, b));
}

/// Normal closure of the generator commutators [a, b] = a^-1 b^-1 a b:
/// closed under products and under conjugation by every generator.
inline Closure commutator_subgroup(const GenSet& gs, std::uint64_t cap = kDefaultCap) {
  const auto letters = letters_with_inverses(gs);
  Closure n(KeyCodec(2 * gs.g, gs.modulus), gs.form);
  std::vector<MatMod> normal_gens;
  auto add = [&](const MatMod& x) {
    if (x.is_identity()) return;
    for (const auto& y : normal_gens)
      if (y == x) return;
    normal_gens.push_back(x);
    n.add_generator(x);
    n.add_generator(symplectic_inverse(x, gs.form));
  };
  for (std::size_t i = 0; i < gs.generators.size(); ++i)
    for (std::size_t j = i + 1; j < gs.generators.size(); ++j)
      add(commutator(gs.generators[i], gs.generators[j], gs.form));
  n.run(cap);
  if (!n.exhausted()) fail(errc::cap_exceeded, "commutator subgroup exceeded the cap");
  for (std::size_t i = 0; i < normal_gens.size(); ++i) {
    for (const auto& x : letters) {
      MatMod c = mat_mul(mat_mul(symplectic_inverse(x.matrix, gs.form), normal_gens[i]), x.matrix);
      if (!n.contains(c)) {
        add(c);
        n.run(cap);
        if (!n.exhausted()) fail(errc::cap_exceeded, "commutator subgroup exceeded the cap");
      }
    }
  }
  return n;
}

/// |G| / |[G, G]|.
inline std::uint64_t abelianization_index(const GenSet& gs, std::uint64_t cap = kDefaultCap) {
  std::uint64_t whole;
  {
    Closure g = closure_or_throw(gs, cap);
    whole = g.order();
  }
  Closure n = commutator_subgroup(gs, cap);
  return whole / n.order();
}

/// A random element of the generated group as a word of `length` letters.
inline std::pair<MatMod, Word> random_element(const GenSet& gs, Rng& rng, unsigned length = 40) {
  const auto letters = letters_with_inverses(gs);
  MatMod x = MatMod::identity(2 * gs.g, gs.modulus);
  Word w;
  for (unsigned i = 0; i < length; ++i) {
    const auto& l = letters[uniform_below(rng, letters.size())];
    x = mat_mul(x, l.matrix);
    w.push_back(l.label);
  }
  return {x, w};
}

}  // namespace symplift
