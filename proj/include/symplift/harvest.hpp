#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "symplift/groupengine.hpp"

namespace symplift {

inline constexpr std::uint64_t kDefaultBudget = 1000000;

/// How a harvested kernel element was produced: evaluate `word` over the
/// generator set, then raise it to `power`.
struct KernelWitness {
  Word word;
  u64 power = 1;
};

struct HarvestResult {
  unsigned layer = 1;
  Subspace span;
  /// Raw vectors that raised the dimension, with their witnesses.
  std::vector<LieVector> vectors;
  std::vector<KernelWitness> witnesses;
  /// The mod-l image was fully enumerated and every collision processed.
  bool complete = false;
  bool budget_exhausted = false;
  std::uint64_t words_used = 0;
  std::uint64_t mod_l_order = 0;
};

namespace detail {

/// Largest v <= cap with M = id mod l^v.
inline unsigned identity_valuation(const MatMod& a, unsigned cap) {
  unsigned v = cap;
  const u64 l = a.modulus().l;
  for (unsigned r = 0; r < a.dim() && v > 0; ++r)
    for (unsigned c = 0; c < a.dim() && v > 0; ++c) {
      u64 d = sub_mod(a(r, c), r == c ? 1 : 0, a.modulus().value);
      if (d == 0) continue;
      unsigned e = 0;
      while (d % l == 0) {
        d /= l;
        ++e;
      }
      v = std::min(v, e);
    }
  return v;
}

class Harvester {
 public:
  Harvester(const GenSet& gs, std::uint64_t budget)
      : gs_(gs), level_(gs.modulus.k), layer_(gs.modulus.k - 1), budget_(budget) {
    res_.layer = layer_;
    res_.span = empty_subspace(gs.g, gs.modulus.l);
  }

  bool full() const { return res_.span.full(); }
  bool spend() {
    if (res_.words_used >= budget_) {
      res_.budget_exhausted = true;
      return false;
    }
    ++res_.words_used;
    return true;
  }

  /// Routes a kernel element (= id mod l) to the top layer, by powering if needed.
  void offer(const MatMod& u, const KernelWitness& w) {
    const unsigned v = identity_valuation(u, level_);
    if (v >= level_) return;
    if (v == layer_) {
      record(u, w);
      return;
    }
    if (pool_.size() < kPoolSize) pool_.push_back({u, w});
    u64 p = 1;
    for (unsigned i = v; i < layer_; ++i) p *= gs_.modulus.l;
    if (!spend()) return;
    MatMod up = mat_pow(u, p);
    const unsigned vu = identity_valuation(up, level_);
    if (vu == layer_) record(up, KernelWitness{w.word, w.power * p});
  }

  void record(const MatMod& u, const KernelWitness& w) {
    LieVector s = log_layer(u, gs_.form);
    if (res_.span.insert(s)) {
      res_.vectors.push_back(std::move(s));
      res_.witnesses.push_back(w);
    }
  }

  /// Collision harvesting over a breadth-first enumeration of the mod-l image.
  /// Each collision yields rep(i) * t * rep(e)^{-1}, a Schreier generator of
  /// the kernel of reduction inside the generated group.
  void collisions() {
    const auto letters = letters_with_inverses(gs_);
    const Modulus low = make_modulus(gs_.modulus, 1);
    KeyCodec lo(2 * gs_.g, low), hi(2 * gs_.g, gs_.modulus);
    std::vector<RightMultiplier> mlo, mhi;
    for (const auto& l : letters) {
      mlo.emplace_back(lo, mat_reduce(l.matrix, 1));
      mhi.emplace_back(hi, l.matrix);
    }
    PackedSet nodes(lo.words, true);
    std::vector<u64> reps;
    parent_.clear();
    via_.clear();
    std::vector<u64> key(lo.words), id_hi(hi.words), prod(hi.words);
    lo.encode(MatMod::identity(2 * gs_.g, low), key.data());
    hi.encode(MatMod::identity(2 * gs_.g, gs_.modulus), id_hi.data());
    nodes.insert(key.data());
    reps.insert(reps.end(), id_hi.begin(), id_hi.end());
    parent_.push_back(0);
    via_.push_back(0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t t = 0; t < letters.size(); ++t) {
        if (full()) return finish(nodes.size(), false);
        if (!spend()) return finish(nodes.size(), false);
        mlo[t].apply(nodes.at(i), key.data());
        mhi[t].apply(reps.data() + i * hi.words, prod.data());
        auto [e, fresh] = nodes.insert(key.data());
        if (fresh) {
          reps.insert(reps.end(), prod.begin(), prod.end());
          parent_.push_back(static_cast<std::uint32_t>(i));
          via_.push_back(letters[t].label);
          continue;
        }
        const u64* rep_e = reps.data() + std::size_t(e) * hi.words;
        if (std::memcmp(rep_e, prod.data(), hi.words * sizeof(u64)) == 0) continue;
        MatMod x = hi.decode(prod.data());
        MatMod u = mat_mul(x, symplectic_inverse(hi.decode(rep_e), gs_.form));
        Word w = word_to(i);
        w.push_back(letters[t].label);
        Word back = inverse_word(word_to(e));
        w.insert(w.end(), back.begin(), back.end());
        offer(u, KernelWitness{std::move(w), 1});
      }
    }
    finish(nodes.size(), true);
  }

  /// Commutators of pooled lower-layer elements, pushed up to the top layer.
  void commutators() {
    for (std::size_t a = 0; a < pool_.size() && !full(); ++a)
      for (std::size_t b = a + 1; b < pool_.size() && !full(); ++b) {
        if (!spend()) return;
        MatMod c = commutator(pool_[a].first, pool_[b].first, gs_.form);
        // [x^p, y^q] is not [x, y]^.., so only unit-power witnesses compose as words.
        if (pool_[a].second.power != 1 || pool_[b].second.power != 1) continue;
        const auto& wa = pool_[a].second.word;
        const auto& wb = pool_[b].second.word;
        Word w = inverse_word(wa);
        Word ib = inverse_word(wb);
        w.insert(w.end(), ib.begin(), ib.end());
        w.insert(w.end(), wa.begin(), wa.end());
        w.insert(w.end(), wb.begin(), wb.end());
        offer(c, KernelWitness{std::move(w), 1});
      }
  }

  /// Closes the span under conjugation by the generators (their action on the
  /// layer depends only on their reduction mod l).
  void conjugation_closure() {
    const auto letters = letters_with_inverses(gs_);
    std::size_t next = 0;
    while (next < res_.vectors.size() && !full()) {
      const LieVector v = res_.vectors[next];
      const KernelWitness w = res_.witnesses[next];
      ++next;
      for (const auto& l : letters) {
        if (full() || !spend()) return;
        LieVector c = conj_act(l.matrix, v);
        if (res_.span.insert(c)) {
          Word cw{-l.label};
          cw.insert(cw.end(), w.word.begin(), w.word.end());
          cw.push_back(l.label);
          res_.vectors.push_back(std::move(c));
          res_.witnesses.push_back(KernelWitness{std::move(cw), w.power});
        }
      }
    }
  }

  HarvestResult take() { return std::move(res_); }

 private:
  static constexpr std::size_t kPoolSize = 64;

  void finish(std::size_t nodes, bool complete) {
    res_.mod_l_order = nodes;
    res_.complete = complete;
  }

  Word word_to(std::size_t i) const {
    Word w;
    while (i != 0) {
      w.push_back(via_[i]);
      i = parent_[i];
    }
    return Word(w.rbegin(), w.rend());
  }

  const GenSet& gs_;
  unsigned level_, layer_;
  std::uint64_t budget_;
  HarvestResult res_;
  std::vector<std::uint32_t> parent_;
  std::vector<int> via_;
  std::vector<std::pair<MatMod, KernelWitness>> pool_;
};

}  // namespace detail

/// Kernel directions provably inside the group generated at level l^{k+1}:
/// the span of log_layer images of generated elements that are id mod l^k.
/// Stops once the span is all of sp_2g(F_l) or the word budget runs out.
/// At level l^2 a complete run is exact (Schreier generators generate the
/// kernel, and the kernel is abelian).
inline HarvestResult harvest_kernel_span(const GenSet& gs, std::uint64_t budget = kDefaultBudget) {
  if (gs.modulus.k < 2) fail(errc::range_error, "kernel harvesting needs level >= 2");
  detail::Harvester h(gs, budget);
  h.collisions();
  if (!h.full()) h.commutators();
  if (!h.full()) h.conjugation_closure();
  return h.take();
}

/// Span of { M^{-1} S M : M in Sp_2g(F_l) }, enumerating the whole group.
inline Subspace conj_orbit_span(const LieVector& s, std::uint64_t cap = kDefaultCap) {
  const u128 order = group_order(s.g, static_cast<i64>(s.l), 1);
  if (order > cap) fail(errc::cap_exceeded, "Sp_" + std::to_string(2 * s.g) + "(F_" + std::to_string(s.l) + ") exceeds the enumeration cap");
  const Modulus m = make_modulus(static_cast<i64>(s.l), 1);
  GenSet gs = make_genset(s.g, m, s.form, standard_generators(s.g, m, s.form), "full group");
  Closure c = closure_or_throw(gs, cap);
  Subspace sp = empty_subspace(s.g, s.l);
  if (s.is_zero()) return sp;
  const MatMod x = lie_to_matrix(s);
  for (std::size_t i = 0; i < c.order() && !sp.full(); ++i) {
    MatMod a = c.element(i);
    MatMod y = mat_mul(mat_mul(symplectic_inverse(a, s.form), x), a);
    sp.insert(lie_from_matrix_unchecked(y, s.form));
  }
  return sp;
}

}  // namespace symplift
