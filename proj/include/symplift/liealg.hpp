#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symplift/random.hpp"
#include "symplift/symplectic.hpp"

namespace symplift {

using u32 = std::uint32_t;

inline unsigned lie_dim(unsigned g) { return g * (2 * g + 1); }

/// Element of sp_2g(F_l). Coordinates: A row-major (g^2), then the upper
/// triangle of B row-major, then the upper triangle of C, read off the omega
/// block form [[A, B], [C, -A^T]]. A jform element is first carried to the
/// omega convention, so a single chart serves both forms.
struct LieVector {
  unsigned g = 1;
  u64 l = 2;
  FormKind form = FormKind::omega;
  std::vector<u32> coords;

  static LieVector zero(unsigned g, u64 l, FormKind form) { return {g, l, form, std::vector<u32>(lie_dim(g), 0)}; }
  static LieVector unit(unsigned g, u64 l, FormKind form, unsigned i) {
    LieVector v = zero(g, l, form);
    v.coords.at(i) = 1;
    return v;
  }

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](u32 c) { return c == 0; });
  }

  friend bool operator==(const LieVector&, const LieVector&) = default;
};

namespace detail {

struct LieChart {
  unsigned g;
  unsigned a_off() const { return 0; }
  unsigned b_off() const { return g * g; }
  unsigned c_off() const { return g * g + g * (g + 1) / 2; }
  /// Index of (r, c), r <= c, inside an upper triangle stored row-major.
  unsigned tri(unsigned r, unsigned c) const { return r * g - r * (r - 1) / 2 + (c - r); }
};

}  // namespace detail

/// Matrix view over F_l in the vector's own form convention.
inline MatMod lie_to_matrix(const LieVector& v) {
  const unsigned g = v.g;
  if (v.coords.size() != lie_dim(g)) fail(errc::dim_mismatch, "coordinate length does not match genus");
  const Modulus m = make_modulus(static_cast<i64>(v.l), 1);
  detail::LieChart ch{g};
  MatMod out(2 * g, m);
  for (unsigned r = 0; r < g; ++r)
    for (unsigned c = 0; c < g; ++c) {
      const u64 a = v.coords[ch.a_off() + r * g + c];
      out.set_canonical(r, c, a);
      out.set_canonical(g + c, g + r, sub_mod(0, a, m.value));
    }
  for (unsigned r = 0; r < g; ++r)
    for (unsigned c = r; c < g; ++c) {
      const u64 b = v.coords[ch.b_off() + ch.tri(r, c)];
      const u64 cc = v.coords[ch.c_off() + ch.tri(r, c)];
      out.set_canonical(r, g + c, b);
      out.set_canonical(c, g + r, b);
      out.set_canonical(g + r, c, cc);
      out.set_canonical(g + c, r, cc);
    }
  return v.form == FormKind::omega ? out : omega_to_jform(out);
}

/// Coordinates of a Lie element; skips the membership test (callers vouch for it).
inline LieVector lie_from_matrix_unchecked(const MatMod& a, FormKind kind) {
  const unsigned g = a.dim() / 2;
  MatMod w = convert_form(a, kind, FormKind::omega);
  LieVector v = LieVector::zero(g, a.modulus().l, kind);
  detail::LieChart ch{g};
  for (unsigned r = 0; r < g; ++r)
    for (unsigned c = 0; c < g; ++c) v.coords[ch.a_off() + r * g + c] = static_cast<u32>(w(r, c));
  for (unsigned r = 0; r < g; ++r)
    for (unsigned c = r; c < g; ++c) {
      v.coords[ch.b_off() + ch.tri(r, c)] = static_cast<u32>(w(r, g + c));
      v.coords[ch.c_off() + ch.tri(r, c)] = static_cast<u32>(w(g + r, c));
    }
  return v;
}

inline LieVector lie_from_matrix(const MatMod& a, FormKind kind) {
  if (!is_lie(a, kind)) fail(errc::not_lie, "matrix is not in the symplectic Lie algebra");
  return lie_from_matrix_unchecked(a, kind);
}

inline LieVector random_lie_vector(unsigned g, u64 l, FormKind form, Rng& rng) {
  LieVector v = LieVector::zero(g, l, form);
  for (auto& c : v.coords) c = static_cast<u32>(uniform_below(rng, l));
  return v;
}

/// id + l^k * S over Z/l^target (target defaults to k+1). Any lift of S gives
/// the same class at level k+1; the canonical lift [0, l) is used.
inline MatMod exp_layer(const LieVector& s, unsigned k, unsigned target = 0) {
  if (k < 1) fail(errc::range_error, "layer index must be >= 1");
  if (target == 0) target = k + 1;
  if (target < k + 1) fail(errc::range_error, "target level must exceed the layer index");
  const Modulus m = make_modulus(static_cast<i64>(s.l), target);
  MatMod x = lie_to_matrix(s);
  MatMod out = MatMod::identity(2 * s.g, m);
  const u64 scale = m.power(k);
  auto dst = out.raw();
  auto src = x.entries();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = add_mod(dst[i], mul_mod(src[i], scale, m.value), m.value);
  return out;
}

/// Inverse of exp_layer on the kernel of Sp(l^{k+1}) -> Sp(l^k); k defaults to
/// (level of M) - 1, otherwise M is first reduced to l^{k+1}.
inline LieVector log_layer(const MatMod& a, FormKind kind, unsigned k = 0) {
  if (a.modulus().k < 2) fail(errc::range_error, "log_layer needs level >= 2");
  if (k == 0) k = a.modulus().k - 1;
  if (k + 1 > a.modulus().k) fail(errc::range_error, "layer above matrix level");
  MatMod m = k + 1 == a.modulus().k ? a : mat_reduce(a, k + 1);
  const u64 pk = m.modulus().power(k);
  const unsigned n = m.dim();
  const Modulus f = make_modulus(m.modulus(), 1);
  MatMod s(n, f);
  for (unsigned r = 0; r < n; ++r)
    for (unsigned c = 0; c < n; ++c) {
      const u64 d = sub_mod(m(r, c), r == c ? 1 : 0, m.modulus().value);
      if (d % pk != 0) fail(errc::not_in_kernel, "matrix is not congruent to id mod l^" + std::to_string(k));
      s.set_canonical(r, c, (d / pk) % f.value);
    }
  if (!is_symplectic(m, kind) || !is_lie(s, kind))
    fail(errc::not_symplectic, "kernel element fails the symplectic/Lie condition");
  return lie_from_matrix_unchecked(s, kind);
}

/// Row-reduced subspace of F_l^n, kept in reduced row echelon form.
class Subspace {
 public:
  Subspace() = default;
  Subspace(unsigned ambient, u64 l) : ambient_(ambient), l_(l) {}

  unsigned ambient() const noexcept { return ambient_; }
  u64 prime() const noexcept { return l_; }
  unsigned dim() const noexcept { return static_cast<unsigned>(rows_.size()); }
  bool full() const noexcept { return dim() == ambient_; }
  const std::vector<std::vector<u32>>& basis() const noexcept { return rows_; }
  const std::vector<unsigned>& pivots() const noexcept { return pivots_; }

  /// Adds v to the span; returns true when the dimension grew.
  bool insert(std::span<const u32> v) {
    check(v);
    std::vector<u32> w(v.begin(), v.end());
    reduce(w);
    auto lead = std::find_if(w.begin(), w.end(), [](u32 x) { return x != 0; });
    if (lead == w.end()) return false;
    const unsigned p = static_cast<unsigned>(lead - w.begin());
    const u64 inv = inv_mod_unchecked(*lead, l_);
    for (auto& x : w) x = static_cast<u32>((x * inv) % l_);
    for (auto& row : rows_) {
      const u64 f = row[p];
      if (f == 0) continue;
      for (unsigned i = 0; i < ambient_; ++i) row[i] = static_cast<u32>((row[i] + (l_ - f) * w[i]) % l_);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto idx = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(w));
    return true;
  }
  bool insert(const LieVector& v) { return insert(std::span<const u32>(v.coords)); }

  bool contains(std::span<const u32> v) const {
    check(v);
    std::vector<u32> w(v.begin(), v.end());
    reduce(w);
    return std::all_of(w.begin(), w.end(), [](u32 x) { return x == 0; });
  }
  bool contains(const LieVector& v) const { return contains(std::span<const u32>(v.coords)); }

  bool contains(const Subspace& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [&](const std::vector<u32>& r) { return contains(std::span<const u32>(r)); });
  }

  /// A standard basis vector outside the span (a non-pivot column), if any.
  std::vector<u32> complement_vector() const {
    std::vector<u32> e(ambient_, 0);
    for (unsigned i = 0, j = 0; i < ambient_; ++i) {
      if (j < pivots_.size() && pivots_[j] == i) {
        ++j;
        continue;
      }
      e[i] = 1;
      return e;
    }
    return {};
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.l_ == b.l_ && a.rows_ == b.rows_;
  }

 private:
  void check(std::span<const u32> v) const {
    if (v.size() != ambient_) fail(errc::mixed_ambient, "vector length differs from ambient dimension");
  }
  void reduce(std::vector<u32>& w) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const u64 f = w[pivots_[r]] % l_;
      if (f == 0) continue;
      const auto& row = rows_[r];
      for (unsigned i = 0; i < ambient_; ++i) w[i] = static_cast<u32>((w[i] + (l_ - f) * row[i]) % l_);
    }
  }

  unsigned ambient_ = 0;
  u64 l_ = 2;
  std::vector<std::vector<u32>> rows_;
  std::vector<unsigned> pivots_;
};

inline Subspace span(const std::vector<LieVector>& vectors) {
  if (vectors.empty()) return Subspace(0, 2);
  const auto& head = vectors.front();
  Subspace s(lie_dim(head.g), head.l);
  for (const auto& v : vectors) {
    if (v.g != head.g || v.l != head.l || v.form != head.form)
      fail(errc::mixed_ambient, "vectors from different Lie algebras");
    s.insert(v);
  }
  return s;
}

inline Subspace empty_subspace(unsigned g, u64 l) { return Subspace(lie_dim(g), l); }

/// M^{-1} S M for M symplectic; M may live at any level l^k, only M mod l matters.
inline LieVector conj_act(const MatMod& a, const LieVector& s) {
  if (a.modulus().l != s.l) fail(errc::mod_mismatch, "conjugator and Lie vector use different primes");
  if (a.dim() != 2 * s.g) fail(errc::dim_mismatch, "conjugator size does not match genus");
  MatMod m = a.modulus().k == 1 ? a : mat_reduce(a, 1);
  if (!is_symplectic(m, s.form)) fail(errc::not_symplectic, "conjugator is not symplectic");
  MatMod x = lie_to_matrix(s);
  MatMod y = mat_mul(mat_mul(symplectic_inverse(m, s.form), x), m);
  if (!is_lie(y, s.form)) fail(errc::not_lie, "conjugate left the Lie algebra");
  return lie_from_matrix_unchecked(y, s.form);
}

/// Lie elements whose A-block (omega chart) has trace zero: codimension one.
inline Subspace trace_zero_subspace(unsigned g, u64 l) {
  Subspace s(lie_dim(g), l);
  std::vector<u32> v(lie_dim(g), 0);
  for (unsigned i = 0; i < lie_dim(g); ++i) {
    const bool diag_a = i < g * g && i / g == i % g;
    if (diag_a) continue;
    std::fill(v.begin(), v.end(), 0);
    v[i] = 1;
    s.insert(v);
  }
  for (unsigned i = 1; i < g; ++i) {
    std::fill(v.begin(), v.end(), 0);
    v[0] = 1;
    v[i * g + i] = static_cast<u32>(l - 1);
    s.insert(v);
  }
  return s;
}

inline u64 trace_a(const LieVector& v) {
  u64 t = 0;
  for (unsigned i = 0; i < v.g; ++i) t += v.coords[i * v.g + i];
  return t % v.l;
}

}  // namespace symplift
