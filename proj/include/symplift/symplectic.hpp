#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "symplift/matmod.hpp"

namespace symplift {

/// Which alternating form defines the group.
///  - omega: [[0, id_g], [-id_g, 0]]
///  - jform: block diagonal with g copies of [[0, 1], [-1, 0]]
enum class FormKind { omega, jform };

inline std::string to_string(FormKind k) { return k == FormKind::omega ? "omega" : "jform"; }

inline FormKind parse_form_kind(const std::string& s) {
  if (s == "omega") return FormKind::omega;
  if (s == "jform") return FormKind::jform;
  fail(errc::input_error, "unknown form '" + s + "' (expected omega or jform)");
}

inline void check_genus(unsigned g) {
  if (g < 1 || g > kMaxDim / 2) fail(errc::range_error, "genus " + std::to_string(g) + " outside [1, 6]");
}

inline MatMod omega_matrix(unsigned g, const Modulus& m) {
  check_genus(g);
  MatMod w(2 * g, m);
  for (unsigned i = 0; i < g; ++i) {
    w.set(i, g + i, 1);
    w.set(g + i, i, -1);
  }
  return w;
}

inline MatMod j_matrix(unsigned g, const Modulus& m) {
  check_genus(g);
  MatMod w(2 * g, m);
  for (unsigned i = 0; i < g; ++i) {
    w.set(2 * i, 2 * i + 1, 1);
    w.set(2 * i + 1, 2 * i, -1);
  }
  return w;
}

/// Permutation P with P^T * Omega * P = J: P sends e_{2i} to e_i and e_{2i+1} to e_{g+i}.
inline MatMod omega_to_j_perm(unsigned g, const Modulus& m) {
  check_genus(g);
  MatMod p(2 * g, m);
  for (unsigned i = 0; i < g; ++i) {
    p.set(i, 2 * i, 1);
    p.set(g + i, 2 * i + 1, 1);
  }
  return p;
}

struct SympForm {
  FormKind kind = FormKind::omega;
  unsigned g = 1;
  MatMod matrix;
  MatMod perm;
};

inline SympForm form(FormKind kind, unsigned g, const Modulus& m) {
  check_genus(g);
  return SympForm{kind, g, kind == FormKind::omega ? omega_matrix(g, m) : j_matrix(g, m),
                  omega_to_j_perm(g, m)};
}

inline MatMod form_matrix(FormKind kind, unsigned g, const Modulus& m) {
  return kind == FormKind::omega ? omega_matrix(g, m) : j_matrix(g, m);
}

/// P M P^T: carries a jform-convention matrix to the omega convention.
inline MatMod jform_to_omega(const MatMod& a) {
  const unsigned g = a.dim() / 2;
  MatMod p = omega_to_j_perm(g, a.modulus());
  return mat_mul(mat_mul(p, a), mat_transpose(p));
}

/// P^T M P: carries an omega-convention matrix to the jform convention.
inline MatMod omega_to_jform(const MatMod& a) {
  const unsigned g = a.dim() / 2;
  MatMod p = omega_to_j_perm(g, a.modulus());
  return mat_mul(mat_mul(mat_transpose(p), a), p);
}

inline MatMod convert_form(const MatMod& a, FormKind from, FormKind to) {
  if (from == to) return a;
  return to == FormKind::omega ? jform_to_omega(a) : omega_to_jform(a);
}

inline bool preserves(const MatMod& a, const MatMod& w) {
  detail::check_compatible(a, w);
  return mat_mul(mat_mul(mat_transpose(a), w), a) == w;
}

inline bool is_symplectic(const MatMod& a, FormKind kind) {
  if (a.dim() % 2 != 0) fail(errc::dim_mismatch, "odd dimension");
  return preserves(a, form_matrix(kind, a.dim() / 2, a.modulus()));
}

inline bool is_symplectic(const MatMod& a, const SympForm& f) {
  if (a.dim() != 2 * f.g)
    fail(errc::dim_mismatch, "matrix of size " + std::to_string(a.dim()) + " against genus " + std::to_string(f.g));
  return is_symplectic(a, f.kind);
}

/// M^{-1} = W^{-1} M^T W = -W M^T W for a symplectic M; no elimination needed.
inline MatMod symplectic_inverse(const MatMod& a, FormKind kind) {
  MatMod w = form_matrix(kind, a.dim() / 2, a.modulus());
  return mat_neg(mat_mul(mat_mul(w, mat_transpose(a)), w));
}

inline bool is_lie(const MatMod& a, FormKind kind) {
  if (a.modulus().k != 1) fail(errc::range_error, "Lie algebra membership is tested over F_l only");
  if (a.dim() % 2 != 0) fail(errc::dim_mismatch, "odd dimension");
  MatMod w = form_matrix(kind, a.dim() / 2, a.modulus());
  return mat_add(mat_mul(mat_transpose(a), w), mat_mul(w, a)).is_zero();
}

inline bool is_lie(const MatMod& a, const SympForm& f) {
  if (a.dim() != 2 * f.g) fail(errc::dim_mismatch, "matrix size does not match form genus");
  return is_lie(a, f.kind);
}

/// Blocks of an omega-convention Lie element [[A, B], [C, -A^T]], each g x g row-major.
struct BlockDecomp {
  unsigned g = 1;
  Modulus modulus;
  std::vector<u64> A, B, C;

  friend bool operator==(const BlockDecomp&, const BlockDecomp&) = default;
};

inline BlockDecomp block_decomp(const MatMod& a, FormKind kind = FormKind::omega) {
  if (!is_lie(a, kind)) fail(errc::not_lie, "matrix is not in the symplectic Lie algebra");
  MatMod w = convert_form(a, kind, FormKind::omega);
  const unsigned g = a.dim() / 2;
  BlockDecomp d{g, a.modulus(), std::vector<u64>(g * g), std::vector<u64>(g * g), std::vector<u64>(g * g)};
  for (unsigned r = 0; r < g; ++r)
    for (unsigned c = 0; c < g; ++c) {
      d.A[r * g + c] = w(r, c);
      d.B[r * g + c] = w(r, g + c);
      d.C[r * g + c] = w(g + r, c);
    }
  return d;
}

/// Inverse of block_decomp; the result is in the omega convention.
inline MatMod block_compose(const BlockDecomp& d) {
  const unsigned g = d.g;
  const u64 m = d.modulus.value;
  MatMod out(2 * g, d.modulus);
  for (unsigned r = 0; r < g; ++r)
    for (unsigned c = 0; c < g; ++c) {
      out.set_canonical(r, c, d.A[r * g + c]);
      out.set_canonical(r, g + c, d.B[r * g + c]);
      out.set_canonical(g + r, c, d.C[r * g + c]);
      out.set_canonical(g + r, g + c, sub_mod(0, d.A[c * g + r], m));
    }
  return out;
}

/// Fixed generating family, omega convention:
///   T   = [[id, E_11], [0, id]]                   (a transvection)
///   W   = Omega itself
///   R   = diag(id + E_12, id - E_21)              (g >= 2)
///   Cyc = diag(P, P), P the cyclic shift e_i -> e_{i+1}  (g >= 3)
/// These are integral and generate Sp_2g(Z), hence every Sp_2g(Z/l^k);
/// the closure tests confirm it against group_order.
inline std::vector<MatMod> standard_generators(unsigned g, const Modulus& m, FormKind kind = FormKind::omega) {
  check_genus(g);
  std::vector<MatMod> gens;
  MatMod t = MatMod::identity(2 * g, m);
  t.set(0, g, 1);
  gens.push_back(t);
  gens.push_back(omega_matrix(g, m));
  if (g >= 2) {
    MatMod r = MatMod::identity(2 * g, m);
    r.set(0, 1, 1);
    r.set(g + 1, g, -1);
    gens.push_back(r);
  }
  if (g >= 3) {
    MatMod c(2 * g, m);
    for (unsigned i = 0; i < g; ++i) {
      c.set((i + 1) % g, i, 1);
      c.set(g + (i + 1) % g, g + i, 1);
    }
    gens.push_back(c);
  }
  if (kind == FormKind::jform)
    for (auto& x : gens) x = omega_to_jform(x);
  return gens;
}

/// Siegel-parabolic generators (lower-left block zero); a proper subgroup
/// used as the standard negative fixture.
inline std::vector<MatMod> siegel_generators(unsigned g, const Modulus& m, FormKind kind = FormKind::omega) {
  check_genus(g);
  std::vector<MatMod> gens;
  MatMod t = MatMod::identity(2 * g, m);
  t.set(0, g, 1);
  gens.push_back(t);
  MatMod d = MatMod::identity(2 * g, m);
  d.set(0, 0, -1);
  d.set(g, g, -1);
  gens.push_back(d);
  if (g >= 2) {
    MatMod r = MatMod::identity(2 * g, m);
    r.set(0, 1, 1);
    r.set(g + 1, g, -1);
    gens.push_back(r);
    // swap e_1 <-> e_2 on both halves
    MatMod s(2 * g, m);
    for (unsigned i = 0; i < g; ++i) {
      unsigned j = i == 0 ? 1 : (i == 1 ? 0 : i);
      s.set(j, i, 1);
      s.set(g + j, g + i, 1);
    }
    gens.push_back(s);
  }
  if (kind == FormKind::jform)
    for (auto& x : gens) x = omega_to_jform(x);
  return gens;
}

inline std::string to_decimal(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

/// |Sp_2g(Z/l^k)| = l^{(k-1) g(2g+1)} * prod_{i=1..g} l^{2i-1} (l^{2i} - 1).
inline u128 group_order(i64 g, i64 l, i64 k) {
  if (g < 1 || k < 1) fail(errc::range_error, "genus and level must be positive");
  if (l < 2 || !is_prime(static_cast<u64>(l))) fail(errc::not_prime, std::to_string(l) + " is not prime");
  const u128 limit = u128(1) << 127;
  u128 acc = 1;
  auto mul = [&](u128 f) {
    if (f != 0 && acc > (limit - 1) / f) fail(errc::overflow, "group order does not fit below 2^127");
    acc *= f;
  };
  const u128 L = static_cast<u64>(l);
  for (i64 i = 1; i <= g; ++i) {
    u128 p = 1;
    for (i64 j = 0; j < 2 * i; ++j) {
      if (p > (limit - 1) / L) fail(errc::overflow, "group order does not fit below 2^127");
      p *= L;
    }
    mul(p - 1);
    for (i64 j = 0; j < 2 * i - 1; ++j) mul(L);
  }
  const i64 layer = (k - 1) * g * (2 * g + 1);
  for (i64 j = 0; j < layer; ++j) mul(L);
  return acc;
}

/// M -> [[M, 0], [0, id_2]] from genus g-1 to genus g (jform convention).
inline MatMod embed_iota(const MatMod& a, unsigned g) {
  if (g < 2 || a.dim() != 2 * (g - 1)) fail(errc::dim_mismatch, "embed_iota expects a genus g-1 matrix");
  if (!is_symplectic(a, FormKind::jform)) fail(errc::not_symplectic, "input is not jform-symplectic");
  MatMod out = MatMod::identity(2 * g, a.modulus());
  for (unsigned r = 0; r < a.dim(); ++r)
    for (unsigned c = 0; c < a.dim(); ++c) out.set_canonical(r, c, a(r, c));
  return out;
}

/// True when M mod l has the shape [[*, 0], [0, id_2]] (jform split of the last pair).
inline bool in_iota_preimage(const MatMod& a) {
  const unsigned n = a.dim();
  const u64 l = a.modulus().l;
  for (unsigned r = 0; r < n; ++r)
    for (unsigned c = 0; c < n; ++c) {
      const bool tail_r = r >= n - 2, tail_c = c >= n - 2;
      if (tail_r != tail_c && a(r, c) % l != 0) return false;
      if (tail_r && tail_c && a(r, c) % l != (r == c ? 1 : 0)) return false;
    }
  return true;
}

/// Upper-left (2g-2) x (2g-2) block of an element of the preimage of iota.
inline MatMod project_pi(const MatMod& a) {
  if (a.dim() < 4) fail(errc::dim_mismatch, "project_pi needs genus >= 2");
  if (!in_iota_preimage(a)) fail(errc::not_in_preimage, "reduction mod l is not of the form [[M,0],[0,id_2]]");
  const unsigned n = a.dim() - 2;
  MatMod out(n, a.modulus());
  for (unsigned r = 0; r < n; ++r)
    for (unsigned c = 0; c < n; ++c) out.set_canonical(r, c, a(r, c));
  return out;
}

/// The two kernel elements id + l*N1, id + l*N2 over Z/l^2 (jform), with the
/// 4x4 patterns below in the upper-left corner and zeros elsewhere.
inline std::pair<MatMod, MatMod> e_matrices(unsigned g, i64 l) {
  if (g < 2 || g > kMaxDim / 2) fail(errc::range_error, "e_matrices needs 2 <= g <= 6");
  const Modulus m = make_modulus(l, 2);
  static constexpr int n1[16] = {-1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  static constexpr int n2[16] = {-1, -1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0};
  MatMod e1 = MatMod::identity(2 * g, m), e2 = MatMod::identity(2 * g, m);
  for (unsigned r = 0; r < 4; ++r)
    for (unsigned c = 0; c < 4; ++c) {
      const i64 d = r == c ? 1 : 0;
      e1.set(r, c, d + l * n1[r * 4 + c]);
      e2.set(r, c, d + l * n2[r * 4 + c]);
    }
  return {e1, e2};
}

/// Block permutation matrix: block (sigma[i], i) is id_2. sigma is 0-based.
inline MatMod q_blockperm(unsigned g, const std::vector<unsigned>& sigma, const Modulus& m) {
  check_genus(g);
  if (sigma.size() != g) fail(errc::bad_permutation, "permutation length differs from genus");
  std::vector<bool> seen(g, false);
  for (unsigned s : sigma) {
    if (s >= g || seen[s]) fail(errc::bad_permutation, "not a permutation of {0..g-1}");
    seen[s] = true;
  }
  MatMod q(2 * g, m);
  for (unsigned i = 0; i < g; ++i) {
    q.set(2 * sigma[i], 2 * i, 1);
    q.set(2 * sigma[i] + 1, 2 * i + 1, 1);
  }
  return q;
}

/// Alternating forms of omega/jform shape with a sign per hyperbolic pair.
/// Returns the names of those preserved by every matrix in the list.
inline std::vector<std::string> detect_preserved_forms(const std::vector<MatMod>& gens) {
  std::vector<std::string> hits;
  if (gens.empty()) return hits;
  const unsigned g = gens.front().dim() / 2;
  const Modulus m = gens.front().modulus();
  for (FormKind kind : {FormKind::omega, FormKind::jform}) {
    for (unsigned mask = 0; mask < (1u << g); mask += 2) {  // first sign fixed to +
      MatMod w = form_matrix(kind, g, m);
      std::string signs;
      for (unsigned i = 0; i < g; ++i) {
        const bool neg = (mask >> i) & 1;
        signs.push_back(neg ? '-' : '+');
        if (!neg) continue;
        const unsigned a = kind == FormKind::omega ? i : 2 * i;
        const unsigned b = kind == FormKind::omega ? g + i : 2 * i + 1;
        w.set(a, b, -static_cast<i64>(w(a, b)));
        w.set(b, a, -static_cast<i64>(w(b, a)));
      }
      bool ok = std::all_of(gens.begin(), gens.end(), [&](const MatMod& x) { return preserves(x, w); });
      if (ok) hits.push_back(to_string(kind) + (mask == 0 ? "" : "[" + signs + "]"));
    }
  }
  return hits;
}

}  // namespace symplift
