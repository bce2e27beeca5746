#pragma once

#include <gtest/gtest.h>

#include "symplift/symplift.hpp"

namespace testing_support {

using namespace symplift;

/// Code of the symplift::error thrown by f, or a test failure.
template <class F>
errc code_of(F&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return errc::input_error;
}

inline MatMod random_matrix_mod(unsigned dim, const Modulus& m, Rng& rng) {
  MatMod x(dim, m);
  for (auto& e : x.raw()) e = uniform_below(rng, m.value);
  return x;
}

/// A random element of Sp_2g(Z/l^k) as a product of random standard generators.
inline MatMod random_symplectic(unsigned g, const Modulus& m, FormKind form, Rng& rng, unsigned length = 30) {
  const auto gens = standard_generators(g, m, form);
  MatMod x = MatMod::identity(2 * g, m);
  for (unsigned i = 0; i < length; ++i) {
    const auto& s = gens[uniform_below(rng, gens.size())];
    x = mat_mul(x, uniform_below(rng, 2) ? s : symplectic_inverse(s, form));
  }
  return x;
}

/// Naive schoolbook product with signed 128-bit accumulation; an oracle for mat_mul.
inline MatMod naive_mul(const MatMod& a, const MatMod& b) {
  const unsigned n = a.dim();
  MatMod c(n, a.modulus());
  for (unsigned r = 0; r < n; ++r)
    for (unsigned col = 0; col < n; ++col) {
      __int128 acc = 0;
      for (unsigned i = 0; i < n; ++i) acc += static_cast<__int128>(a(r, i)) * b(i, col);
      c.set_canonical(r, col, static_cast<u64>(acc % static_cast<__int128>(a.modulus().value)));
    }
  return c;
}

/// All elements of {M in Mat_2(Z/m) : det M = 1}, counted by brute force.
inline u64 count_sl2(u64 m) {
  u64 n = 0;
  for (u64 a = 0; a < m; ++a)
    for (u64 b = 0; b < m; ++b)
      for (u64 c = 0; c < m; ++c)
        for (u64 d = 0; d < m; ++d)
          if ((a * d + m * m - b * c % m) % m == 1) ++n;
  return n;
}

}  // namespace testing_support
