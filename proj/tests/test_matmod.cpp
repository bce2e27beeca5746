#include <set>

#include "support.hpp"

using namespace symplift;
using testing_support::code_of;
using testing_support::naive_mul;
using testing_support::random_matrix_mod;

TEST(MatMod, ConstructionNormalizes) {
  const Modulus m = make_modulus(2, 2);
  MatMod a = MatMod::from_ints(2, m, {-1, 5, 4, 7});
  EXPECT_EQ(a(0, 0), 3u);
  EXPECT_EQ(a(0, 1), 1u);
  EXPECT_EQ(a(1, 0), 0u);
  EXPECT_EQ(a(1, 1), 3u);
  EXPECT_EQ(code_of([&] { MatMod(3, m); }), errc::range_error);
  EXPECT_EQ(code_of([&] { MatMod(14, m); }), errc::range_error);
  EXPECT_EQ(code_of([&] { MatMod::from_ints(2, m, {1, 2, 3}); }), errc::dim_mismatch);
}

TEST(MatMod, ProductExamples) {
  const Modulus m = make_modulus(3, 2);
  Rng rng = derive_rng(2, 0);
  MatMod x = random_matrix_mod(4, m, rng);
  EXPECT_EQ(mat_mul(MatMod::identity(4, m), x), x);
  EXPECT_EQ(mat_mul(omega_matrix(2, m), omega_matrix(2, m)), mat_scale(MatMod::identity(4, m), -1));
  EXPECT_EQ(mat_mul(j_matrix(1, m), j_matrix(1, m)), mat_scale(MatMod::identity(2, m), -1));
  // -id is (l^k - 1) id
  EXPECT_EQ(mat_scale(MatMod::identity(4, m), -1)(2, 2), 8u);
}

TEST(MatMod, ProductErrors) {
  EXPECT_EQ(code_of([] { mat_mul(MatMod::identity(2, make_modulus(2, 1)), MatMod::identity(4, make_modulus(2, 1))); }),
            errc::dim_mismatch);
  EXPECT_EQ(code_of([] { mat_mul(MatMod::identity(2, make_modulus(2, 1)), MatMod::identity(2, make_modulus(3, 1))); }),
            errc::mod_mismatch);
}

TEST(MatMod, ProductMatchesNaiveOracle) {
  Rng rng = derive_rng(3, 0);
  for (auto [l, k] : {std::pair<i64, i64>{2, 1}, {3, 2}, {5, 3}, {97, 9}, {2, 12}}) {
    const Modulus m = make_modulus(l, k);
    for (unsigned dim : {2u, 4u, 6u, 12u})
      for (int t = 0; t < 50; ++t) {
        MatMod a = random_matrix_mod(dim, m, rng), b = random_matrix_mod(dim, m, rng);
        EXPECT_EQ(mat_mul(a, b), naive_mul(a, b));
      }
  }
}

TEST(MatMod, Associativity) {
  Rng rng = derive_rng(4, 0);
  for (auto [l, k] : {std::pair<i64, i64>{2, 2}, {3, 2}, {5, 1}}) {
    const Modulus m = make_modulus(l, k);
    for (int t = 0; t < 10000; ++t) {
      MatMod a = random_matrix_mod(4, m, rng), b = random_matrix_mod(4, m, rng), c = random_matrix_mod(4, m, rng);
      ASSERT_EQ(mat_mul(mat_mul(a, b), c), mat_mul(a, mat_mul(b, c)));
    }
  }
}

TEST(MatMod, InverseExamples) {
  const Modulus m4 = make_modulus(2, 2);
  EXPECT_EQ(mat_inv(MatMod::identity(4, m4)), MatMod::identity(4, m4));
  EXPECT_EQ(mat_inv(j_matrix(1, m4)), MatMod::from_ints(2, m4, {0, 3, 1, 0}));
  EXPECT_EQ(code_of([&] { mat_inv(MatMod::from_ints(2, m4, {2, 0, 0, 2})); }), errc::not_invertible);
}

TEST(MatMod, InverseOfRandomInvertible) {
  Rng rng = derive_rng(5, 0);
  for (auto [l, k] : {std::pair<i64, i64>{2, 1}, {2, 3}, {3, 2}, {5, 2}}) {
    const Modulus m = make_modulus(l, k);
    int found = 0;
    while (found < 10000) {
      MatMod a = random_matrix_mod(4, m, rng);
      MatMod inv;
      try {
        inv = mat_inv(a);
      } catch (const error& e) {
        ASSERT_EQ(e.code(), errc::not_invertible);
        // invertible over Z/l^k iff invertible mod l
        EXPECT_THROW(mat_inv(mat_reduce(a, 1)), error);
        continue;
      }
      ++found;
      ASSERT_TRUE(mat_mul(inv, a).is_identity());
      ASSERT_TRUE(mat_mul(a, inv).is_identity());
    }
  }
}

TEST(MatMod, ReductionCommutesWithProductAndInverse) {
  Rng rng = derive_rng(6, 0);
  const Modulus m = make_modulus(3, 3);
  for (int t = 0; t < 2000; ++t) {
    MatMod a = testing_support::random_symplectic(2, m, FormKind::omega, rng, 10);
    MatMod b = random_matrix_mod(4, m, rng);
    for (unsigned j = 1; j <= 3; ++j) {
      EXPECT_EQ(mat_reduce(mat_mul(a, b), j), mat_mul(mat_reduce(a, j), mat_reduce(b, j)));
      EXPECT_EQ(mat_reduce(mat_inv(a), j), mat_inv(mat_reduce(a, j)));
    }
  }
}

TEST(MatMod, PowerExamples) {
  const Modulus m25 = make_modulus(5, 2), m4 = make_modulus(2, 2);
  Rng rng = derive_rng(7, 0);
  MatMod x = random_matrix_mod(4, m25, rng);
  EXPECT_TRUE(mat_pow(x, 0).is_identity());
  // N^2 = 0
  MatMod n(4, m25);
  n.set(0, 3, 1);
  n.set(1, 2, 2);
  ASSERT_TRUE(mat_mul(n, n).is_zero());
  EXPECT_TRUE(mat_pow(mat_add(MatMod::identity(4, m25), mat_scale(n, 5)), 5).is_identity());
  // oracle: repeated multiplication
  MatMod u = MatMod::from_ints(2, m4, {1, 1, 0, 1});
  MatMod rep = MatMod::identity(2, m4);
  for (int i = 0; i < 4; ++i) rep = mat_mul(rep, u);
  EXPECT_EQ(mat_pow(u, 4), rep);
  EXPECT_TRUE(rep.is_identity());
}

TEST(MatMod, PowerAdditiveInExponent) {
  Rng rng = derive_rng(8, 0);
  const Modulus m = make_modulus(7, 2);
  for (int t = 0; t < 500; ++t) {
    MatMod a = random_matrix_mod(4, m, rng);
    const u64 p = uniform_below(rng, 200), q = uniform_below(rng, 200);
    EXPECT_EQ(mat_pow(a, p + q), mat_mul(mat_pow(a, p), mat_pow(a, q)));
  }
}

TEST(MatMod, ReduceAndLift) {
  const Modulus m8 = make_modulus(2, 3);
  EXPECT_EQ(mat_reduce(MatMod::identity(4, m8), 1), MatMod::identity(4, make_modulus(2, 1)));
  Rng rng = derive_rng(9, 0);
  MatMod a = random_matrix_mod(4, m8, rng);
  EXPECT_EQ(mat_reduce(a, 3), a);
  EXPECT_EQ(code_of([&] { mat_reduce(a, 4); }), errc::range_error);
  EXPECT_EQ(code_of([&] { mat_reduce(a, 0); }), errc::range_error);
  EXPECT_EQ(mat_reduce(mat_lift(mat_reduce(a, 1), 3), 1), mat_reduce(a, 1));
  for (i64 l : {2, 3}) EXPECT_TRUE(mat_reduce(e_matrices(2, l).first, 1).is_identity());
}

TEST(MatMod, CanonicalKey) {
  const Modulus m8 = make_modulus(2, 3);
  EXPECT_EQ(canonical_key(MatMod::identity(4, m8)), canonical_key(MatMod::identity(4, m8)));
  EXPECT_NE(canonical_key(MatMod::identity(4, m8)), canonical_key(omega_matrix(2, m8)));
  Rng rng = derive_rng(10, 0);
  MatMod a = random_matrix_mod(4, m8, rng);
  EXPECT_EQ(canonical_key(a), canonical_key(mat_reduce(a, 3)));
  // 3 bits per entry, 16 entries: 6 bytes plus the 3-byte prefix
  EXPECT_EQ(canonical_key(a).size(), 9u);
  // same entries, different modulus: different key
  EXPECT_NE(canonical_key(MatMod::identity(4, make_modulus(2, 1))), canonical_key(MatMod::identity(4, make_modulus(3, 1))));
}

TEST(MatMod, CanonicalKeyInjectiveOnSmallSpace) {
  // every 2x2 matrix mod 4: 256 distinct keys
  const Modulus m = make_modulus(2, 2);
  std::set<std::string> keys;
  for (u64 code = 0; code < 256; ++code) {
    MatMod a(2, m);
    for (unsigned i = 0; i < 4; ++i) a.raw()[i] = (code >> (2 * i)) & 3;
    keys.insert(canonical_key(a));
  }
  EXPECT_EQ(keys.size(), 256u);
}

TEST(MatMod, KeyCodecRoundTripAcrossWordBoundaries) {
  Rng rng = derive_rng(11, 0);
  for (auto [l, k] : {std::pair<i64, i64>{2, 1}, {3, 1}, {5, 2}, {7, 3}, {97, 4}}) {
    const Modulus m = make_modulus(l, k);
    for (unsigned dim : {2u, 4u, 6u, 8u, 12u}) {
      KeyCodec codec(dim, m);
      std::vector<u64> key(codec.words);
      for (int t = 0; t < 20; ++t) {
        MatMod a = random_matrix_mod(dim, m, rng);
        codec.encode(a, key.data());
        EXPECT_EQ(codec.decode(key.data()), a);
      }
    }
  }
}

TEST(MatMod, TransposeAndLinearOps) {
  const Modulus m = make_modulus(3, 1);
  MatMod a = MatMod::from_ints(2, m, {1, 2, 0, 1});
  EXPECT_EQ(mat_transpose(a), MatMod::from_ints(2, m, {1, 0, 2, 1}));
  EXPECT_TRUE(mat_add(a, mat_neg(a)).is_zero());
  EXPECT_EQ(mat_sub(a, a), MatMod(2, m));
}
