#include <algorithm>

#include "support.hpp"

using namespace symplift;
using testing_support::code_of;

namespace {

/// The kernel intersection H ∩ ker(Sp(l^2) -> Sp(l)) read off a full enumeration.
Subspace enumerated_kernel_span(const GenSet& gs) {
  Closure c = closure_or_throw(gs);
  Subspace s = empty_subspace(gs.g, gs.modulus.l);
  c.for_each([&](const MatMod& x) {
    if (mat_reduce(x, 1).is_identity()) s.insert(log_layer(x, gs.form));
  });
  return s;
}

std::uint64_t enumerated_kernel_count(const GenSet& gs) {
  Closure c = closure_or_throw(gs);
  std::uint64_t n = 0;
  c.for_each([&](const MatMod& x) { n += mat_reduce(x, 1).is_identity(); });
  return n;
}

u64 power_of(u64 l, unsigned e) {
  u64 p = 1;
  while (e--) p *= l;
  return p;
}

}  // namespace

TEST(GenSet, Validation) {
  const Modulus m = make_modulus(2, 2);
  EXPECT_EQ(code_of([&] { make_genset(2, m, FormKind::omega, {}); }), errc::input_error);
  EXPECT_EQ(code_of([&] { make_genset(2, m, FormKind::omega, {MatMod::identity(2, m)}); }), errc::dim_mismatch);
  EXPECT_EQ(code_of([&] { make_genset(2, m, FormKind::omega, {MatMod::identity(4, make_modulus(3, 1))}); }),
            errc::mod_mismatch);
  MatMod d = MatMod::identity(4, m);
  d.set(0, 0, 3);
  EXPECT_EQ(code_of([&] { make_genset(2, m, FormKind::omega, {d}); }), errc::not_symplectic);
}

TEST(Closure, Examples) {
  const Modulus m = make_modulus(2, 2);
  EXPECT_EQ(closure(make_genset(2, m, FormKind::omega, {MatMod::identity(4, m)})).order(), 1u);
  EXPECT_EQ(closure(fixtures::standard(2, 2, 1)).order(), 720u);
  Closure big = closure(fixtures::standard(2, 2, 2));
  EXPECT_TRUE(big.exhausted());
  EXPECT_EQ(big.order(), 737280u);
  EXPECT_EQ(u128(big.order()), group_order(2, 2, 2));
}

TEST(Closure, CapIsRecoverable) {
  Closure c = closure(fixtures::standard(2, 3, 1), 1000);
  EXPECT_FALSE(c.exhausted());
  EXPECT_GE(c.order(), 1000u);
  EXPECT_LT(c.order(), 51840u);
  EXPECT_EQ(code_of([] { closure_or_throw(fixtures::standard(2, 3, 1), 1000); }), errc::cap_exceeded);
}

TEST(Closure, InverseClosedAndProductClosed) {
  for (const GenSet& gs : {fixtures::standard(2, 2, 1), fixtures::siegel(2, 3, 1), fixtures::base_case_listing(2)}) {
    Closure c = closure(gs);
    ASSERT_TRUE(c.exhausted());
    c.for_each([&](const MatMod& x) {
      ASSERT_TRUE(c.contains(symplectic_inverse(x, gs.form)));
      ASSERT_TRUE(is_symplectic(x, gs.form));
      for (const auto& s : gs.generators) ASSERT_TRUE(c.contains(mat_mul(x, s)));
    });
  }
}

TEST(Closure, OrderIndependentOfGeneratorOrder) {
  Rng rng = derive_rng(40, 0);
  for (const GenSet& base : {fixtures::standard(2, 3, 1), fixtures::siegel(2, 2, 2), fixtures::standard(3, 2, 1, FormKind::jform)}) {
    const std::uint64_t order = closure(base).order();
    for (int t = 0; t < 20; ++t) {
      GenSet gs = base;
      std::shuffle(gs.generators.begin(), gs.generators.end(), rng);
      ASSERT_EQ(closure(gs).order(), order);
    }
  }
}

TEST(Closure, SiegelParabolicOrder) {
  // Oracle: the Siegel parabolic of Sp_4(F_l) has order |GL_2(F_l)| * l^3.
  for (i64 l : {2, 3}) {
    const u64 L = static_cast<u64>(l);
    const u64 gl2 = (L * L - 1) * (L * L - L);
    EXPECT_EQ(closure(fixtures::siegel(2, l, 1)).order(), gl2 * L * L * L);
  }
}

TEST(Surjectivity, Examples) {
  EXPECT_TRUE(is_surjective_mod_l(fixtures::standard(2, 2, 2)));
  const Modulus m = make_modulus(2, 2);
  EXPECT_FALSE(is_surjective_mod_l(make_genset(2, m, FormKind::omega, {MatMod::identity(4, m)})));
  for (i64 l : {2, 3}) {
    SurjectivityResult r = surjectivity_mod_l(fixtures::siegel(2, l, 2));
    EXPECT_TRUE(r.exhausted);
    EXPECT_FALSE(r.surjective);
    EXPECT_LT(r.order, r.expected);
    ASSERT_TRUE(r.missing.has_value());
    // re-validate the witness: it is symplectic but outside the enumerated image
    EXPECT_TRUE(is_symplectic(*r.missing, FormKind::omega));
    EXPECT_FALSE(closure(reduce_genset(fixtures::siegel(2, l, 2), 1)).contains(*r.missing));
  }
  EXPECT_EQ(code_of([] { is_surjective_mod_l(fixtures::standard(2, 3, 1), 100); }), errc::cap_exceeded);
}

TEST(Commutator, Examples) {
  EXPECT_EQ(abelianization_index(fixtures::standard(2, 2, 1)), 2u);
  EXPECT_EQ(abelianization_index(fixtures::standard(2, 3, 1)), 1u);
  EXPECT_EQ(abelianization_index(fixtures::standard(1, 5, 1)), 1u);
  // SL_2(F_2) = S_3 and SL_2(F_3) have abelianizations Z/2 and Z/3
  EXPECT_EQ(abelianization_index(fixtures::standard(1, 2, 1)), 2u);
  EXPECT_EQ(abelianization_index(fixtures::standard(1, 3, 1)), 3u);
  // one generator: abelian, trivial commutator subgroup
  const Modulus m = make_modulus(3, 2);
  GenSet cyclic = make_genset(2, m, FormKind::omega, {standard_generators(2, m)[0]});
  EXPECT_EQ(commutator_subgroup(cyclic).order(), 1u);
  EXPECT_EQ(abelianization_index(cyclic), closure(cyclic).order());
}

TEST(Commutator, SubgroupIsNormal) {
  for (const GenSet& gs : {fixtures::standard(2, 2, 1), fixtures::siegel(2, 3, 1), fixtures::standard(1, 3, 2)}) {
    Closure n = commutator_subgroup(gs);
    ASSERT_TRUE(n.exhausted());
    for (const auto& l : letters_with_inverses(gs))
      n.for_each([&](const MatMod& x) {
        ASSERT_TRUE(n.contains(mat_mul(mat_mul(symplectic_inverse(l.matrix, gs.form), x), l.matrix)));
      });
  }
}

TEST(Words, EvaluateAndInvert) {
  GenSet gs = fixtures::standard(2, 3, 2);
  Rng rng = derive_rng(41, 0);
  for (int t = 0; t < 50; ++t) {
    auto [x, w] = random_element(gs, rng, 15);
    EXPECT_EQ(evaluate_word(gs, w), x);
    EXPECT_TRUE(mat_mul(x, evaluate_word(gs, inverse_word(w))).is_identity());
    EXPECT_EQ(evaluate_word(gs, w, 3), mat_pow(x, 3));
  }
  EXPECT_EQ(code_of([&] { evaluate_word(gs, {7}); }), errc::input_error);
  EXPECT_EQ(code_of([&] { evaluate_word(gs, {0}); }), errc::input_error);
}

TEST(Harvest, StandardGeneratorsModFour) {
  GenSet gs = fixtures::standard(2, 2, 2);
  HarvestResult h = harvest_kernel_span(gs);
  EXPECT_EQ(h.span.dim(), 10u);
  // oracle: all 1024 kernel elements appear in the enumerated closure
  EXPECT_EQ(enumerated_kernel_count(gs), 1024u);
  EXPECT_EQ(enumerated_kernel_span(gs), h.span);
}

TEST(Harvest, ExactOnProperSubgroupsAtLevelLSquared) {
  // A complete run at level l^2 finds exactly the kernel intersection.
  std::vector<GenSet> cases{fixtures::siegel(2, 2, 2), fixtures::siegel(2, 3, 2), fixtures::genus_one_counterexample(2),
                            fixtures::genus_one_counterexample(3), fixtures::siegel(1, 3, 2)};
  for (const GenSet& gs : cases) {
    HarvestResult h = harvest_kernel_span(gs);
    ASSERT_TRUE(h.complete || h.span.full()) << gs.label;
    const Subspace oracle = enumerated_kernel_span(gs);
    EXPECT_EQ(h.span, oracle) << gs.label;
    // the kernel intersection is a subgroup of an elementary abelian group: its size is l^dim
    EXPECT_EQ(enumerated_kernel_count(gs), power_of(gs.modulus.l, oracle.dim())) << gs.label;
  }
}

TEST(Harvest, TraceZeroGeneratorsStayInW) {
  // generators all = id mod 2 built from a trace-zero basis
  const Subspace w = trace_zero_subspace(2, 2);
  std::vector<MatMod> gens;
  for (const auto& row : w.basis()) gens.push_back(exp_layer(LieVector{2, 2, FormKind::omega, row}, 1));
  GenSet gs = make_genset(2, make_modulus(2, 2), FormKind::omega, gens, "trace-zero kernel");
  HarvestResult h = harvest_kernel_span(gs);
  EXPECT_LE(h.span.dim(), 9u);
  EXPECT_EQ(h.span, enumerated_kernel_span(gs));
  EXPECT_EQ(h.span, w);
}

TEST(Harvest, IdentityGeneratorGivesNothing) {
  const Modulus m = make_modulus(3, 2);
  HarvestResult h = harvest_kernel_span(make_genset(2, m, FormKind::omega, {MatMod::identity(4, m)}));
  EXPECT_EQ(h.span.dim(), 0u);
  EXPECT_TRUE(h.complete);
  EXPECT_EQ(code_of([] { harvest_kernel_span(fixtures::standard(2, 3, 1)); }), errc::range_error);
}

TEST(Harvest, WitnessesReEvaluate) {
  for (const GenSet& gs : {fixtures::standard(2, 2, 2), fixtures::standard(2, 3, 2), fixtures::standard(2, 2, 3),
                           fixtures::siegel(2, 3, 2), fixtures::spanning_listing(3)}) {
    HarvestResult h = harvest_kernel_span(gs);
    ASSERT_EQ(h.vectors.size(), h.witnesses.size());
    for (std::size_t i = 0; i < h.vectors.size(); ++i) {
      const MatMod x = evaluate_word(gs, h.witnesses[i].word, h.witnesses[i].power);
      EXPECT_EQ(x, exp_layer(h.vectors[i], gs.modulus.k - 1)) << gs.label << " vector " << i;
    }
  }
}

TEST(Harvest, SoundAgainstEnumeration) {
  // every basis vector v of a harvested span has exp_layer(v) in the closure
  for (const GenSet& gs : {fixtures::standard(2, 2, 2), fixtures::siegel(2, 2, 2), fixtures::base_case_listing(2)}) {
    HarvestResult h = harvest_kernel_span(gs);
    Closure c = closure_or_throw(gs);
    for (const auto& row : h.span.basis()) EXPECT_TRUE(c.contains(exp_layer(LieVector{2, 2, gs.form, row}, 1)));
  }
}

TEST(Harvest, ConvergedSpanIsConjugationInvariant) {
  for (const GenSet& gs : {fixtures::siegel(2, 2, 2), fixtures::siegel(2, 3, 2), fixtures::genus_one_counterexample(3)}) {
    HarvestResult h = harvest_kernel_span(gs);
    Subspace again = h.span;
    for (const auto& row : h.span.basis())
      for (const auto& l : letters_with_inverses(gs)) again.insert(conj_act(l.matrix, LieVector{gs.g, gs.modulus.l, gs.form, row}));
    EXPECT_EQ(again.dim(), h.span.dim()) << gs.label;
  }
}

TEST(Harvest, BudgetExhaustionIsReported) {
  HarvestResult h = harvest_kernel_span(fixtures::standard(2, 3, 2), 5);
  EXPECT_TRUE(h.budget_exhausted);
  EXPECT_FALSE(h.complete);
  EXPECT_LT(h.span.dim(), 10u);
}

TEST(Harvest, DeterministicAcrossRuns) {
  GenSet gs = fixtures::standard(2, 3, 2);
  HarvestResult a = harvest_kernel_span(gs), b = harvest_kernel_span(gs);
  EXPECT_EQ(a.span, b.span);
  ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) EXPECT_EQ(a.witnesses[i].word, b.witnesses[i].word);
}
