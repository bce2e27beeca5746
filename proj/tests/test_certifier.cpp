#include "support.hpp"

using namespace symplift;
using testing_support::code_of;

namespace {

const Step* find_step(const CertReport& r, const std::string& prefix) {
  for (const auto& s : r.steps)
    if (s.name.rfind(prefix, 0) == 0) return &s;
  return nullptr;
}

/// A symplectic element that is id mod l: a random element raised to |Sp(F_l)|.
MatMod random_kernel_element(unsigned g, const Modulus& m, FormKind form, Rng& rng) {
  const u64 order = static_cast<u64>(group_order(g, static_cast<i64>(m.l), 1));
  return mat_pow(testing_support::random_symplectic(g, m, form, rng), order);
}

/// Generators congruent to `base` mod l, perturbed by random kernel elements.
GenSet perturbed(const GenSet& base, Rng& rng) {
  std::vector<MatMod> gens;
  for (const auto& s : base.generators) gens.push_back(mat_mul(s, random_kernel_element(base.g, base.modulus, base.form, rng)));
  return make_genset(base.g, base.modulus, base.form, std::move(gens), "random lift");
}

GenSet random_lift(unsigned g, i64 l, unsigned k, Rng& rng) { return perturbed(fixtures::standard(g, l, k), rng); }

}  // namespace

TEST(TheoremMode, Examples) {
  CertReport full = certify_theorem_mode(fixtures::standard(2, 2, 3));
  EXPECT_EQ(full.verdict, Verdict::certified_full);
  EXPECT_EQ(full.certified_level, 3u);
  ASSERT_EQ(full.steps.size(), 2u);
  EXPECT_EQ(full.steps[0].verdict, StepVerdict::pass);

  CertReport proper = certify_theorem_mode(fixtures::siegel(2, 2, 2));
  EXPECT_EQ(proper.verdict, Verdict::refuted);
  EXPECT_EQ(proper.certified_level, 0u);
  EXPECT_TRUE(proper.steps[0].witness.contains("missing_element"));

  EXPECT_EQ(code_of([] { certify_theorem_mode(fixtures::standard(1, 3, 2)); }), errc::genus_one);
}

TEST(TheoremMode, CapGivesInconclusive) {
  CertReport r = certify_theorem_mode(fixtures::standard(2, 3, 2), 100);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_EQ(r.steps[0].verdict, StepVerdict::skipped);
}

TEST(DirectMode, ProperModLImageRefutedAtFirstStep) {
  // preimage of a proper mod-2 subgroup: generators agree with the Siegel ones mod 2
  Rng rng = derive_rng(50, 0);
  GenSet gs = perturbed(fixtures::siegel(2, 2, 3), rng);
  ASSERT_TRUE(mat_reduce(gs.generators[0], 1) == mat_reduce(fixtures::siegel(2, 2, 3).generators[0], 1));
  CertReport r = verify_direct(gs);
  EXPECT_EQ(r.verdict, Verdict::refuted);
  ASSERT_EQ(r.steps.size(), 1u);
  EXPECT_EQ(r.steps[0].verdict, StepVerdict::fail);
}

TEST(DirectMode, RandomLiftsAreFull) {
  Rng rng = derive_rng(51, 0);
  for (int t = 0; t < 3; ++t) {
    GenSet gs = random_lift(2, 3, 2, rng);
    CertReport r = verify_direct(gs);
    EXPECT_EQ(r.verdict, Verdict::certified_full) << to_json(r).dump();
    EXPECT_EQ(r.certified_level, 2u);
    // theorem mode agrees
    EXPECT_EQ(certify_theorem_mode(gs).verdict, Verdict::certified_full);
  }
  GenSet deep = random_lift(2, 2, 3, rng);
  EXPECT_EQ(verify_direct(deep).verdict, Verdict::certified_full);
}

TEST(DirectMode, GenusOneCounterexampleRefutedWithValidWitness) {
  for (i64 l : {2, 3}) {
    GenSet gs = fixtures::genus_one_counterexample(l);
    CertReport r = verify_direct(gs);
    ASSERT_EQ(r.verdict, Verdict::refuted);
    const Step* layer = find_step(r, "kernel layer 1");
    ASSERT_NE(layer, nullptr);
    EXPECT_EQ(layer->verdict, StepVerdict::fail);
    // re-validate: exp(unspanned direction) is not in the enumerated closure
    std::vector<u32> dir = layer->witness.at("unspanned_direction").get<std::vector<u32>>();
    LieVector v{1, static_cast<u64>(l), gs.form, dir};
    ASSERT_FALSE(v.is_zero());
    Closure c = closure_or_throw(gs);
    EXPECT_FALSE(c.contains(exp_layer(v, 1)));
    EXPECT_LT(c.order(), static_cast<std::uint64_t>(group_order(1, l, 2)));
    // and every recorded kernel vector re-evaluates from its word
    for (const auto& kv : layer->witness.at("kernel_vectors")) {
      LieVector w{1, static_cast<u64>(l), gs.form, kv.at("vector").get<std::vector<u32>>()};
      EXPECT_EQ(evaluate_word(gs, kv.at("word").get<Word>(), kv.at("power").get<u64>()), exp_layer(w, 1));
    }
  }
}

TEST(DirectMode, MissingElementIsAbsentFromClosure) {
  for (i64 l : {2, 3}) {
    GenSet gs = fixtures::siegel(2, l, 2);
    CertReport r = verify_direct(gs);
    ASSERT_EQ(r.verdict, Verdict::refuted);
    const auto rows = r.steps[0].witness.at("missing_element").get<std::vector<std::vector<i64>>>();
    std::vector<i64> flat;
    for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
    const Modulus m1 = make_modulus(l, 1);
    MatMod missing = MatMod::from_ints(4, m1, flat);
    EXPECT_TRUE(is_symplectic(missing, FormKind::omega));
    EXPECT_FALSE(closure(reduce_genset(gs, 1)).contains(missing));
  }
}

TEST(DirectMode, RangeAndCap) {
  EXPECT_EQ(code_of([] { verify_direct(fixtures::standard(4, 2, 2)); }), errc::range_error);
  EXPECT_EQ(code_of([] { verify_direct(fixtures::standard(2, 11, 2)); }), errc::range_error);
  CertReport r = verify_direct(fixtures::standard(2, 3, 2), kDefaultBudget, 1000);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
}

TEST(DirectMode, BudgetGivesInconclusiveNotRefuted) {
  CertReport r = verify_direct(fixtures::standard(2, 3, 2), 3);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_EQ(r.certified_level, 0u);
}

TEST(DirectMode, MonotoneUnderReduction) {
  // full at l^k implies full at every l^j, j <= k; refuted at l^2 stays refuted above it
  Rng rng = derive_rng(52, 0);
  GenSet gs = random_lift(2, 2, 4, rng);
  ASSERT_EQ(verify_direct(gs).verdict, Verdict::certified_full);
  for (unsigned j = 2; j < 4; ++j) EXPECT_EQ(verify_direct(reduce_genset(gs, j)).verdict, Verdict::certified_full);

  for (unsigned k : {2u, 3u, 4u}) EXPECT_EQ(verify_direct(fixtures::siegel(2, 2, k)).verdict, Verdict::refuted);
}

TEST(PowerLift, Examples) {
  EXPECT_TRUE(power_lift_layer_check(2, 3, 1));
  EXPECT_TRUE(power_lift_layer_check(2, 2, 2));
  EXPECT_TRUE(power_lift_layer_check(3, 5, 1, FormKind::jform));
  EXPECT_EQ(code_of([] { power_lift_layer_check(2, 2, 1); }), errc::precondition_violated);
  EXPECT_EQ(code_of([] { power_lift_layer_check(2, 3, 0); }), errc::precondition_violated);
}

TEST(PowerLift, TwoAtLayerOneGenuinelyFails) {
  // oracle by direct computation: (id + 2S)^2 = id + 4S + 4S^2 and S^2 != 0 mod 2 for S = E_11 corner
  const Modulus m8 = make_modulus(2, 3);
  std::vector<u32> a{1, 0, 0, 0}, zero(4, 0);
  LieVector s = detail::lie_from_blocks(2, 2, a, zero, zero);
  EXPECT_NE(mat_pow(exp_layer(s, 1, 3), 2), exp_layer(s, 2, 3));
  (void)m8;
}

TEST(PowerLift, RandomLiftsOfLayer) {
  // any lift id + l^k S' (S' = S mod l) raised to l lands on id + l^{k+1} S mod l^{k+2}
  Rng rng = derive_rng(53, 0);
  for (auto [l, k] : {std::pair<i64, unsigned>{3, 1}, {5, 1}, {2, 2}, {3, 2}, {7, 1}}) {
    const Modulus m = make_modulus(l, k + 2);
    for (int t = 0; t < 200; ++t) {
      LieVector s = random_lie_vector(2, static_cast<u64>(l), FormKind::omega, rng);
      MatMod x = exp_layer(s, k, k + 2);
      // perturb by l^{k+1} times anything: still congruent at the next layer
      MatMod noise = testing_support::random_matrix_mod(4, m, rng);
      x = mat_add(x, mat_scale(noise, static_cast<i64>(m.power(k + 1))));
      ASSERT_EQ(mat_pow(x, static_cast<u64>(l)), exp_layer(s, k + 1, k + 2));
    }
  }
}

TEST(CongruenceReplays, PowerArgumentForLargePrimes) {
  for (unsigned g : {2u, 3u})
    for (i64 l : {5, 7}) {
      CertReport r = replicate_lemma_l(g, l, 0, 50);
      EXPECT_EQ(r.verdict, Verdict::certified_full) << to_json(r).dump();
    }
  EXPECT_EQ(code_of([] { replicate_lemma_l(2, 3); }), errc::range_error);
  EXPECT_EQ(code_of([] { replicate_lemma_l(2, 9); }), errc::range_error);
  EXPECT_EQ(code_of([] { replicate_lemma_l(4, 5); }), errc::range_error);
}

TEST(CongruenceReplays, FourToEight) {
  for (unsigned g : {2u, 3u}) {
    CertReport r = replicate_lemma_4to8(g, 0, 200);
    EXPECT_EQ(r.verdict, Verdict::certified_full) << to_json(r).dump();
    EXPECT_EQ(r.certified_level, 3u);
  }
}

TEST(CongruenceReplays, SquareZeroPatternsAreSquareZero) {
  for (auto [g, l] : {std::pair<unsigned, u64>{2, 2}, {2, 5}, {3, 7}}) {
    for (const auto& p : square_zero_patterns(g, l)) {
      MatMod x = lie_to_matrix(p);
      EXPECT_TRUE(mat_mul(x, x).is_zero());
      EXPECT_EQ(trace_a(p), 0u);
    }
  }
}

TEST(InductiveStep, GenusTwoAndThree) {
  for (unsigned g : {2u, 3u})
    for (i64 l : {2, 3}) {
      CertReport r = replicate_inductive_step(g, l);
      EXPECT_EQ(r.verdict, Verdict::certified_full) << g << " " << l;
      EXPECT_EQ(r.steps.size(), g >= 3 ? 4u : 3u);
    }
  EXPECT_EQ(code_of([] { replicate_inductive_step(2, 5); }), errc::range_error);
  EXPECT_EQ(code_of([] { replicate_inductive_step(5, 2); }), errc::range_error);
}

TEST(InductiveStep, SpanIsConjugationStable) {
  // oracle: the orbit span of any nonzero vector of the result, under the full group, stays inside
  for (i64 l : {2, 3}) {
    Subspace s = inductive_span(3, l, 0, 8);
    EXPECT_TRUE(s.full());
    EXPECT_EQ(s.dim(), 21u);
  }
}

TEST(BaseCase, SmallRuns) {
  CertReport two = base_case_randomized(2, 2, 0);
  EXPECT_EQ(two.verdict, Verdict::certified_full);
  EXPECT_EQ(two.steps.size(), 2u);
  CertReport three = base_case_randomized(3, 2, 0);
  EXPECT_EQ(three.verdict, Verdict::certified_full);
  EXPECT_EQ(code_of([] { base_case_randomized(2, 0); }), errc::input_error);
  EXPECT_EQ(code_of([] { base_case_randomized(5, 1); }), errc::range_error);
}

TEST(Report, JsonIsDeterministic) {
  auto run = [] {
    return to_json(verify_direct(fixtures::standard(2, 3, 2))).dump() +
           to_json(verify_direct(fixtures::genus_one_counterexample(3))).dump() +
           to_json(base_case_randomized(3, 2, 7)).dump();
  };
  EXPECT_EQ(run(), run());
}

TEST(Report, ConcludeRules) {
  CertReport r;
  r.add("a", "x", StepVerdict::pass);
  r.conclude(false);
  EXPECT_EQ(r.verdict, Verdict::certified_full);
  r.conclude(true);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  r.add("b", "x", StepVerdict::fail);
  r.conclude(true);
  EXPECT_EQ(r.verdict, Verdict::refuted);
  EXPECT_EQ(to_string(Verdict::certified_full), "CERTIFIED_FULL");
  EXPECT_EQ(to_string(StepVerdict::skipped), "SKIPPED");
}

TEST(GenFile, RoundTripAndErrors) {
  for (const GenSet& gs : {fixtures::standard(2, 3, 2), fixtures::spanning_listing(2), fixtures::q_matrices(3, 2)}) {
    GenSet back = genset_from_json(genset_to_json(gs));
    EXPECT_EQ(back.g, gs.g);
    EXPECT_EQ(back.form, gs.form);
    EXPECT_EQ(back.modulus, gs.modulus);
    EXPECT_EQ(back.generators, gs.generators);
  }
  EXPECT_EQ(code_of([] { parse_json_text("{not json"); }), errc::input_error);
  EXPECT_EQ(code_of([] { genset_from_json(json{{"l", 2}, {"k", 1}, {"g", 1}}); }), errc::input_error);
  json j = genset_to_json(fixtures::standard(1, 2, 1));
  j["generators"][0][0] = 1;  // breaks symplecticity of T
  j["generators"][0][1] = 1;
  j["generators"][0][2] = 1;
  j["generators"][0][3] = 1;
  EXPECT_EQ(code_of([&] { genset_from_json(j); }), errc::not_symplectic);
}
