#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symplift/genfile.hpp"

namespace symplift {

struct CaseResult {
  std::string id;
  std::string anchor;
  bool pass = false;
  std::string summary;
  json details;
};

struct CaseSpec {
  std::string id;
  std::string anchor;
  std::function<CaseResult(std::uint64_t seed)> run;
};

namespace detail {

inline CaseResult span_case(i64 l) {
  const auto e = e_matrices(2, l);
  const Subspace s1 = conj_orbit_span(log_layer(e.first, FormKind::jform));
  const Subspace s2 = conj_orbit_span(log_layer(e.second, FormKind::jform));
  CaseResult r;
  r.pass = s1.full() && s2.full() && s1 == s2;
  r.summary = "basis dim " + std::to_string(s1.dim()) + " (E1), " + std::to_string(s2.dim()) + " (E2); group of " +
              std::to_string(static_cast<std::uint64_t>(group_order(2, l, 1))) + " conjugators";
  r.details = json{{"e1_dim", s1.dim()}, {"e2_dim", s2.dim()}, {"e1_basis", basis_json(s1)}, {"e2_basis", basis_json(s2)}};
  return r;
}

inline CaseResult base_case(i64 l, std::uint64_t seed) {
  CertReport rep = base_case_randomized(l, 100, seed);
  std::size_t passed = 0;
  for (const auto& s : rep.steps)
    if (s.anchor == anchors::base_case && s.verdict == StepVerdict::pass) ++passed;
  // The listing's own generators, at the same level.
  GenSet listing = fixtures::base_case_listing(l);
  const SurjectivityResult sur = surjectivity_mod_l(listing);
  bool listing_full = sur.surjective;
  json listing_json{{"mod_l_order", sur.order}};
  if (l == 2) {
    const std::uint64_t order = closure(listing).order();
    listing_full = listing_full && order == static_cast<std::uint64_t>(group_order(2, 2, 2));
    listing_json["order"] = order;
  } else {
    HarvestResult h = harvest_kernel_span(listing);
    listing_full = listing_full && h.span.full();
    listing_json["kernel_dim"] = h.span.dim();
  }
  CaseResult r;
  r.pass = rep.verdict == Verdict::certified_full && passed == 100 && listing_full;
  r.summary = std::to_string(passed) + "/100 random lifts full; listing generators " +
              (listing_full ? std::string("full") : std::string("NOT full"));
  r.details = json{{"report", to_json(rep)}, {"listing", listing_json}};
  return r;
}

inline CaseResult ab_case(unsigned g, i64 l, unsigned k, std::uint64_t expected) {
  GenSet gs = fixtures::standard(g, l, k);
  const std::uint64_t idx = abelianization_index(gs);
  CaseResult r;
  r.pass = idx == expected;
  r.summary = "index " + std::to_string(idx) + " (expected " + std::to_string(expected) + ")";
  r.details = json{{"g", g}, {"l", l}, {"k", k}, {"index", idx}, {"expected", expected}};
  return r;
}

}  // namespace detail

struct EquivalenceTally {
  std::uint64_t checked = 0;
  std::uint64_t square_zero = 0;
  std::uint64_t discrepancies = 0;
};

/// is_symplectic(id + M) <=> M^2 = 0, for one Lie element M over F_l.
inline bool square_zero_equivalence_holds(const LieVector& v, bool* is_sq_zero = nullptr) {
  const MatMod m = lie_to_matrix(v);
  const bool sq = mat_mul(m, m).is_zero();
  if (is_sq_zero) *is_sq_zero = sq;
  return is_symplectic(mat_add(MatMod::identity(m.dim(), m.modulus()), m), v.form) == sq;
}

inline EquivalenceTally square_zero_exhaustive(unsigned g, u64 l) {
  EquivalenceTally t;
  const unsigned d = lie_dim(g);
  u64 total = 1;
  for (unsigned i = 0; i < d; ++i) total *= l;
  LieVector v = LieVector::zero(g, l, FormKind::omega);
  for (u64 code = 0; code < total; ++code) {
    u64 x = code;
    for (auto& c : v.coords) {
      c = static_cast<u32>(x % l);
      x /= l;
    }
    bool sq = false;
    if (!square_zero_equivalence_holds(v, &sq)) ++t.discrepancies;
    t.square_zero += sq;
    ++t.checked;
  }
  return t;
}

/// Half the samples are uniform Lie elements, half are random conjugates of
/// square-zero patterns, so both sides of the equivalence are exercised.
inline EquivalenceTally square_zero_random(unsigned g, u64 l, std::uint64_t trials, std::uint64_t seed) {
  EquivalenceTally t;
  Rng rng = derive_rng(seed, l);
  const auto patterns = square_zero_patterns(g, l);
  const Modulus m = make_modulus(static_cast<i64>(l), 1);
  GenSet full = make_genset(g, m, FormKind::omega, standard_generators(g, m), "full group");
  for (std::uint64_t i = 0; i < trials; ++i) {
    LieVector v = random_lie_vector(g, l, FormKind::omega, rng);
    if (i % 2 == 1) {
      const auto& p = patterns[uniform_below(rng, patterns.size())];
      v = conj_act(random_element(full, rng, 12).first, p);
    }
    bool sq = false;
    if (!square_zero_equivalence_holds(v, &sq)) ++t.discrepancies;
    t.square_zero += sq;
    ++t.checked;
  }
  return t;
}

/// Every case run by `reproduce`, in a fixed order.
inline std::vector<CaseSpec> reproduction_cases() {
  std::vector<CaseSpec> cases;
  cases.push_back({"span-l2", anchors::spanning, [](std::uint64_t) { return detail::span_case(2); }});
  cases.push_back({"span-l3", anchors::spanning, [](std::uint64_t) { return detail::span_case(3); }});
  cases.push_back({"base-l2", anchors::base_case, [](std::uint64_t s) { return detail::base_case(2, s); }});
  cases.push_back({"base-l3", anchors::base_case, [](std::uint64_t s) { return detail::base_case(3, s); }});
  cases.push_back({"ab-sp4-f2", "abelianization", [](std::uint64_t) { return detail::ab_case(2, 2, 1, 2); }});
  cases.push_back({"ab-sp4-z4", "abelianization", [](std::uint64_t) { return detail::ab_case(2, 2, 2, 2); }});
  cases.push_back({"ab-sp4-f3", "abelianization", [](std::uint64_t) { return detail::ab_case(2, 3, 1, 1); }});
  cases.push_back({"ab-sp6-f2", "abelianization", [](std::uint64_t) { return detail::ab_case(3, 2, 1, 1); }});
  cases.push_back({"mlsq-equiv", "square-zero-equivalence", [](std::uint64_t seed) {
                     CaseResult r;
                     json d = json::array();
                     std::uint64_t bad = 0;
                     for (u64 l : {2, 3}) {
                       auto t = square_zero_exhaustive(1, l);
                       bad += t.discrepancies;
                       d.push_back(json{{"g", 1}, {"l", l}, {"mode", "exhaustive"}, {"checked", t.checked},
                                        {"square_zero", t.square_zero}, {"discrepancies", t.discrepancies}});
                     }
                     for (u64 l : {2, 3, 5}) {
                       auto t = square_zero_random(2, l, 10000, seed);
                       bad += t.discrepancies;
                       d.push_back(json{{"g", 2}, {"l", l}, {"mode", "random"}, {"checked", t.checked},
                                        {"square_zero", t.square_zero}, {"discrepancies", t.discrepancies}});
                     }
                     r.pass = bad == 0;
                     r.summary = std::to_string(bad) + " discrepancies";
                     r.details = std::move(d);
                     return r;
                   }});
  cases.push_back({"pow-l5", anchors::lemma_l, [](std::uint64_t seed) {
                     CaseResult r;
                     CertReport a = replicate_lemma_l(2, 5, seed), b = replicate_lemma_l(2, 7, seed);
                     r.pass = a.verdict == Verdict::certified_full && b.verdict == Verdict::certified_full;
                     r.summary = std::string("l=5 ") + to_string(a.verdict) + ", l=7 " + to_string(b.verdict);
                     r.details = json{{"l5", to_json(a)}, {"l7", to_json(b)}};
                     return r;
                   }});
  cases.push_back({"sq-4to8", anchors::lemma_4to8, [](std::uint64_t seed) {
                     CaseResult r;
                     CertReport a = replicate_lemma_4to8(2, seed), b = replicate_lemma_4to8(3, seed);
                     r.pass = a.verdict == Verdict::certified_full && b.verdict == Verdict::certified_full;
                     r.summary = std::string("g=2 (exhaustive) ") + to_string(a.verdict) + ", g=3 (sampled) " +
                                 to_string(b.verdict);
                     r.details = json{{"g2", to_json(a)}, {"g3", to_json(b)}};
                     return r;
                   }});
  cases.push_back({"powerlift", anchors::power_lift, [](std::uint64_t) {
                     CaseResult r;
                     json d = json::array();
                     bool ok = true;
                     for (unsigned g = 1; g <= 3; ++g)
                       for (i64 l : {2, 3, 5})
                         for (unsigned k = 1; k <= 3; ++k) {
                           if (l == 2 && k == 1) {
                             bool rejected = false;
                             try {
                               power_lift_layer_check(g, l, k);
                             } catch (const error& e) {
                               rejected = e.code() == errc::precondition_violated;
                             }
                             ok = ok && rejected;
                             d.push_back(json{{"g", g}, {"l", l}, {"k", k}, {"result", rejected ? "excluded" : "NOT excluded"}});
                             continue;
                           }
                           const bool pass = power_lift_layer_check(g, l, k);
                           ok = ok && pass;
                           d.push_back(json{{"g", g}, {"l", l}, {"k", k}, {"result", pass}});
                         }
                     r.pass = ok;
                     r.summary = std::to_string(d.size()) + " (g, l, k) combinations, (l=2, k=1) excluded";
                     r.details = std::move(d);
                     return r;
                   }});
  cases.push_back({"inductive-g3", anchors::inductive, [](std::uint64_t seed) {
                     CaseResult r;
                     CertReport a = replicate_inductive_step(3, 2, seed), b = replicate_inductive_step(3, 3, seed);
                     // Independent cross-check at l = 2: orbit of a random element under all of Sp_6(F_2).
                     Rng rng = derive_rng(seed, 99);
                     Subspace cross = empty_subspace(3, 2);
                     unsigned tries = 0;
                     while (!cross.full() && tries < 8) {
                       ++tries;
                       cross = conj_orbit_span(random_lie_vector(3, 2, FormKind::jform, rng));
                     }
                     const Subspace direct = inductive_span(3, 2, seed, 16);
                     r.pass = a.verdict == Verdict::certified_full && b.verdict == Verdict::certified_full &&
                              cross.full() && direct == cross;
                     r.summary = "dim " + std::to_string(direct.dim()) + " at l=2, l=3 " + to_string(b.verdict) +
                                 "; random-orbit cross-check dim " + std::to_string(cross.dim());
                     r.details = json{{"l2", to_json(a)}, {"l3", to_json(b)}, {"cross_check_seeds_tried", tries}};
                     return r;
                   }});
  return cases;
}

inline std::vector<std::string> case_ids() {
  std::vector<std::string> ids;
  for (const auto& c : reproduction_cases()) ids.push_back(c.id);
  return ids;
}

inline CaseResult run_case(const std::string& id, std::uint64_t seed) {
  for (const auto& c : reproduction_cases())
    if (c.id == id) {
      CaseResult r = c.run(seed);
      r.id = c.id;
      r.anchor = c.anchor;
      return r;
    }
  fail(errc::input_error, "unknown case '" + id + "'");
}

inline json case_json(const CaseResult& r) {
  return json{{"id", r.id}, {"anchor", r.anchor}, {"result", r.pass ? "PASS" : "FAIL"}, {"summary", r.summary},
              {"details", r.details}};
}

}  // namespace symplift
