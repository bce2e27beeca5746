#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symplift/certifier.hpp"

namespace symplift {

inline constexpr const char* kToolName = "symplift";
inline constexpr const char* kToolVersion = "1.0.0";

// ------------------------------------------------------------ generator files
//
// {"l": 2, "k": 2, "g": 2, "form": "omega", "label": "...",
//  "generators": [[row-major entries, (2g)^2 of them], ...]}

struct RawGenFile {
  unsigned g = 0;
  Modulus modulus;
  FormKind form = FormKind::omega;
  std::string label;
  std::vector<MatMod> matrices;
};

namespace detail {

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) fail(errc::input_error, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(errc::input_error, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace detail

/// Structural parse: header, sizes and entry ranges. No symplectic check.
inline RawGenFile parse_raw_genfile(const json& j) {
  if (!j.is_object()) fail(errc::input_error, "generator file must be a JSON object");
  RawGenFile f;
  const auto g = detail::required<i64>(j, "g");
  if (g < 1 || g > 6) fail(errc::input_error, "g must be in [1, 6]");
  f.g = static_cast<unsigned>(g);
  f.modulus = make_modulus(detail::required<i64>(j, "l"), detail::required<i64>(j, "k"));
  f.form = parse_form_kind(j.contains("form") ? detail::required<std::string>(j, "form") : "omega");
  if (j.contains("label") && !j.at("label").is_null()) f.label = detail::required<std::string>(j, "label");
  const auto gens = detail::required<std::vector<std::vector<i64>>>(j, "generators");
  const std::size_t n = 2 * f.g;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& v = gens[i];
    if (v.size() != n * n)
      fail(errc::input_error, "generator " + std::to_string(i) + " has " + std::to_string(v.size()) + " entries, expected " +
                                  std::to_string(n * n));
    for (i64 e : v)
      if (e < 0 || static_cast<u64>(e) >= f.modulus.value)
        fail(errc::input_error, "generator " + std::to_string(i) + " has entry " + std::to_string(e) + " outside [0, " +
                                    std::to_string(f.modulus.value) + ")");
    f.matrices.push_back(MatMod::from_ints(static_cast<unsigned>(n), f.modulus, std::span<const i64>(v)));
  }
  return f;
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::input_error, std::string("malformed JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::input_error, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline GenSet genset_from_json(const json& j) {
  RawGenFile f = parse_raw_genfile(j);
  return make_genset(f.g, f.modulus, f.form, std::move(f.matrices), std::move(f.label));
}

inline GenSet load_genfile(const std::string& path) { return genset_from_json(read_json_file(path)); }

inline json matrix_row_major(const MatMod& a) { return json(to_ints(a)); }

inline json genset_to_json(const GenSet& gs) {
  json gens = json::array();
  for (const auto& x : gs.generators) gens.push_back(matrix_row_major(x));
  json j{{"l", gs.modulus.l}, {"k", gs.modulus.k}, {"g", gs.g}, {"form", to_string(gs.form)}};
  if (!gs.label.empty()) j["label"] = gs.label;
  j["generators"] = std::move(gens);
  return j;
}

/// Writes via a temporary file and rename, so readers never see a partial file.
inline void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::input_error, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(errc::input_error, "write to '" + path + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) fail(errc::input_error, "cannot rename onto '" + path + "'");
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --------------------------------------------------------------- report files

struct RunInfo {
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t cap = kDefaultCap;
  /// Recorded only on request; reports are otherwise byte-stable across reruns.
  std::optional<double> wall_seconds;
};

inline json report_file(const CertReport& r, const RunInfo& info) {
  json j{{"tool", kToolName}, {"version", kToolVersion}, {"seed", info.seed}, {"budget", info.budget}, {"cap", info.cap}};
  if (info.wall_seconds) j["wall_seconds"] = *info.wall_seconds;
  j["report"] = to_json(r);
  return j;
}

/// Exit status as a function of the verdict alone.
inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::certified_full: return 0;
    case Verdict::refuted: return 1;
    case Verdict::inconclusive: return 2;
  }
  return 3;
}

// ------------------------------------------------------------------ fixtures

namespace fixtures {

/// Generators from the base-case listing, over Z/l^2. The listing only checks
/// group orders; the form (omega) was detected, see detected_forms.
inline GenSet base_case_listing(i64 l) {
  const Modulus m = make_modulus(l, 2);
  return make_genset(2, m, FormKind::omega,
                     {MatMod::from_ints(4, m, {1, 0, 0, 0, 1, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, -1}),
                      MatMod::from_ints(4, m, {0, 0, -1, 0, 0, 0, 0, -1, 1, 0, 1, 0, 0, 1, 0, 0})},
                     "base-case listing");
}

/// Generators from the spanning listing, over Z/l^2; they preserve the jform.
inline GenSet spanning_listing(i64 l) {
  const Modulus m = make_modulus(l, 2);
  return make_genset(2, m, FormKind::jform,
                     {MatMod::from_ints(4, m, {1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}),
                      MatMod::from_ints(4, m, {1, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 0, 1})},
                     "spanning listing");
}

inline GenSet standard(unsigned g, i64 l, unsigned k, FormKind form = FormKind::omega) {
  const Modulus m = make_modulus(l, k);
  return make_genset(g, m, form, standard_generators(g, m, form), "standard generators");
}

/// Block upper-triangular generators: a proper subgroup at every level.
inline GenSet siegel(unsigned g, i64 l, unsigned k, FormKind form = FormKind::omega) {
  const Modulus m = make_modulus(l, k);
  return make_genset(g, m, form, siegel_generators(g, m, form), "siegel parabolic");
}

inline GenSet e_pair(unsigned g, i64 l) {
  auto e = e_matrices(g, l);
  return make_genset(g, make_modulus(l, 2), FormKind::jform, {e.first, e.second}, "E1, E2");
}

/// Block permutation matrices for the transpositions (0 i), which generate S_g.
inline GenSet q_matrices(unsigned g, i64 l) {
  const Modulus m = make_modulus(l, 1);
  std::vector<MatMod> qs;
  for (unsigned i = 1; i < g; ++i) {
    std::vector<unsigned> s(g);
    std::iota(s.begin(), s.end(), 0u);
    std::swap(s[0], s[i]);
    qs.push_back(q_blockperm(g, s, m));
  }
  if (qs.empty()) qs.push_back(MatMod::identity(2 * g, m));
  return make_genset(g, m, FormKind::jform, std::move(qs), "block transpositions");
}

/// A proper subgroup of SL_2(Z/l^2) that still surjects onto SL_2(F_l), for
/// l in {2, 3}: found by searching kernel perturbations of the genus-1
/// standard generators in a fixed order. The search is deterministic.
inline GenSet genus_one_counterexample(i64 l) {
  if (l != 2 && l != 3) fail(errc::range_error, "genus-1 counterexamples exist only for l in {2, 3}");
  const Modulus m = make_modulus(l, 2);
  const auto base = standard_generators(1, m, FormKind::omega);
  const u64 full = static_cast<u64>(group_order(1, l, 2));
  const unsigned d = lie_dim(1);
  u64 count = 1;
  for (unsigned i = 0; i < d; ++i) count *= static_cast<u64>(l);
  auto kernel = [&](u64 code) {
    LieVector v = LieVector::zero(1, static_cast<u64>(l), FormKind::omega);
    for (auto& c : v.coords) {
      c = static_cast<u32>(code % static_cast<u64>(l));
      code /= static_cast<u64>(l);
    }
    return exp_layer(v, 1);
  };
  for (u64 a = 0; a < count; ++a)
    for (u64 b = 0; b < count; ++b) {
      std::vector<MatMod> gens{mat_mul(base[0], kernel(a)), mat_mul(base[1], kernel(b))};
      GenSet gs = make_genset(1, m, FormKind::omega, gens, "genus-1 proper lift");
      if (closure(gs).order() < full) return gs;
    }
  fail(errc::input_error, "no genus-1 counterexample found");
}

inline json detected_forms(const GenSet& gs) {
  std::vector<MatMod> low;
  for (const auto& x : gs.generators) low.push_back(x);
  return json(detect_preserved_forms(low));
}

/// All shipped fixtures as GenFile objects, keyed by name.
inline json all(unsigned g, i64 l) {
  json out = json::object();
  auto put = [&](const std::string& name, const GenSet& gs) {
    json j = genset_to_json(gs);
    j["preserved_forms"] = detected_forms(gs);
    out[name] = std::move(j);
  };
  put("base-case-listing", base_case_listing(l));
  put("spanning-listing", spanning_listing(l));
  put("e-matrices", e_pair(std::max(g, 2u), l));
  put("q-matrices", q_matrices(g, l));
  put("standard", standard(g, l, 2));
  put("siegel", siegel(g, l, 2));
  if (l == 2 || l == 3) put("genus-one-counterexample", genus_one_counterexample(l));
  return out;
}

}  // namespace fixtures

}  // namespace symplift
