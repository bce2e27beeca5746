// symplift: command-line front end for the symplectic lifting toolkit.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "symplift/symplift.hpp"

namespace {

using namespace symplift;

constexpr int kExitInput = 3;

struct Options {
  unsigned g = 2;
  i64 l = 2;
  i64 k = 1;
  std::string form = "omega";
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t cap = kDefaultCap;
  std::string mode = "theorem";
  std::string out;
  std::string case_id;
  bool all = false;
  bool timing = false;
  std::string file;
  std::string element;
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Options& o, const json& j) {
  if (o.out.empty())
    std::cout << dump(j);
  else
    write_text_atomic(o.out, dump(j));
}

int cmd_order(const Options& o) {
  std::cout << to_decimal(group_order(o.g, o.l, o.k)) << "\n";
  return 0;
}

int cmd_check(const Options& o) {
  RawGenFile f = parse_raw_genfile(read_json_file(o.file));
  bool all_symplectic = true;
  for (std::size_t i = 0; i < f.matrices.size(); ++i) {
    const bool symp = is_symplectic(f.matrices[i], f.form);
    all_symplectic = all_symplectic && symp;
    std::cout << "generator " << i << ": symplectic=" << (symp ? "yes" : "no");
    if (f.modulus.k == 1) std::cout << " lie=" << (is_lie(f.matrices[i], f.form) ? "yes" : "no");
    std::cout << "\n";
  }
  std::cout << "form " << to_string(f.form) << ", preserved forms detected:";
  for (const auto& s : detect_preserved_forms(f.matrices)) std::cout << " " << s;
  std::cout << "\n";
  return all_symplectic ? 0 : 1;
}

int cmd_closure(const Options& o) {
  GenSet gs = load_genfile(o.file);
  Closure c = closure(gs, o.cap);
  const u128 full = group_order(gs.g, gs.modulus.l, gs.modulus.k);
  std::cout << "order " << c.order() << (c.exhausted() ? "" : " (cap reached, lower bound)") << "\n";
  std::cout << "group order " << to_decimal(full) << "\n";
  if (!c.exhausted()) return 2;
  std::cout << (u128(c.order()) == full ? "full" : "proper subgroup") << "\n";
  return 0;
}

LieVector named_element(const Options& o) {
  const u64 l = static_cast<u64>(o.l);
  if (o.element == "e1" || o.element == "E1") return log_layer(e_matrices(o.g, o.l).first, FormKind::jform);
  if (o.element == "e2" || o.element == "E2") return log_layer(e_matrices(o.g, o.l).second, FormKind::jform);
  if (o.element == "zero") return LieVector::zero(o.g, l, parse_form_kind(o.form));
  fail(errc::input_error, "unknown element '" + o.element + "' (expected e1, e2 or zero)");
}

int cmd_span(const Options& o) {
  Subspace total = empty_subspace(o.g, static_cast<u64>(o.l));
  if (!o.file.empty()) {
    RawGenFile f = parse_raw_genfile(read_json_file(o.file));
    if (f.modulus.k != 1) fail(errc::input_error, "span expects Lie elements over F_l (k = 1)");
    total = empty_subspace(f.g, f.modulus.l);
    for (const auto& m : f.matrices) {
      Subspace s = conj_orbit_span(lie_from_matrix(m, f.form), o.cap);
      for (const auto& row : s.basis()) total.insert(row);
    }
  } else {
    total = conj_orbit_span(named_element(o), o.cap);
  }
  std::cout << "dim " << total.dim() << " of " << total.ambient() << "\n";
  for (const auto& row : total.basis()) {
    for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? " " : "") << row[i];
    std::cout << "\n";
  }
  return 0;
}

int cmd_certify(const Options& o, bool direct) {
  GenSet gs = load_genfile(o.file);
  Stopwatch sw;
  CertReport r = direct ? verify_direct(gs, o.budget, o.cap) : certify_theorem_mode(gs, o.cap);
  RunInfo info{o.seed, o.budget, o.cap, std::nullopt};
  if (o.timing) info.wall_seconds = sw.seconds();
  emit(o, report_file(r, info));
  std::cerr << to_string(r.verdict) << "\n";
  return exit_code(r.verdict);
}

int cmd_reproduce(const Options& o) {
  std::vector<std::string> ids;
  if (o.all)
    ids = case_ids();
  else if (!o.case_id.empty())
    ids.push_back(o.case_id);
  else
    fail(errc::input_error, "reproduce needs --case <id> or --all");
  json cases = json::array();
  bool ok = true;
  for (const auto& id : ids) {
    Stopwatch sw;
    CaseResult r = run_case(id, o.seed);
    ok = ok && r.pass;
    std::cout << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.summary;
    if (o.timing) std::cout << "  [" << sw.seconds() << " s]";
    std::cout << std::endl;
    json j = case_json(r);
    if (o.timing) j["wall_seconds"] = sw.seconds();
    cases.push_back(std::move(j));
  }
  if (!o.out.empty())
    write_text_atomic(o.out, dump(json{{"tool", kToolName}, {"version", kToolVersion}, {"seed", o.seed}, {"cases", cases}}));
  return ok ? 0 : 1;
}

int cmd_fixtures(const Options& o) {
  json all = fixtures::all(o.g, o.l);
  if (o.out.empty()) {
    std::cout << dump(all);
    return 0;
  }
  std::filesystem::create_directories(o.out);
  for (const auto& [name, value] : all.items()) write_text_atomic((std::filesystem::path(o.out) / (name + ".json")).string(), dump(value));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic groups over Z/l^k: closures, kernel spans, lifting certificates"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Options o;

  auto genus = [&](CLI::App* c) { c->add_option("--g", o.g, "genus")->check(CLI::Range(1, 6)); };
  auto prime = [&](CLI::App* c) { c->add_option("--l", o.l, "prime"); };
  auto file = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("file", o.file, "generator file (JSON)");
    if (required) opt->required()->check(CLI::ExistingFile);
  };

  auto* order = app.add_subcommand("order", "print |Sp_2g(Z/l^k)|");
  order->add_option("--g", o.g)->required();
  order->add_option("--l", o.l)->required();
  order->add_option("--k", o.k)->required();

  auto* check = app.add_subcommand("check", "symplectic / Lie membership of each matrix in a file");
  file(check, true);

  auto* clos = app.add_subcommand("closure", "enumerate the generated group");
  file(clos, true);
  clos->add_option("--cap", o.cap, "element cap");

  auto* span = app.add_subcommand("span", "span of the conjugation orbit of Lie elements");
  file(span, false);
  span->add_option("--element", o.element, "named element: e1, e2, zero");
  genus(span);
  prime(span);
  span->add_option("--form", o.form)->check(CLI::IsMember({"omega", "jform"}));
  span->add_option("--cap", o.cap);

  auto* cert = app.add_subcommand("certify", "certify that the generators have full l-adic closure");
  file(cert, true);
  cert->add_option("--mode", o.mode)->check(CLI::IsMember({"theorem", "direct"}));
  auto* verify = app.add_subcommand("verify", "direct verification at the file's level (same as certify --mode direct)");
  file(verify, true);
  for (auto* c : {cert, verify}) {
    c->add_option("--seed", o.seed);
    c->add_option("--budget", o.budget, "word budget for kernel harvesting");
    c->add_option("--cap", o.cap);
    c->add_option("--out", o.out, "report path (default: stdout)");
    c->add_flag("--timing", o.timing, "record wall time in the report");
  }

  auto* repro = app.add_subcommand("reproduce", "run the reproduction checks");
  repro->add_option("--case", o.case_id);
  repro->add_flag("--all", o.all);
  repro->add_option("--seed", o.seed);
  repro->add_option("--out", o.out, "write a JSON report");
  repro->add_flag("--timing", o.timing);
  repro->add_flag("--list", [](std::int64_t) {
    for (const auto& id : case_ids()) std::cout << id << "\n";
    throw CLI::Success();
  });

  auto* fix = app.add_subcommand("fixtures", "emit the transcribed matrices as generator files");
  genus(fix);
  prime(fix);
  fix->add_option("--out", o.out, "directory (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*order) return cmd_order(o);
    if (*check) return cmd_check(o);
    if (*clos) return cmd_closure(o);
    if (*span) {
      if (o.file.empty() && o.element.empty()) fail(errc::input_error, "span needs a file or --element");
      return cmd_span(o);
    }
    if (*cert) return cmd_certify(o, o.mode == "direct");
    if (*verify) return cmd_certify(o, true);
    if (*repro) return cmd_reproduce(o);
    if (*fix) return cmd_fixtures(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
