// qosing: invariants of quasi-ordinary branches from their characteristic exponents.
//
// Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 invalid branch, 4 ambiguous recovery.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qosing/report.hpp"
#include "verify_suites.hpp"

namespace {

using namespace qosing;

struct Options {
  std::string out;
  std::string bound;
  std::uint64_t seed = 1;
  bool pretty = false;
};

std::size_t max_fragment() {
  const char* env = std::getenv("QOSING_MAX_FRAGMENT");
  if (!env) return kDefaultMaxFragment;
  try {
    return static_cast<std::size_t>(std::stoull(env));
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "QOSING_MAX_FRAGMENT is not a number");
  }
}

// Comma-separated rationals; a single value is repeated in every coordinate.
ExpVec parse_bound(const std::string& text, std::size_t rank, const ExpVec& fallback) {
  if (text.empty()) return fallback;
  ExpVec v;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    v.c.push_back(parse_rat(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.dim() == 1 && rank != 1) v.c.assign(rank, v.c.front());
  if (v.dim() != rank) fail(ErrorKind::DimensionMismatch, "bound has " + std::to_string(v.dim()) + " entries, rank is " +
                                                              std::to_string(rank));
  return v;
}

void emit(const Json& j, const Options& opt) {
  std::string text = opt.pretty ? j.dump(2) : j.dump();
  if (opt.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(opt.out);
  if (!f) fail(ErrorKind::ParseError, "cannot write " + opt.out);
  f << text << "\n";
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return 2;
    case ErrorKind::AmbiguousRecovery:
    case ErrorKind::NoUniqueMinimum: return 4;
    default: return 3;
  }
}

int cmd_analyze(const std::string& spec, const std::optional<std::string>& h, bool with_recovery, const Options& opt) {
  auto bs = parse_branch_spec(spec);
  const Branch& b = bs.branch;
  auto inv = derive(b);
  Json r;
  r["command"] = "analyze";
  r["input"] = bs.echo;
  r["branch"] = branch_json(b);
  r["invariants"] = invariants_json(inv);
  r["singular_locus"] = locus_json(singular_locus(b, inv));
  QOSemigroup sg = gamma_reduced(b);
  ExpVec bound = parse_bound(opt.bound, sg.rank, default_bound(sg));
  auto frag = enumerate_up_to(sg, bound, max_fragment());
  r["semigroup"] = fragment_json(sg, bound, frag);
  r["semigroup"]["full_generators"] = to_json(inv.derived);
  auto sys = build_semiroots(b);
  Json semiroots = Json::array();
  for (const auto& f : sys.semiroots) semiroots.push_back(format_poly(f));
  r["semiroots"] = semiroots;
  auto br = canonical_blowup(b);
  r["fan"] = fan_json(br);
  Json phis = Json::array();
  for (std::size_t p = 0; p < br.distinguished.size(); ++p) phis.push_back(phi_json(phi_map(b, br, p)));
  r["phi"] = phis;
  if (h) r["witness"] = witness_json(semigroup_witness(parse_series_poly(*h, b.dim), sys));
  if (with_recovery) {
    RecoveryAux aux;
    aux.dim = b.dim;
    if (inv.epsilon) {
      aux.N_G = inv.indices.back();
      aux.sections = simulate_sections(b, opt.seed);
    }
    r["recovery"] = recovery_json(recover_normalized_branch(frag, bound, aux));
    if (inv.epsilon) r["recovery"]["N_G_source"] = "external";
  }
  emit(r, opt);
  return 0;
}

int cmd_verify(const std::string& spec, const std::string& suite, const Options& opt) {
  if (suite != "semigroup" && suite != "toric" && suite != "sections" && suite != "all")
    fail(ErrorKind::ParseError, "unknown suite " + suite);
  auto bs = parse_branch_spec(spec);
  const Branch& b = bs.branch;
  tools::CheckList checks;
  Json r;
  r["command"] = "verify";
  r["suite"] = suite;
  r["branch"] = branch_json(b);
  Json info = Json::object();
  if (suite == "semigroup" || suite == "all") {
    QOSemigroup sg = gamma_reduced(b);
    tools::semigroup_suite(b, parse_bound(opt.bound, sg.rank, default_bound(sg)), max_fragment(), checks, info);
  }
  if (suite == "toric" || suite == "all") tools::toric_suite(b, checks);
  if (suite == "sections" || suite == "all") tools::sections_suite(b, opt.seed, checks, info);
  r["checks"] = checks.checks;
  r["failures"] = checks.failures;
  r["info"] = info;
  r["pass"] = checks.failures.empty();
  emit(r, opt);
  return checks.failures.empty() ? 0 : 1;
}

int cmd_semigroup(const std::string& spec, const Options& opt) {
  auto bs = parse_branch_spec(spec);
  const Branch& b = bs.branch;
  auto inv = derive(b);
  QOSemigroup sg = gamma_reduced(b);
  ExpVec bound = parse_bound(opt.bound, sg.rank, default_bound(sg));
  Json r = fragment_json(sg, bound, enumerate_up_to(sg, bound, max_fragment()));
  r["command"] = "semigroup";
  r["branch"] = branch_json(b);
  if (inv.epsilon) r["aux"] = aux_json(b, inv, opt.seed);
  emit(r, opt);
  return 0;
}

int cmd_recover(const std::string& fragment_arg, const std::optional<std::string>& aux_arg, const Options& opt) {
  Json j = load_json_arg(fragment_arg);
  if (!j.is_object()) fail(ErrorKind::ParseError, "fragment must be a JSON object");
  ExpVec bound = vec_from_json(field<Json>(j, "bound"));
  if (j.contains("rank") && field<std::size_t>(j, "rank") != bound.dim())
    fail(ErrorKind::ParseError, "rank and bound disagree");
  std::vector<ExpVec> elements;
  for (const auto& e : field<Json>(j, "elements")) elements.push_back(vec_from_json(e));
  RecoveryAux aux;
  if (aux_arg) {
    aux = aux_from_json(load_json_arg(*aux_arg));
  } else if (j.contains("aux")) {
    aux = aux_from_json(j.at("aux"));
  }
  auto rec = recover_normalized_branch(elements, bound, aux);
  Json r = recovery_json(rec);
  r["command"] = "recover";
  if (aux.N_G) r["N_G_source"] = "external";
  emit(r, opt);
  return 0;
}

int cmd_fan(const std::string& spec, const Options& opt) {
  auto bs = parse_branch_spec(spec);
  Json r;
  r["command"] = "fan";
  r["branch"] = branch_json(bs.branch);
  r["fan"] = fan_json(canonical_blowup(bs.branch));
  emit(r, opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of quasi-ordinary hypersurface branches"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  Options opt;
  bool compact = false;
  app.add_option("--out", opt.out, "Write the report to FILE");
  app.add_option("--bound", opt.bound, "Enumeration bound, comma-separated rationals");
  app.add_option("--seed", opt.seed, "Seed for generic section parameters");
  app.add_flag("--json", compact, "Compact JSON output (default)");
  app.add_flag("--pretty", opt.pretty, "Indented JSON output");

  std::string spec, suite = "all", fragment;
  std::optional<std::string> h, aux;
  bool with_recovery = false;

  auto* analyze = app.add_subcommand("analyze", "Full invariant report for a branch");
  analyze->add_option("branch", spec, "Preset (cusp, E4), inline JSON or file")->required();
  analyze->add_option("--h", h, "Polynomial in X1..Xd, Y whose value at the root is analysed");
  analyze->add_flag("--recover", with_recovery, "Include the recovery round trip");

  auto* verify = app.add_subcommand("verify", "Run oracle comparisons for a branch");
  verify->add_option("branch", spec, "Preset, inline JSON or file")->required();
  verify->add_option("--suite", suite, "semigroup, toric, sections or all");

  auto* recover = app.add_subcommand("recover", "Recover a normalized branch from a semigroup fragment");
  recover->add_option("fragment", fragment, "Fragment JSON (inline or file)")->required();
  recover->add_option("aux", aux, "Auxiliary data JSON: N_G and section data");

  auto* fan = app.add_subcommand("fan", "Canonical toric blow-up of the orbifold chart");
  fan->add_option("branch", spec, "Preset, inline JSON or file")->required();

  auto* semigroup = app.add_subcommand("semigroup", "Reduced semigroup fragment for a branch");
  semigroup->add_option("branch", spec, "Preset, inline JSON or file")->required();

  for (auto* sub : {analyze, verify, recover, fan, semigroup}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (compact) opt.pretty = false;

  try {
    if (*analyze) return cmd_analyze(spec, h, with_recovery, opt);
    if (*verify) return cmd_verify(spec, suite, opt);
    if (*recover) return cmd_recover(fragment, aux, opt);
    if (*fan) return cmd_fan(spec, opt);
    if (*semigroup) return cmd_semigroup(spec, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
