#include "orbicensus/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include "orbicensus/census.hpp"
#include "orbicensus/error.hpp"
#include "orbicensus/euler.hpp"
#include "orbicensus/format.hpp"
#include "orbicensus/golden.hpp"
#include "orbicensus/groups.hpp"
#include "orbicensus/uniformization.hpp"

namespace orbi::cli {

namespace {

using nlohmann::json;

struct Options {
  bool json = false;
  bool paranoid = false;
  std::string signature;
  int dim = 0;
  bool linear_only = false;
  std::string golden;
  std::string delta = "moduli";
  std::string format = "json";
  unsigned jobs = 0;
  std::vector<int> branch;
  std::int64_t c = 0;
};

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string tuple(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

std::string tuple(const std::vector<int>& v) { return tuple(std::vector<std::int64_t>(v.begin(), v.end())); }

std::string header(const OrbifoldSignature& sig) {
  return render(sig) + " on P^" + std::to_string(sig.dim());
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto sig = parse_signature(o.signature, o.dim);
  const auto verdict = explain_uniformization(sig);
  json j = {{"signature", render(sig)}, {"dim", o.dim}, {"uniformizable", verdict.uniformizable},
            {"f", f_vector(sig)}};
  std::ostringstream text;
  text << header(sig) << ": " << (verdict.uniformizable ? "uniformizable" : "not uniformizable") << "\n";
  text << "f = " << tuple(f_vector(sig)) << "\n";
  if (verdict.uniformizable) {
    const Integer order = orb_group_order_formula(sig);
    const bool local = quotient_uniformizes(sig, QuotientSpec{}, o.paranoid);
    if (!local)
      throw Error(ErrorCode::Internal, "criterion holds but a local group fails to inject for " + render(sig));
    text << "order " << to_string(order) << "\n";
    json cert = json::array();
    for (const auto& c : verdict.certificate) {
      text << "  p = " << c.prime << ": exponents " << tuple(c.exponents) << ", alpha " << c.alpha << "\n";
      cert.push_back({{"prime", c.prime}, {"alpha", c.alpha}, {"exponents", c.exponents}});
    }
    text << "local groups inject (" << (o.paranoid ? "all |B| <= n" : "|B| = n") << ")\n";
    j["order"] = to_json(order);
    j["certificate"] = cert;
    j["local_check"] = o.paranoid ? "all" : "maximal";
  } else {
    const auto& f = *verdict.failure;
    text << "  " << f.prime << "^" << f.exponent << " divides " << f.divisible_count << " of the f_i, needs "
         << (o.dim + 1) << "\n";
    j["failure"] = {{"prime", f.prime}, {"exponent", f.exponent}, {"divides", f.divisible_count}};
  }
  out << (o.json ? j.dump(2) + "\n" : text.str());
  return kOk;
}

int cmd_group(const Options& o, std::ostream& out) {
  const auto sig = parse_signature(o.signature, o.dim);
  const auto g = orb_group_structure(sig);
  const Integer formula = orb_group_order_formula(sig);
  if (g.order() != formula)
    throw Error(ErrorCode::Internal, "Smith normal form and order formula disagree on " + render(sig));
  if (o.json) {
    json j = to_json(g);
    j["signature"] = render(sig);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << header(sig) << "\norder " << to_string(formula) << "\ninvariant factors";
  for (const auto& f : g.invariant_factors) out << " " << to_string(f);
  if (g.invariant_factors.empty()) out << " (trivial)";
  out << "\n";
  return kOk;
}

int cmd_euler(const Options& o, std::ostream& out) {
  const auto sig = parse_signature(o.signature, o.dim);
  const Rational e = e_orb_formula(sig);
  if (e != e_orb_stratified(sig))
    throw Error(ErrorCode::Internal, "Euler sums disagree on " + render(sig));
  std::optional<Integer> universal;
  if (sig.dim() >= 2 && is_uniformizable_prime_power(sig)) universal = e_universal(sig);
  if (o.json) {
    json j = {{"signature", render(sig)}, {"e_orb", e.str()}};
    j["e_universal"] = universal ? to_json(*universal) : json(nullptr);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << header(sig) << "\ne_orb " << e.str() << "\n";
  if (universal) {
    out << "e_universal " << to_string(*universal) << "\n";
  } else {
    out << "e_universal n/a (no finite abelian uniformization)\n";
  }
  return kOk;
}

int cmd_cy(const Options& o, std::ostream& out) {
  const auto sig = parse_signature(o.signature, o.dim);
  const Rational defect = cy_defect(sig);
  const bool cy = defect.sign() == 0;
  std::optional<BoundsCheck> bounds;
  if (cy) bounds = check_degree_bounds(sig);
  if (o.json) {
    json j = {{"signature", render(sig)}, {"defect", defect.str()}, {"calabi_yau", cy}};
    j["bounds"] = bounds ? json{{"ok", bounds->ok}, {"reason", bounds->reason}} : json(nullptr);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << header(sig) << "\ndefect " << defect.str() << "\n" << (cy ? "calabi-yau" : "not calabi-yau") << "\n";
  if (bounds) out << "degree bounds " << (bounds->ok ? "ok: " : "violated: ") << bounds->reason << "\n";
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const auto sigs = enumerate_cy(o.dim, o.linear_only, o.jobs);
  if (o.json) {
    json j = json::array();
    for (const auto& s : sigs) j.push_back(render(s));
    out << j.dump(2) << "\n";
    return kOk;
  }
  for (const auto& s : sigs) out << render(s) << "\n";
  return kOk;
}

std::filesystem::path resolve_golden(const std::string& name) {
  namespace fs = std::filesystem;
  std::vector<fs::path> candidates{name, name + ".json"};
  if (const char* dir = std::getenv("ORBICENSUS_GOLDEN_DIR")) {
    candidates.emplace_back(fs::path(dir) / name);
    candidates.emplace_back(fs::path(dir) / (name + ".json"));
  }
  for (const auto& p : candidates)
    if (fs::is_regular_file(p)) return p;
  throw Error(ErrorCode::Io, "golden file " + name + " not found (also looked in $ORBICENSUS_GOLDEN_DIR)");
}

int cmd_census(const Options& o, std::ostream& out, std::ostream& err) {
  const DeltaConvention convention = o.delta == "moduli" ? DeltaConvention::Moduli : DeltaConvention::LinearSystem;
  const CensusFormat format = o.format == "csv" ? CensusFormat::Csv
                              : o.format == "md" ? CensusFormat::Markdown
                                                 : CensusFormat::Json;
  std::optional<GoldenTable> golden;
  int dim = o.dim;
  bool linear_only = o.linear_only;
  if (!o.golden.empty()) {
    golden = load_golden(resolve_golden(o.golden));
    if (dim == 0) dim = golden->dim;
    linear_only = linear_only || golden->linear_only;
  }
  if (dim < 1) throw Error(ErrorCode::Precondition, "census needs --dim or --golden");
  Census census = build_census(dim, linear_only, o.jobs);
  std::optional<ErrataReport> errata;
  if (golden) {
    errata = compare_to_golden(census, *golden, convention);
    annotate(census, *golden, *errata);
  } else if (!census.internal.entries.empty()) {
    errata = census.internal;
  }
  out << format_census(census, format, convention, errata ? &*errata : nullptr);
  if (!errata) return kOk;
  if (format == CensusFormat::Csv) err << format_errata(*errata);
  const auto fresh = unexplained(*errata);
  if (fresh.empty()) return kOk;
  err << fresh.size() << " mismatch(es) not in the errata ledger\n";
  return kUnexplainedErrata;
}

int cmd_lift(const Options& o, std::ostream& out) {
  const auto written = parse_components(o.signature);
  const OrbifoldSignature sig(o.dim, written);
  std::vector<int> positions;
  for (int b : o.branch) positions.push_back(b - 1);
  const IndexSet branch = map_positions(written, sig, positions);
  const CoveringEdge edge = make_covering(sig, branch, o.c);
  const OrbifoldSignature target = lift(sig, edge);
  if (o.json) {
    json j = {{"source", render(sig)},
              {"target", render(target)},
              {"kummer_exponent", o.c},
              {"branch", o.branch},
              {"deck_order", to_json(edge.deck_order)}};
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << render(target) << "\n";
  return kOk;
}

int cmd_enriques(const Options& o, std::ostream& out) {
  const auto q = enumerate_enriques_quotients(o.dim, o.paranoid);
  const auto sig = all_two_signature(o.dim);
  const Integer full = orb_group_order_formula(sig);
  json list = json::array();
  std::ostringstream text;
  text << render(sig) << " on P^" << o.dim << ": |π₁^orb| = " << to_string(full) << "\n";
  text << "count " << to_string(q.count) << "\n";
  for (std::size_t i = 0; i < q.subsets.size(); ++i) {
    std::vector<int> one_based;
    for (int s : q.subsets[i]) one_based.push_back(s + 1);
    const Integer order = quotient_order(sig, q.specs[i]);
    text << "  S = {" << join_ints(one_based) << "}  order " << to_string(order) << "\n";
    list.push_back({{"subset", one_based}, {"order", to_json(order)}});
  }
  if (o.json) {
    out << json{{"signature", render(sig)}, {"order", to_json(full)}, {"count", to_json(q.count)}, {"quotients", list}}
               .dump(2)
        << "\n";
  } else {
    out << text.str();
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite abelian orbifold structures on projective space", "orbicensus"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "JSON output");
  app.add_flag("--paranoid", o.paranoid, "check local injectivity on every stratum, not only the deepest");

  auto with_signature = [&](CLI::App* sub) {
    sub->add_option("signature", o.signature, "e.g. '[2_2,3,3,3]'")->required();
    sub->add_option("--dim,-n", o.dim, "dimension n of P^n")->required()->check(CLI::PositiveNumber);
  };
  auto* check = app.add_subcommand("check", "uniformizability verdict with certificate");
  with_signature(check);
  auto* group = app.add_subcommand("group", "order and invariant factors of π₁^orb");
  with_signature(group);
  auto* euler = app.add_subcommand("euler", "orbifold Euler number, and of the universal uniformization");
  with_signature(euler);
  auto* cy = app.add_subcommand("cy", "Calabi-Yau defect and degree bounds");
  with_signature(cy);

  auto* enumerate = app.add_subcommand("enumerate", "all abelian Calabi-Yau signatures on P^n");
  enumerate->add_option("--dim,-n", o.dim)->required()->check(CLI::PositiveNumber);
  enumerate->add_flag("--linear-only", o.linear_only);
  enumerate->add_option("--jobs,-j", o.jobs, "worker threads (0: all cores)");

  auto* census = app.add_subcommand("census", "full census table, optionally audited against a golden file");
  census->add_option("--dim,-n", o.dim)->check(CLI::PositiveNumber);
  census->add_flag("--linear-only", o.linear_only);
  census->add_option("--golden", o.golden, "golden table (path, or name under $ORBICENSUS_GOLDEN_DIR)");
  census->add_option("--delta-convention", o.delta)->check(CLI::IsMember({"moduli", "linear-system"}));
  census->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv", "md"}));
  census->add_option("--jobs,-j", o.jobs, "worker threads (0: all cores)");

  auto* lift_cmd = app.add_subcommand("lift", "lift along a Kummer suborbifold");
  with_signature(lift_cmd);
  lift_cmd->add_option("--branch", o.branch, "1-based positions in the signature as written")
      ->required()
      ->delimiter(',');
  lift_cmd->add_option("--c", o.c, "Kummer exponent")->required();

  auto* enriques = app.add_subcommand("enriques", "index-2 quotients of the all-2 orbifold");
  enriques->add_option("--dim,-n", o.dim)->required()->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*group) return cmd_group(o, out);
    if (*euler) return cmd_euler(o, out);
    if (*cy) return cmd_cy(o, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*census) return cmd_census(o, out, err);
    if (*lift_cmd) return cmd_lift(o, out);
    if (*enriques) return cmd_enriques(o, out);
  } catch (const ParseError& e) {
    err << "orbicensus: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "orbicensus: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace orbi::cli
