// eqc: batch front-end for the effect quantale toolkit. Subcommands: laws,
// star, check, run, translate. Exit codes: 0 success, 1 usage/parse errors,
// 2 law or type failures, 3 safety violations.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "eq/lambda_trace.hpp"
#include "eq/laws.hpp"
#include "eq/registry.hpp"
#include "eq/star.hpp"
#include "eq/regex.hpp"
#include "eq/systems.hpp"

namespace {

using namespace eq;
using namespace eq::lang;

std::vector<std::string> split_alphabet(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t env_seed() {
  if (const char* s = std::getenv("EQ_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

struct CommonOpts {
  std::string system;
  std::string alphabet_csv;
  bool json = false;
  std::uint64_t seed = env_seed();
};

SystemHandle need_system(const CommonOpts& o) {
  auto h = lookup_system(o.system, split_alphabet(o.alphabet_csv));
  if (!h) throw CLI::ValidationError("--system", "unknown system: " + o.system);
  return *h;
}

int cmd_laws(const CommonOpts& o, bool exhaustive, std::uint64_t samples) {
  SystemHandle h = need_system(o);
  Budget budget = exhaustive ? Budget::exhaust() : Budget::sampled(samples, o.seed);
  LawReport report = check_laws(*h.quantale, budget);
  if (h.quantale->has_star()) report.merge(check_star_laws(*h.quantale, budget));
  if (h.ka) report.merge(check_ka_laws(*h.ka, budget));
  if (o.json) {
    auto j = report.to_json();
    // Finite systems include their derived iteration table in the same
    // document.
    if (h.quantale->enumerate()) {
      StarTable table = derive_star_finite(*h.quantale);
      auto sj = table.to_json(*h.quantale);
      j["star"] = sj["star"];
      j["laxly_iterable"] = sj["laxly_iterable"];
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& l : report.laws) {
      std::cout << (l.failures.empty() ? "  ok   " : "  FAIL ") << l.law << "  (" << l.checked
                << " checked";
      if (!l.failures.empty()) std::cout << ", " << l.failures.size() << " failures";
      std::cout << ")\n";
      for (const auto& f : l.failures) {
        std::cout << "       witnesses:";
        for (const auto& w : f.witness_text) std::cout << " " << w;
        std::cout << "\n       observed " << f.observed << " expected " << f.expected << "\n";
      }
    }
    std::cout << (report.passed() ? "all laws hold" : "law failures found") << "\n";
  }
  return report.passed() ? 0 : 2;
}

int cmd_star(const CommonOpts& o) {
  SystemHandle h = need_system(o);
  const auto& q = *h.quantale;
  if (q.enumerate()) {
    StarTable table = derive_star_finite(q);
    if (o.json) {
      std::cout << table.to_json(q).dump(2) << "\n";
    } else {
      for (const auto& [x, sx] : table.entries)
        std::cout << "  " << q.show(x) << "* = " << (sx ? q.show(*sx) : "undefined") << "\n";
      std::cout << (table.laxly_iterable ? "laxly iterable" : "NOT laxly iterable") << "\n";
    }
    return 0;
  }
  if (!q.has_star()) {
    std::cerr << "system " << o.system << " is not enumerable and provides no iteration\n";
    return 1;
  }
  // Infinite carrier with an instance star: sample its domain of definition.
  Rng rng(o.seed);
  nlohmann::ordered_json star = nlohmann::ordered_json::object();
  for (int i = 0; i < 12; ++i) {
    Elem x = q.has_sampler() ? q.sample(rng) : q.unit();
    auto sx = q.star(x);
    star[q.show(x)] = sx ? nlohmann::ordered_json(q.show(*sx)) : nlohmann::ordered_json(nullptr);
  }
  if (o.json) {
    std::cout << nlohmann::ordered_json{{"system", q.name()}, {"star", star},
                                        {"sampled", true}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "sampled iteration entries for " << q.name() << ":\n";
    for (auto& [k, v] : star.items())
      std::cout << "  " << k << "* = " << (v.is_null() ? "undefined" : v.get<std::string>())
                << "\n";
  }
  return 0;
}

TermPtr load_program(const Instantiation& inst, const Sigma& sigma, const std::string& path,
                     const std::string& expr) {
  std::string text = expr.empty() ? slurp(path) : expr;
  return parse_term(parse_env_for(inst.types, sigma), text);
}

int cmd_check(const CommonOpts& o, const std::string& path, const std::string& expr, int world) {
  SystemHandle h = need_system(o);
  if (!h.inst) throw CLI::ValidationError("--system", o.system + " has no term language");
  const Instantiation& inst = *h.inst;
  auto initial = inst.name.substr(0, 8) == "lockatom" ? lockatom_world(inst, world)
                                                      : std::make_pair(inst.initial_state,
                                                                       inst.delta);
  TermPtr t = load_program(inst, initial.second, path, expr);
  TypingResult r = infer(inst.types, Context{}, initial.second, t);
  std::string eff = show_eff_ctx(inst.types.eff_ctx(), r.effect);
  if (o.json) {
    nlohmann::ordered_json j;
    j["system"] = inst.name;
    j["type"] = show_type_ctx(inst.types, r.type);
    j["effect"] = eff;
    j["rules"] = r.trace;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "type:   " << show_type_ctx(inst.types, r.type) << "\n";
    std::cout << "effect: " << eff << "\n";
  }
  return 0;
}

int cmd_run(const CommonOpts& o, const std::string& path, const std::string& expr, int world,
            unsigned fuel, bool audit, bool skip_typecheck) {
  SystemHandle h = need_system(o);
  if (!h.inst) throw CLI::ValidationError("--system", o.system + " has no term language");
  const Instantiation& inst = *h.inst;
  auto initial = inst.name.substr(0, 8) == "lockatom" ? lockatom_world(inst, world)
                                                      : std::make_pair(inst.initial_state,
                                                                       inst.delta);
  TermPtr t = load_program(inst, initial.second, path, expr);

  if (skip_typecheck) {
    RunRecord rec = run(inst, t, fuel, inst.has_interp(), initial);
    bool dynamic_ok = rec.status == RunStatus::Value || rec.status == RunStatus::OutOfFuel;
    Verdict v = dynamic_ok ? Verdict::ok()
                           : Verdict::violation(rec.error, static_cast<int>(rec.steps.size()));
    std::optional<Verdict> iv;
    if (inst.has_interp()) iv = check_interpretation(inst, rec);
    std::cout << run_record_json(inst, rec, std::nullopt, v, iv).dump(2) << "\n";
    return v.pass ? 0 : 3;
  }

  MonitorOutcome out = monitor_safety(inst, t, fuel, audit, initial);
  std::optional<Verdict> iv;
  if (inst.has_interp() && !audit) {
    // the audit path does not retain snapshots; re-run for interpretation
    iv = check_interpretation(inst, out.record);
  } else if (inst.has_interp()) {
    RunRecord rec = run(inst, t, fuel, true, initial);
    iv = check_interpretation(inst, rec);
  }
  std::cout << run_record_json(inst, out.record, out.static_effect, out.verdict, iv).dump(2)
            << "\n";
  if (!out.verdict.pass || (iv && !iv->pass)) return 3;
  return 0;
}

int cmd_translate(const CommonOpts& o, const std::string& path, const std::string& expr) {
  auto alphabet = split_alphabet(o.alphabet_csv.empty() ? "a,b,c" : o.alphabet_csv);
  std::string text = expr.empty() ? slurp(path) : expr;
  LTTermPtr src = parse_lambda_trace(alphabet, text);
  TermPtr core = translate_lambda_trace(alphabet, src);
  auto show_lit = [](const eq::Elem& e) { return rx_show(e.get<RegexPtr>()); };
  if (o.json) {
    LTJudgment j = infer_lambda_trace(alphabet, {}, src);
    nlohmann::ordered_json out;
    out["core"] = show_term(core, show_lit);
    out["source_history"] = rx_show(j.history);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << show_term(core, show_lit) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"effect quantale toolkit"};
  app.require_subcommand(1);

  CommonOpts common;
  unsigned fuel = 10000;
  bool exhaustive = false, audit = false, json = false, skip_typecheck = false;
  std::uint64_t samples = 1000;
  std::string path, expr;
  int world = 2;

  auto add_common = [&](CLI::App* sub, bool needs_system) {
    if (needs_system) sub->add_option("--system", common.system, "effect system")->required();
    sub->add_option("--alphabet", common.alphabet_csv, "comma-separated event alphabet");
    sub->add_flag("--json", json, "machine-readable output");
    sub->add_option("--seed", common.seed, "sample seed (overrides EQ_SEED)");
  };

  CLI::App* laws = app.add_subcommand("laws", "check the effect quantale laws");
  add_common(laws, true);
  laws->add_flag("--exhaustive", exhaustive, "sweep the whole finite carrier");
  laws->add_option("--samples", samples, "sampled triples per law");

  CLI::App* star = app.add_subcommand("star", "derive or display iteration");
  add_common(star, true);

  CLI::App* check = app.add_subcommand("check", "typecheck a program");
  add_common(check, true);
  check->add_option("file", path, "program file");
  check->add_option("--expr", expr, "inline program text");
  check->add_option("--world", world, "pre-allocated locks for lockatom");

  CLI::App* runc = app.add_subcommand("run", "typecheck, run, and monitor a program");
  add_common(runc, true);
  runc->add_option("file", path, "program file");
  runc->add_option("--expr", expr, "inline program text");
  runc->add_option("--fuel", fuel, "maximum reduction steps");
  runc->add_option("--world", world, "pre-allocated locks for lockatom");
  runc->add_flag("--audit", audit, "re-check the preservation bound at every step");
  runc->add_flag("--unsafe-skip-typecheck", skip_typecheck,
                 "run without static checking (demonstration escape hatch)");

  CLI::App* trans = app.add_subcommand("translate", "translate a history-effect source term");
  add_common(trans, false);
  trans->add_option("file", path, "source file");
  trans->add_option("--expr", expr, "inline source text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 1;
  }

  common.json = json;
  try {
    if (laws->parsed()) return cmd_laws(common, exhaustive, samples);
    if (star->parsed()) return cmd_star(common);
    if (check->parsed()) return cmd_check(common, path, expr, world);
    if (runc->parsed()) return cmd_run(common, path, expr, world, fuel, audit, skip_typecheck);
    if (trans->parsed()) return cmd_translate(common, path, expr);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const eq::lang::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const eq::lang::TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
