// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Everything is pinned here - budgets, seeds, expected tables, and
// tolerances (all comparisons are exact).

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "eq/instances.hpp"
#include "eq/kleene.hpp"
#include "eq/lambda_trace.hpp"
#include "eq/laws.hpp"
#include "eq/parser.hpp"
#include "eq/regex.hpp"
#include "eq/star.hpp"
#include "eq/systems.hpp"
#include "eq/typing.hpp"
#include "gen.hpp"

using namespace eq;
using namespace eq::lang;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!pass) ++failures;
}

// ---------------------------------------------------------------------------

void criterion_1_law_suites() {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::uint64_t checked = 0;
  auto sweep = [&](const QuantalePtr& q, Budget b) {
    LawReport r = check_laws(*q, b);
    ok = ok && r.passed() && r.failure_count() == 0;
    for (const auto& l : r.laws) checked += l.checked;
  };
  sweep(atomicity_quantale(), Budget::exhaust());
  sweep(crit_quantale(), Budget::exhaust());
  sweep(product_quantale(atomicity_quantale(), crit_quantale()), Budget::exhaust());
  sweep(lockset_quantale({"a", "b"}), Budget::sampled(1000, 0));
  sweep(suenaga_quantale({"x", "y", "z"}), Budget::sampled(1000, 0));
  sweep(trace_quantale({"a", "b"}), Budget::sampled(1000, 0));
  sweep(count_quantale(), Budget::sampled(1000, 0));
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::ostringstream detail;
  detail << checked << " law instances, " << ms << " ms";
  report(1, "effect-quantale law suites, exhaustive and 1000-sample sweeps",
         ok && ms < 5000, detail.str());
}

void criterion_2_iteration_tables() {
  bool ok = true;

  auto atom = atomicity_quantale();
  StarTable at = derive_star_finite(*atom);
  auto expect_atom = [&](Atomicity x, Atomicity s) {
    auto hit = at.lookup(*atom, Elem::make(x));
    ok = ok && hit && *hit && atom->equal(**hit, Elem::make(s));
  };
  expect_atom(Atomicity::B, Atomicity::B);
  expect_atom(Atomicity::L, Atomicity::L);
  expect_atom(Atomicity::R, Atomicity::R);
  expect_atom(Atomicity::A, Atomicity::Top);
  expect_atom(Atomicity::Top, Atomicity::Top);

  auto crit = crit_quantale();
  StarTable ct = derive_star_finite(*crit);
  auto crit_entry = [&](CritEffect x) { return *ct.lookup(*crit, Elem::make(x)); };
  for (CritEffect fixed : {CritEffect::Eps, CritEffect::Critical, CritEffect::Entrant}) {
    auto e = crit_entry(fixed);
    ok = ok && e && crit->equal(*e, Elem::make(fixed));
  }
  ok = ok && !crit_entry(CritEffect::Locking).has_value();
  ok = ok && !crit_entry(CritEffect::Unlocking).has_value();

  auto exc = exceptions_quantale();
  for (const auto& [x, sx] : derive_star_finite(*exc).entries)
    ok = ok && sx && exc->equal(*sx, x);

  auto locks = lockset_quantale({"a", "b"});
  Rng rng(0);
  for (int i = 0; i < 1000; ++i) {
    Elem x = locks->sample(rng);
    const auto& le = x.get<LockEffect>();
    auto s = locks->star(x);
    if (le.pre == le.post)
      ok = ok && s && locks->equal(*s, x);
    else
      ok = ok && !s;
  }
  report(2, "derived iteration matches the hand-designed operators exactly", ok);
}

void criterion_3_precision() {
  bool ok = check_star_precision(*atomicity_quantale()) &&
            check_star_precision(*crit_quantale()) &&
            check_star_precision(*exceptions_quantale()) &&
            check_star_precision(*product_quantale(atomicity_quantale(), crit_quantale()));
  report(3, "free iteration is maximally precise on every finite instance", ok);
}

void criterion_4_reduction_law() {
  auto q = with_derived_star(atomicity_quantale());
  CtorTable empty;
  EffectContext ctx{q, &empty, nullptr};
  ParseEnv env{ctx, {}, {}};
  EffPtr e = parse_effect(env, "(R* ; B*)* ; A ; (B* ; L*)*");
  auto collapsed = collapse_closed(ctx, e);
  bool ok = collapsed && q->equal(*collapsed, Elem::make(Atomicity::A));
  report(4, "the mover reduction chain evaluates to exactly A",
         ok, collapsed ? q->show(*collapsed) : "undefined");
}

void criterion_5_lax_vs_distributive() {
  auto q = trace_quantale({"a", "b"});
  Elem a = *q->parse("a");
  Elem b = *q->parse("b");
  Elem join_star = *q->star(*q->join(a, b));
  Elem star_join = *q->join(*q->star(a), *q->star(b));
  bool ok = rx_matches(join_star.get<RegexPtr>(), {"a", "b"}) &&
            !rx_matches(star_join.get<RegexPtr>(), {"a", "b"});
  report(5, "\"ab\" separates (a|b)* from a*|b*", ok);
}

void criterion_6_typing_reproduction() {
  bool ok = true;
  std::string detail;

  auto la = lockatom_instantiation();
  auto ctx = la.types.eff_ctx();
  const char* atomic_read =
      "(lam (x lock) (lam (r ((ref (S x)) bool))"
      "  (seq (app acquire x)"
      "       (let (y (app (tyapp (app read x) bool) r))"
      "            (seq (app release x) y)))))";
  try {
    TermPtr t = parse_term(la.types.parse_env(), atomic_read);
    TypingResult r = infer(la.types, Context{}, la.delta, t);
    ok = ok && equiv(ctx, r.effect, eff_unit());  // ({}=>{} , B)
    ok = ok && r.type->k == Type::K::Pi && r.type->res->k == Type::K::Pi;
    auto latent = collapse_closed(ctx, r.type->res->eff);
    ok = ok && latent && ctx.q->show(*latent) == "({}=>{} , A)";
    detail = latent ? "latent " + ctx.q->show(*latent) : "latent undefined";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }

  auto atom = atomicity_instantiation();
  auto atom_ctx = atom.types.eff_ctx();
  const char* wrapper =
      "(lam (l lock) (tylam (g E) (lam (f (pi (z unit) {'g} unit))"
      "  (seq (app acquire l) (seq (app f unit) (app release l))))))";
  try {
    TermPtr t = parse_term(atom.types.parse_env(), wrapper);
    TypingResult r = infer(atom.types, Context{}, atom.delta, t);
    const TypePtr& arrow = r.type->res->res;
    EffPtr expected = eff_seq(eff_seq(eff_lit(Elem::make(Atomicity::R)), eff_var("g")),
                              eff_lit(Elem::make(Atomicity::L)));
    ok = ok && equiv(atom_ctx, arrow->eff, expected);
  } catch (const std::exception& e) {
    ok = false;
    detail += std::string("; wrapper: ") + e.what();
  }
  report(6, "atomic-read and wrapper typings come out exactly, up to equivalence", ok, detail);
}

void criterion_7_lockatom_safety() {
  auto inst = lockatom_instantiation();
  auto world = lockatom_world(inst, 2);
  Rng rng(7);
  int total = 0, passes = 0, audit_passes = 0, reached_end = 0;
  for (int i = 0; i < 120; ++i) {
    eqgen::LockAtomGen gen(rng, eqgen::LockWorld{2});
    TermPtr prog = gen.program(3);
    ++total;
    try {
      auto out = monitor_safety(inst, prog, 10000, false, world);
      if (out.verdict.pass) ++passes;
      if (out.record.status == RunStatus::Value || out.record.status == RunStatus::OutOfFuel)
        ++reached_end;
      auto audited = monitor_safety(inst, prog, 10000, true, world);
      if (audited.verdict.pass) ++audit_passes;
    } catch (const std::exception&) {
      // counts as a failure: generated programs must typecheck
    }
  }
  bool corpus_ok = total >= 100 && passes == total && audit_passes == total &&
                   reached_end == total;

  // injected fault: release's table entry claims effect I
  bool fault_caught = false;
  try {
    auto faulty = lockatom_instantiation(/*faulty_release=*/true);
    auto fworld = lockatom_world(faulty, 1);
    TermPtr t = parse_term(parse_env_for(faulty.types, fworld.second),
                           "(seq (app acquire lk0) (app release lk0))");
    auto out = monitor_safety(faulty, t, 100, false, fworld);
    fault_caught = !out.verdict.pass;
  } catch (const std::exception&) {
    fault_caught = false;
  }

  std::ostringstream detail;
  detail << total << " programs, " << passes << " monitor passes, " << audit_passes
         << " audit passes, fault " << (fault_caught ? "caught" : "missed");
  report(7, "generated lockatom corpus satisfies the safety theorem",
         corpus_ok && fault_caught, detail.str());
}

void criterion_8_interpreted_safety() {
  auto inst = history_instantiation({"a", "b", "c"});
  Rng rng(8);
  int total = 0, trace_ok = 0, interp_ok = 0;
  for (int i = 0; i < 60; ++i) {
    eqgen::HistoryGen gen(rng, {"a", "b", "c"});
    TermPtr prog = gen.program(3);
    ++total;
    try {
      TypingResult r = infer(inst.types, Context{}, inst.delta, prog);
      auto stat = collapse_closed(inst.types.eff_ctx(), r.effect);
      RunRecord rec = run(inst, prog, 10000, true);
      if (rec.status == RunStatus::Value && stat &&
          rx_matches(stat->get<RegexPtr>(), rec.final_state.get<HistoryState>().trace))
        ++trace_ok;
      if (check_interpretation(inst, rec).pass) ++interp_ok;
    } catch (const std::exception&) {
    }
  }
  std::ostringstream detail;
  detail << total << " programs, " << trace_ok << " in-language traces, " << interp_ok
         << " interpretation passes";
  report(8, "history runs land inside their static trace language",
         total >= 50 && trace_ok == total && interp_ok == total, detail.str());
}

void criterion_9_embedding() {
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  auto inst = history_instantiation(alphabet);
  auto ctx = inst.types.eff_ctx();
  std::vector<std::string> corpus = {
      "(ev a)",
      "(let (x (lam (y unit) (ev a))) (app x unit))",
      "(let (x (lam (y unit) (ev a))) (app (lam (z unit) (app x unit)) (app x unit)))",
      "(if true (ev a) (ev b))",
      "(app (lam (y bool) (if y (ev a) (ev b))) true)",
      "(let (f (lam (y unit) (ev a))) (app (lam (u unit) (app f unit)) (app f unit)))",
      "(app (lam (y unit) unit) unit)",
      "(let (c2 a) (ev a))",
      "(app (lam (f (fn unit {a} unit)) (app f unit)) (lam (u unit) (ev a)))",
      "(if false (if true (ev a) (ev b)) (ev c))",
      "(let (f (lam (u unit) (if true (ev a) (ev b)))) (app f unit))",
      "(app (app (lam (x bool) (lam (y bool) (if x (ev a) (ev b)))) true) false)",
  };
  int ok_count = 0;
  for (const auto& text : corpus) {
    try {
      LTTermPtr src = parse_lambda_trace(alphabet, text);
      LTJudgment source = infer_lambda_trace(alphabet, {}, src);  // independent interpreter
      TermPtr core = translate_lambda_trace(alphabet, src);
      TypingResult r = infer(inst.types, Context{}, inst.delta, core);
      auto eff = collapse_closed(ctx, r.effect);
      if (eff && rx_equivalent(eff->get<RegexPtr>(), source.history, alphabet) &&
          type_equiv(inst.types, r.type, lt_type_to_core(source.type)))
        ++ok_count;
    } catch (const std::exception&) {
    }
  }
  std::ostringstream detail;
  detail << ok_count << "/" << corpus.size() << " terms agree";
  report(9, "the history-effect embedding preserves types and effects",
         corpus.size() >= 10 && ok_count == static_cast<int>(corpus.size()), detail.str());
}

void criterion_10_kleene() {
  auto ka = regular_language_ka({"a", "b"});
  bool ka_ok = check_ka_laws(*ka, Budget::sampled(1000, 0)).passed();
  auto q = as_effect_quantale(ka);
  bool eq_ok = check_laws(*q, Budget::sampled(1000, 0)).passed() &&
               check_star_laws(*q, Budget::sampled(1000, 0)).passed();
  Rng rng(10);
  int unfold_ok = 0;
  for (int i = 0; i < 100; ++i) {
    Elem a = ka->sample(rng);
    Elem lhs = ka->plus(ka->one(), ka->times(a, ka->star(a)));
    if (ka->equal(lhs, ka->star(a))) ++unfold_ok;
  }
  std::ostringstream detail;
  detail << "unfolding " << unfold_ok << "/100";
  report(10, "the regular-language Kleene algebra works as an iterable effect quantale",
         ka_ok && eq_ok && unfold_ok == 100, detail.str());
}

void criterion_11_nontrivial() {
  auto crit = crit_instantiation();
  bool seq_rejected = false, star_rejected = false, join_accepted = false;
  try {
    infer(crit.types, Context{}, crit.delta,
          parse_term(crit.types.parse_env(), "(seq (app lock_it unit) (app lock_it unit))"));
  } catch (const TypeError&) {
    seq_rejected = true;
  }
  try {
    infer(crit.types, Context{}, crit.delta,
          parse_term(crit.types.parse_env(), "(while true (app lock_it unit))"));
  } catch (const TypeError&) {
    star_rejected = true;
  }
  try {
    infer(crit.types, Context{}, crit.delta,
          parse_term(crit.types.parse_env(),
                     "(tylam (g E) (lam (f (pi (z unit) {'g} unit))"
                     " (if true (app f unit) (app lock_it unit))))"));
    join_accepted = true;
  } catch (const TypeError&) {
  }

  // termination fuzz: depth-8 random effect expressions must decide
  auto ctx = crit.types.eff_ctx();
  Rng rng(11);
  auto elems = *crit_quantale()->enumerate();
  std::function<EffPtr(int)> random_eff = [&](int depth) -> EffPtr {
    if (depth == 0 || rng.below(10) < 3) {
      switch (rng.below(3)) {
        case 0: return eff_var(rng.below(2) ? "a" : "b");
        case 1: return eff_unit();
        default: return eff_lit(elems[rng.below(elems.size())]);
      }
    }
    switch (rng.below(5)) {
      case 0:
      case 1: return eff_seq(random_eff(depth - 1), random_eff(depth - 1));
      case 2:
      case 3: return eff_join(random_eff(depth - 1), random_eff(depth - 1));
      default: return eff_star(random_eff(depth - 1));
    }
  };
  int decided = 0;
  for (int i = 0; i < 500; ++i) {
    (void)nontrivial(ctx, random_eff(8));
    ++decided;
  }
  report(11, "trivially invalid effects are rejected and the decision terminates",
         seq_rejected && star_rejected && join_accepted && decided == 500);
}

}  // namespace

int main() {
  criterion_1_law_suites();
  criterion_2_iteration_tables();
  criterion_3_precision();
  criterion_4_reduction_law();
  criterion_5_lax_vs_distributive();
  criterion_6_typing_reproduction();
  criterion_7_lockatom_safety();
  criterion_8_interpreted_safety();
  criterion_9_embedding();
  criterion_10_kleene();
  criterion_11_nontrivial();
  if (failures) {
    std::cout << failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
