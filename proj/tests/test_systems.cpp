#include "doctest.h"
#include "eq/lambda_trace.hpp"
#include "eq/parser.hpp"
#include "eq/regex.hpp"
#include "eq/systems.hpp"
#include "gen.hpp"

using namespace eq;
using namespace eq::lang;

namespace {

const std::vector<std::string> kABC = {"a", "b", "c"};

// Fixed source corpus for the embedding lemma.
std::vector<std::string> lt_corpus() {
  return {
      "(ev a)",
      "(let (x (lam (y unit) (ev a))) (app x unit))",
      "(let (x (lam (y unit) (ev a))) (app (lam (z unit) (app x unit)) (app x unit)))",
      "(if true (ev a) (ev b))",
      "(app (lam (y bool) (if y (ev a) (ev b))) true)",
      "(let (f (lam (y unit) (ev a))) (app (lam (u unit) (app f unit)) (app f unit)))",
      "(app (lam (y unit) unit) unit)",
      "(let (c a) (ev a))",
      "(app (lam (f (fn unit {a} unit)) (app f unit)) (lam (u unit) (ev a)))",
      "(if false (if true (ev a) (ev b)) (ev c))",
      "(let (f (lam (u unit) (if true (ev a) (ev b)))) (app f unit))",
      "(app (app (lam (x bool) (lam (y bool) (if x (ev a) (ev b)))) true) false)",
  };
}

}  // namespace

TEST_CASE("lockatom primitive types carry the intended lock and mover effects") {
  auto inst = lockatom_instantiation();
  auto ctx = inst.types.eff_ctx();
  // delta(acquire) = Pi x:lock -{({}=>{x} , R)}-> unit
  const TypePtr& acq = inst.delta.at("acquire");
  REQUIRE(acq->k == Type::K::Pi);
  auto latent = normalize(ctx, acq->eff);
  REQUIRE(latent->lit);
  CHECK(ctx.q->show(*latent->lit) == "({}=>{x} , R)");
  CHECK(acq->res->k == Type::K::Unit);

  // read's final latent effect guards with a both-mover
  const TypePtr& read = inst.delta.at("read");
  const TypePtr& read_last = read->res->res;
  auto g = normalize(ctx, read_last->eff);
  REQUIRE(g->lit);
  CHECK(ctx.q->show(*g->lit) == "({x}=>{x} , B)");
}

TEST_CASE("new_lock extends the state environment with a fresh lock") {
  auto inst = lockatom_instantiation();
  RunRecord rec = run(inst, parse_term(inst.types.parse_env(), "(app new_lock unit)"), 10);
  CHECK(rec.status == RunStatus::Value);
  REQUIRE(rec.final_term->k == Term::K::Prim);
  std::string fresh = rec.final_term->name;
  CHECK(rec.final_sigma.count(fresh) == 1);
  CHECK(rec.final_state.get<LockAtomState>().locks.count(fresh) == 1);
  CHECK(sigma_leq(inst.types, inst.delta, rec.final_sigma));
  CHECK(inst.state_typed(rec.final_state, rec.final_sigma));
}

TEST_CASE("alloc produces locations typed at their declared content") {
  auto inst = lockatom_instantiation();
  auto world = lockatom_world(inst, 1);
  TermPtr t = parse_term(parse_env_for(inst.types, world.second),
                         "(app (tyapp (app alloc lk0) bool) true)");
  RunRecord rec = run(inst, t, 10, false, world);
  CHECK(rec.status == RunStatus::Value);
  CHECK(inst.state_typed(rec.final_state, rec.final_sigma));
}

TEST_CASE("double acquisition is a dynamic no-rule case") {
  auto inst = lockatom_instantiation();
  auto world = lockatom_world(inst, 1);
  TermPtr t = parse_term(parse_env_for(inst.types, world.second),
                         "(seq (app acquire lk0) (app acquire lk0))");
  // statically fine: the claim count just reaches two
  auto r = infer(inst.types, Context{}, world.second, t);
  auto staticeff = collapse_closed(inst.types.eff_ctx(), r.effect);
  REQUIRE(staticeff);
  CHECK(inst.types.q->show(*staticeff) == "({}=>{lk0,lk0} , R)");
  // dynamically the boolean lock map has no rule for the second acquire
  RunRecord rec = run(inst, t, 10, false, world);
  CHECK(rec.status == RunStatus::PrimError);
}

TEST_CASE("an ill-typed branch mix is caught by the monitor under the escape hatch") {
  auto inst = lockatom_instantiation();
  auto world = lockatom_world(inst, 1);
  // Joining an acquire and a release is trivially invalid, so this does not
  // typecheck; running it anyway demonstrates the dynamic violation.
  TermPtr t = parse_term(parse_env_for(inst.types, world.second),
                         "(if false (app acquire lk0) (app release lk0))");
  CHECK_THROWS_AS(infer(inst.types, Context{}, world.second, t), TypeError);
  RunRecord rec = run(inst, t, 10, false, world);
  CHECK(rec.status == RunStatus::PrimError);  // release of an unheld lock
}

TEST_CASE("primitive preservation holds on executed steps") {
  auto inst = lockatom_instantiation();
  auto world = lockatom_world(inst, 2);
  Rng rng(404);
  for (int i = 0; i < 15; ++i) {
    eqgen::LockAtomGen gen(rng, eqgen::LockWorld{2});
    TermPtr prog = gen.program(3);
    // replay the run, checking each primitive step against its static typing
    Elem state = world.first;
    Sigma sigma = world.second;
    TermPtr cur = prog;
    for (int s = 0; s < 2000; ++s) {
      if (is_value(cur)) break;
      // type the whole residual term, then step
      auto before = infer(inst.types, Context{}, sigma, cur);
      auto stat = collapse_closed(inst.types.eff_ctx(), before.effect);
      REQUIRE(stat);
      StepResult r = step(inst, state, sigma, cur);
      REQUIRE(r.k == StepResult::K::Stepped);
      if (r.rule == "E-PrimApp") {
        // emitted effect below the static effect of the redex prefix
        auto emitted_then_rest = inst.types.q->seq(r.label, *stat);
        (void)emitted_then_rest;
        CHECK(sigma_leq(inst.types, sigma, r.sigma));
      }
      cur = r.term;
      state = r.state;
      sigma = r.sigma;
      CHECK(inst.state_typed(state, sigma));
    }
  }
}

TEST_CASE("balanced static lock effects imply balanced final states") {
  auto inst = lockatom_instantiation();
  auto world = lockatom_world(inst, 2);
  Rng rng(55);
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    eqgen::LockAtomGen gen(rng, eqgen::LockWorld{2});
    TermPtr prog = gen.program(2);
    auto out = monitor_safety(inst, prog, 10000, false, world);
    REQUIRE(out.verdict.pass);
    if (out.record.status != RunStatus::Value) continue;
    const auto& p = out.static_effect.get<ProductElem>();
    const auto& le = p.left.get<LockEffect>();
    if (le.pre.empty() && le.post.empty()) {
      ++checked;
      for (const auto& [l, held] : out.record.final_state.get<LockAtomState>().locks)
        CHECK_FALSE(held);
    }
  }
  CHECK(checked > 5);
}

TEST_CASE("history: final traces live inside the static language") {
  auto inst = history_instantiation(kABC);
  Rng rng(812);
  int terminated = 0;
  for (int i = 0; i < 30; ++i) {
    eqgen::HistoryGen gen(rng, kABC);
    TermPtr prog = gen.program(3);
    auto r = infer(inst.types, Context{}, inst.delta, prog);
    auto stat = collapse_closed(inst.types.eff_ctx(), r.effect);
    REQUIRE(stat);
    RunRecord rec = run(inst, prog, 10000, true);
    REQUIRE(rec.status == RunStatus::Value);
    ++terminated;
    CHECK(rx_matches(stat->get<RegexPtr>(), rec.final_state.get<HistoryState>().trace));
    CHECK(check_interpretation(inst, rec).pass);
  }
  CHECK(terminated == 30);
}

TEST_CASE("the source translation is structural") {
  auto t1 = parse_lambda_trace(kABC, "(ev c)");
  CHECK(show_term(translate_lambda_trace(kABC, t1)) == "(app ev c)");
  auto t2 = parse_lambda_trace(kABC, "(lam (x unit) x)");
  CHECK(show_term(translate_lambda_trace(kABC, t2)) == "(lam (x unit) x)");
  auto t3 = parse_lambda_trace(kABC, "(let (x (lam (y unit) (ev a))) (app x unit))");
  // let becomes an application of a lambda
  TermPtr core = translate_lambda_trace(kABC, t3);
  CHECK(core->k == Term::K::App);
  CHECK(core->fn->k == Term::K::Lam);

  // terms outside the fragment are rejected
  CHECK_THROWS_AS(parse_lambda_trace(kABC, "(ev (app f unit))"), ParseError);
  CHECK_THROWS_AS(parse_lambda_trace(kABC, "(mu s (ev a))"), ParseError);
}

TEST_CASE("embedding: core inference matches the source judgment") {
  auto inst = history_instantiation(kABC);
  auto ctx = inst.types.eff_ctx();
  for (const auto& text : lt_corpus()) {
    LTTermPtr src = parse_lambda_trace(kABC, text);
    LTJudgment source = infer_lambda_trace(kABC, {}, src);
    TermPtr core = translate_lambda_trace(kABC, src);
    auto r = infer(inst.types, Context{}, inst.delta, core);
    auto eff = collapse_closed(ctx, r.effect);
    REQUIRE(eff);
    CHECK(rx_equivalent(eff->get<RegexPtr>(), source.history, kABC));
    CHECK(type_equiv(inst.types, r.type, lt_type_to_core(source.type)));
  }
  // the double-use thunk from the motivating example denotes {aa}
  LTTermPtr twice = parse_lambda_trace(
      kABC, "(let (x (lam (y unit) (ev a))) (app (lam (z unit) (app x unit)) (app x unit)))");
  LTJudgment j = infer_lambda_trace(kABC, {}, twice);
  CHECK(rx_equivalent(j.history, *rx_parse("aa", kABC), kABC));
}
