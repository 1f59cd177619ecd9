#include "eq/runtime.hpp"

#include <functional>
#include <map>

namespace eq::lang {
namespace {

// Decomposes an application chain rooted at a primitive; nullopt otherwise.
std::optional<PrimSpine> as_spine(const TermPtr& t) {
  std::vector<SpineArg> rev;
  TermPtr cur = t;
  while (true) {
    if (cur->k == Term::K::App) {
      rev.push_back(SpineArg{cur->arg, nullptr});
      cur = cur->fn;
    } else if (cur->k == Term::K::TyApp) {
      rev.push_back(SpineArg{nullptr, cur->targ});
      cur = cur->fn;
    } else {
      break;
    }
  }
  if (cur->k != Term::K::Prim || cur->arity == 0) return std::nullopt;
  PrimSpine spine;
  spine.prim = cur->name;
  spine.args.assign(rev.rbegin(), rev.rend());
  return spine;
}

bool spine_args_values(const PrimSpine& s, size_t upto) {
  for (size_t i = 0; i < upto && i < s.args.size(); ++i)
    if (s.args[i].term && !is_value(s.args[i].term)) return false;
  return true;
}

StepResult stepped(TermPtr term, Elem label, Elem state, Sigma sigma, std::string rule) {
  StepResult out;
  out.k = StepResult::K::Stepped;
  out.term = std::move(term);
  out.label = std::move(label);
  out.state = std::move(state);
  out.sigma = std::move(sigma);
  out.rule = std::move(rule);
  return out;
}

StepResult stuck(std::string why) {
  StepResult out;
  out.k = StepResult::K::Stuck;
  out.error = std::move(why);
  return out;
}

}  // namespace

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Value: return "value";
    case RunStatus::OutOfFuel: return "out-of-fuel";
    case RunStatus::Stuck: return "stuck";
    case RunStatus::PrimError: return "prim-error";
    case RunStatus::FoldUndefined: return "fold-undefined";
  }
  return "?";
}

StepResult step(const Instantiation& inst, const Elem& state, const Sigma& sigma,
                const TermPtr& term) {
  const auto& q = *inst.types.q;
  Elem identity = q.unit();
  if (is_value(term)) return StepResult{};

  // Primitive spines: reduce when saturated with values, otherwise evaluate
  // the leftmost non-value argument in place.
  if (auto spine = as_spine(term)) {
    int arity = inst.types.prim_arity.count(spine->prim)
                    ? inst.types.prim_arity.at(spine->prim)
                    : 0;
    bool saturated = static_cast<int>(spine->args.size()) == arity;
    if (saturated && spine_args_values(*spine, spine->args.size())) {
      auto outcome = inst.prim_sem(*spine, state, sigma);
      if (!outcome) {
        StepResult out;
        out.k = StepResult::K::PrimError;
        out.error = "no reduction rule for " + spine->prim + " in this state";
        return out;
      }
      if (!sigma_leq(inst.types, sigma, outcome->sigma)) {
        StepResult out;
        out.k = StepResult::K::PrimError;
        out.error = spine->prim + " shrank the state environment";
        return out;
      }
      return stepped(outcome->result, outcome->label, outcome->state, outcome->sigma,
                     "E-PrimApp");
    }
    // E-PrimArg: step the leftmost non-value argument, innermost first.
    std::function<std::optional<StepResult>(const TermPtr&)> step_arg =
        [&](const TermPtr& node) -> std::optional<StepResult> {
      if (node->k == Term::K::App) {
        if (auto deeper = step_arg(node->fn)) {
          if (deeper->k != StepResult::K::Stepped) return deeper;
          StepResult out = *deeper;
          out.term = tm_app(out.term, node->arg);
          return out;
        }
        if (!is_value(node->arg)) {
          StepResult inner = step(inst, state, sigma, node->arg);
          if (inner.k != StepResult::K::Stepped) return inner;
          inner.term = tm_app(node->fn, inner.term);
          return inner;
        }
        return std::nullopt;
      }
      if (node->k == Term::K::TyApp) {
        if (auto deeper = step_arg(node->fn)) {
          if (deeper->k != StepResult::K::Stepped) return deeper;
          StepResult out = *deeper;
          out.term = tm_tyapp(out.term, node->targ);
          return out;
        }
        return std::nullopt;
      }
      return std::nullopt;
    };
    if (auto r = step_arg(term)) return *r;
    return stuck("partial primitive application: " + spine->prim);
  }

  switch (term->k) {
    case Term::K::App: {
      if (!is_value(term->fn)) {
        StepResult inner = step(inst, state, sigma, term->fn);
        if (inner.k != StepResult::K::Stepped) return inner;
        return stepped(tm_app(inner.term, term->arg), inner.label, inner.state, inner.sigma,
                       inner.rule);
      }
      if (term->fn->k != Term::K::Lam) return stuck("applying a non-function value");
      if (!is_value(term->arg)) {
        StepResult inner = step(inst, state, sigma, term->arg);
        if (inner.k != StepResult::K::Stepped) return inner;
        return stepped(tm_app(term->fn, inner.term), inner.label, inner.state, inner.sigma,
                       inner.rule);
      }
      TermPtr body = subst_term_value(inst.types.eff_ctx(), term->fn->body, term->fn->binder,
                                      term->arg);
      return stepped(body, identity, state, sigma, "E-App");
    }
    case Term::K::TyApp: {
      if (!is_value(term->fn)) {
        StepResult inner = step(inst, state, sigma, term->fn);
        if (inner.k != StepResult::K::Stepped) return inner;
        return stepped(tm_tyapp(inner.term, term->targ), inner.label, inner.state, inner.sigma,
                       inner.rule);
      }
      if (term->fn->k != Term::K::TyLam) return stuck("type-applying a non-type-function");
      TermPtr body = subst_term_type(inst.types.eff_ctx(), term->fn->body, term->fn->binder,
                                     term->targ);
      return stepped(body, identity, state, sigma, "E-TyApp");
    }
    case Term::K::If: {
      if (!is_value(term->cond)) {
        StepResult inner = step(inst, state, sigma, term->cond);
        if (inner.k != StepResult::K::Stepped) return inner;
        return stepped(tm_if(inner.term, term->thn, term->els), inner.label, inner.state,
                       inner.sigma, inner.rule);
      }
      if (term->cond->k != Term::K::BoolLit) return stuck("if condition is not a boolean");
      return stepped(term->cond->bval ? term->thn : term->els, identity, state, sigma,
                     term->cond->bval ? "E-IfTrue" : "E-IfFalse");
    }
    case Term::K::While:
      // while c b -> if c (b; while c b) ()
      return stepped(tm_if(term->cond, tm_seq(term->thn, term), tm_unit()), identity, state,
                     sigma, "E-While");
    case Term::K::Seq: {
      if (!is_value(term->first)) {
        StepResult inner = step(inst, state, sigma, term->first);
        if (inner.k != StepResult::K::Stepped) return inner;
        return stepped(tm_seq(inner.term, term->second), inner.label, inner.state, inner.sigma,
                       inner.rule);
      }
      return stepped(term->second, identity, state, sigma, "E-Seq");
    }
    case Term::K::Let: {
      if (!is_value(term->first)) {
        StepResult inner = step(inst, state, sigma, term->first);
        if (inner.k != StepResult::K::Stepped) return inner;
        return stepped(tm_let(term->binder, inner.term, term->second), inner.label, inner.state,
                       inner.sigma, inner.rule);
      }
      TermPtr body = subst_term_value(inst.types.eff_ctx(), term->second, term->binder,
                                      term->first);
      return stepped(body, identity, state, sigma, "E-Let");
    }
    default: return stuck("no rule applies");
  }
}

RunRecord run(const Instantiation& inst, const TermPtr& program, unsigned fuel,
              bool keep_snapshots, std::optional<std::pair<Elem, Sigma>> initial) {
  const auto& q = *inst.types.q;
  RunRecord rec;
  Elem state = initial ? initial->first : inst.initial_state;
  Sigma sigma = initial ? initial->second : inst.delta;
  TermPtr cur = program;
  rec.accumulated = q.unit();

  auto snapshot = [&](const Elem& s) -> int {
    if (!keep_snapshots) return -1;
    rec.snapshots.push_back(s);
    return static_cast<int>(rec.snapshots.size()) - 1;
  };
  int last_snap = snapshot(state);

  for (unsigned i = 0; i < fuel; ++i) {
    StepResult r = step(inst, state, sigma, cur);
    if (r.k == StepResult::K::IsValue) {
      rec.status = RunStatus::Value;
      break;
    }
    if (r.k == StepResult::K::Stuck) {
      rec.status = RunStatus::Stuck;
      rec.error = r.error;
      break;
    }
    if (r.k == StepResult::K::PrimError) {
      rec.status = RunStatus::PrimError;
      rec.error = r.error;
      break;
    }
    cur = r.term;
    state = r.state;
    sigma = r.sigma;
    int snap = snapshot(state);
    rec.steps.push_back(StepRecord{r.rule, r.label, last_snap, snap});
    last_snap = snap;
    if (rec.accumulated) {
      rec.accumulated = q.seq(*rec.accumulated, r.label);
      if (!rec.accumulated) rec.status = RunStatus::FoldUndefined;
    }
    if (rec.status == RunStatus::FoldUndefined) break;
  }
  if (is_value(cur))
    rec.status = RunStatus::Value;
  else if (rec.status == RunStatus::Value)
    rec.status = RunStatus::OutOfFuel;
  rec.final_term = cur;
  rec.final_state = state;
  rec.final_sigma = sigma;
  return rec;
}

namespace {

std::optional<Elem> static_effect_of(const Instantiation& inst, const Sigma& sigma,
                                     const TermPtr& term) {
  TypingResult tr = infer(inst.types, Context{}, sigma, term);
  return collapse_closed(inst.types.eff_ctx(), tr.effect);
}

}  // namespace

MonitorOutcome monitor_safety(const Instantiation& inst, const TermPtr& program, unsigned fuel,
                              bool audit, std::optional<std::pair<Elem, Sigma>> initial) {
  const auto& q = *inst.types.q;
  Sigma sigma0 = initial ? initial->second : inst.delta;
  Elem state0 = initial ? initial->first : inst.initial_state;

  auto static_eff = static_effect_of(inst, sigma0, program);
  if (!static_eff) throw TypeError("static effect of the program does not collapse");

  MonitorOutcome out;
  out.static_effect = *static_eff;

  if (!inst.state_typed(state0, sigma0)) {
    out.verdict = Verdict::violation("initial state is ill-typed");
    return out;
  }

  if (!audit) {
    out.record = run(inst, program, fuel, inst.has_interp(), {{state0, sigma0}});
  } else {
    // Step manually, re-inferring the residual term each time and checking
    // the one-step bound: label |> residual-static <= previous-static.
    // Loops revisit the same residual terms, so inference results are cached
    // per (term, state environment size).
    std::map<std::string, std::optional<Elem>> residual_cache;
    auto residual_static = [&](const Sigma& sig, const TermPtr& term) {
      std::string key = std::to_string(sig.size()) + "|" + show_term(term);
      auto it = residual_cache.find(key);
      if (it != residual_cache.end()) return it->second;
      auto result = static_effect_of(inst, sig, term);
      residual_cache.emplace(std::move(key), result);
      return result;
    };
    RunRecord rec;
    rec.accumulated = q.unit();
    Elem state = state0;
    Sigma sigma = sigma0;
    TermPtr cur = program;
    Elem prev_static = *static_eff;
    for (unsigned i = 0; i < fuel; ++i) {
      StepResult r = step(inst, state, sigma, cur);
      if (r.k == StepResult::K::IsValue) break;
      if (r.k == StepResult::K::Stuck || r.k == StepResult::K::PrimError) {
        rec.status = r.k == StepResult::K::Stuck ? RunStatus::Stuck : RunStatus::PrimError;
        rec.error = r.error;
        break;
      }
      cur = r.term;
      state = r.state;
      sigma = r.sigma;
      rec.steps.push_back(StepRecord{r.rule, r.label, -1, -1});
      if (rec.accumulated) rec.accumulated = q.seq(*rec.accumulated, r.label);
      if (!rec.accumulated) {
        rec.status = RunStatus::FoldUndefined;
        break;
      }
      auto resid = residual_static(sigma, cur);
      if (!resid) {
        out.verdict =
            Verdict::violation("residual term lost typability", static_cast<int>(i));
        rec.final_term = cur;
        rec.final_state = state;
        rec.final_sigma = sigma;
        out.record = std::move(rec);
        return out;
      }
      auto bound = q.seq(r.label, *resid);
      if (!bound || !leq(q, *bound, prev_static)) {
        out.verdict = Verdict::violation(
            "one-step preservation bound failed: " +
                (bound ? q.show(*bound) : std::string("undefined")) + " not below " +
                q.show(prev_static),
            static_cast<int>(i));
        rec.final_term = cur;
        rec.final_state = state;
        rec.final_sigma = sigma;
        out.record = std::move(rec);
        return out;
      }
      prev_static = *resid;
    }
    if (is_value(cur))
      rec.status = RunStatus::Value;
    else if (rec.status == RunStatus::Value)
      rec.status = RunStatus::OutOfFuel;
    rec.final_term = cur;
    rec.final_state = state;
    rec.final_sigma = sigma;
    out.record = std::move(rec);
  }

  const RunRecord& rec = out.record;
  switch (rec.status) {
    case RunStatus::Value: {
      if (!rec.accumulated) {
        out.verdict = Verdict::violation("effect fold became undefined");
        break;
      }
      if (!leq(q, *rec.accumulated, *static_eff)) {
        out.verdict = Verdict::violation(
            "dynamic effect " + q.show(*rec.accumulated) + " not below static " +
            q.show(*static_eff),
            static_cast<int>(rec.steps.size()));
      }
      break;
    }
    case RunStatus::OutOfFuel: {
      if (!rec.accumulated) {
        out.verdict = Verdict::violation("effect fold became undefined");
        break;
      }
      auto resid = static_effect_of(inst, rec.final_sigma, rec.final_term);
      if (!resid) {
        out.verdict = Verdict::violation("residual term lost typability");
        break;
      }
      auto total = q.seq(*rec.accumulated, *resid);
      if (!total || !leq(q, *total, *static_eff)) {
        out.verdict = Verdict::violation("prefix consistency failed at fuel exhaustion");
      }
      break;
    }
    case RunStatus::Stuck:
      out.verdict = Verdict::violation("stuck: " + rec.error, static_cast<int>(rec.steps.size()));
      break;
    case RunStatus::PrimError:
      out.verdict = Verdict::violation("primitive progress violated: " + rec.error,
                                       static_cast<int>(rec.steps.size()));
      break;
    case RunStatus::FoldUndefined:
      out.verdict = Verdict::violation("effect fold became undefined",
                                       static_cast<int>(rec.steps.size()));
      break;
  }
  return out;
}

Verdict check_interpretation(const Instantiation& inst, const RunRecord& record) {
  if (!inst.has_interp()) return Verdict::violation("instantiation supplies no interpretation");
  for (size_t i = 0; i < record.steps.size(); ++i) {
    const auto& s = record.steps[i];
    if (s.pre_snapshot < 0 || s.post_snapshot < 0)
      return Verdict::violation("run was not recorded with snapshots");
    const Elem& pre = record.snapshots[static_cast<size_t>(s.pre_snapshot)];
    const Elem& post = record.snapshots[static_cast<size_t>(s.post_snapshot)];
    if (!inst.interp(s.label, pre, post))
      return Verdict::violation("step outside its label's interpretation",
                                static_cast<int>(i));
  }
  if (record.accumulated && !record.snapshots.empty()) {
    if (!inst.interp(*record.accumulated, record.snapshots.front(), record.snapshots.back()))
      return Verdict::violation("end-to-end pair outside the accumulated interpretation");
  }
  return Verdict::ok();
}

nlohmann::ordered_json run_record_json(const Instantiation& inst, const RunRecord& record,
                                       const std::optional<Elem>& static_effect,
                                       const Verdict& safety,
                                       const std::optional<Verdict>& interpretation) {
  const auto& q = *inst.types.q;
  nlohmann::ordered_json j;
  j["status"] = run_status_name(record.status);
  j["steps"] = record.steps.size();
  j["dynamic_effect"] = record.accumulated ? q.show(*record.accumulated) : "undefined";
  j["static_effect"] = static_effect ? q.show(*static_effect) : "n/a";
  j["safety"] =
      safety.pass ? "pass"
                  : (safety.step_index >= 0 ? "violation@" + std::to_string(safety.step_index)
                                            : "violation");
  if (interpretation)
    j["interpretation"] = interpretation->pass
                              ? "pass"
                              : (interpretation->step_index >= 0
                                     ? "violation@" + std::to_string(interpretation->step_index)
                                     : "violation");
  else
    j["interpretation"] = "n/a";
  return j;
}

}  // namespace eq::lang
