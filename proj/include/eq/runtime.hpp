#ifndef EQ_RUNTIME_HPP_
#define EQ_RUNTIME_HPP_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eq/typing.hpp"

#include "json.hpp"

namespace eq::lang {

// A fully-applied primitive redex: the primitive plus its arguments in
// application order (term arguments are values by the time this is built).
struct SpineArg {
  TermPtr term;  // exactly one of term/type is set
  TypePtr type;
};

struct PrimSpine {
  std::string prim;
  std::vector<SpineArg> args;
};

struct PrimOutcome {
  TermPtr result;
  Elem label;  // dynamic effect of this reduction
  Elem state;
  Sigma sigma;  // must extend the previous state environment
};

// A framework instantiation: the static parameters plus state, primitive
// semantics, state typing, and an optional effect interpretation.
struct Instantiation {
  std::string name;
  TypeSystem types;
  Sigma delta;
  Elem initial_state;
  // Nullopt means no reduction rule applies to this redex in this state.
  std::function<std::optional<PrimOutcome>(const PrimSpine&, const Elem& state, const Sigma&)>
      prim_sem;
  std::function<bool(const Elem& state, const Sigma&)> state_typed;
  // Decidable membership (pre, post) in the interpretation of a label.
  std::function<bool(const Elem& label, const Elem& pre, const Elem& post)> interp;

  bool has_interp() const { return static_cast<bool>(interp); }
};

struct StepRecord {
  std::string rule;
  Elem label;
  int pre_snapshot = -1;
  int post_snapshot = -1;
};

enum class RunStatus { Value, OutOfFuel, Stuck, PrimError, FoldUndefined };

const char* run_status_name(RunStatus s);

struct RunRecord {
  RunStatus status = RunStatus::Value;
  std::vector<StepRecord> steps;
  std::optional<Elem> accumulated;  // fold of labels; nullopt after a fold failure
  TermPtr final_term;
  Elem final_state;
  Sigma final_sigma;
  std::vector<Elem> snapshots;  // populated only in interpretation-check mode
  std::string error;
};

struct StepResult {
  enum class K { Stepped, IsValue, Stuck, PrimError };
  K k = K::IsValue;
  TermPtr term;
  Elem label;
  Elem state;
  Sigma sigma;
  std::string rule;
  std::string error;
};

// One leftmost reduction step.
StepResult step(const Instantiation& inst, const Elem& state, const Sigma& sigma,
                const TermPtr& term);

// Iterates step up to fuel, folding labels under seq.
RunRecord run(const Instantiation& inst, const TermPtr& program, unsigned fuel,
              bool keep_snapshots = false,
              std::optional<std::pair<Elem, Sigma>> initial = std::nullopt);

struct Verdict {
  bool pass = true;
  std::string reason;
  int step_index = -1;

  static Verdict ok() { return {}; }
  static Verdict violation(std::string why, int at = -1) { return {false, std::move(why), at}; }
};

struct MonitorOutcome {
  Verdict verdict;
  RunRecord record;
  Elem static_effect;
};

// Runs a well-typed program and checks the safety theorem's claim: on
// termination the accumulated dynamic effect is below the static effect; on
// fuel exhaustion the accumulated effect composed with the residual term's
// effect is. With audit on, the one-step preservation bound is re-checked
// after every step.
MonitorOutcome monitor_safety(const Instantiation& inst, const TermPtr& program, unsigned fuel,
                              bool audit = false,
                              std::optional<std::pair<Elem, Sigma>> initial = std::nullopt);

// Per-step and end-to-end membership in the instantiation's interpretation.
// Requires a record produced with keep_snapshots.
Verdict check_interpretation(const Instantiation& inst, const RunRecord& record);

nlohmann::ordered_json run_record_json(const Instantiation& inst, const RunRecord& record,
                                       const std::optional<Elem>& static_effect,
                                       const Verdict& safety,
                                       const std::optional<Verdict>& interpretation);

}  // namespace eq::lang

#endif  // EQ_RUNTIME_HPP_
