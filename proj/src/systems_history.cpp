#include <algorithm>

#include "eq/regex.hpp"
#include "eq/systems.hpp"

namespace eq::lang {
namespace {

bool is_prefix(const std::vector<std::string>& pre, const std::vector<std::string>& post) {
  if (pre.size() > post.size()) return false;
  for (size_t i = 0; i < pre.size(); ++i)
    if (pre[i] != post[i]) return false;
  return true;
}

}  // namespace

Instantiation history_instantiation(std::vector<std::string> alphabet) {
  Instantiation inst;
  inst.name = "history";
  inst.types.q = trace_quantale(alphabet);
  inst.types.idx = trace_indexed();
  inst.types.ctors["Ev"] = EffectCtor{
      1, [](const std::vector<std::string>& xs) -> std::optional<Elem> {
        return Elem::make(rx_sym(xs[0]));
      }};
  inst.types.tycon_kinds = {{"event", Kind::star()}};
  inst.types.prim_arity["ev"] = 1;
  for (const auto& c : alphabet) inst.types.prim_arity[c] = 0;

  inst.delta["ev"] = ty_pi("x", ty_con("event"), eff_ground("Ev", {tm_var("x")}), ty_unit());
  for (const auto& c : alphabet) inst.delta[c] = ty_con("event");

  inst.initial_state = Elem::make(HistoryState{});
  inst.prim_sem = [alphabet](const PrimSpine& spine, const Elem& state,
                             const Sigma& sigma) -> std::optional<PrimOutcome> {
    if (spine.prim != "ev" || !spine.args[0].term) return std::nullopt;
    auto c = value_index_name(spine.args[0].term);
    if (!c) return std::nullopt;
    if (std::find(alphabet.begin(), alphabet.end(), *c) == alphabet.end()) return std::nullopt;
    HistoryState s = state.get<HistoryState>();
    s.trace.push_back(*c);
    return PrimOutcome{tm_unit(), Elem::make(rx_sym(*c)), Elem::make(std::move(s)), sigma};
  };
  inst.state_typed = [alphabet](const Elem& state, const Sigma&) {
    for (const auto& c : state.get<HistoryState>().trace)
      if (std::find(alphabet.begin(), alphabet.end(), c) == alphabet.end()) return false;
    return true;
  };
  // A history effect relates traces that grow by some word in its language.
  inst.interp = [](const Elem& label, const Elem& pre, const Elem& post) {
    const auto& before = pre.get<HistoryState>().trace;
    const auto& after = post.get<HistoryState>().trace;
    if (!is_prefix(before, after)) return false;
    std::vector<std::string> suffix(after.begin() + static_cast<long>(before.size()),
                                    after.end());
    return rx_matches(label.get<RegexPtr>(), suffix);
  };
  return inst;
}

}  // namespace eq::lang
