#include "eq/systems.hpp"

#include "eq/star.hpp"

namespace eq::lang {
namespace {

Elem lockatom_elem(LockEffect lock, Atomicity mover) {
  return Elem::make(ProductElem{Elem::make(std::move(lock)), Elem::make(mover)});
}

std::string fresh_named(const std::string& prefix, const Sigma& sigma) {
  for (int i = 0;; ++i) {
    std::string candidate = prefix + std::to_string(i);
    if (!sigma.count(candidate)) return candidate;
  }
}

std::optional<std::string> const_name(const SpineArg& a) {
  if (!a.term) return std::nullopt;
  return value_index_name(a.term);
}

CtorTable lockatom_ctors() {
  CtorTable ctors;
  ctors["Acquire"] = EffectCtor{
      1, [](const std::vector<std::string>& xs) -> std::optional<Elem> {
        return lockatom_elem(LockEffect{{}, {{xs[0], 1}}}, Atomicity::R);
      }};
  ctors["Release"] = EffectCtor{
      1, [](const std::vector<std::string>& xs) -> std::optional<Elem> {
        return lockatom_elem(LockEffect{{{xs[0], 1}}, {}}, Atomicity::L);
      }};
  ctors["Guarded"] = EffectCtor{
      1, [](const std::vector<std::string>& xs) -> std::optional<Elem> {
        return lockatom_elem(LockEffect{{{xs[0], 1}}, {{xs[0], 1}}}, Atomicity::B);
      }};
  return ctors;
}

// Lock claims justified by a boolean lock map: each held lock is one claim.
Multiset held_multiset(const LockAtomState& s) {
  Multiset out;
  for (const auto& [l, held] : s.locks)
    if (held) out[l] = 1;
  return out;
}

TypePtr lock_ty() { return ty_con("lock"); }

TypePtr ref_ty(TermPtr lock_val, TypePtr content) {
  return ty_app(ty_app(ty_con("ref"), ty_sing(std::move(lock_val))), std::move(content));
}

Sigma lockatom_delta(bool faulty_release) {
  Sigma d;
  d["new_lock"] = ty_pi("_", ty_unit(), eff_unit(), lock_ty());
  d["acquire"] =
      ty_pi("x", lock_ty(), eff_ground("Acquire", {tm_var("x")}), ty_unit());
  d["release"] = ty_pi("x", lock_ty(),
                       faulty_release ? eff_unit() : eff_ground("Release", {tm_var("x")}),
                       ty_unit());
  d["alloc"] = ty_pi(
      "x", lock_ty(), eff_unit(),
      ty_forall("a", Kind::star(), eff_unit(),
                ty_pi("v", ty_var("a"), eff_unit(), ref_ty(tm_var("x"), ty_var("a")))));
  d["read"] = ty_pi(
      "x", lock_ty(), eff_unit(),
      ty_forall("a", Kind::star(), eff_unit(),
                ty_pi("r", ref_ty(tm_var("x"), ty_var("a")),
                      eff_ground("Guarded", {tm_var("x")}), ty_var("a"))));
  d["write"] = ty_pi(
      "x", lock_ty(), eff_unit(),
      ty_forall("a", Kind::star(), eff_unit(),
                ty_pi("r", ref_ty(tm_var("x"), ty_var("a")), eff_unit(),
                      ty_pi("v", ty_var("a"), eff_ground("Guarded", {tm_var("x")}),
                            ty_var("a")))));
  return d;
}

std::optional<PrimOutcome> lockatom_sem(const Instantiation& inst, const PrimSpine& spine,
                                        const Elem& state, const Sigma& sigma) {
  LockAtomState s = state.get<LockAtomState>();
  Elem identity = inst.types.q->unit();
  if (spine.prim == "new_lock") {
    std::string l = fresh_named("lk", sigma);
    s.locks[l] = false;
    Sigma next = sigma;
    next[l] = lock_ty();
    return PrimOutcome{tm_prim(l, 0), identity, Elem::make(std::move(s)), std::move(next)};
  }
  if (spine.prim == "acquire" || spine.prim == "release") {
    auto l = const_name(spine.args[0]);
    if (!l) return std::nullopt;
    auto it = s.locks.find(*l);
    bool want_held = spine.prim == "release";
    if (it == s.locks.end() || it->second != want_held) return std::nullopt;
    it->second = !want_held;
    Elem label = spine.prim == "acquire"
                     ? lockatom_elem(LockEffect{{}, {{*l, 1}}}, Atomicity::R)
                     : lockatom_elem(LockEffect{{{*l, 1}}, {}}, Atomicity::L);
    return PrimOutcome{tm_unit(), label, Elem::make(std::move(s)), sigma};
  }
  if (spine.prim == "alloc") {
    auto l = const_name(spine.args[0]);
    if (!l || !spine.args[1].type) return std::nullopt;
    std::string r = fresh_named("rf", sigma);
    s.heap[r] = spine.args[2].term;
    Sigma next = sigma;
    next[r] = ref_ty(tm_prim(*l, 0), spine.args[1].type);
    return PrimOutcome{tm_prim(r, 0), identity, Elem::make(std::move(s)), std::move(next)};
  }
  if (spine.prim == "read" || spine.prim == "write") {
    auto l = const_name(spine.args[0]);
    auto r = const_name(spine.args[2]);
    if (!l || !r) return std::nullopt;
    auto it = s.heap.find(*r);
    if (it == s.heap.end()) return std::nullopt;  // unallocated location: no rule
    Elem label = lockatom_elem(LockEffect{{{*l, 1}}, {{*l, 1}}}, Atomicity::B);
    TermPtr result;
    if (spine.prim == "read") {
      result = it->second;
    } else {
      result = spine.args[3].term;
      it->second = result;
    }
    return PrimOutcome{result, label, Elem::make(std::move(s)), sigma};
  }
  return std::nullopt;
}

bool lockatom_state_typed(const Instantiation& inst, const Elem& state, const Sigma& sigma) {
  const auto& s = state.get<LockAtomState>();
  for (const auto& [l, _] : s.locks) {
    auto it = sigma.find(l);
    if (it == sigma.end() || it->second->k != Type::K::Con || it->second->name != "lock")
      return false;
  }
  for (const auto& [r, v] : s.heap) {
    auto it = sigma.find(r);
    if (it == sigma.end()) return false;
    const TypePtr& rt = it->second;
    // ref (S l) tau
    if (rt->k != Type::K::App || rt->fn->k != Type::K::App) return false;
    try {
      TypingResult tr = infer(inst.types, Context{}, sigma, v);
      if (!type_equiv(inst.types, tr.type, rt->arg)) return false;
    } catch (const TypeError&) {
      return false;
    }
  }
  return true;
}

bool lockatom_interp(const Elem& label, const Elem& pre, const Elem& post) {
  const auto& p = label.get<ProductElem>();
  const auto& le = p.left.get<LockEffect>();
  Multiset before = held_multiset(pre.get<LockAtomState>());
  Multiset after = held_multiset(post.get<LockAtomState>());
  if (!mset_leq(le.pre, before)) return false;
  Multiset expected = mset_add(mset_sub(before, le.pre), le.post);
  return after == expected;
}

}  // namespace

Instantiation lockatom_instantiation(bool faulty_release) {
  Instantiation inst;
  inst.name = faulty_release ? "lockatom-faulty" : "lockatom";
  inst.types.q = product_quantale(lockset_quantale({"l", "m"}),
                                  with_derived_star(atomicity_quantale()));
  inst.types.idx = product_indexed(lockset_indexed(),
                                   constant_indexed(with_derived_star(atomicity_quantale())));
  inst.types.ctors = lockatom_ctors();
  inst.types.tycon_kinds = {{"lock", Kind::star()},
                            {"ref", Kind::arrow(Kind::star(), Kind::arrow(Kind::star(),
                                                                          Kind::star()))}};
  inst.types.prim_arity = {{"new_lock", 1}, {"acquire", 1}, {"release", 1},
                           {"alloc", 3},    {"read", 3},    {"write", 4}};
  inst.delta = lockatom_delta(faulty_release);
  inst.initial_state = Elem::make(LockAtomState{});
  inst.prim_sem = [inst_types = inst.types](const PrimSpine& spine, const Elem& state,
                                            const Sigma& sigma) {
    Instantiation view;
    view.types = inst_types;
    return lockatom_sem(view, spine, state, sigma);
  };
  inst.state_typed = [types = inst.types, delta = inst.delta](const Elem& state,
                                                              const Sigma& sigma) {
    Instantiation view;
    view.types = types;
    view.delta = delta;
    return lockatom_state_typed(view, state, sigma);
  };
  inst.interp = lockatom_interp;
  return inst;
}

std::pair<Elem, Sigma> lockatom_world(const Instantiation& inst, int locks, bool ref_value) {
  LockAtomState s;
  Sigma sigma = inst.delta;
  for (int i = 0; i < locks; ++i) {
    std::string l = "lk" + std::to_string(i);
    std::string r = "rf" + std::to_string(i);
    s.locks[l] = false;
    s.heap[r] = tm_bool(ref_value);
    sigma[l] = lock_ty();
    sigma[r] = ref_ty(tm_prim(l, 0), ty_bool());
  }
  return {Elem::make(std::move(s)), std::move(sigma)};
}

Instantiation atomicity_instantiation() {
  Instantiation inst;
  inst.name = "atomonly";
  inst.types.q = with_derived_star(atomicity_quantale());
  inst.types.idx = nullptr;
  inst.types.tycon_kinds = {{"lock", Kind::star()}};
  inst.types.prim_arity = {{"new_lock", 1}, {"acquire", 1}, {"release", 1}};
  inst.delta["new_lock"] = ty_pi("_", ty_unit(), eff_unit(), lock_ty());
  inst.delta["acquire"] =
      ty_pi("x", lock_ty(), eff_lit(Elem::make(Atomicity::R)), ty_unit());
  inst.delta["release"] =
      ty_pi("x", lock_ty(), eff_lit(Elem::make(Atomicity::L)), ty_unit());
  inst.initial_state = Elem::make(LockAtomState{});
  inst.prim_sem = [](const PrimSpine& spine, const Elem& state,
                     const Sigma& sigma) -> std::optional<PrimOutcome> {
    LockAtomState s = state.get<LockAtomState>();
    if (spine.prim == "new_lock") {
      std::string l = fresh_named("lk", sigma);
      s.locks[l] = false;
      Sigma next = sigma;
      next[l] = lock_ty();
      return PrimOutcome{tm_prim(l, 0), Elem::make(Atomicity::B), Elem::make(std::move(s)),
                         std::move(next)};
    }
    auto l = const_name(spine.args[0]);
    if (!l) return std::nullopt;
    auto it = s.locks.find(*l);
    bool want_held = spine.prim == "release";
    if (it == s.locks.end() || it->second != want_held) return std::nullopt;
    it->second = !want_held;
    Elem label = Elem::make(spine.prim == "acquire" ? Atomicity::R : Atomicity::L);
    return PrimOutcome{tm_unit(), label, Elem::make(std::move(s)), sigma};
  };
  inst.state_typed = [](const Elem&, const Sigma&) { return true; };
  return inst;
}

Instantiation crit_instantiation() {
  Instantiation inst;
  inst.name = "critsys";
  inst.types.q = with_derived_star(crit_quantale());
  inst.types.prim_arity = {{"lock_it", 1}, {"unlock_it", 1}, {"in_crit", 1}};
  inst.delta["lock_it"] =
      ty_pi("_", ty_unit(), eff_lit(Elem::make(CritEffect::Locking)), ty_unit());
  inst.delta["unlock_it"] =
      ty_pi("_", ty_unit(), eff_lit(Elem::make(CritEffect::Unlocking)), ty_unit());
  inst.delta["in_crit"] =
      ty_pi("_", ty_unit(), eff_lit(Elem::make(CritEffect::Critical)), ty_unit());
  inst.initial_state = Elem::make(false);  // lock not held
  inst.prim_sem = [](const PrimSpine& spine, const Elem& state,
                     const Sigma& sigma) -> std::optional<PrimOutcome> {
    bool held = state.get<bool>();
    if (spine.prim == "lock_it") {
      if (held) return std::nullopt;
      return PrimOutcome{tm_unit(), Elem::make(CritEffect::Locking), Elem::make(true), sigma};
    }
    if (spine.prim == "unlock_it") {
      if (!held) return std::nullopt;
      return PrimOutcome{tm_unit(), Elem::make(CritEffect::Unlocking), Elem::make(false), sigma};
    }
    if (spine.prim == "in_crit") {
      if (!held) return std::nullopt;
      return PrimOutcome{tm_unit(), Elem::make(CritEffect::Critical), state, sigma};
    }
    return std::nullopt;
  };
  inst.state_typed = [](const Elem&, const Sigma&) { return true; };
  return inst;
}

}  // namespace eq::lang
