#include "eq/typing.hpp"

#include <algorithm>
#include <atomic>

namespace eq::lang {

ParseEnv parse_env_for(const TypeSystem& ts, const Sigma& sigma) {
  ParseEnv env = ts.parse_env();
  for (const auto& [name, _] : sigma)
    if (!env.prim_arity.count(name)) env.prim_arity[name] = 0;
  return env;
}

bool sigma_leq(const TypeSystem& ts, const Sigma& lo, const Sigma& hi) {
  for (const auto& [name, ty] : lo) {
    auto it = hi.find(name);
    if (it == hi.end() || !type_equiv(ts, ty, it->second)) return false;
  }
  return true;
}

Context Context::extend_term(const std::string& x, TypePtr ty) const {
  Context out = *this;
  out.entries_.push_back(Entry{x, std::move(ty), std::nullopt});
  return out;
}

Context Context::extend_type(const std::string& a, Kind k) const {
  Context out = *this;
  out.entries_.push_back(Entry{a, nullptr, std::move(k)});
  return out;
}

const TypePtr* Context::lookup_term(const std::string& x) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->name == x && it->ty) return &it->ty;
  return nullptr;
}

const Kind* Context::lookup_type(const std::string& a) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->name == a && it->kind) return &*it->kind;
  return nullptr;
}

bool Context::bound(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return true;
  return false;
}

namespace {

EffPtr require_nontrivial(const TypeSystem& ts, const EffPtr& e, const char* where) {
  auto ctx = ts.eff_ctx();
  if (!nontrivial(ctx, e))
    throw TypeError(std::string("trivially invalid effect in ") + where + ": " +
                    show_eff_ctx(ctx, e));
  return normalize(ctx, e);
}

bool effect_mentions(const TypeSystem& ts, const EffPtr& e, const std::string& x) {
  return eff_term_names(ts.eff_ctx(), e).count(x) > 0;
}

std::atomic<int> fresh_counter{0};

std::string fresh_cmp_name() { return "#cmp" + std::to_string(fresh_counter++); }

bool type_equiv_rec(const TypeSystem& ts, const TypePtr& a, const TypePtr& b) {
  if (a->k != b->k) {
    // An effect variable used as a type compares against effect payloads.
    auto ea = type_as_effect(a);
    auto eb = type_as_effect(b);
    if (ea && eb) return equiv(ts.eff_ctx(), *ea, *eb);
    return false;
  }
  switch (a->k) {
    case Type::K::Con:
    case Type::K::Var: return a->name == b->name;
    case Type::K::Bool:
    case Type::K::Unit: return true;
    case Type::K::App:
      return type_equiv_rec(ts, a->fn, b->fn) && type_equiv_rec(ts, a->arg, b->arg);
    case Type::K::EffType: return equiv(ts.eff_ctx(), a->eff, b->eff);
    case Type::K::Sing: return show_term(a->val) == show_term(b->val);
    case Type::K::Pi: {
      if (!type_equiv_rec(ts, a->dom, b->dom)) return false;
      auto ctx = ts.eff_ctx();
      std::string f = fresh_cmp_name();
      TermPtr fv = tm_var(f);
      EffPtr ea = subst_value_in_eff(ctx, a->eff, a->binder, fv);
      EffPtr eb = subst_value_in_eff(ctx, b->eff, b->binder, fv);
      if (!equiv(ctx, ea, eb)) return false;
      return type_equiv_rec(ts, subst_type_value(ctx, a->res, a->binder, fv),
                            subst_type_value(ctx, b->res, b->binder, fv));
    }
    case Type::K::Forall: {
      if (!(a->kind == b->kind)) return false;
      auto ctx = ts.eff_ctx();
      std::string f = fresh_cmp_name();
      TypePtr fv = ty_var(f);
      EffPtr ea = subst_type_in_eff(ctx, a->eff, a->binder, fv);
      EffPtr eb = subst_type_in_eff(ctx, b->eff, b->binder, fv);
      if (!equiv(ctx, ea, eb)) return false;
      return type_equiv_rec(ts, subst_type_type(ctx, a->res, a->binder, fv),
                            subst_type_type(ctx, b->res, b->binder, fv));
    }
  }
  return false;
}

void collect_type_term_vars(const TypeSystem& ts, const TypePtr& t, std::set<std::string>& out) {
  switch (t->k) {
    case Type::K::Con:
    case Type::K::Var:
    case Type::K::Bool:
    case Type::K::Unit: return;
    case Type::K::App:
      collect_type_term_vars(ts, t->fn, out);
      collect_type_term_vars(ts, t->arg, out);
      return;
    case Type::K::EffType: {
      auto names = eff_term_names(ts.eff_ctx(), t->eff);
      out.insert(names.begin(), names.end());
      return;
    }
    case Type::K::Sing: {
      auto fv = term_free_vars(t->val);
      out.insert(fv.begin(), fv.end());
      return;
    }
    case Type::K::Pi: {
      collect_type_term_vars(ts, t->dom, out);
      std::set<std::string> inner = eff_term_names(ts.eff_ctx(), t->eff);
      collect_type_term_vars(ts, t->res, inner);
      inner.erase(t->binder);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Type::K::Forall: {
      auto names = eff_term_names(ts.eff_ctx(), t->eff);
      out.insert(names.begin(), names.end());
      collect_type_term_vars(ts, t->res, out);
      return;
    }
  }
}

struct Checker {
  const TypeSystem& ts;

  Kind kind_of(const Context& gamma, const Sigma& sigma, const TypePtr& t) const {
    switch (t->k) {
      case Type::K::Con: {
        auto it = ts.tycon_kinds.find(t->name);
        if (it == ts.tycon_kinds.end()) throw TypeError("unknown type constructor: " + t->name);
        return it->second;
      }
      case Type::K::Var: {
        const Kind* k = gamma.lookup_type(t->name);
        if (!k) throw TypeError("unbound type variable: " + t->name);
        return *k;
      }
      case Type::K::App: {
        Kind kf = kind_of(gamma, sigma, t->fn);
        if (kf.k != Kind::K::Arrow)
          throw TypeError("type application of a non-constructor: " + show_type(t->fn));
        Kind ka = kind_of(gamma, sigma, t->arg);
        if (!(ka == *kf.from)) throw TypeError("kind mismatch in type application");
        return *kf.to;
      }
      case Type::K::EffType:
        kind_effect(gamma, sigma, t->eff);
        return Kind::effect();
      case Type::K::Bool:
      case Type::K::Unit: return Kind::star();
      case Type::K::Sing: {
        if (!is_value(t->val)) throw TypeError("singleton of a non-value");
        infer(gamma, sigma, t->val);  // must type, with effect I (values always do)
        return Kind::star();
      }
      case Type::K::Pi: {
        if (!(kind_of(gamma, sigma, t->dom) == Kind::star()))
          throw TypeError("function domain must have kind *");
        Context inner = gamma.extend_term(t->binder, t->dom);
        kind_effect(inner, sigma, t->eff);
        if (!(kind_of(inner, sigma, t->res) == Kind::star()))
          throw TypeError("function result must have kind *");
        return Kind::star();
      }
      case Type::K::Forall: {
        Context inner = gamma.extend_type(t->binder, t->kind);
        kind_effect(inner, sigma, t->eff);
        if (!(kind_of(inner, sigma, t->res) == Kind::star()))
          throw TypeError("quantified result must have kind *");
        return Kind::star();
      }
    }
    throw TypeError("unreachable kind case");
  }

  void kind_effect(const Context& gamma, const Sigma& sigma, const EffPtr& e) const {
    switch (e->k) {
      case Eff::K::Var: {
        const Kind* k = gamma.lookup_type(e->var);
        if (!k) throw TypeError("unbound effect variable: '" + e->var);
        if (!(*k == Kind::effect()))
          throw TypeError("type variable used as effect has wrong kind: '" + e->var);
        return;
      }
      case Eff::K::Unit: return;
      case Eff::K::Seq:
      case Eff::K::Join:
        kind_effect(gamma, sigma, e->left);
        kind_effect(gamma, sigma, e->right);
        return;
      case Eff::K::Star: kind_effect(gamma, sigma, e->inner); return;
      case Eff::K::Ground: {
        if (e->lit) {
          for (const auto& name : ts.eff_ctx().elem_indices(*e->lit)) {
            if (!gamma.lookup_term(name) && !sigma.count(name))
              throw TypeError("effect element mentions an unbound value: " + name);
          }
          return;
        }
        for (const auto& a : e->args) {
          if (!is_value(a))
            throw TypeError("effect constructor argument must be a value: " + show_term(a));
          infer(gamma, sigma, a);  // typeable, with effect I by value typing
        }
        return;
      }
    }
  }

  TypingResult infer(const Context& gamma, const Sigma& sigma, const TermPtr& e) const {
    auto ctx = ts.eff_ctx();
    switch (e->k) {
      case Term::K::Prim: {
        auto it = sigma.find(e->name);
        if (it == sigma.end()) throw TypeError("unknown primitive: " + e->name);
        return {it->second, eff_unit(), {"T-Prim"}};
      }
      case Term::K::Var: {
        const TypePtr* ty = gamma.lookup_term(e->name);
        if (!ty) throw TypeError("unbound variable: " + e->name);
        return {*ty, eff_unit(), {"T-Var"}};
      }
      case Term::K::BoolLit: return {ty_bool(), eff_unit(), {"T-Bool"}};
      case Term::K::UnitLit: return {ty_unit(), eff_unit(), {"T-Unit"}};
      case Term::K::Lam: {
        if (gamma.bound(e->binder)) throw TypeError("duplicate binder: " + e->binder);
        if (!(kind_of(gamma, sigma, e->ann) == Kind::star()))
          throw TypeError("lambda annotation must have kind *");
        auto body = infer(gamma.extend_term(e->binder, e->ann), sigma, e->body);
        auto trace = body.trace;
        trace.push_back("T-Lam");
        return {ty_pi(e->binder, e->ann, body.effect, body.type), eff_unit(), trace};
      }
      case Term::K::TyLam: {
        if (gamma.bound(e->binder)) throw TypeError("duplicate binder: " + e->binder);
        auto body = infer(gamma.extend_type(e->binder, e->kind), sigma, e->body);
        auto trace = body.trace;
        trace.push_back("T-Forall");
        return {ty_forall(e->binder, e->kind, body.effect, body.type), eff_unit(), trace};
      }
      case Term::K::App: {
        auto fn = infer(gamma, sigma, e->fn);
        if (fn.type->k != Type::K::Pi)
          throw TypeError("applying a non-function: " + show_term(e->fn));
        auto arg = infer(gamma, sigma, e->arg);
        if (!type_equiv(ts, arg.type, fn.type->dom))
          throw TypeError("argument type mismatch in " + show_term(e));
        const std::string& x = fn.type->binder;
        bool dependent = effect_mentions(ts, fn.type->eff, x) ||
                         type_free_term_vars(ts, fn.type->res).count(x) > 0;
        if (dependent && !is_value(e->arg))
          throw TypeError("dependent application needs a value argument: " + show_term(e));
        EffPtr latent = fn.type->eff;
        TypePtr result = fn.type->res;
        if (is_value(e->arg)) {
          latent = subst_value_in_eff(ctx, latent, x, e->arg);
          result = subst_type_value(ctx, result, x, e->arg);
        }
        EffPtr total = eff_seq(eff_seq(fn.effect, arg.effect), latent);
        EffPtr norm = require_nontrivial(ts, total, "application");
        auto trace = fn.trace;
        trace.insert(trace.end(), arg.trace.begin(), arg.trace.end());
        trace.push_back("T-App");
        return {result, norm, trace};
      }
      case Term::K::TyApp: {
        auto fn = infer(gamma, sigma, e->fn);
        if (fn.type->k != Type::K::Forall)
          throw TypeError("type-applying a non-quantified term: " + show_term(e->fn));
        Kind k = kind_of(gamma, sigma, e->targ);
        if (!(k == fn.type->kind)) throw TypeError("kind mismatch in type application");
        TypePtr result = subst_type_type(ctx, fn.type->res, fn.type->binder, e->targ);
        kind_of(gamma, sigma, result);  // instantiated result must still kind
        EffPtr latent = subst_type_in_eff(ctx, fn.type->eff, fn.type->binder, e->targ);
        EffPtr total = eff_seq(fn.effect, latent);
        EffPtr norm = require_nontrivial(ts, total, "type application");
        auto trace = fn.trace;
        trace.push_back("T-TyApp");
        return {result, norm, trace};
      }
      case Term::K::If: {
        auto c = infer(gamma, sigma, e->cond);
        if (c.type->k != Type::K::Bool) throw TypeError("if condition must be bool");
        auto t1 = infer(gamma, sigma, e->thn);
        auto t2 = infer(gamma, sigma, e->els);
        if (!type_equiv(ts, t1.type, t2.type))
          throw TypeError("if branches disagree: " + show_type(t1.type) + " vs " +
                          show_type(t2.type));
        EffPtr total = eff_seq(c.effect, eff_join(t1.effect, t2.effect));
        EffPtr norm = require_nontrivial(ts, total, "conditional");
        auto trace = c.trace;
        trace.insert(trace.end(), t1.trace.begin(), t1.trace.end());
        trace.insert(trace.end(), t2.trace.begin(), t2.trace.end());
        trace.push_back("T-If");
        return {t1.type, norm, trace};
      }
      case Term::K::While: {
        auto c = infer(gamma, sigma, e->cond);
        if (c.type->k != Type::K::Bool) throw TypeError("while condition must be bool");
        auto body = infer(gamma, sigma, e->thn);
        EffPtr total = eff_seq(c.effect, eff_star(eff_seq(body.effect, c.effect)));
        EffPtr norm = require_nontrivial(ts, total, "loop");
        auto trace = c.trace;
        trace.insert(trace.end(), body.trace.begin(), body.trace.end());
        trace.push_back("T-While");
        return {ty_unit(), norm, trace};
      }
      case Term::K::Seq: {
        auto a = infer(gamma, sigma, e->first);
        auto b = infer(gamma, sigma, e->second);
        EffPtr norm = require_nontrivial(ts, eff_seq(a.effect, b.effect), "sequence");
        auto trace = a.trace;
        trace.insert(trace.end(), b.trace.begin(), b.trace.end());
        trace.push_back("T-Seq");
        return {b.type, norm, trace};
      }
      case Term::K::Let: {
        if (gamma.bound(e->binder)) throw TypeError("duplicate binder: " + e->binder);
        auto bound = infer(gamma, sigma, e->first);
        auto body = infer(gamma.extend_term(e->binder, bound.type), sigma, e->second);
        const std::string& x = e->binder;
        bool dependent = effect_mentions(ts, body.effect, x) ||
                         type_free_term_vars(ts, body.type).count(x) > 0;
        if (dependent && !is_value(e->first))
          throw TypeError("dependent let needs a value binding: " + show_term(e));
        EffPtr body_eff = body.effect;
        TypePtr body_ty = body.type;
        if (is_value(e->first)) {
          body_eff = subst_value_in_eff(ctx, body_eff, x, e->first);
          body_ty = subst_type_value(ctx, body_ty, x, e->first);
        }
        EffPtr norm = require_nontrivial(ts, eff_seq(bound.effect, body_eff), "let");
        auto trace = bound.trace;
        trace.insert(trace.end(), body.trace.begin(), body.trace.end());
        trace.push_back("T-Let");
        return {body_ty, norm, trace};
      }
    }
    throw TypeError("unreachable term case");
  }
};

}  // namespace

Kind kind_of(const TypeSystem& ts, const Context& gamma, const Sigma& sigma, const TypePtr& t) {
  return Checker{ts}.kind_of(gamma, sigma, t);
}

void kind_effect(const TypeSystem& ts, const Context& gamma, const Sigma& sigma, const EffPtr& e) {
  Checker{ts}.kind_effect(gamma, sigma, e);
}

TypingResult infer(const TypeSystem& ts, const Context& gamma, const Sigma& sigma,
                   const TermPtr& e) {
  check_fully_applied(ts, e);
  return Checker{ts}.infer(gamma, sigma, e);
}

bool type_equiv(const TypeSystem& ts, const TypePtr& a, const TypePtr& b) {
  return type_equiv_rec(ts, a, b);
}

std::set<std::string> type_free_term_vars(const TypeSystem& ts, const TypePtr& t) {
  std::set<std::string> out;
  collect_type_term_vars(ts, t, out);
  return out;
}

namespace {

void check_spines(const TypeSystem& ts, const TermPtr& e, int depth) {
  switch (e->k) {
    case Term::K::Prim:
      if (e->arity > 0 && depth != e->arity)
        throw TypeError("primitive " + e->name + " must be applied to exactly " +
                        std::to_string(e->arity) + " arguments");
      return;
    case Term::K::Var:
    case Term::K::BoolLit:
    case Term::K::UnitLit: return;
    case Term::K::Lam: check_spines(ts, e->body, 0); return;
    case Term::K::TyLam: check_spines(ts, e->body, 0); return;
    case Term::K::App:
      check_spines(ts, e->fn, depth + 1);
      check_spines(ts, e->arg, 0);
      return;
    case Term::K::TyApp: check_spines(ts, e->fn, depth + 1); return;
    case Term::K::If:
      check_spines(ts, e->cond, 0);
      check_spines(ts, e->thn, 0);
      check_spines(ts, e->els, 0);
      return;
    case Term::K::While:
      check_spines(ts, e->cond, 0);
      check_spines(ts, e->thn, 0);
      return;
    case Term::K::Seq:
      check_spines(ts, e->first, 0);
      check_spines(ts, e->second, 0);
      return;
    case Term::K::Let:
      check_spines(ts, e->first, 0);
      check_spines(ts, e->second, 0);
      return;
  }
}

}  // namespace

void check_fully_applied(const TypeSystem& ts, const TermPtr& e) { check_spines(ts, e, 0); }

LawReport check_primitive_table(const TypeSystem& ts, const Sigma& sigma) {
  LawReport report;
  report.system = "primitive-table";
  report.entry("prim-arity-shape");
  report.entry("prim-prefix-effects-identity");
  report.entry("prim-type-well-kinded");
  report.entry("prim-not-closed-base");
  auto ctx = ts.eff_ctx();
  auto fail = [&](const char* law, const std::string& prim, const std::string& detail) {
    report.entry(law).failures.push_back(
        Counterexample{law, {}, {prim}, detail, "constraint satisfied"});
  };
  for (const auto& [name, ty] : sigma) {
    auto arity_it = ts.prim_arity.find(name);
    int arity = arity_it == ts.prim_arity.end() ? 0 : arity_it->second;

    ++report.entry("prim-type-well-kinded").checked;
    try {
      Kind k = kind_of(ts, Context{}, sigma, ty);
      if (!(k == Kind::star())) fail("prim-type-well-kinded", name, "kind is not *");
    } catch (const TypeError& err) {
      fail("prim-type-well-kinded", name, err.what());
    }

    ++report.entry("prim-arity-shape").checked;
    ++report.entry("prim-prefix-effects-identity").checked;
    ++report.entry("prim-not-closed-base").checked;
    TypePtr cur = ty;
    bool shape_ok = true;
    for (int i = 0; i < arity; ++i) {
      bool last = i == arity - 1;
      EffPtr latent;
      if (cur->k == Type::K::Pi || cur->k == Type::K::Forall) {
        latent = cur->eff;
        cur = cur->res;
      } else {
        fail("prim-arity-shape", name, "fewer binders than the declared arity");
        shape_ok = false;
        break;
      }
      if (!last && !equiv(ctx, latent, eff_unit()))
        fail("prim-prefix-effects-identity", name,
             "latent effect before the last argument is not I");
    }
    if (shape_ok && arity == 0) {
      if (ty->k == Type::K::Bool || ty->k == Type::K::Unit)
        fail("prim-not-closed-base", name, "constants must not be closed base types");
      if (ty->k == Type::K::Pi || ty->k == Type::K::Forall)
        fail("prim-not-closed-base", name, "constants must not have functional types");
    }
  }
  return report;
}

std::string show_type_ctx(const TypeSystem& ts, const TypePtr& t) {
  auto eff_text = [&](const EffPtr& e) { return "{" + show_eff_ctx(ts.eff_ctx(), e) + "}"; };
  switch (t->k) {
    case Type::K::Con:
    case Type::K::Var: return t->name;
    case Type::K::Bool: return "bool";
    case Type::K::Unit: return "unit";
    case Type::K::App:
      return "(" + show_type_ctx(ts, t->fn) + " " + show_type_ctx(ts, t->arg) + ")";
    case Type::K::EffType: return eff_text(t->eff);
    case Type::K::Sing: return "(S " + show_term(t->val) + ")";
    case Type::K::Pi:
      return "(pi (" + t->binder + " " + show_type_ctx(ts, t->dom) + ") " + eff_text(t->eff) +
             " " + show_type_ctx(ts, t->res) + ")";
    case Type::K::Forall:
      return "(all (" + t->binder + " " + t->kind.show() + ") " + eff_text(t->eff) + " " +
             show_type_ctx(ts, t->res) + ")";
  }
  return "?";
}

}  // namespace eq::lang
