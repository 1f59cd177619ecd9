#include "eq/ast.hpp"

namespace eq::lang {
namespace {

EffPtr mke(Eff e) { return std::make_shared<const Eff>(std::move(e)); }
TypePtr mkt(Type t) { return std::make_shared<const Type>(std::move(t)); }
TermPtr mkm(Term t) { return std::make_shared<const Term>(std::move(t)); }

}  // namespace

EffPtr eff_var(std::string name) {
  Eff e;
  e.k = Eff::K::Var;
  e.var = std::move(name);
  return mke(std::move(e));
}
EffPtr eff_unit() {
  static const EffPtr u = mke(Eff{});
  return u;
}
EffPtr eff_seq(EffPtr a, EffPtr b) {
  Eff e;
  e.k = Eff::K::Seq;
  e.left = std::move(a);
  e.right = std::move(b);
  return mke(std::move(e));
}
EffPtr eff_join(EffPtr a, EffPtr b) {
  Eff e;
  e.k = Eff::K::Join;
  e.left = std::move(a);
  e.right = std::move(b);
  return mke(std::move(e));
}
EffPtr eff_star(EffPtr a) {
  Eff e;
  e.k = Eff::K::Star;
  e.inner = std::move(a);
  return mke(std::move(e));
}
EffPtr eff_ground(std::string ctor, std::vector<TermPtr> args) {
  Eff e;
  e.k = Eff::K::Ground;
  e.ctor = std::move(ctor);
  e.args = std::move(args);
  return mke(std::move(e));
}
EffPtr eff_lit(Elem el) {
  Eff e;
  e.k = Eff::K::Ground;
  e.lit = std::move(el);
  return mke(std::move(e));
}

TypePtr ty_con(std::string name) {
  Type t;
  t.k = Type::K::Con;
  t.name = std::move(name);
  return mkt(std::move(t));
}
TypePtr ty_app(TypePtr fn, TypePtr arg) {
  Type t;
  t.k = Type::K::App;
  t.fn = std::move(fn);
  t.arg = std::move(arg);
  return mkt(std::move(t));
}
TypePtr ty_eff(EffPtr e) {
  Type t;
  t.k = Type::K::EffType;
  t.eff = std::move(e);
  return mkt(std::move(t));
}
TypePtr ty_pi(std::string binder, TypePtr dom, EffPtr latent, TypePtr res) {
  Type t;
  t.k = Type::K::Pi;
  t.binder = std::move(binder);
  t.dom = std::move(dom);
  t.eff = std::move(latent);
  t.res = std::move(res);
  return mkt(std::move(t));
}
TypePtr ty_var(std::string name) {
  Type t;
  t.k = Type::K::Var;
  t.name = std::move(name);
  return mkt(std::move(t));
}
TypePtr ty_bool() {
  static const TypePtr b = mkt(Type{});
  return b;
}
TypePtr ty_forall(std::string binder, Kind kind, EffPtr latent, TypePtr res) {
  Type t;
  t.k = Type::K::Forall;
  t.binder = std::move(binder);
  t.kind = std::move(kind);
  t.eff = std::move(latent);
  t.res = std::move(res);
  return mkt(std::move(t));
}
TypePtr ty_unit() {
  Type t;
  t.k = Type::K::Unit;
  return mkt(std::move(t));
}
TypePtr ty_sing(TermPtr v) {
  Type t;
  t.k = Type::K::Sing;
  t.val = std::move(v);
  return mkt(std::move(t));
}

TermPtr tm_prim(std::string name, int arity) {
  Term t;
  t.k = Term::K::Prim;
  t.name = std::move(name);
  t.arity = arity;
  return mkm(std::move(t));
}
TermPtr tm_var(std::string name) {
  Term t;
  t.k = Term::K::Var;
  t.name = std::move(name);
  return mkm(std::move(t));
}
TermPtr tm_lam(std::string binder, TypePtr ann, TermPtr body) {
  Term t;
  t.k = Term::K::Lam;
  t.binder = std::move(binder);
  t.ann = std::move(ann);
  t.body = std::move(body);
  return mkm(std::move(t));
}
TermPtr tm_app(TermPtr fn, TermPtr arg) {
  Term t;
  t.k = Term::K::App;
  t.fn = std::move(fn);
  t.arg = std::move(arg);
  return mkm(std::move(t));
}
TermPtr tm_bool(bool b) {
  Term t;
  t.k = Term::K::BoolLit;
  t.bval = b;
  return mkm(std::move(t));
}
TermPtr tm_if(TermPtr c, TermPtr th, TermPtr e) {
  Term t;
  t.k = Term::K::If;
  t.cond = std::move(c);
  t.thn = std::move(th);
  t.els = std::move(e);
  return mkm(std::move(t));
}
TermPtr tm_while(TermPtr c, TermPtr body) {
  Term t;
  t.k = Term::K::While;
  t.cond = std::move(c);
  t.thn = std::move(body);
  return mkm(std::move(t));
}
TermPtr tm_tylam(std::string binder, Kind k, TermPtr body) {
  Term t;
  t.k = Term::K::TyLam;
  t.binder = std::move(binder);
  t.kind = std::move(k);
  t.body = std::move(body);
  return mkm(std::move(t));
}
TermPtr tm_tyapp(TermPtr fn, TypePtr ty) {
  Term t;
  t.k = Term::K::TyApp;
  t.fn = std::move(fn);
  t.targ = std::move(ty);
  return mkm(std::move(t));
}
TermPtr tm_unit() {
  static const TermPtr u = mkm(Term{});
  return u;
}
TermPtr tm_seq(TermPtr a, TermPtr b) {
  Term t;
  t.k = Term::K::Seq;
  t.first = std::move(a);
  t.second = std::move(b);
  return mkm(std::move(t));
}
TermPtr tm_let(std::string binder, TermPtr bound, TermPtr body) {
  Term t;
  t.k = Term::K::Let;
  t.binder = std::move(binder);
  t.first = std::move(bound);
  t.second = std::move(body);
  return mkm(std::move(t));
}

bool is_value(const TermPtr& t) {
  switch (t->k) {
    case Term::K::Prim: return t->arity == 0;
    case Term::K::Var:
    case Term::K::Lam:
    case Term::K::TyLam:
    case Term::K::BoolLit:
    case Term::K::UnitLit: return true;
    default: return false;
  }
}

std::optional<std::string> value_index_name(const TermPtr& v) {
  if (v->k == Term::K::Var || v->k == Term::K::Prim) return v->name;
  return std::nullopt;
}

namespace {

void fv_eff(const EffPtr& e, std::set<std::string>& out);

void fv_term(const TermPtr& t, std::set<std::string>& out) {
  switch (t->k) {
    case Term::K::Var: out.insert(t->name); return;
    case Term::K::Prim:
    case Term::K::BoolLit:
    case Term::K::UnitLit: return;
    case Term::K::Lam: {
      std::set<std::string> inner;
      fv_term(t->body, inner);
      inner.erase(t->binder);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Term::K::TyLam: fv_term(t->body, out); return;
    case Term::K::App:
      fv_term(t->fn, out);
      fv_term(t->arg, out);
      return;
    case Term::K::TyApp: fv_term(t->fn, out); return;
    case Term::K::If:
      fv_term(t->cond, out);
      fv_term(t->thn, out);
      fv_term(t->els, out);
      return;
    case Term::K::While:
      fv_term(t->cond, out);
      fv_term(t->thn, out);
      return;
    case Term::K::Seq:
      fv_term(t->first, out);
      fv_term(t->second, out);
      return;
    case Term::K::Let: {
      fv_term(t->first, out);
      std::set<std::string> inner;
      fv_term(t->second, inner);
      inner.erase(t->binder);
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

void fv_eff(const EffPtr& e, std::set<std::string>& out) {
  switch (e->k) {
    case Eff::K::Var:
    case Eff::K::Unit: return;
    case Eff::K::Seq:
    case Eff::K::Join:
      fv_eff(e->left, out);
      fv_eff(e->right, out);
      return;
    case Eff::K::Star: fv_eff(e->inner, out); return;
    case Eff::K::Ground:
      for (const auto& a : e->args) fv_term(a, out);
      return;
  }
}

}  // namespace

std::set<std::string> term_free_vars(const TermPtr& t) {
  std::set<std::string> out;
  fv_term(t, out);
  return out;
}

std::string show_term(const TermPtr& t, const ShowLit& show_lit) {
  switch (t->k) {
    case Term::K::Prim:
    case Term::K::Var: return t->name;
    case Term::K::BoolLit: return t->bval ? "true" : "false";
    case Term::K::UnitLit: return "unit";
    case Term::K::Lam:
      return "(lam (" + t->binder + " " + show_type(t->ann, show_lit) + ") " + show_term(t->body, show_lit) + ")";
    case Term::K::TyLam:
      return "(tylam (" + t->binder + " " + t->kind.show() + ") " + show_term(t->body, show_lit) + ")";
    case Term::K::App: return "(app " + show_term(t->fn, show_lit) + " " + show_term(t->arg, show_lit) + ")";
    case Term::K::TyApp: return "(tyapp " + show_term(t->fn, show_lit) + " " + show_type(t->targ, show_lit) + ")";
    case Term::K::If:
      return "(if " + show_term(t->cond, show_lit) + " " + show_term(t->thn, show_lit) + " " + show_term(t->els, show_lit) + ")";
    case Term::K::While: return "(while " + show_term(t->cond, show_lit) + " " + show_term(t->thn, show_lit) + ")";
    case Term::K::Seq: return "(seq " + show_term(t->first, show_lit) + " " + show_term(t->second, show_lit) + ")";
    case Term::K::Let:
      return "(let (" + t->binder + " " + show_term(t->first, show_lit) + ") " + show_term(t->second, show_lit) + ")";
  }
  return "?";
}

std::string show_eff(const EffPtr& e, const std::function<std::string(const Elem&)>& show_lit) {
  switch (e->k) {
    case Eff::K::Var: return "'" + e->var;
    case Eff::K::Unit: return "I";
    case Eff::K::Seq:
      return "(" + show_eff(e->left, show_lit) + " ; " + show_eff(e->right, show_lit) + ")";
    case Eff::K::Join:
      return "(" + show_eff(e->left, show_lit) + " | " + show_eff(e->right, show_lit) + ")";
    case Eff::K::Star: return show_eff(e->inner, show_lit) + "*";
    case Eff::K::Ground: {
      if (e->lit) return show_lit(*e->lit);
      std::string out = e->ctor + "(";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) out += ",";
        out += show_term(e->args[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

std::string show_type(const TypePtr& t, const ShowLit& show_lit) {
  auto eff_text = [&show_lit](const EffPtr& e) { return "{" + show_eff(e, show_lit) + "}"; };
  switch (t->k) {
    case Type::K::Con:
    case Type::K::Var: return t->name;
    case Type::K::Bool: return "bool";
    case Type::K::Unit: return "unit";
    case Type::K::App: return "(" + show_type(t->fn, show_lit) + " " + show_type(t->arg, show_lit) + ")";
    case Type::K::EffType: return eff_text(t->eff);
    case Type::K::Sing: return "(S " + show_term(t->val, show_lit) + ")";
    case Type::K::Pi:
      return "(pi (" + t->binder + " " + show_type(t->dom, show_lit) + ") " + eff_text(t->eff) + " " +
             show_type(t->res, show_lit) + ")";
    case Type::K::Forall:
      return "(all (" + t->binder + " " + t->kind.show() + ") " + eff_text(t->eff) + " " +
             show_type(t->res, show_lit) + ")";
  }
  return "?";
}

std::string show_term(const TermPtr& t) {
  return show_term(t, [](const Elem&) { return std::string("<elem>"); });
}

std::string show_type(const TypePtr& t) {
  return show_type(t, [](const Elem&) { return std::string("<elem>"); });
}

}  // namespace eq::lang
