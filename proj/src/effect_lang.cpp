#include "eq/effect_lang.hpp"

#include <algorithm>
#include <stdexcept>

namespace eq::lang {
namespace {

constexpr size_t kDistributionBound = 64;   // max products kept when distributing
constexpr size_t kClosureBound = 64;        // max elements explored in join closures

struct Flags {
  bool undefined_op = false;
};

// Factors are normalized effects that are not seqs: Var, Ground, Star, or an
// undistributed Join. A product is a seq of factors; empty means unit.
using Product = std::vector<EffPtr>;
using SumOfProducts = std::vector<Product>;

std::string key_eff(const EffectContext& ctx, const EffPtr& e);

EffPtr rebuild_product(const Product& p) {
  if (p.empty()) return eff_unit();
  EffPtr out = p[0];
  for (size_t i = 1; i < p.size(); ++i) out = eff_seq(out, p[i]);
  return out;
}

EffPtr rebuild(const EffectContext& ctx, SumOfProducts nf) {
  std::vector<EffPtr> exprs;
  exprs.reserve(nf.size());
  for (const auto& p : nf) exprs.push_back(rebuild_product(p));
  std::sort(exprs.begin(), exprs.end(), [&](const EffPtr& a, const EffPtr& b) {
    return key_eff(ctx, a) < key_eff(ctx, b);
  });
  exprs.erase(std::unique(exprs.begin(), exprs.end(),
                          [&](const EffPtr& a, const EffPtr& b) {
                            return key_eff(ctx, a) == key_eff(ctx, b);
                          }),
              exprs.end());
  if (exprs.empty()) return eff_unit();
  EffPtr out = exprs[0];
  for (size_t i = 1; i < exprs.size(); ++i) out = eff_join(out, exprs[i]);
  return out;
}

bool is_lit(const EffPtr& e) { return e->k == Eff::K::Ground && e->lit.has_value(); }

// Greedy left-to-right collapse of adjacent literal factors; the full
// span-combination search for undefined operations runs separately.
Product collapse_product(const EffectContext& ctx, const Product& in, Flags& flags) {
  Product out;
  for (const auto& f : in) {
    if (is_lit(f) && !out.empty() && is_lit(out.back())) {
      auto combined = ctx.q->seq(*out.back()->lit, *f->lit);
      if (combined) {
        out.back() = eff_lit(*combined);
        continue;
      }
      flags.undefined_op = true;  // adjacent ground pair with undefined seq
    }
    out.push_back(f);
  }
  return out;
}

// All parenthesizations of each maximal literal run: detects spans whose
// every combination route hits an undefined seq somewhere.
void scan_product_undefined(const EffectContext& ctx, const Product& p, Flags& flags) {
  size_t i = 0;
  while (i < p.size()) {
    if (!is_lit(p[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < p.size() && is_lit(p[j])) ++j;
    const size_t n = j - i;
    if (n >= 2) {
      // vals[a][b]: collapsed values of the run slice [a, a+b].
      std::vector<std::vector<std::vector<Elem>>> vals(n);
      for (size_t a = 0; a < n; ++a) {
        vals[a].resize(n - a);
        vals[a][0].push_back(*p[i + a]->lit);
      }
      for (size_t len = 1; len < n && !flags.undefined_op; ++len) {
        for (size_t a = 0; a + len < n; ++a) {
          auto& slot = vals[a][len];
          for (size_t split = 0; split < len; ++split) {
            for (const auto& l : vals[a][split]) {
              for (const auto& r : vals[a + split + 1][len - split - 1]) {
                auto combined = ctx.q->seq(l, r);
                if (!combined) {
                  flags.undefined_op = true;
                  continue;
                }
                bool fresh = true;
                for (const auto& seen : slot)
                  if (ctx.q->equal(seen, *combined)) {
                    fresh = false;
                    break;
                  }
                if (fresh && slot.size() < 8) slot.push_back(*combined);
              }
            }
          }
        }
      }
    }
    i = j;
  }
}

// Join-side literal combination: greedy slots for the canonical form, plus a
// closure walk that flags any undefined pairwise join.
std::vector<EffPtr> combine_join_lits(const EffectContext& ctx, std::vector<Elem> lits,
                                      Flags& flags) {
  // Closure scan for undefined pairs.
  std::vector<Elem> closure = lits;
  for (size_t i = 0; i < closure.size() && closure.size() < kClosureBound; ++i) {
    for (size_t j = i + 1; j < closure.size(); ++j) {
      auto joined = ctx.q->join(closure[i], closure[j]);
      if (!joined) {
        flags.undefined_op = true;
        continue;
      }
      bool fresh = true;
      for (const auto& seen : closure)
        if (ctx.q->equal(seen, *joined)) {
          fresh = false;
          break;
        }
      if (fresh && closure.size() < kClosureBound) closure.push_back(*joined);
    }
  }
  // Greedy combination in key order for determinism.
  std::sort(lits.begin(), lits.end(), [&](const Elem& a, const Elem& b) {
    return ctx.q->show(a) < ctx.q->show(b);
  });
  std::vector<Elem> slots;
  for (const auto& l : lits) {
    bool placed = false;
    for (auto& s : slots) {
      auto joined = ctx.q->join(s, l);
      if (joined) {
        s = *joined;
        placed = true;
        break;
      }
    }
    if (!placed) slots.push_back(l);
  }
  std::vector<EffPtr> out;
  out.reserve(slots.size());
  for (const auto& s : slots) out.push_back(eff_lit(s));
  return out;
}

SumOfProducts norm_rec(const EffectContext& ctx, const EffPtr& e, Flags& flags);

EffPtr norm_expr(const EffectContext& ctx, const EffPtr& e, Flags& flags) {
  return rebuild(ctx, norm_rec(ctx, e, flags));
}

SumOfProducts norm_rec(const EffectContext& ctx, const EffPtr& e, Flags& flags) {
  switch (e->k) {
    case Eff::K::Var: return {{e}};
    case Eff::K::Unit: return {{}};
    case Eff::K::Ground: {
      if (e->lit) return {{e}};
      // Collapse a constructor application once every argument has an index
      // name; otherwise it stays symbolic (opaque, possibly-valid).
      if (ctx.ctors) {
        auto it = ctx.ctors->find(e->ctor);
        if (it != ctx.ctors->end()) {
          std::vector<std::string> names;
          bool all_named = true;
          for (const auto& a : e->args) {
            auto n = value_index_name(a);
            if (!n) {
              all_named = false;
              break;
            }
            names.push_back(*n);
          }
          if (all_named) {
            auto elem = it->second.collapse(names);
            if (elem) return {{eff_lit(*elem)}};
          }
        }
      }
      return {{e}};
    }
    case Eff::K::Star: {
      EffPtr inner = norm_expr(ctx, e->inner, flags);
      std::optional<Elem> inner_lit;
      if (inner->k == Eff::K::Unit) inner_lit = ctx.q->unit();
      if (is_lit(inner)) inner_lit = *inner->lit;
      if (inner_lit) {
        auto starred = ctx.q->star(*inner_lit);
        if (starred) return {{eff_lit(*starred)}};
        flags.undefined_op = true;  // ground iteration with no defined result
        return {{eff_star(inner)}};
      }
      if (inner->k == Eff::K::Star) return {{inner}};
      return {{eff_star(inner)}};
    }
    case Eff::K::Seq: {
      SumOfProducts lhs = norm_rec(ctx, e->left, flags);
      SumOfProducts rhs = norm_rec(ctx, e->right, flags);
      SumOfProducts out;
      if (lhs.size() * rhs.size() <= kDistributionBound) {
        for (const auto& pl : lhs)
          for (const auto& pr : rhs) {
            Product p = pl;
            p.insert(p.end(), pr.begin(), pr.end());
            scan_product_undefined(ctx, p, flags);
            out.push_back(collapse_product(ctx, p, flags));
          }
      } else {
        // Too wide to distribute: keep both sides as opaque factors.
        Product p;
        EffPtr l = rebuild(ctx, std::move(lhs));
        EffPtr r = rebuild(ctx, std::move(rhs));
        if (l->k != Eff::K::Unit) p.push_back(l);
        if (r->k != Eff::K::Unit) p.push_back(r);
        scan_product_undefined(ctx, p, flags);
        out.push_back(collapse_product(ctx, p, flags));
      }
      return out;
    }
    case Eff::K::Join: {
      SumOfProducts lhs = norm_rec(ctx, e->left, flags);
      SumOfProducts rhs = norm_rec(ctx, e->right, flags);
      SumOfProducts products;
      std::vector<Elem> lits;
      auto take = [&](SumOfProducts& side) {
        for (auto& p : side) {
          if (p.empty())  // the unit joins as its literal element
            lits.push_back(ctx.q->unit());
          else if (p.size() == 1 && is_lit(p[0]))
            lits.push_back(*p[0]->lit);
          else
            products.push_back(std::move(p));
        }
      };
      take(lhs);
      take(rhs);
      if (!lits.empty())
        for (auto& l : combine_join_lits(ctx, std::move(lits), flags)) products.push_back({l});
      return products;
    }
  }
  return {{}};
}

std::string key_eff(const EffectContext& ctx, const EffPtr& e) {
  switch (e->k) {
    case Eff::K::Var: return "v(" + e->var + ")";
    case Eff::K::Unit: return "u";
    case Eff::K::Seq: return "s(" + key_eff(ctx, e->left) + key_eff(ctx, e->right) + ")";
    case Eff::K::Join: return "j(" + key_eff(ctx, e->left) + key_eff(ctx, e->right) + ")";
    case Eff::K::Star: return "*(" + key_eff(ctx, e->inner) + ")";
    case Eff::K::Ground: {
      if (e->lit) return "l(" + ctx.q->show(*e->lit) + ")";
      std::string out = "g(" + e->ctor;
      for (const auto& a : e->args) out += "," + show_term(a);
      return out + ")";
    }
  }
  return "?";
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  std::string out = base;
  while (taken.count(out)) out += "'";
  return out;
}

}  // namespace

EffPtr normalize(const EffectContext& ctx, const EffPtr& e) {
  Flags flags;
  return norm_expr(ctx, e, flags);
}

bool nontrivial(const EffectContext& ctx, const EffPtr& e) {
  Flags flags;
  norm_expr(ctx, e, flags);
  return !flags.undefined_op;
}

std::optional<Elem> collapse_closed(const EffectContext& ctx, const EffPtr& e) {
  Flags flags;
  EffPtr n = norm_expr(ctx, e, flags);
  if (flags.undefined_op) return std::nullopt;
  if (n->k == Eff::K::Unit) return ctx.q->unit();
  if (is_lit(n)) return *n->lit;
  return std::nullopt;
}

bool eff_struct_equal(const EffectContext& ctx, const EffPtr& a, const EffPtr& b) {
  if (a->k != b->k) {
    // Unit and the literal unit element are the same canonical form.
    if (a->k == Eff::K::Unit && is_lit(b)) return ctx.q->equal(ctx.q->unit(), *b->lit);
    if (b->k == Eff::K::Unit && is_lit(a)) return ctx.q->equal(ctx.q->unit(), *a->lit);
    return false;
  }
  switch (a->k) {
    case Eff::K::Var: return a->var == b->var;
    case Eff::K::Unit: return true;
    case Eff::K::Seq:
    case Eff::K::Join:
      return eff_struct_equal(ctx, a->left, b->left) && eff_struct_equal(ctx, a->right, b->right);
    case Eff::K::Star: return eff_struct_equal(ctx, a->inner, b->inner);
    case Eff::K::Ground: {
      if (a->lit.has_value() != b->lit.has_value()) return false;
      if (a->lit) return ctx.q->equal(*a->lit, *b->lit);
      if (a->ctor != b->ctor || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (show_term(a->args[i]) != show_term(b->args[i])) return false;
      return true;
    }
  }
  return false;
}

bool equiv(const EffectContext& ctx, const EffPtr& a, const EffPtr& b) {
  bool a_closed = eff_vars(a).empty();
  bool b_closed = eff_vars(b).empty();
  if (a_closed && b_closed) {
    auto ea = collapse_closed(ctx, a);
    auto eb = collapse_closed(ctx, b);
    if (ea && eb) return ctx.q->equal(*ea, *eb);
  }
  return eff_struct_equal(ctx, normalize(ctx, a), normalize(ctx, b));
}

bool subeffect(const EffectContext& ctx, const EffPtr& a, const EffPtr& b) {
  return equiv(ctx, eff_join(a, b), b);
}

std::set<std::string> eff_vars(const EffPtr& e) {
  std::set<std::string> out;
  std::function<void(const EffPtr&)> go = [&](const EffPtr& x) {
    switch (x->k) {
      case Eff::K::Var: out.insert(x->var); return;
      case Eff::K::Unit:
      case Eff::K::Ground: return;
      case Eff::K::Seq:
      case Eff::K::Join:
        go(x->left);
        go(x->right);
        return;
      case Eff::K::Star: go(x->inner); return;
    }
  };
  go(e);
  return out;
}

std::set<std::string> eff_term_names(const EffectContext& ctx, const EffPtr& e) {
  std::set<std::string> out;
  std::function<void(const EffPtr&)> go = [&](const EffPtr& x) {
    switch (x->k) {
      case Eff::K::Var:
      case Eff::K::Unit: return;
      case Eff::K::Seq:
      case Eff::K::Join:
        go(x->left);
        go(x->right);
        return;
      case Eff::K::Star: go(x->inner); return;
      case Eff::K::Ground:
        if (x->lit) {
          for (auto& n : ctx.elem_indices(*x->lit)) out.insert(n);
        } else {
          for (const auto& a : x->args) {
            auto fv = term_free_vars(a);
            out.insert(fv.begin(), fv.end());
          }
        }
        return;
    }
  };
  go(e);
  return out;
}

// --- substitution ------------------------------------------------------------

namespace {

TermPtr subst_tv(const EffectContext& ctx, const TermPtr& t, const std::string& x,
                 const TermPtr& v);
TypePtr subst_ty_v(const EffectContext& ctx, const TypePtr& ty, const std::string& x,
                   const TermPtr& v);
EffPtr subst_eff_v(const EffectContext& ctx, const EffPtr& e, const std::string& x,
                   const TermPtr& v);

// Renames a term binder to avoid capturing free variables of v.
struct BinderRename {
  std::string name;
  bool renamed = false;
};

BinderRename freshen(const std::string& binder, const TermPtr& v,
                     const std::set<std::string>& body_names) {
  auto fv = term_free_vars(v);
  if (!fv.count(binder)) return {binder, false};
  std::set<std::string> taken = fv;
  taken.insert(body_names.begin(), body_names.end());
  return {fresh_name(binder, taken), true};
}

EffPtr subst_eff_v(const EffectContext& ctx, const EffPtr& e, const std::string& x,
                   const TermPtr& v) {
  switch (e->k) {
    case Eff::K::Var:
    case Eff::K::Unit: return e;
    case Eff::K::Seq: return eff_seq(subst_eff_v(ctx, e->left, x, v),
                                     subst_eff_v(ctx, e->right, x, v));
    case Eff::K::Join: return eff_join(subst_eff_v(ctx, e->left, x, v),
                                       subst_eff_v(ctx, e->right, x, v));
    case Eff::K::Star: return eff_star(subst_eff_v(ctx, e->inner, x, v));
    case Eff::K::Ground: {
      if (e->lit) {
        auto names = ctx.elem_indices(*e->lit);
        if (std::find(names.begin(), names.end(), x) == names.end()) return e;
        auto vn = value_index_name(v);
        if (!vn)
          throw std::logic_error("substituting an unnamed value into an effect element");
        return eff_lit(ctx.rename_elem(
            [&](const std::string& s) { return s == x ? *vn : s; }, *e->lit));
      }
      std::vector<TermPtr> args;
      args.reserve(e->args.size());
      for (const auto& a : e->args) args.push_back(subst_tv(ctx, a, x, v));
      return eff_ground(e->ctor, std::move(args));
    }
  }
  return e;
}

TypePtr subst_ty_v(const EffectContext& ctx, const TypePtr& ty, const std::string& x,
                   const TermPtr& v) {
  switch (ty->k) {
    case Type::K::Con:
    case Type::K::Var:
    case Type::K::Bool:
    case Type::K::Unit: return ty;
    case Type::K::App:
      return ty_app(subst_ty_v(ctx, ty->fn, x, v), subst_ty_v(ctx, ty->arg, x, v));
    case Type::K::EffType: return ty_eff(subst_eff_v(ctx, ty->eff, x, v));
    case Type::K::Sing: return ty_sing(subst_tv(ctx, ty->val, x, v));
    case Type::K::Forall:
      return ty_forall(ty->binder, ty->kind, subst_eff_v(ctx, ty->eff, x, v),
                       subst_ty_v(ctx, ty->res, x, v));
    case Type::K::Pi: {
      TypePtr dom = subst_ty_v(ctx, ty->dom, x, v);
      if (ty->binder == x) return ty_pi(ty->binder, dom, ty->eff, ty->res);
      auto rn = freshen(ty->binder, v, {});
      EffPtr latent = ty->eff;
      TypePtr res = ty->res;
      if (rn.renamed) {
        TermPtr fresh_var = tm_var(rn.name);
        latent = subst_eff_v(ctx, latent, ty->binder, fresh_var);
        res = subst_ty_v(ctx, res, ty->binder, fresh_var);
      }
      return ty_pi(rn.name, dom, subst_eff_v(ctx, latent, x, v), subst_ty_v(ctx, res, x, v));
    }
  }
  return ty;
}

TermPtr subst_tv(const EffectContext& ctx, const TermPtr& t, const std::string& x,
                 const TermPtr& v) {
  switch (t->k) {
    case Term::K::Prim:
    case Term::K::BoolLit:
    case Term::K::UnitLit: return t;
    case Term::K::Var: return t->name == x ? v : t;
    case Term::K::Lam: {
      TypePtr ann = subst_ty_v(ctx, t->ann, x, v);
      if (t->binder == x) return tm_lam(t->binder, ann, t->body);
      auto rn = freshen(t->binder, v, term_free_vars(t->body));
      TermPtr body = t->body;
      if (rn.renamed) body = subst_tv(ctx, body, t->binder, tm_var(rn.name));
      return tm_lam(rn.name, ann, subst_tv(ctx, body, x, v));
    }
    case Term::K::TyLam:
      return tm_tylam(t->binder, t->kind, subst_tv(ctx, t->body, x, v));
    case Term::K::App: return tm_app(subst_tv(ctx, t->fn, x, v), subst_tv(ctx, t->arg, x, v));
    case Term::K::TyApp:
      return tm_tyapp(subst_tv(ctx, t->fn, x, v), subst_ty_v(ctx, t->targ, x, v));
    case Term::K::If:
      return tm_if(subst_tv(ctx, t->cond, x, v), subst_tv(ctx, t->thn, x, v),
                   subst_tv(ctx, t->els, x, v));
    case Term::K::While:
      return tm_while(subst_tv(ctx, t->cond, x, v), subst_tv(ctx, t->thn, x, v));
    case Term::K::Seq:
      return tm_seq(subst_tv(ctx, t->first, x, v), subst_tv(ctx, t->second, x, v));
    case Term::K::Let: {
      TermPtr bound = subst_tv(ctx, t->first, x, v);
      if (t->binder == x) return tm_let(t->binder, bound, t->second);
      auto rn = freshen(t->binder, v, term_free_vars(t->second));
      TermPtr body = t->second;
      if (rn.renamed) body = subst_tv(ctx, body, t->binder, tm_var(rn.name));
      return tm_let(rn.name, bound, subst_tv(ctx, body, x, v));
    }
  }
  return t;
}

EffPtr subst_eff_ty(const EffectContext& ctx, const EffPtr& e, const std::string& alpha,
                    const TypePtr& ty);

TypePtr subst_ty_ty(const EffectContext& ctx, const TypePtr& t, const std::string& alpha,
                    const TypePtr& ty) {
  switch (t->k) {
    case Type::K::Con:
    case Type::K::Bool:
    case Type::K::Unit: return t;
    case Type::K::Var: return t->name == alpha ? ty : t;
    case Type::K::App:
      return ty_app(subst_ty_ty(ctx, t->fn, alpha, ty), subst_ty_ty(ctx, t->arg, alpha, ty));
    case Type::K::EffType: return ty_eff(subst_eff_ty(ctx, t->eff, alpha, ty));
    case Type::K::Sing: return ty_sing(subst_term_type(ctx, t->val, alpha, ty));
    case Type::K::Pi:
      return ty_pi(t->binder, subst_ty_ty(ctx, t->dom, alpha, ty),
                   subst_eff_ty(ctx, t->eff, alpha, ty), subst_ty_ty(ctx, t->res, alpha, ty));
    case Type::K::Forall: {
      if (t->binder == alpha) return t;
      return ty_forall(t->binder, t->kind, subst_eff_ty(ctx, t->eff, alpha, ty),
                       subst_ty_ty(ctx, t->res, alpha, ty));
    }
  }
  return t;
}

EffPtr subst_eff_ty(const EffectContext& ctx, const EffPtr& e, const std::string& alpha,
                    const TypePtr& ty) {
  switch (e->k) {
    case Eff::K::Var: {
      if (e->var != alpha) return e;
      auto as_eff = type_as_effect(ty);
      if (!as_eff) throw std::logic_error("substituting a non-effect type for an effect variable");
      return *as_eff;
    }
    case Eff::K::Unit: return e;
    case Eff::K::Seq: return eff_seq(subst_eff_ty(ctx, e->left, alpha, ty),
                                     subst_eff_ty(ctx, e->right, alpha, ty));
    case Eff::K::Join: return eff_join(subst_eff_ty(ctx, e->left, alpha, ty),
                                       subst_eff_ty(ctx, e->right, alpha, ty));
    case Eff::K::Star: return eff_star(subst_eff_ty(ctx, e->inner, alpha, ty));
    case Eff::K::Ground: {
      if (e->lit) return e;
      std::vector<TermPtr> args;
      args.reserve(e->args.size());
      for (const auto& a : e->args) args.push_back(subst_term_type(ctx, a, alpha, ty));
      return eff_ground(e->ctor, std::move(args));
    }
  }
  return e;
}

}  // namespace

EffPtr subst_value_in_eff(const EffectContext& ctx, const EffPtr& e, const std::string& x,
                          const TermPtr& v) {
  return subst_eff_v(ctx, e, x, v);
}

EffPtr subst_type_in_eff(const EffectContext& ctx, const EffPtr& e, const std::string& alpha,
                         const TypePtr& t) {
  return subst_eff_ty(ctx, e, alpha, t);
}

TermPtr subst_term_value(const EffectContext& ctx, const TermPtr& t, const std::string& x,
                         const TermPtr& v) {
  return subst_tv(ctx, t, x, v);
}

TypePtr subst_type_value(const EffectContext& ctx, const TypePtr& ty, const std::string& x,
                         const TermPtr& v) {
  return subst_ty_v(ctx, ty, x, v);
}

TypePtr subst_type_type(const EffectContext& ctx, const TypePtr& t, const std::string& alpha,
                        const TypePtr& ty) {
  return subst_ty_ty(ctx, t, alpha, ty);
}

TermPtr subst_term_type(const EffectContext& ctx, const TermPtr& t, const std::string& alpha,
                        const TypePtr& ty) {
  switch (t->k) {
    case Term::K::Prim:
    case Term::K::Var:
    case Term::K::BoolLit:
    case Term::K::UnitLit: return t;
    case Term::K::Lam:
      return tm_lam(t->binder, subst_type_type(ctx, t->ann, alpha, ty),
                    subst_term_type(ctx, t->body, alpha, ty));
    case Term::K::TyLam:
      if (t->binder == alpha) return t;
      return tm_tylam(t->binder, t->kind, subst_term_type(ctx, t->body, alpha, ty));
    case Term::K::App:
      return tm_app(subst_term_type(ctx, t->fn, alpha, ty),
                    subst_term_type(ctx, t->arg, alpha, ty));
    case Term::K::TyApp:
      return tm_tyapp(subst_term_type(ctx, t->fn, alpha, ty),
                      subst_type_type(ctx, t->targ, alpha, ty));
    case Term::K::If:
      return tm_if(subst_term_type(ctx, t->cond, alpha, ty),
                   subst_term_type(ctx, t->thn, alpha, ty),
                   subst_term_type(ctx, t->els, alpha, ty));
    case Term::K::While:
      return tm_while(subst_term_type(ctx, t->cond, alpha, ty),
                      subst_term_type(ctx, t->thn, alpha, ty));
    case Term::K::Seq:
      return tm_seq(subst_term_type(ctx, t->first, alpha, ty),
                    subst_term_type(ctx, t->second, alpha, ty));
    case Term::K::Let:
      return tm_let(t->binder, subst_term_type(ctx, t->first, alpha, ty),
                    subst_term_type(ctx, t->second, alpha, ty));
  }
  return t;
}

std::optional<EffPtr> type_as_effect(const TypePtr& t) {
  if (t->k == Type::K::Var) return eff_var(t->name);
  if (t->k == Type::K::EffType) return t->eff;
  return std::nullopt;
}

std::string show_eff_ctx(const EffectContext& ctx, const EffPtr& e) {
  return show_eff(e, [&](const Elem& el) { return ctx.q->show(el); });
}

}  // namespace eq::lang
