#ifndef EQ_AST_HPP_
#define EQ_AST_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eq/elem.hpp"

namespace eq::lang {

// Kinds: * for types, E for effects, arrows for type constructors.
struct Kind {
  enum class K { Star, Effect, Arrow };
  K k = K::Star;
  std::shared_ptr<const Kind> from, to;

  static Kind star() { return Kind{}; }
  static Kind effect() { return Kind{K::Effect, nullptr, nullptr}; }
  static Kind arrow(Kind a, Kind b) {
    return Kind{K::Arrow, std::make_shared<const Kind>(std::move(a)),
                std::make_shared<const Kind>(std::move(b))};
  }
  bool operator==(const Kind& o) const {
    if (k != o.k) return false;
    if (k != K::Arrow) return true;
    return *from == *o.from && *to == *o.to;
  }
  std::string show() const {
    switch (k) {
      case K::Star: return "*";
      case K::Effect: return "E";
      case K::Arrow: return "(=> " + from->show() + " " + to->show() + ")";
    }
    return "?";
  }
};

struct Term;
struct Type;
struct Eff;
using TermPtr = std::shared_ptr<const Term>;
using TypePtr = std::shared_ptr<const Type>;
using EffPtr = std::shared_ptr<const Eff>;

// Syntactic effects: variables, unit, the two compositions, iteration, and
// ground constructor applications. A Ground node is either a constructor
// applied to syntactic values, or an already-collapsed quantale element.
struct Eff {
  enum class K { Var, Unit, Seq, Join, Star, Ground };
  K k = K::Unit;
  std::string var;            // Var
  EffPtr left, right;         // Seq, Join
  EffPtr inner;               // Star
  std::string ctor;           // Ground: constructor name; empty for literals
  std::vector<TermPtr> args;  // Ground: constructor arguments
  std::optional<Elem> lit;    // Ground: collapsed element
};

struct Type {
  enum class K { Con, App, EffType, Pi, Var, Bool, Forall, Unit, Sing };
  K k = K::Bool;
  std::string name;    // Con: constructor; Var: type variable
  TypePtr fn, arg;     // App
  EffPtr eff;          // EffType payload; Pi/Forall latent effect
  std::string binder;  // Pi: term variable; Forall: type variable
  TypePtr dom;         // Pi argument type
  Kind kind;           // Forall binder kind
  TypePtr res;         // Pi/Forall result type
  TermPtr val;         // Sing
};

struct Term {
  enum class K { Prim, Var, Lam, App, BoolLit, If, While, TyLam, TyApp, UnitLit, Seq, Let };
  K k = K::UnitLit;
  std::string name;    // Prim, Var
  int arity = 0;       // Prim
  bool bval = false;   // BoolLit
  std::string binder;  // Lam, TyLam, Let
  TypePtr ann;         // Lam annotation
  Kind kind;           // TyLam binder kind
  TermPtr body;        // Lam, TyLam
  TermPtr fn, arg;     // App; TyApp uses fn + targ
  TypePtr targ;        // TyApp
  TermPtr cond, thn, els;  // If; While uses cond + thn (body)
  TermPtr first, second;   // Seq; Let binds `binder` to first in second
};

// --- constructors -----------------------------------------------------------

EffPtr eff_var(std::string name);
EffPtr eff_unit();
EffPtr eff_seq(EffPtr a, EffPtr b);
EffPtr eff_join(EffPtr a, EffPtr b);
EffPtr eff_star(EffPtr a);
EffPtr eff_ground(std::string ctor, std::vector<TermPtr> args);
EffPtr eff_lit(Elem e);

TypePtr ty_con(std::string name);
TypePtr ty_app(TypePtr fn, TypePtr arg);
TypePtr ty_eff(EffPtr e);
TypePtr ty_pi(std::string binder, TypePtr dom, EffPtr latent, TypePtr res);
TypePtr ty_var(std::string name);
TypePtr ty_bool();
TypePtr ty_forall(std::string binder, Kind kind, EffPtr latent, TypePtr res);
TypePtr ty_unit();
TypePtr ty_sing(TermPtr v);

TermPtr tm_prim(std::string name, int arity);
TermPtr tm_var(std::string name);
TermPtr tm_lam(std::string binder, TypePtr ann, TermPtr body);
TermPtr tm_app(TermPtr fn, TermPtr arg);
TermPtr tm_bool(bool b);
TermPtr tm_if(TermPtr c, TermPtr t, TermPtr e);
TermPtr tm_while(TermPtr c, TermPtr body);
TermPtr tm_tylam(std::string binder, Kind k, TermPtr body);
TermPtr tm_tyapp(TermPtr fn, TypePtr t);
TermPtr tm_unit();
TermPtr tm_seq(TermPtr a, TermPtr b);
TermPtr tm_let(std::string binder, TermPtr bound, TermPtr body);

// --- predicates and queries --------------------------------------------------

// Syntactic values: constants (arity-0 primitives), lambdas, type lambdas,
// variables, booleans, unit.
bool is_value(const TermPtr& t);

// Name of a value usable as an effect-constructor index (variables and
// primitive constants).
std::optional<std::string> value_index_name(const TermPtr& v);

std::set<std::string> term_free_vars(const TermPtr& t);

using ShowLit = std::function<std::string(const Elem&)>;

std::string show_term(const TermPtr& t);
std::string show_type(const TypePtr& t);
std::string show_term(const TermPtr& t, const ShowLit& show_lit);
std::string show_type(const TypePtr& t, const ShowLit& show_lit);

// Effects print with the CLI surface syntax; literal elements need the
// quantale, so printing takes a callback.
std::string show_eff(const EffPtr& e, const ShowLit& show_lit);

}  // namespace eq::lang

#endif  // EQ_AST_HPP_
