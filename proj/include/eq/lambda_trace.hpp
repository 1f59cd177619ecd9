#ifndef EQ_LAMBDA_TRACE_HPP_
#define EQ_LAMBDA_TRACE_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eq/ast.hpp"
#include "eq/regex.hpp"

namespace eq::lang {

// The history-effect source fragment: events applied to constants, no
// recursion, no quantifiers. Lambdas carry domain annotations so judgments
// are synthesizable.
struct LTType;
struct LTTerm;
using LTTypePtr = std::shared_ptr<const LTType>;
using LTTermPtr = std::shared_ptr<const LTTerm>;

struct LTType {
  enum class K { Unit, Bool, Event, Fn };
  K k = K::Unit;
  LTTypePtr dom, res;  // Fn
  RegexPtr latent;     // Fn
};

struct LTTerm {
  enum class K { Var, Const, Ev, If, App, Lam, Let, BoolLit, UnitLit };
  K k = K::UnitLit;
  std::string name;    // Var, Const; Ev carries the event here too
  bool bval = false;   // BoolLit
  std::string binder;  // Lam, Let
  LTTypePtr ann;       // Lam
  LTTermPtr a, b, c;   // If(a,b,c); App(a,b); Lam body a; Let bound a, body b; Ev none
};

// Surface syntax: (lam (x T) e) (let (x v) e) (ev c) (if c t e) (app f a)
// true false unit identifiers; types unit | bool | event | (fn T {H} T).
LTTermPtr parse_lambda_trace(const std::vector<std::string>& alphabet, std::string_view text);

struct LTJudgment {
  LTTypePtr type;
  RegexPtr history;
};

// Direct algorithmic reading of the source system's type-and-history rules;
// independent of the core calculus.
LTJudgment infer_lambda_trace(const std::vector<std::string>& alphabet,
                              const std::map<std::string, LTTypePtr>& gamma, const LTTermPtr& t);

// The type-and-effect-preserving translation into the core language.
TermPtr translate_lambda_trace(const std::vector<std::string>& alphabet, const LTTermPtr& t);

TypePtr lt_type_to_core(const LTTypePtr& t);

std::string show_lt_term(const LTTermPtr& t);

}  // namespace eq::lang

#endif  // EQ_LAMBDA_TRACE_HPP_
