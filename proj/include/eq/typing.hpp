#ifndef EQ_TYPING_HPP_
#define EQ_TYPING_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eq/ast.hpp"
#include "eq/effect_lang.hpp"
#include "eq/parser.hpp"
#include "eq/report.hpp"

namespace eq::lang {

// The static half of a framework instantiation: effect algebra, effect
// constructor vocabulary, type constructor kinds, primitive arities.
struct TypeSystem {
  QuantalePtr q;    // iteration attached where available
  IndexedPtr idx;   // null for closed quantales
  CtorTable ctors;
  std::map<std::string, Kind> tycon_kinds;
  std::map<std::string, int> prim_arity;

  EffectContext eff_ctx() const { return EffectContext{q, &ctors, idx}; }
  ParseEnv parse_env() const { return ParseEnv{eff_ctx(), prim_arity, tycon_kinds}; }
};

// StateEnv values: primitive names to types, ordered by extension.
using Sigma = std::map<std::string, TypePtr>;

bool sigma_leq(const TypeSystem& ts, const Sigma& lo, const Sigma& hi);

// Parse environment that also resolves constants introduced by a particular
// state environment (runtime-allocated locks and locations).
ParseEnv parse_env_for(const TypeSystem& ts, const Sigma& sigma);

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Type environment with term and type variable bindings.
class Context {
 public:
  Context extend_term(const std::string& x, TypePtr ty) const;
  Context extend_type(const std::string& a, Kind k) const;
  const TypePtr* lookup_term(const std::string& x) const;
  const Kind* lookup_type(const std::string& a) const;
  bool bound(const std::string& name) const;

 private:
  struct Entry {
    std::string name;
    TypePtr ty;              // term binding when non-null
    std::optional<Kind> kind;  // type binding otherwise
  };
  std::vector<Entry> entries_;
};

struct TypingResult {
  TypePtr type;
  EffPtr effect;  // normalized, well-kinded, nontrivial
  std::vector<std::string> trace;
};

// Syntax-directed inference of the minimal type and effect. Throws TypeError
// on unbound names, argument mismatches, trivially invalid effects,
// ill-kinded type arguments, and dependent applications of non-values.
TypingResult infer(const TypeSystem& ts, const Context& gamma, const Sigma& sigma,
                   const TermPtr& e);

Kind kind_of(const TypeSystem& ts, const Context& gamma, const Sigma& sigma, const TypePtr& t);
// Checks a syntactic effect at kind E (constructor arguments must be values
// typeable with the identity effect).
void kind_effect(const TypeSystem& ts, const Context& gamma, const Sigma& sigma, const EffPtr& e);

// Structural equality up to renaming of bound variables, with latent effects
// compared by effect equivalence.
bool type_equiv(const TypeSystem& ts, const TypePtr& a, const TypePtr& b);

// Validates arity shape, identity prefix effects, well-kindedness in the
// empty environment, and the closed-base-type restriction.
LawReport check_primitive_table(const TypeSystem& ts, const Sigma& sigma);

// Primitives of arity n must appear in application spines of exactly n
// arguments. Throws TypeError otherwise.
void check_fully_applied(const TypeSystem& ts, const TermPtr& e);

// Term variables free in a type (through singletons and latent effects).
std::set<std::string> type_free_term_vars(const TypeSystem& ts, const TypePtr& t);

std::string show_type_ctx(const TypeSystem& ts, const TypePtr& t);

}  // namespace eq::lang

#endif  // EQ_TYPING_HPP_
