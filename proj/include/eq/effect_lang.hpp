#ifndef EQ_EFFECT_LANG_HPP_
#define EQ_EFFECT_LANG_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eq/ast.hpp"
#include "eq/indexed.hpp"
#include "eq/quantale.hpp"

namespace eq::lang {

// A ground effect constructor: collapses to a quantale element once every
// argument has an index name (variables count; the quantale is over
// syntactic values).
struct EffectCtor {
  int arity = 0;
  std::function<std::optional<Elem>(const std::vector<std::string>&)> collapse;
};

using CtorTable = std::map<std::string, EffectCtor>;

// Everything the syntactic effect operations need to know about the
// semantic side: the quantale, the constructor vocabulary, and (when the
// quantale is indexed) how to rename index values inside elements.
struct EffectContext {
  QuantalePtr q;
  const CtorTable* ctors = nullptr;  // may be null: literal-only systems
  IndexedPtr idx;                    // may be null: closed quantale

  Elem rename_elem(const IndexFn& f, const Elem& e) const {
    return idx ? idx->map_effect(f, e) : e;
  }
  std::vector<std::string> elem_indices(const Elem& e) const {
    return idx ? idx->indices(e) : std::vector<std::string>{};
  }
};

// Canonical form: associativity flattened, join operands sorted and deduped,
// seq units dropped, adjacent ground operands collapsed through the quantale
// where defined, seq distributed over join up to a size bound. Idempotent.
EffPtr normalize(const EffectContext& ctx, const EffPtr& e);

// False iff some form reachable without expansive equivalence rules applies
// seq, join, or star to ground operands whose semantic operation is
// undefined.
bool nontrivial(const EffectContext& ctx, const EffPtr& e);

// Closed nontrivial effects decide by full collapse and semantic equality;
// open effects compare canonical forms (sound, deliberately incomplete).
bool equiv(const EffectContext& ctx, const EffPtr& a, const EffPtr& b);

// a below b iff join(a, b) is equivalent to b.
bool subeffect(const EffectContext& ctx, const EffPtr& a, const EffPtr& b);

// Effect variables occurring (they are all free; binders live on types).
std::set<std::string> eff_vars(const EffPtr& e);
// Term-level names: constructor arguments plus index values inside literals.
std::set<std::string> eff_term_names(const EffectContext& ctx, const EffPtr& e);

// Capture-avoiding substitutions. Value substitution into collapsed literals
// goes through the indexed quantale's renaming.
EffPtr subst_value_in_eff(const EffectContext& ctx, const EffPtr& e, const std::string& x,
                          const TermPtr& v);
EffPtr subst_type_in_eff(const EffectContext& ctx, const EffPtr& e, const std::string& alpha,
                         const TypePtr& t);
TermPtr subst_term_value(const EffectContext& ctx, const TermPtr& t, const std::string& x,
                         const TermPtr& v);
TypePtr subst_type_value(const EffectContext& ctx, const TypePtr& ty, const std::string& x,
                         const TermPtr& v);
TermPtr subst_term_type(const EffectContext& ctx, const TermPtr& t, const std::string& alpha,
                        const TypePtr& ty);
TypePtr subst_type_type(const EffectContext& ctx, const TypePtr& t, const std::string& alpha,
                        const TypePtr& ty);

// Fully collapse a closed nontrivial effect to its element. Nullopt when the
// effect is open or a collapse is undefined.
std::optional<Elem> collapse_closed(const EffectContext& ctx, const EffPtr& e);

// Structural equality on canonical forms, with literals compared through the
// quantale.
bool eff_struct_equal(const EffectContext& ctx, const EffPtr& a, const EffPtr& b);

std::string show_eff_ctx(const EffectContext& ctx, const EffPtr& e);

// A type of effect kind viewed as an effect: effect-as-type payloads and
// type variables convert; anything else is nullopt.
std::optional<EffPtr> type_as_effect(const TypePtr& t);

}  // namespace eq::lang

#endif  // EQ_EFFECT_LANG_HPP_
