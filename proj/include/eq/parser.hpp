#ifndef EQ_PARSER_HPP_
#define EQ_PARSER_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "eq/ast.hpp"
#include "eq/effect_lang.hpp"

namespace eq::lang {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Names the parser must resolve: the effect vocabulary, primitive arities,
// and type constructor names.
struct ParseEnv {
  EffectContext eff;
  std::map<std::string, int> prim_arity;
  std::map<std::string, Kind> tycon_kinds;
};

// Program surface syntax (s-expressions):
//   (lam (x TYPE) e) (app e1 e2 ...) (tylam (a KIND) e) (tyapp e TYPE ...)
//   (if c e1 e2) (while c e) (seq e1 e2 ...) (let (x e1) e2)
//   true | false | unit | identifiers
// Types: (pi (x T) {EFF} T') (all (a K) {EFF} T) (S v) (T arg ...) bool unit
// Kinds: * | E | (=> K K)
// Effects (inside braces): I | 'a | e1 ; e2 | e1 | e2 | e* | Name(v,...) |
// instance literals.
TermPtr parse_term(const ParseEnv& env, std::string_view text);
TypePtr parse_type(const ParseEnv& env, std::string_view text);
EffPtr parse_effect(const ParseEnv& env, std::string_view text);
Kind parse_kind(std::string_view text);

}  // namespace eq::lang

#endif  // EQ_PARSER_HPP_
