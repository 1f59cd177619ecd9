#include "eq/parser.hpp"

#include <cctype>
#include <vector>

namespace eq::lang {
namespace {

// --- s-expression reader -----------------------------------------------------

struct Sexp {
  enum class K { Atom, List, Brace };
  K k = K::Atom;
  std::string text;        // Atom content or Brace payload
  std::vector<Sexp> kids;  // List
};

struct Reader {
  std::string_view src;
  size_t pos = 0;

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {  // comment to end of line
        while (pos < src.size() && src[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  Sexp read() {
    skip_ws();
    if (pos >= src.size()) throw ParseError("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      Sexp list;
      list.k = Sexp::K::List;
      while (true) {
        skip_ws();
        if (pos >= src.size()) throw ParseError("unterminated list");
        if (src[pos] == ')') {
          ++pos;
          return list;
        }
        list.kids.push_back(read());
      }
    }
    if (c == ')') throw ParseError("unexpected ')'");
    if (c == '{') {
      size_t depth = 0;
      size_t start = ++pos;
      while (pos < src.size()) {
        if (src[pos] == '{') ++depth;
        if (src[pos] == '}') {
          if (depth == 0) {
            Sexp b;
            b.k = Sexp::K::Brace;
            b.text = std::string(src.substr(start, pos - start));
            ++pos;
            return b;
          }
          --depth;
        }
        ++pos;
      }
      throw ParseError("unterminated effect braces");
    }
    size_t start = pos;
    while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
           src[pos] != '(' && src[pos] != ')' && src[pos] != '{' && src[pos] != '}')
      ++pos;
    Sexp atom;
    atom.text = std::string(src.substr(start, pos - start));
    return atom;
  }
};

// --- effect text ---------------------------------------------------------------

struct EffParser {
  const ParseEnv& env;

  static std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
  }

  // Split on a top-level single-character delimiter, respecting (), {}.
  static std::vector<std::string> split_top(std::string_view s, char delim) {
    std::vector<std::string> out;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      if (c == '(' || c == '{' || c == '[') ++depth;
      if (c == ')' || c == '}' || c == ']') --depth;
      if (c == delim && depth == 0) {
        out.push_back(std::string(s.substr(start, i - start)));
        start = i + 1;
      }
    }
    out.push_back(std::string(s.substr(start)));
    return out;
  }

  static bool balanced(std::string_view s) {
    int depth = 0;
    for (char c : s) {
      if (c == '(' || c == '{' || c == '[') ++depth;
      if (c == ')' || c == '}' || c == ']') --depth;
      if (depth < 0) return false;
    }
    return depth == 0;
  }

  EffPtr parse(std::string_view text) const {
    std::string t = trim(text);
    if (t.empty()) throw ParseError("empty effect");
    auto joins = split_top(t, '|');
    if (joins.size() > 1) {
      EffPtr out = parse_seq(joins[0]);
      for (size_t i = 1; i < joins.size(); ++i) out = eff_join(out, parse_seq(joins[i]));
      return out;
    }
    return parse_seq(t);
  }

  EffPtr parse_seq(std::string_view text) const {
    std::string t = trim(text);
    auto parts = split_top(t, ';');
    if (parts.size() > 1) {
      EffPtr out = parse_star(parts[0]);
      for (size_t i = 1; i < parts.size(); ++i) out = eff_seq(out, parse_star(parts[i]));
      return out;
    }
    return parse_star(t);
  }

  EffPtr parse_star(std::string_view text) const {
    std::string t = trim(text);
    // Instance literals win first: regex texts like a*b* are one literal.
    if (auto lit = env.eff.q->parse(t)) return eff_lit(*lit);
    int stars = 0;
    while (!t.empty() && t.back() == '*' && balanced(std::string_view(t).substr(0, t.size() - 1))) {
      t.pop_back();
      t = trim(t);
      ++stars;
    }
    EffPtr out = parse_atom(t);
    for (int i = 0; i < stars; ++i) out = eff_star(out);
    return out;
  }

  EffPtr parse_atom(std::string_view text) const {
    std::string t = trim(text);
    if (t.empty()) throw ParseError("empty effect atom");
    if (t == "I") return eff_unit();
    if (t[0] == '\'') return eff_var(t.substr(1));
    // Constructor application Name(v1,...,vk)?
    size_t paren = t.find('(');
    if (paren != std::string::npos && paren > 0 && t.back() == ')') {
      std::string name = t.substr(0, paren);
      if (env.eff.ctors && env.eff.ctors->count(name)) {
        std::string inner = t.substr(paren + 1, t.size() - paren - 2);
        std::vector<TermPtr> args;
        if (!trim(inner).empty()) {
          for (const auto& piece : split_top(inner, ',')) {
            std::string arg = trim(piece);
            if (arg.empty()) throw ParseError("empty constructor argument");
            auto it = env.prim_arity.find(arg);
            args.push_back(it != env.prim_arity.end() ? tm_prim(arg, it->second) : tm_var(arg));
          }
        }
        auto& ctor = env.eff.ctors->at(name);
        if (static_cast<int>(args.size()) != ctor.arity)
          throw ParseError("constructor " + name + " expects " + std::to_string(ctor.arity) +
                           " arguments");
        return eff_ground(name, std::move(args));
      }
    }
    if (auto lit = env.eff.q->parse(t)) return eff_lit(*lit);
    if (t.front() == '(' && t.back() == ')') return parse(std::string_view(t).substr(1, t.size() - 2));
    throw ParseError("cannot parse effect: " + t);
  }
};

// --- kinds, types, terms --------------------------------------------------------

Kind build_kind(const Sexp& s) {
  if (s.k == Sexp::K::Atom) {
    if (s.text == "*") return Kind::star();
    if (s.text == "E") return Kind::effect();
    throw ParseError("unknown kind: " + s.text);
  }
  if (s.k == Sexp::K::List && s.kids.size() == 3 && s.kids[0].k == Sexp::K::Atom &&
      s.kids[0].text == "=>")
    return Kind::arrow(build_kind(s.kids[1]), build_kind(s.kids[2]));
  throw ParseError("malformed kind");
}

struct Builder {
  const ParseEnv& env;

  TermPtr term(const Sexp& s) const {
    if (s.k == Sexp::K::Brace) throw ParseError("effect braces cannot appear as a term");
    if (s.k == Sexp::K::Atom) {
      if (s.text == "true") return tm_bool(true);
      if (s.text == "false") return tm_bool(false);
      if (s.text == "unit") return tm_unit();
      auto it = env.prim_arity.find(s.text);
      if (it != env.prim_arity.end()) return tm_prim(s.text, it->second);
      return tm_var(s.text);
    }
    if (s.kids.empty()) throw ParseError("empty term");
    const Sexp& head = s.kids[0];
    if (head.k == Sexp::K::Atom) {
      const std::string& op = head.text;
      if (op == "lam") {
        need(s, 3, "lam");
        auto [binder, ann] = binder_type(s.kids[1]);
        return tm_lam(binder, ann, term(s.kids[2]));
      }
      if (op == "tylam") {
        need(s, 3, "tylam");
        if (s.kids[1].k != Sexp::K::List || s.kids[1].kids.size() != 2)
          throw ParseError("tylam binder must be (name KIND)");
        return tm_tylam(atom_name(s.kids[1].kids[0]), build_kind(s.kids[1].kids[1]),
                        term(s.kids[2]));
      }
      if (op == "app") {
        if (s.kids.size() < 3) throw ParseError("app needs a function and arguments");
        TermPtr out = term(s.kids[1]);
        for (size_t i = 2; i < s.kids.size(); ++i) out = tm_app(out, term(s.kids[i]));
        return out;
      }
      if (op == "tyapp") {
        if (s.kids.size() < 3) throw ParseError("tyapp needs a function and type arguments");
        TermPtr out = term(s.kids[1]);
        for (size_t i = 2; i < s.kids.size(); ++i) out = tm_tyapp(out, type(s.kids[i]));
        return out;
      }
      if (op == "if") {
        need(s, 4, "if");
        return tm_if(term(s.kids[1]), term(s.kids[2]), term(s.kids[3]));
      }
      if (op == "while") {
        need(s, 3, "while");
        return tm_while(term(s.kids[1]), term(s.kids[2]));
      }
      if (op == "seq") {
        if (s.kids.size() < 3) throw ParseError("seq needs at least two terms");
        TermPtr out = term(s.kids[s.kids.size() - 1]);
        for (size_t i = s.kids.size() - 1; i-- > 1;) out = tm_seq(term(s.kids[i]), out);
        return out;
      }
      if (op == "let") {
        need(s, 3, "let");
        if (s.kids[1].k != Sexp::K::List || s.kids[1].kids.size() != 2)
          throw ParseError("let binder must be (name term)");
        return tm_let(atom_name(s.kids[1].kids[0]), term(s.kids[1].kids[1]), term(s.kids[2]));
      }
    }
    throw ParseError("unknown term form");
  }

  TypePtr type(const Sexp& s) const {
    if (s.k == Sexp::K::Brace) {
      EffParser ep{env};
      return ty_eff(ep.parse(s.text));
    }
    if (s.k == Sexp::K::Atom) {
      if (s.text == "bool") return ty_bool();
      if (s.text == "unit") return ty_unit();
      if (env.tycon_kinds.count(s.text)) return ty_con(s.text);
      return ty_var(s.text);
    }
    if (s.kids.empty()) throw ParseError("empty type");
    const Sexp& head = s.kids[0];
    if (head.k == Sexp::K::Atom) {
      const std::string& op = head.text;
      if (op == "pi") {
        need(s, 4, "pi");
        auto [binder, dom] = binder_type(s.kids[1]);
        return ty_pi(binder, dom, effect(s.kids[2]), type(s.kids[3]));
      }
      if (op == "all") {
        need(s, 4, "all");
        if (s.kids[1].k != Sexp::K::List || s.kids[1].kids.size() != 2)
          throw ParseError("all binder must be (name KIND)");
        return ty_forall(atom_name(s.kids[1].kids[0]), build_kind(s.kids[1].kids[1]),
                         effect(s.kids[2]), type(s.kids[3]));
      }
      if (op == "S") {
        need(s, 2, "S");
        return ty_sing(term(s.kids[1]));
      }
    }
    // Type constructor application spine.
    TypePtr out = type(s.kids[0]);
    for (size_t i = 1; i < s.kids.size(); ++i) out = ty_app(out, type(s.kids[i]));
    return out;
  }

  EffPtr effect(const Sexp& s) const {
    if (s.k != Sexp::K::Brace) throw ParseError("expected an effect in braces");
    EffParser ep{env};
    return ep.parse(s.text);
  }

  static void need(const Sexp& s, size_t n, const char* what) {
    if (s.kids.size() != n) throw ParseError(std::string(what) + ": wrong number of parts");
  }

  static std::string atom_name(const Sexp& s) {
    if (s.k != Sexp::K::Atom) throw ParseError("expected a name");
    return s.text;
  }

  std::pair<std::string, TypePtr> binder_type(const Sexp& s) const {
    if (s.k != Sexp::K::List || s.kids.size() != 2)
      throw ParseError("binder must be (name TYPE)");
    std::string name = atom_name(s.kids[0]);
    if (env.prim_arity.count(name))
      throw ParseError("binder shadows a primitive: " + name);
    return {name, type(s.kids[1])};
  }
};

Sexp read_single(std::string_view text) {
  Reader r{text};
  Sexp s = r.read();
  if (!r.at_end()) throw ParseError("trailing input after expression");
  return s;
}

}  // namespace

TermPtr parse_term(const ParseEnv& env, std::string_view text) {
  return Builder{env}.term(read_single(text));
}

TypePtr parse_type(const ParseEnv& env, std::string_view text) {
  return Builder{env}.type(read_single(text));
}

EffPtr parse_effect(const ParseEnv& env, std::string_view text) {
  return EffParser{env}.parse(text);
}

Kind parse_kind(std::string_view text) { return build_kind(read_single(text)); }

}  // namespace eq::lang
