#include "eq/lambda_trace.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "eq/parser.hpp"

namespace eq::lang {
namespace {

LTTypePtr mk_ty(LTType t) { return std::make_shared<const LTType>(std::move(t)); }
LTTermPtr mk_tm(LTTerm t) { return std::make_shared<const LTTerm>(std::move(t)); }

bool lt_type_equal(const LTTypePtr& a, const LTTypePtr& b,
                   const std::vector<std::string>& alphabet) {
  if (a->k != b->k) return false;
  if (a->k != LTType::K::Fn) return true;
  return lt_type_equal(a->dom, b->dom, alphabet) && lt_type_equal(a->res, b->res, alphabet) &&
         rx_equivalent(a->latent, b->latent, alphabet);
}

bool lt_is_value(const LTTermPtr& t) {
  switch (t->k) {
    case LTTerm::K::Var:
    case LTTerm::K::Const:
    case LTTerm::K::Lam:
    case LTTerm::K::BoolLit:
    case LTTerm::K::UnitLit: return true;
    default: return false;
  }
}

// Minimal s-expression reader shared shape with the core parser, specialized
// to the fragment.
struct Sx {
  bool atom = true;
  std::string text;
  std::vector<Sx> kids;
};

struct SxReader {
  std::string_view src;
  size_t pos = 0;

  void ws() {
    while (pos < src.size()) {
      if (src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(src[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  Sx read() {
    ws();
    if (pos >= src.size()) throw ParseError("unexpected end of input");
    if (src[pos] == '(') {
      ++pos;
      Sx list;
      list.atom = false;
      while (true) {
        ws();
        if (pos >= src.size()) throw ParseError("unterminated list");
        if (src[pos] == ')') {
          ++pos;
          return list;
        }
        list.kids.push_back(read());
      }
    }
    if (src[pos] == ')') throw ParseError("unexpected ')'");
    if (src[pos] == '{') {
      size_t start = ++pos;
      int depth = 0;
      while (pos < src.size()) {
        if (src[pos] == '{') ++depth;
        if (src[pos] == '}') {
          if (depth == 0) {
            Sx b;
            b.text = "{" + std::string(src.substr(start, pos - start)) + "}";
            ++pos;
            return b;
          }
          --depth;
        }
        ++pos;
      }
      throw ParseError("unterminated braces");
    }
    size_t start = pos;
    while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
           src[pos] != '(' && src[pos] != ')' && src[pos] != '{')
      ++pos;
    Sx a;
    a.text = std::string(src.substr(start, pos - start));
    return a;
  }
};

struct LTBuilder {
  const std::vector<std::string>& alphabet;

  LTTypePtr type(const Sx& s) const {
    if (s.atom) {
      if (s.text == "unit") return mk_ty({LTType::K::Unit, nullptr, nullptr, nullptr});
      if (s.text == "bool") return mk_ty({LTType::K::Bool, nullptr, nullptr, nullptr});
      if (s.text == "event") return mk_ty({LTType::K::Event, nullptr, nullptr, nullptr});
      throw ParseError("unknown source type: " + s.text);
    }
    if (s.kids.size() == 4 && s.kids[0].atom && s.kids[0].text == "fn") {
      const std::string& brace = s.kids[2].text;
      if (brace.size() < 2 || brace.front() != '{' || brace.back() != '}')
        throw ParseError("fn latent history must be in braces");
      auto latent = rx_parse(std::string_view(brace).substr(1, brace.size() - 2), alphabet);
      if (!latent) throw ParseError("unparseable latent history: " + brace);
      LTType t;
      t.k = LTType::K::Fn;
      t.dom = type(s.kids[1]);
      t.res = type(s.kids[3]);
      t.latent = *latent;
      return mk_ty(std::move(t));
    }
    throw ParseError("malformed source type");
  }

  LTTermPtr term(const Sx& s) const {
    if (s.atom) {
      if (s.text == "true" || s.text == "false") {
        LTTerm t;
        t.k = LTTerm::K::BoolLit;
        t.bval = s.text == "true";
        return mk_tm(std::move(t));
      }
      if (s.text == "unit") return mk_tm(LTTerm{});
      LTTerm t;
      bool is_const =
          std::find(alphabet.begin(), alphabet.end(), s.text) != alphabet.end();
      t.k = is_const ? LTTerm::K::Const : LTTerm::K::Var;
      t.name = s.text;
      return mk_tm(std::move(t));
    }
    if (s.kids.empty()) throw ParseError("empty source term");
    const std::string& op = s.kids[0].atom ? s.kids[0].text : "";
    if (op == "ev") {
      if (s.kids.size() != 2 || !s.kids[1].atom) throw ParseError("ev takes one constant");
      if (std::find(alphabet.begin(), alphabet.end(), s.kids[1].text) == alphabet.end())
        throw ParseError("event applied to a non-constant: outside the fragment");
      LTTerm t;
      t.k = LTTerm::K::Ev;
      t.name = s.kids[1].text;
      return mk_tm(std::move(t));
    }
    if (op == "lam") {
      if (s.kids.size() != 3 || s.kids[1].atom || s.kids[1].kids.size() != 2)
        throw ParseError("lam needs (x TYPE) body");
      LTTerm t;
      t.k = LTTerm::K::Lam;
      t.binder = s.kids[1].kids[0].text;
      t.ann = type(s.kids[1].kids[1]);
      t.a = term(s.kids[2]);
      return mk_tm(std::move(t));
    }
    if (op == "let") {
      if (s.kids.size() != 3 || s.kids[1].atom || s.kids[1].kids.size() != 2)
        throw ParseError("let needs (x value) body");
      LTTerm t;
      t.k = LTTerm::K::Let;
      t.binder = s.kids[1].kids[0].text;
      t.a = term(s.kids[1].kids[1]);
      t.b = term(s.kids[2]);
      return mk_tm(std::move(t));
    }
    if (op == "if") {
      if (s.kids.size() != 4) throw ParseError("if needs three parts");
      LTTerm t;
      t.k = LTTerm::K::If;
      t.a = term(s.kids[1]);
      t.b = term(s.kids[2]);
      t.c = term(s.kids[3]);
      return mk_tm(std::move(t));
    }
    if (op == "app") {
      if (s.kids.size() < 3) throw ParseError("app needs a function and arguments");
      LTTermPtr out = term(s.kids[1]);
      for (size_t i = 2; i < s.kids.size(); ++i) {
        LTTerm t;
        t.k = LTTerm::K::App;
        t.a = out;
        t.b = term(s.kids[i]);
        out = mk_tm(std::move(t));
      }
      return out;
    }
    throw ParseError("unknown source form (mu and quantifiers are outside the fragment)");
  }
};

}  // namespace

LTTermPtr parse_lambda_trace(const std::vector<std::string>& alphabet, std::string_view text) {
  SxReader r{text};
  Sx s = r.read();
  r.ws();
  if (r.pos < r.src.size()) throw ParseError("trailing input after source term");
  return LTBuilder{alphabet}.term(s);
}

LTJudgment infer_lambda_trace(const std::vector<std::string>& alphabet,
                              const std::map<std::string, LTTypePtr>& gamma, const LTTermPtr& t) {
  RegexPtr eps = rx_eps();
  switch (t->k) {
    case LTTerm::K::Var: {
      auto it = gamma.find(t->name);
      if (it == gamma.end()) throw std::runtime_error("unbound source variable: " + t->name);
      return {it->second, eps};
    }
    case LTTerm::K::Const: return {mk_ty({LTType::K::Event, nullptr, nullptr, nullptr}), eps};
    case LTTerm::K::BoolLit: return {mk_ty({LTType::K::Bool, nullptr, nullptr, nullptr}), eps};
    case LTTerm::K::UnitLit: return {mk_ty(LTType{}), eps};
    case LTTerm::K::Ev:
      return {mk_ty(LTType{}), rx_sym(t->name)};
    case LTTerm::K::Lam: {
      auto inner = gamma;
      inner[t->binder] = t->ann;
      LTJudgment body = infer_lambda_trace(alphabet, inner, t->a);
      LTType fn;
      fn.k = LTType::K::Fn;
      fn.dom = t->ann;
      fn.res = body.type;
      fn.latent = body.history;
      return {mk_ty(std::move(fn)), eps};
    }
    case LTTerm::K::App: {
      LTJudgment f = infer_lambda_trace(alphabet, gamma, t->a);
      if (f.type->k != LTType::K::Fn)
        throw std::runtime_error("source application of a non-function");
      LTJudgment a = infer_lambda_trace(alphabet, gamma, t->b);
      if (!lt_type_equal(a.type, f.type->dom, alphabet))
        throw std::runtime_error("source argument type mismatch");
      return {f.type->res, rx_cat(rx_cat(f.history, a.history), f.type->latent)};
    }
    case LTTerm::K::If: {
      LTJudgment c = infer_lambda_trace(alphabet, gamma, t->a);
      if (c.type->k != LTType::K::Bool)
        throw std::runtime_error("source if condition must be bool");
      LTJudgment x = infer_lambda_trace(alphabet, gamma, t->b);
      LTJudgment y = infer_lambda_trace(alphabet, gamma, t->c);
      if (!lt_type_equal(x.type, y.type, alphabet))
        throw std::runtime_error("source if branches disagree");
      return {x.type, rx_cat(c.history, rx_alt(x.history, y.history))};
    }
    case LTTerm::K::Let: {
      if (!lt_is_value(t->a))
        throw std::runtime_error("source let binds non-values: outside the fragment");
      LTJudgment v = infer_lambda_trace(alphabet, gamma, t->a);
      auto inner = gamma;
      inner[t->binder] = v.type;
      return infer_lambda_trace(alphabet, inner, t->b);
    }
  }
  throw std::runtime_error("unreachable source term");
}

TypePtr lt_type_to_core(const LTTypePtr& t) {
  switch (t->k) {
    case LTType::K::Unit: return ty_unit();
    case LTType::K::Bool: return ty_bool();
    case LTType::K::Event: return ty_con("event");
    case LTType::K::Fn:
      return ty_pi("_", lt_type_to_core(t->dom), eff_lit(Elem::make(t->latent)),
                   lt_type_to_core(t->res));
  }
  return ty_unit();
}

namespace {

TermPtr translate_rec(const std::vector<std::string>& alphabet,
                      const std::map<std::string, LTTypePtr>& gamma, const LTTermPtr& t) {
  switch (t->k) {
    case LTTerm::K::Var: return tm_var(t->name);
    case LTTerm::K::Const: return tm_prim(t->name, 0);
    case LTTerm::K::BoolLit: return tm_bool(t->bval);
    case LTTerm::K::UnitLit: return tm_unit();
    case LTTerm::K::Ev: return tm_app(tm_prim("ev", 1), tm_prim(t->name, 0));
    case LTTerm::K::If: {
      return tm_if(translate_rec(alphabet, gamma, t->a), translate_rec(alphabet, gamma, t->b),
                   translate_rec(alphabet, gamma, t->c));
    }
    case LTTerm::K::App:
      return tm_app(translate_rec(alphabet, gamma, t->a), translate_rec(alphabet, gamma, t->b));
    case LTTerm::K::Lam: {
      auto inner = gamma;
      inner[t->binder] = t->ann;
      return tm_lam(t->binder, lt_type_to_core(t->ann), translate_rec(alphabet, inner, t->a));
    }
    case LTTerm::K::Let: {
      // (| let x = v in e |) = (lam x. (|e|)) (|v|)
      LTJudgment v = infer_lambda_trace(alphabet, gamma, t->a);
      auto inner = gamma;
      inner[t->binder] = v.type;
      return tm_app(tm_lam(t->binder, lt_type_to_core(v.type),
                           translate_rec(alphabet, inner, t->b)),
                    translate_rec(alphabet, gamma, t->a));
    }
  }
  return tm_unit();
}

}  // namespace

TermPtr translate_lambda_trace(const std::vector<std::string>& alphabet, const LTTermPtr& t) {
  return translate_rec(alphabet, {}, t);
}

std::string show_lt_term(const LTTermPtr& t) {
  switch (t->k) {
    case LTTerm::K::Var:
    case LTTerm::K::Const: return t->name;
    case LTTerm::K::BoolLit: return t->bval ? "true" : "false";
    case LTTerm::K::UnitLit: return "unit";
    case LTTerm::K::Ev: return "(ev " + t->name + ")";
    case LTTerm::K::If:
      return "(if " + show_lt_term(t->a) + " " + show_lt_term(t->b) + " " + show_lt_term(t->c) +
             ")";
    case LTTerm::K::App: return "(app " + show_lt_term(t->a) + " " + show_lt_term(t->b) + ")";
    case LTTerm::K::Lam: return "(lam (" + t->binder + " ...) " + show_lt_term(t->a) + ")";
    case LTTerm::K::Let:
      return "(let (" + t->binder + " " + show_lt_term(t->a) + ") " + show_lt_term(t->b) + ")";
  }
  return "?";
}

}  // namespace eq::lang
