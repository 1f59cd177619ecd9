#include "eq/regex.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace eq {
namespace {

RegexPtr mk(Regex r) { return std::make_shared<const Regex>(std::move(r)); }

const RegexPtr& empty_singleton() {
  static const RegexPtr r = mk({Regex::Kind::Empty, "", {}});
  return r;
}
const RegexPtr& eps_singleton() {
  static const RegexPtr r = mk({Regex::Kind::Eps, "", {}});
  return r;
}

}  // namespace

RegexPtr rx_empty() { return empty_singleton(); }
RegexPtr rx_eps() { return eps_singleton(); }
RegexPtr rx_sym(std::string s) { return mk({Regex::Kind::Sym, std::move(s), {}}); }

std::string rx_key(const RegexPtr& r) {
  switch (r->kind) {
    case Regex::Kind::Empty: return "0";
    case Regex::Kind::Eps: return "~";
    case Regex::Kind::Sym: return "s" + r->sym + ";";
    case Regex::Kind::Cat: {
      std::string out = "C(";
      for (const auto& k : r->kids) out += rx_key(k);
      return out + ")";
    }
    case Regex::Kind::Alt: {
      std::string out = "A(";
      for (const auto& k : r->kids) out += rx_key(k);
      return out + ")";
    }
    case Regex::Kind::Star: return "S(" + rx_key(r->kids[0]) + ")";
  }
  return "?";
}

RegexPtr rx_cat(RegexPtr a, RegexPtr b) {
  if (a->kind == Regex::Kind::Empty || b->kind == Regex::Kind::Empty) return rx_empty();
  if (a->kind == Regex::Kind::Eps) return b;
  if (b->kind == Regex::Kind::Eps) return a;
  std::vector<RegexPtr> kids;
  auto push = [&kids](const RegexPtr& r) {
    if (r->kind == Regex::Kind::Cat)
      kids.insert(kids.end(), r->kids.begin(), r->kids.end());
    else
      kids.push_back(r);
  };
  push(a);
  push(b);
  return mk({Regex::Kind::Cat, "", std::move(kids)});
}

RegexPtr rx_alt(RegexPtr a, RegexPtr b) {
  std::vector<RegexPtr> kids;
  auto push = [&kids](const RegexPtr& r) {
    if (r->kind == Regex::Kind::Empty) return;
    if (r->kind == Regex::Kind::Alt)
      kids.insert(kids.end(), r->kids.begin(), r->kids.end());
    else
      kids.push_back(r);
  };
  push(a);
  push(b);
  if (kids.empty()) return rx_empty();
  std::sort(kids.begin(), kids.end(),
            [](const RegexPtr& x, const RegexPtr& y) { return rx_key(x) < rx_key(y); });
  kids.erase(std::unique(kids.begin(), kids.end(),
                         [](const RegexPtr& x, const RegexPtr& y) {
                           return rx_key(x) == rx_key(y);
                         }),
             kids.end());
  if (kids.size() == 1) return kids[0];
  return mk({Regex::Kind::Alt, "", std::move(kids)});
}

RegexPtr rx_star(RegexPtr a) {
  if (a->kind == Regex::Kind::Empty || a->kind == Regex::Kind::Eps) return rx_eps();
  if (a->kind == Regex::Kind::Star) return a;
  return mk({Regex::Kind::Star, "", {std::move(a)}});
}

bool rx_nullable(const RegexPtr& r) {
  switch (r->kind) {
    case Regex::Kind::Empty: return false;
    case Regex::Kind::Eps: return true;
    case Regex::Kind::Sym: return false;
    case Regex::Kind::Cat:
      return std::all_of(r->kids.begin(), r->kids.end(), rx_nullable);
    case Regex::Kind::Alt:
      return std::any_of(r->kids.begin(), r->kids.end(), rx_nullable);
    case Regex::Kind::Star: return true;
  }
  return false;
}

RegexPtr rx_deriv(const RegexPtr& r, const std::string& sym) {
  switch (r->kind) {
    case Regex::Kind::Empty:
    case Regex::Kind::Eps: return rx_empty();
    case Regex::Kind::Sym: return r->sym == sym ? rx_eps() : rx_empty();
    case Regex::Kind::Cat: {
      // d(r1 r2..rn) = d(r1) r2..rn  |  [r1 nullable] d(r2..rn)
      RegexPtr tail = rx_eps();
      for (size_t i = 1; i < r->kids.size(); ++i) tail = rx_cat(tail, r->kids[i]);
      RegexPtr out = rx_cat(rx_deriv(r->kids[0], sym), tail);
      if (rx_nullable(r->kids[0])) out = rx_alt(out, rx_deriv(tail, sym));
      return out;
    }
    case Regex::Kind::Alt: {
      RegexPtr out = rx_empty();
      for (const auto& k : r->kids) out = rx_alt(out, rx_deriv(k, sym));
      return out;
    }
    case Regex::Kind::Star:
      return rx_cat(rx_deriv(r->kids[0], sym), r);
  }
  return rx_empty();
}

bool rx_matches(const RegexPtr& r, const std::vector<std::string>& word) {
  RegexPtr cur = r;
  for (const auto& s : word) {
    cur = rx_deriv(cur, s);
    if (cur->kind == Regex::Kind::Empty) return false;
  }
  return rx_nullable(cur);
}

bool rx_equivalent(const RegexPtr& a, const RegexPtr& b,
                   const std::vector<std::string>& alphabet) {
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::pair<RegexPtr, RegexPtr>> work{{a, b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    auto key = std::make_pair(rx_key(x), rx_key(y));
    if (!seen.insert(key).second) continue;
    if (rx_nullable(x) != rx_nullable(y)) return false;
    for (const auto& s : alphabet) work.emplace_back(rx_deriv(x, s), rx_deriv(y, s));
  }
  return true;
}

std::string rx_show(const RegexPtr& r) {
  // Precedence: alt < cat < star/atom.
  switch (r->kind) {
    case Regex::Kind::Empty: return "0";
    case Regex::Kind::Eps: return "~";
    case Regex::Kind::Sym: return r->sym;
    case Regex::Kind::Cat: {
      std::string out;
      for (const auto& k : r->kids) {
        if (k->kind == Regex::Kind::Alt)
          out += "(" + rx_show(k) + ")";
        else
          out += rx_show(k);
      }
      return out;
    }
    case Regex::Kind::Alt: {
      std::string out;
      for (size_t i = 0; i < r->kids.size(); ++i) {
        if (i) out += "|";
        out += rx_show(r->kids[i]);
      }
      return out;
    }
    case Regex::Kind::Star: {
      const auto& k = r->kids[0];
      if (k->kind == Regex::Kind::Sym) return rx_show(k) + "*";
      return "(" + rx_show(k) + ")*";
    }
  }
  return "?";
}

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;
  const std::vector<std::string>& alphabet;
  bool ok = true;

  bool at_end() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  RegexPtr parse_alt() {
    RegexPtr out = parse_cat();
    while (ok && !at_end() && peek() == '|') {
      ++pos;
      out = rx_alt(out, parse_cat());
    }
    return out;
  }

  RegexPtr parse_cat() {
    RegexPtr out = rx_eps();
    bool any = false;
    while (ok && !at_end() && peek() != '|' && peek() != ')') {
      out = rx_cat(out, parse_post());
      any = true;
    }
    if (!any) out = rx_eps();
    return out;
  }

  RegexPtr parse_post() {
    RegexPtr out = parse_atom();
    while (ok && !at_end() && peek() == '*') {
      ++pos;
      out = rx_star(out);
    }
    return out;
  }

  RegexPtr parse_atom() {
    if (at_end()) {
      ok = false;
      return rx_empty();
    }
    char c = peek();
    if (c == '(') {
      ++pos;
      RegexPtr inner = parse_alt();
      if (at_end() || peek() != ')') {
        ok = false;
        return rx_empty();
      }
      ++pos;
      return inner;
    }
    if (c == '~') {
      ++pos;
      return rx_eps();
    }
    if (c == '0') {
      ++pos;
      return rx_empty();
    }
    std::string sym(1, c);
    if (std::find(alphabet.begin(), alphabet.end(), sym) == alphabet.end()) {
      ok = false;
      return rx_empty();
    }
    ++pos;
    return rx_sym(sym);
  }
};

}  // namespace

std::optional<RegexPtr> rx_parse(std::string_view text, const std::vector<std::string>& alphabet) {
  std::string cleaned;
  for (char c : text)
    if (c != ' ') cleaned += c;
  Parser p{cleaned, 0, alphabet};
  RegexPtr out = p.parse_alt();
  if (!p.ok || !p.at_end()) return std::nullopt;
  return out;
}

RegexPtr rx_rename(const RegexPtr& r, const std::function<std::string(const std::string&)>& f) {
  switch (r->kind) {
    case Regex::Kind::Empty:
    case Regex::Kind::Eps: return r;
    case Regex::Kind::Sym: return rx_sym(f(r->sym));
    case Regex::Kind::Cat: {
      RegexPtr out = rx_eps();
      for (const auto& k : r->kids) out = rx_cat(out, rx_rename(k, f));
      return out;
    }
    case Regex::Kind::Alt: {
      RegexPtr out = rx_empty();
      for (const auto& k : r->kids) out = rx_alt(out, rx_rename(k, f));
      return out;
    }
    case Regex::Kind::Star: return rx_star(rx_rename(r->kids[0], f));
  }
  return r;
}

std::vector<std::string> rx_symbols(const RegexPtr& r) {
  std::set<std::string> seen;
  std::function<void(const RegexPtr&)> go = [&](const RegexPtr& x) {
    if (x->kind == Regex::Kind::Sym) seen.insert(x->sym);
    for (const auto& k : x->kids) go(k);
  };
  go(r);
  return {seen.begin(), seen.end()};
}

RegexPtr rx_random(Rng& rng, const std::vector<std::string>& alphabet, int depth,
                   bool allow_empty) {
  if (depth <= 0 || rng.below(10) < 4) {
    auto roll = rng.below(10);
    if (roll == 0) return rx_eps();
    if (allow_empty && roll == 1) return rx_empty();
    return rx_sym(alphabet[rng.below(alphabet.size())]);
  }
  switch (rng.below(3)) {
    case 0:
      return rx_cat(rx_random(rng, alphabet, depth - 1, allow_empty),
                    rx_random(rng, alphabet, depth - 1, allow_empty));
    case 1:
      return rx_alt(rx_random(rng, alphabet, depth - 1, allow_empty),
                    rx_random(rng, alphabet, depth - 1, allow_empty));
    default:
      return rx_star(rx_random(rng, alphabet, depth - 1, allow_empty));
  }
}

}  // namespace eq
