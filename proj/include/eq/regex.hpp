#ifndef EQ_REGEX_HPP_
#define EQ_REGEX_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eq/rng.hpp"

namespace eq {

// Regular expressions over an event alphabet, ACI-normalized so Brzozowski
// derivatives stay finite. Grammar: 0 (empty language), ~ (empty string),
// symbols, juxtaposition, |, postfix *.
struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

struct Regex {
  enum class Kind { Empty, Eps, Sym, Cat, Alt, Star };
  Kind kind;
  std::string sym;             // Sym
  std::vector<RegexPtr> kids;  // Cat (ordered), Alt (sorted, deduped)
};

RegexPtr rx_empty();
RegexPtr rx_eps();
RegexPtr rx_sym(std::string s);
RegexPtr rx_cat(RegexPtr a, RegexPtr b);
RegexPtr rx_alt(RegexPtr a, RegexPtr b);
RegexPtr rx_star(RegexPtr a);

bool rx_nullable(const RegexPtr& r);
RegexPtr rx_deriv(const RegexPtr& r, const std::string& sym);
bool rx_matches(const RegexPtr& r, const std::vector<std::string>& word);

// Language equality by bisimulation over derivative pairs.
bool rx_equivalent(const RegexPtr& a, const RegexPtr& b, const std::vector<std::string>& alphabet);

// Structural key; equal keys iff identical normalized trees.
std::string rx_key(const RegexPtr& r);
std::string rx_show(const RegexPtr& r);

// Single-character symbols only; returns nullopt on syntax errors or symbols
// outside the alphabet.
std::optional<RegexPtr> rx_parse(std::string_view text, const std::vector<std::string>& alphabet);

// Applies a symbol relabeling throughout.
RegexPtr rx_rename(const RegexPtr& r, const std::function<std::string(const std::string&)>& f);

// All symbols mentioned.
std::vector<std::string> rx_symbols(const RegexPtr& r);

// Random ACI-normalized regex; never Empty unless allow_empty.
RegexPtr rx_random(Rng& rng, const std::vector<std::string>& alphabet, int depth,
                   bool allow_empty);

}  // namespace eq

#endif  // EQ_REGEX_HPP_
