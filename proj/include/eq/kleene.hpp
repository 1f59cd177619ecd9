#ifndef EQ_KLEENE_HPP_
#define EQ_KLEENE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "eq/laws.hpp"
#include "eq/quantale.hpp"

namespace eq {

// A Kleene algebra: idempotent semiring with total operations plus star
// satisfying the unfolding and induction laws.
class KleeneAlgebra {
 public:
  virtual ~KleeneAlgebra() = default;
  virtual std::string name() const = 0;
  virtual Elem zero() const = 0;
  virtual Elem one() const = 0;
  virtual Elem plus(const Elem& a, const Elem& b) const = 0;
  virtual Elem times(const Elem& a, const Elem& b) const = 0;
  virtual Elem star(const Elem& a) const = 0;
  virtual bool equal(const Elem& a, const Elem& b) const = 0;
  virtual std::string show(const Elem& e) const = 0;
  virtual Elem sample(Rng& rng) const = 0;
  virtual std::optional<Elem> parse(std::string_view) const { return std::nullopt; }
};

using KleenePtr = std::shared_ptr<const KleeneAlgebra>;

// Regexes including the empty language, decided by automaton equivalence.
KleenePtr regular_language_ka(std::vector<std::string> alphabet);

// ({0,1}, or, and, const 1, 0, 1).
KleenePtr boolean_ka();

// Every Kleene algebra is an iterable effect quantale with total operations:
// plus becomes join, times becomes seq, one becomes the unit, star carries
// over.
QuantalePtr as_effect_quantale(KleenePtr k);

// Full axiom sweep, including both implication-form star induction laws
// (sampled over candidate x). A failure is definitive; a pass is statistical.
LawReport check_ka_laws(const KleeneAlgebra& k, const Budget& budget);

}  // namespace eq

#endif  // EQ_KLEENE_HPP_
