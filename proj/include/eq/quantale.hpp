#ifndef EQ_QUANTALE_HPP_
#define EQ_QUANTALE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eq/elem.hpp"
#include "eq/rng.hpp"

namespace eq {

// A pluggable effect quantale: a partial join semilattice plus a partial
// monoid sharing one carrier, with seq distributing over join both ways.
// Operations return nullopt where the algebra leaves them undefined.
class EffectQuantale {
 public:
  virtual ~EffectQuantale() = default;

  virtual std::string name() const = 0;
  virtual Elem unit() const = 0;
  virtual std::optional<Elem> join(const Elem& a, const Elem& b) const = 0;
  virtual std::optional<Elem> seq(const Elem& a, const Elem& b) const = 0;
  virtual bool equal(const Elem& a, const Elem& b) const = 0;
  virtual std::string show(const Elem& e) const = 0;

  // Iteration, when the instance (or a derived table) provides one.
  virtual bool has_star() const { return false; }
  virtual std::optional<Elem> star(const Elem&) const { return std::nullopt; }

  // Finite carriers enumerate themselves; infinite ones supply a sampler.
  virtual std::optional<std::vector<Elem>> enumerate() const { return std::nullopt; }
  virtual bool has_sampler() const { return false; }
  virtual Elem sample(Rng&) const { return unit(); }

  // Textual element literals for the CLI; instances may decline.
  virtual std::optional<Elem> parse(std::string_view) const { return std::nullopt; }
};

using QuantalePtr = std::shared_ptr<const EffectQuantale>;

// Induced order: a is below b iff their join is defined and equals b.
inline bool leq(const EffectQuantale& q, const Elem& a, const Elem& b) {
  auto j = q.join(a, b);
  return j && q.equal(*j, b);
}

// x^0 = I, x^n = x^(n-1) |> x; undefinedness propagates.
inline std::optional<Elem> seq_power(const EffectQuantale& q, const Elem& x, unsigned n) {
  Elem acc = q.unit();
  for (unsigned i = 0; i < n; ++i) {
    auto next = q.seq(acc, x);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

}  // namespace eq

#endif  // EQ_QUANTALE_HPP_
