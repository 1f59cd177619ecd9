#ifndef EQ_STAR_HPP_
#define EQ_STAR_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eq/quantale.hpp"

#include "json.hpp"

namespace eq {

// Iteration table for a finite carrier, derived from the free closure
// operator: x maps to the least subidempotent element above both x and I,
// and is undefined when no such element exists.
struct StarTable {
  std::vector<std::pair<Elem, std::optional<Elem>>> entries;
  bool laxly_iterable = true;
  std::optional<Elem> non_lax_witness;  // some x whose candidate set has no least element

  std::optional<std::optional<Elem>> lookup(const EffectQuantale& q, const Elem& x) const {
    for (const auto& [k, v] : entries)
      if (q.equal(k, x)) return v;
    return std::nullopt;
  }

  nlohmann::ordered_json to_json(const EffectQuantale& q) const {
    nlohmann::ordered_json star = nlohmann::ordered_json::object();
    for (const auto& [k, v] : entries)
      star[q.show(k)] = v ? nlohmann::ordered_json(q.show(*v)) : nlohmann::ordered_json(nullptr);
    return nlohmann::ordered_json{{"system", q.name()},
                                  {"star", star},
                                  {"laxly_iterable", laxly_iterable}};
  }
};

// Requires a finite enumerator. Non-lax-iterability is reported in the
// table, never thrown.
StarTable derive_star_finite(const EffectQuantale& q);

// True iff every defined entry is minimal among the subidempotent upper
// bounds of {x, I}, witnessed by brute force over the carrier.
bool check_star_precision(const EffectQuantale& q);
bool check_star_precision(const EffectQuantale& q, const StarTable& table);

// Same quantale with iteration backed by a derived table.
QuantalePtr with_star_table(QuantalePtr q, StarTable table);

// Finite quantales get the derived table attached; others are returned
// unchanged (they either carry their own star or none).
QuantalePtr with_derived_star(QuantalePtr q);

}  // namespace eq

#endif  // EQ_STAR_HPP_
