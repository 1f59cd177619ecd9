#ifndef EQ_LAWS_HPP_
#define EQ_LAWS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "eq/quantale.hpp"
#include "eq/report.hpp"

namespace eq {

// Law sweeps run either exhaustively over a finite enumerator or over
// seeded random samples.
struct Budget {
  bool exhaustive = false;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;

  static Budget exhaust() { return Budget{true, 0, 0}; }
  static Budget sampled(std::uint64_t n, std::uint64_t seed = 0) { return Budget{false, n, seed}; }
};

// Core effect quantale laws: join commutativity/associativity/idempotence,
// seq associativity, unit laws, two-sided distributivity, monotonicity of
// both operators, and the definedness closure properties.
LawReport check_laws(const EffectQuantale& q, const Budget& budget);

// The five iteration axioms (extensive, idempotent, monotone, foldable,
// possibly-empty), each guarded by "if defined" exactly as stated.
LawReport check_star_laws(const EffectQuantale& q, const Budget& budget);

// Re-evaluates a failed law on its stored witnesses; true if the failure
// reproduces.
bool replay(const EffectQuantale& q, const Counterexample& cx);

}  // namespace eq

#endif  // EQ_LAWS_HPP_
