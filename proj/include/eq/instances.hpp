#ifndef EQ_INSTANCES_HPP_
#define EQ_INSTANCES_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eq/multiset.hpp"
#include "eq/quantale.hpp"
#include "eq/regex.hpp"

namespace eq {

// ---------------------------------------------------------------------------
// Element carriers
// ---------------------------------------------------------------------------

enum class Atomicity : int { B = 0, L = 1, R = 2, A = 3, Top = 4 };
enum class CritEffect : int { Eps = 0, Locking = 1, Unlocking = 2, Critical = 3, Entrant = 4 };

// Lock claims before and after an action.
struct LockEffect {
  Multiset pre;
  Multiset post;
  bool operator==(const LockEffect&) const = default;
};

// Lock levels: naturals plus infinity.
struct Level {
  bool inf = false;
  std::uint32_t n = 0;

  static Level of(std::uint32_t v) { return Level{false, v}; }
  static Level infinity() { return Level{true, 0}; }
  bool operator==(const Level&) const = default;
  bool operator<(const Level& o) const {
    if (inf) return false;
    if (o.inf) return true;
    return n < o.n;
  }
};

inline Level level_min(const Level& a, const Level& b) { return a < b ? a : b; }

struct DLEntry {
  Level level;
  bool held = false;
  bool operator==(const DLEntry&) const = default;
};

// Pre-map, acquisition level lower bound, post-map.
struct DLEffect {
  std::map<std::string, DLEntry> pre;
  Level bound;
  std::map<std::string, DLEntry> post;
  bool operator==(const DLEffect&) const = default;
};

struct CountEffect {
  std::uint64_t count = 0;
  bool operator==(const CountEffect&) const = default;
};

struct ProductElem {
  Elem left;
  Elem right;
};

// ---------------------------------------------------------------------------
// Quantale factories
// ---------------------------------------------------------------------------

QuantalePtr atomicity_quantale();              // five movers; no star attached
QuantalePtr crit_quantale();                   // one global non-reentrant critical section
QuantalePtr lockset_quantale(std::vector<std::string> universe = {"l", "m"});
QuantalePtr suenaga_quantale(std::vector<std::string> universe = {"x", "y", "z"});
QuantalePtr trace_quantale(std::vector<std::string> alphabet);  // finite trace sets as regexes
QuantalePtr count_quantale();                  // lower bounds on an action count

// Finite bounded join-semilattice with top, lifted to a commutative quantale
// (seq reuses join, unit is bottom).
struct FiniteSemilattice {
  std::string name;
  std::vector<std::string> elems;             // index 0 need not be bottom
  std::function<int(int, int)> join;          // total, on indices
  int bottom = 0;
  int top = 0;
};

QuantalePtr lift_semilattice(const FiniteSemilattice& lattice);

// Powerset of {IOError, ArgError} under union: the checked-exceptions example.
QuantalePtr exceptions_quantale();

// Pointwise product; enumerates when both sides do, iterates when both do.
QuantalePtr product_quantale(QuantalePtr left, QuantalePtr right);

// Well-formedness helpers used by generators and tests.
bool dl_well_formed(const DLEffect& e);

// Direct table/formula entry points named in the toolkit's surface API.
std::optional<Atomicity> atomicity_seq(Atomicity a, Atomicity b);
Atomicity atomicity_join(Atomicity a, Atomicity b);
std::optional<CritEffect> crit_seq(CritEffect a, CritEffect b);
std::optional<CritEffect> crit_join(CritEffect a, CritEffect b);
LockEffect lock_seq(const LockEffect& a, const LockEffect& b);
std::optional<LockEffect> lock_join(const LockEffect& a, const LockEffect& b);
std::optional<LockEffect> lock_star(const LockEffect& a);
std::optional<DLEffect> dl_seq(const DLEffect& a, const DLEffect& b);
std::optional<DLEffect> dl_join(const DLEffect& a, const DLEffect& b);
CountEffect count_seq(CountEffect a, CountEffect b);
CountEffect count_join(CountEffect a, CountEffect b);

}  // namespace eq

#endif  // EQ_INSTANCES_HPP_
