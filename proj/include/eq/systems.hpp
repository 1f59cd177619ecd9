#ifndef EQ_SYSTEMS_HPP_
#define EQ_SYSTEMS_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eq/instances.hpp"
#include "eq/runtime.hpp"

namespace eq::lang {

// Runtime state of the locking+atomicity instantiation: a lock heap and a
// mutable store.
struct LockAtomState {
  std::map<std::string, bool> locks;
  std::map<std::string, TermPtr> heap;
};

// Runtime state of the history instantiation: the accumulated event trace.
struct HistoryState {
  std::vector<std::string> trace;
};

// Locking plus atomicity: primitives new_lock/acquire/release/alloc/read/
// write over Q(X) = lockset(X) x atomicity. With faulty_release, the state
// environment claims release has effect I while the semantics still emits
// the true lock-release label (a deliberately broken table for monitor
// tests).
Instantiation lockatom_instantiation(bool faulty_release = false);

// Same primitive surface tracking movers only.
Instantiation atomicity_instantiation();

// One global non-reentrant lock: lock_it/unlock_it/in_crit over Crit.
Instantiation crit_instantiation();

// Event emission over finite-trace effects; carries the trace-suffix
// interpretation.
Instantiation history_instantiation(std::vector<std::string> alphabet);

// Initial state and state environment with `locks` pre-allocated locks
// (lk0, lk1, ...) each guarding one bool ref (rf0, rf1, ...).
std::pair<Elem, Sigma> lockatom_world(const Instantiation& inst, int locks,
                                      bool ref_value = false);

}  // namespace eq::lang

#endif  // EQ_SYSTEMS_HPP_
