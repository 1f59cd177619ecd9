#ifndef EQ_REGISTRY_HPP_
#define EQ_REGISTRY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "eq/kleene.hpp"
#include "eq/runtime.hpp"

namespace eq {

// A named effect system as the CLI sees it: the algebra (for law sweeps and
// iteration tables), optionally a full framework instantiation (for
// typechecking and running programs), and optionally the backing Kleene
// algebra.
struct SystemHandle {
  std::string name;
  QuantalePtr quantale;  // iteration attached where derivable
  std::optional<lang::Instantiation> inst;
  KleenePtr ka;
};

// Known names: atomicity, crit, atomcrit, lockset, dl, trace, count,
// exceptions, lockatom, atomonly, critsys, history, ka-regex. Alphabet-
// parameterized systems consume `alphabet`.
std::optional<SystemHandle> lookup_system(const std::string& name,
                                          const std::vector<std::string>& alphabet);

std::vector<std::string> system_names();

}  // namespace eq

#endif  // EQ_REGISTRY_HPP_
