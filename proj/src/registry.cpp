#include "eq/registry.hpp"

#include "eq/star.hpp"
#include "eq/systems.hpp"

namespace eq {

std::optional<SystemHandle> lookup_system(const std::string& name,
                                          const std::vector<std::string>& alphabet) {
  using lang::history_instantiation;
  SystemHandle h;
  h.name = name;
  if (name == "atomicity") {
    h.quantale = with_derived_star(atomicity_quantale());
    return h;
  }
  if (name == "crit") {
    h.quantale = with_derived_star(crit_quantale());
    return h;
  }
  if (name == "atomcrit") {
    h.quantale = with_derived_star(
        product_quantale(atomicity_quantale(), crit_quantale()));
    return h;
  }
  if (name == "lockset") {
    h.quantale = lockset_quantale({"l", "m"});
    return h;
  }
  if (name == "dl") {
    h.quantale = suenaga_quantale();
    return h;
  }
  if (name == "trace" || name == "regex") {
    h.quantale = trace_quantale(alphabet.empty() ? std::vector<std::string>{"a", "b"} : alphabet);
    return h;
  }
  if (name == "count") {
    h.quantale = count_quantale();
    return h;
  }
  if (name == "exceptions") {
    h.quantale = with_derived_star(exceptions_quantale());
    return h;
  }
  if (name == "lockatom") {
    h.inst = lang::lockatom_instantiation();
    h.quantale = h.inst->types.q;
    return h;
  }
  if (name == "atomonly") {
    h.inst = lang::atomicity_instantiation();
    h.quantale = h.inst->types.q;
    return h;
  }
  if (name == "critsys") {
    h.inst = lang::crit_instantiation();
    h.quantale = h.inst->types.q;
    return h;
  }
  if (name == "history") {
    h.inst = history_instantiation(alphabet.empty() ? std::vector<std::string>{"a", "b"}
                                                    : alphabet);
    h.quantale = h.inst->types.q;
    return h;
  }
  if (name == "ka-regex") {
    auto ab = alphabet.empty() ? std::vector<std::string>{"a", "b"} : alphabet;
    h.ka = regular_language_ka(ab);
    h.quantale = as_effect_quantale(h.ka);
    // Expose the KA-as-EQ to the calculus through the event instantiation.
    auto inst = history_instantiation(ab);
    inst.name = "ka-regex";
    inst.types.q = h.quantale;
    h.inst = std::move(inst);
    return h;
  }
  return std::nullopt;
}

std::vector<std::string> system_names() {
  return {"atomicity", "crit",     "atomcrit", "lockset", "dl",      "trace",   "count",
          "exceptions", "lockatom", "atomonly", "critsys", "history", "ka-regex"};
}

}  // namespace eq
