#ifndef EQ_INDEXED_HPP_
#define EQ_INDEXED_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "eq/laws.hpp"
#include "eq/quantale.hpp"
#include "eq/report.hpp"

namespace eq {

// Renaming of index values (lock names, event symbols).
using IndexFn = std::function<std::string(const std::string&)>;

// A family of effect quantales over index sets of program values. Index sets
// are kept intensional: at() takes the values to range over, map_effect
// applies a value renaming inside an element.
class IndexedQuantale {
 public:
  virtual ~IndexedQuantale() = default;
  virtual std::string name() const = 0;
  virtual QuantalePtr at(const std::vector<std::string>& index) const = 0;
  virtual Elem map_effect(const IndexFn& f, const Elem& e) const = 0;
  // Free index values mentioned by an element.
  virtual std::vector<std::string> indices(const Elem& e) const = 0;
};

using IndexedPtr = std::shared_ptr<const IndexedQuantale>;

IndexedPtr lockset_indexed();
IndexedPtr trace_indexed();
// Constant family: ignores the index, maps as the identity.
IndexedPtr constant_indexed(QuantalePtr q);
// Pointwise product of two families over a shared index set.
IndexedPtr product_indexed(IndexedPtr left, IndexedPtr right);

// A candidate effect quantale homomorphism with the evidence needed to
// check it: refines seq and join on samples, preserves the unit exactly.
struct HomomorphismWitness {
  QuantalePtr source;
  QuantalePtr target;
  std::function<Elem(const Elem&)> map;
};

LawReport check_homomorphism(const HomomorphismWitness& w, const Budget& budget);

// For S included in T: the inclusion acts as the identity on representations
// and preserves definedness and results of both operations.
LawReport check_monotone(const IndexedQuantale& q, const std::vector<std::string>& small_index,
                         const std::vector<std::string>& big_index, const Budget& budget);

}  // namespace eq

#endif  // EQ_INDEXED_HPP_
