#ifndef EQ_MULTISET_HPP_
#define EQ_MULTISET_HPP_

#include <map>
#include <string>

namespace eq {

// Multiset over interned names as a sorted count map; zero counts are never
// stored, so structural equality is multiset equality.
using Multiset = std::map<std::string, int>;

inline Multiset mset_add(const Multiset& a, const Multiset& b) {  // union: counts add
  Multiset out = a;
  for (const auto& [k, n] : b) out[k] += n;
  return out;
}

inline Multiset mset_max(const Multiset& a, const Multiset& b) {  // join: pointwise max
  Multiset out = a;
  for (const auto& [k, n] : b) {
    auto it = out.find(k);
    if (it == out.end() || it->second < n) out[k] = n;
  }
  return out;
}

inline Multiset mset_sub(const Multiset& a, const Multiset& b) {  // zero-bounded
  Multiset out;
  for (const auto& [k, n] : a) {
    auto it = b.find(k);
    int rest = it == b.end() ? n : n - it->second;
    if (rest > 0) out[k] = rest;
  }
  return out;
}

inline bool mset_leq(const Multiset& a, const Multiset& b) {
  for (const auto& [k, n] : a) {
    auto it = b.find(k);
    if (it == b.end() || it->second < n) return false;
  }
  return true;
}

inline std::string mset_show(const Multiset& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, n] : m)
    for (int i = 0; i < n; ++i) {
      if (!first) out += ",";
      out += k;
      first = false;
    }
  return out + "}";
}

}  // namespace eq

#endif  // EQ_MULTISET_HPP_
