#ifndef EQ_REPORT_HPP_
#define EQ_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "eq/elem.hpp"

#include "json.hpp"

namespace eq {

// One failed law instance. Witnesses are kept as live elements so the
// failure can be replayed against the same quantale.
struct Counterexample {
  std::string law;
  std::vector<Elem> witnesses;
  std::vector<std::string> witness_text;
  std::string observed;
  std::string expected;
};

struct LawResult {
  std::string law;
  std::uint64_t checked = 0;
  std::vector<Counterexample> failures;
};

struct LawReport {
  std::string system;
  std::vector<LawResult> laws;

  bool passed() const {
    for (const auto& l : laws)
      if (!l.failures.empty()) return false;
    return true;
  }

  std::uint64_t failure_count() const {
    std::uint64_t n = 0;
    for (const auto& l : laws) n += l.failures.size();
    return n;
  }

  LawResult& entry(const std::string& law) {
    for (auto& l : laws)
      if (l.law == law) return l;
    laws.push_back(LawResult{law, 0, {}});
    return laws.back();
  }

  void merge(const LawReport& other) {
    for (const auto& l : other.laws) {
      auto& mine = entry(l.law);
      mine.checked += l.checked;
      mine.failures.insert(mine.failures.end(), l.failures.begin(), l.failures.end());
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json laws_json = nlohmann::ordered_json::array();
    for (const auto& l : laws) {
      nlohmann::ordered_json fails = nlohmann::ordered_json::array();
      for (const auto& f : l.failures) {
        fails.push_back({{"witnesses", f.witness_text},
                         {"observed", f.observed},
                         {"expected", f.expected}});
      }
      laws_json.push_back({{"name", l.law}, {"checked", l.checked}, {"failures", fails}});
    }
    return nlohmann::ordered_json{{"system", system}, {"laws", laws_json}, {"pass", passed()}};
  }
};

}  // namespace eq

#endif  // EQ_REPORT_HPP_
