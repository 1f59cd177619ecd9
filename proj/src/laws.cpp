#include "eq/laws.hpp"

#include <functional>
#include <utility>

namespace eq {
namespace {

using Verdict = std::optional<std::pair<std::string, std::string>>;  // observed, expected

std::string show_opt(const EffectQuantale& q, const std::optional<Elem>& e) {
  return e ? q.show(*e) : "undefined";
}

struct Law {
  const char* name;
  int arity;
  std::function<Verdict(const EffectQuantale&, const std::vector<Elem>&)> check;
};

// "Either side defined => both defined and equal."
Verdict both_or_neither(const EffectQuantale& q, const std::optional<Elem>& lhs,
                        const std::optional<Elem>& rhs) {
  if (!lhs && !rhs) return std::nullopt;
  if (lhs && rhs && q.equal(*lhs, *rhs)) return std::nullopt;
  return std::make_pair(show_opt(q, lhs), show_opt(q, rhs));
}

// "Where defined": associativity in the weak Kleene sense. Definedness may
// differ across associations (the lock-level instance exercises this), but
// defined results must agree.
Verdict equal_where_defined(const EffectQuantale& q, const std::optional<Elem>& lhs,
                            const std::optional<Elem>& rhs) {
  if (!lhs || !rhs) return std::nullopt;
  if (q.equal(*lhs, *rhs)) return std::nullopt;
  return std::make_pair(q.show(*lhs), q.show(*rhs));
}

const std::vector<Law>& core_laws() {
  static const std::vector<Law> laws = {
      {"join-idempotent", 1,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto j = q.join(w[0], w[0]);
         if (j && q.equal(*j, w[0])) return std::nullopt;
         return std::make_pair(show_opt(q, j), q.show(w[0]));
       }},
      {"join-commutative", 2,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         return both_or_neither(q, q.join(w[0], w[1]), q.join(w[1], w[0]));
       }},
      {"join-associative", 3,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto ab = q.join(w[0], w[1]);
         auto bc = q.join(w[1], w[2]);
         auto lhs = ab ? q.join(*ab, w[2]) : std::nullopt;
         auto rhs = bc ? q.join(w[0], *bc) : std::nullopt;
         return equal_where_defined(q, lhs, rhs);
       }},
      {"seq-associative", 3,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto ab = q.seq(w[0], w[1]);
         auto bc = q.seq(w[1], w[2]);
         auto lhs = ab ? q.seq(*ab, w[2]) : std::nullopt;
         auto rhs = bc ? q.seq(w[0], *bc) : std::nullopt;
         return equal_where_defined(q, lhs, rhs);
       }},
      {"seq-unit-left", 1,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto r = q.seq(q.unit(), w[0]);
         if (r && q.equal(*r, w[0])) return std::nullopt;
         return std::make_pair(show_opt(q, r), q.show(w[0]));
       }},
      {"seq-unit-right", 1,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto r = q.seq(w[0], q.unit());
         if (r && q.equal(*r, w[0])) return std::nullopt;
         return std::make_pair(show_opt(q, r), q.show(w[0]));
       }},
      {"seq-distributes-left", 3,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         // a |> (b join c)  vs  (a |> b) join (a |> c)
         auto bc = q.join(w[1], w[2]);
         auto lhs = bc ? q.seq(w[0], *bc) : std::nullopt;
         auto ab = q.seq(w[0], w[1]);
         auto ac = q.seq(w[0], w[2]);
         auto rhs = (ab && ac) ? q.join(*ab, *ac) : std::nullopt;
         return both_or_neither(q, lhs, rhs);
       }},
      {"seq-distributes-right", 3,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto ab = q.join(w[0], w[1]);
         auto lhs = ab ? q.seq(*ab, w[2]) : std::nullopt;
         auto ac = q.seq(w[0], w[2]);
         auto bc = q.seq(w[1], w[2]);
         auto rhs = (ac && bc) ? q.join(*ac, *bc) : std::nullopt;
         return both_or_neither(q, lhs, rhs);
       }},
      {"seq-monotone", 4,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         // a <= b, c <= d, b|>d defined  =>  a|>c defined and a|>c <= b|>d
         if (!leq(q, w[0], w[1]) || !leq(q, w[2], w[3])) return std::nullopt;
         auto bd = q.seq(w[1], w[3]);
         if (!bd) return std::nullopt;
         auto ac = q.seq(w[0], w[2]);
         if (ac && leq(q, *ac, *bd)) return std::nullopt;
         return std::make_pair(show_opt(q, ac), "defined and below " + q.show(*bd));
       }},
      {"join-monotone", 4,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         if (!leq(q, w[0], w[1]) || !leq(q, w[2], w[3])) return std::nullopt;
         auto bd = q.join(w[1], w[3]);
         if (!bd) return std::nullopt;
         auto ac = q.join(w[0], w[2]);
         if (ac && leq(q, *ac, *bd)) return std::nullopt;
         return std::make_pair(show_opt(q, ac), "defined and below " + q.show(*bd));
       }},
      {"seq-definedness-downward", 4,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         // Undefinedness upward closed, stated contrapositively.
         if (!leq(q, w[0], w[1]) || !leq(q, w[2], w[3])) return std::nullopt;
         if (!q.seq(w[1], w[3])) return std::nullopt;
         if (q.seq(w[0], w[2])) return std::nullopt;
         return std::make_pair(std::string("undefined"), "defined (below defined composite)");
       }},
      {"join-definedness-downward", 4,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         if (!leq(q, w[0], w[1]) || !leq(q, w[2], w[3])) return std::nullopt;
         if (!q.join(w[1], w[3])) return std::nullopt;
         if (q.join(w[0], w[2])) return std::nullopt;
         return std::make_pair(std::string("undefined"), "defined (below defined composite)");
       }},
  };
  return laws;
}

const std::vector<Law>& star_laws() {
  static const std::vector<Law> laws = {
      {"star-extensive", 1,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto s = q.star(w[0]);
         if (!s) return std::nullopt;
         if (leq(q, w[0], *s)) return std::nullopt;
         return std::make_pair(q.show(*s), q.show(w[0]) + " below it");
       }},
      {"star-idempotent", 1,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto s = q.star(w[0]);
         if (!s) return std::nullopt;
         auto ss = q.star(*s);
         if (ss && q.equal(*ss, *s)) return std::nullopt;
         return std::make_pair(show_opt(q, ss), q.show(*s));
       }},
      {"star-monotone", 2,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto se = q.star(w[0]);
         auto sf = q.star(w[1]);
         if (!se || !sf) return std::nullopt;
         if (!leq(q, w[0], w[1])) return std::nullopt;
         if (leq(q, *se, *sf)) return std::nullopt;
         return std::make_pair(q.show(*se) + " not below " + q.show(*sf), "ordered iterates");
       }},
      {"star-foldable", 1,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto s = q.star(w[0]);
         if (!s) return std::nullopt;
         auto ss = q.seq(*s, *s);
         if (ss && leq(q, *ss, *s)) return std::nullopt;
         return std::make_pair(show_opt(q, ss), "defined and below " + q.show(*s));
       }},
      {"star-possibly-empty", 1,
       [](const EffectQuantale& q, const std::vector<Elem>& w) -> Verdict {
         auto s = q.star(w[0]);
         if (!s) return std::nullopt;
         if (leq(q, q.unit(), *s)) return std::nullopt;
         return std::make_pair(q.show(*s), "unit below it");
       }},
  };
  return laws;
}

void record(const EffectQuantale& q, LawResult& out, const Law& law, const std::vector<Elem>& w) {
  ++out.checked;
  auto verdict = law.check(q, w);
  if (!verdict) return;
  Counterexample cx;
  cx.law = law.name;
  cx.witnesses = w;
  for (const auto& e : w) cx.witness_text.push_back(q.show(e));
  cx.observed = verdict->first;
  cx.expected = verdict->second;
  if (out.failures.size() < 32) out.failures.push_back(std::move(cx));
}

void run_exhaustive(const EffectQuantale& q, const std::vector<Elem>& all, const Law& law,
                    LawResult& out) {
  std::vector<Elem> w(static_cast<size_t>(law.arity));
  std::vector<size_t> idx(static_cast<size_t>(law.arity), 0);
  const size_t n = all.size();
  if (n == 0) return;
  while (true) {
    for (int i = 0; i < law.arity; ++i) w[static_cast<size_t>(i)] = all[idx[static_cast<size_t>(i)]];
    record(q, out, law, w);
    int pos = law.arity - 1;
    while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == n) {
      idx[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

void run_sampled(const EffectQuantale& q, const Budget& budget, const Law& law, LawResult& out) {
  Rng rng(budget.seed * 0x9e3779b9ULL + std::hash<std::string>{}(law.name));
  auto draw = [&]() -> Elem {
    // The unit is always an interesting witness; keep it in the stream.
    if (rng.below(16) == 0) return q.unit();
    return q.sample(rng);
  };
  for (std::uint64_t i = 0; i < budget.samples; ++i) {
    std::vector<Elem> w;
    w.reserve(static_cast<size_t>(law.arity));
    for (int k = 0; k < law.arity; ++k) w.push_back(draw());
    if (law.arity >= 4) {
      // Bias toward ordered pairs so the monotonicity premises fire.
      auto b = q.join(w[0], w[1]);
      if (b) w[1] = *b;
      auto d = q.join(w[2], w[3]);
      if (d) w[3] = *d;
    }
    record(q, out, law, w);
  }
}

LawReport run_suite(const EffectQuantale& q, const Budget& budget, const std::vector<Law>& laws) {
  LawReport report;
  report.system = q.name();
  std::optional<std::vector<Elem>> all;
  if (budget.exhaustive) {
    all = q.enumerate();
    if (!all) throw std::invalid_argument(q.name() + ": exhaustive law check needs an enumerator");
  } else if (!q.has_sampler() && !q.enumerate()) {
    throw std::invalid_argument(q.name() + ": sampled law check needs a sampler");
  } else if (!q.has_sampler()) {
    all = q.enumerate();  // finite instance checked on a sampled budget
  }
  for (const auto& law : laws) {
    auto& out = report.entry(law.name);
    if (all && budget.exhaustive)
      run_exhaustive(q, *all, law, out);
    else if (all) {
      // Finite carrier without sampler: exhaust it regardless of budget.
      run_exhaustive(q, *all, law, out);
    } else {
      run_sampled(q, budget, law, out);
    }
  }
  return report;
}

}  // namespace

LawReport check_laws(const EffectQuantale& q, const Budget& budget) {
  return run_suite(q, budget, core_laws());
}

LawReport check_star_laws(const EffectQuantale& q, const Budget& budget) {
  if (!q.has_star())
    throw std::invalid_argument(q.name() + ": no iteration operator to check");
  return run_suite(q, budget, star_laws());
}

bool replay(const EffectQuantale& q, const Counterexample& cx) {
  for (const auto& table : {&core_laws(), &star_laws()}) {
    for (const auto& law : *table) {
      if (cx.law == law.name)
        return law.check(q, cx.witnesses).has_value();
    }
  }
  return false;
}

}  // namespace eq
