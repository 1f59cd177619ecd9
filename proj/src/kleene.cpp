#include "eq/kleene.hpp"

#include <functional>

#include "eq/regex.hpp"

namespace eq {
namespace {

class RegexKA final : public KleeneAlgebra {
 public:
  explicit RegexKA(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {}

  std::string name() const override { return "ka-regex"; }
  Elem zero() const override { return Elem::make(rx_empty()); }
  Elem one() const override { return Elem::make(rx_eps()); }
  Elem plus(const Elem& a, const Elem& b) const override {
    return Elem::make(rx_alt(a.get<RegexPtr>(), b.get<RegexPtr>()));
  }
  Elem times(const Elem& a, const Elem& b) const override {
    return Elem::make(rx_cat(a.get<RegexPtr>(), b.get<RegexPtr>()));
  }
  Elem star(const Elem& a) const override { return Elem::make(rx_star(a.get<RegexPtr>())); }
  bool equal(const Elem& a, const Elem& b) const override {
    return rx_equivalent(a.get<RegexPtr>(), b.get<RegexPtr>(), alphabet_);
  }
  std::string show(const Elem& e) const override { return rx_show(e.get<RegexPtr>()); }
  Elem sample(Rng& rng) const override {
    return Elem::make(rx_random(rng, alphabet_, 3, /*allow_empty=*/true));
  }
  std::optional<Elem> parse(std::string_view s) const override {
    auto r = rx_parse(s, alphabet_);
    if (!r) return std::nullopt;
    return Elem::make(*r);
  }

 private:
  std::vector<std::string> alphabet_;
};

class BoolKA final : public KleeneAlgebra {
 public:
  std::string name() const override { return "ka-bool"; }
  Elem zero() const override { return Elem::make(false); }
  Elem one() const override { return Elem::make(true); }
  Elem plus(const Elem& a, const Elem& b) const override {
    return Elem::make(a.get<bool>() || b.get<bool>());
  }
  Elem times(const Elem& a, const Elem& b) const override {
    return Elem::make(a.get<bool>() && b.get<bool>());
  }
  Elem star(const Elem&) const override { return Elem::make(true); }
  bool equal(const Elem& a, const Elem& b) const override {
    return a.get<bool>() == b.get<bool>();
  }
  std::string show(const Elem& e) const override { return e.get<bool>() ? "1" : "0"; }
  Elem sample(Rng& rng) const override { return Elem::make(rng.below(2) == 1); }
};

class KAQuantale final : public EffectQuantale {
 public:
  explicit KAQuantale(KleenePtr k) : k_(std::move(k)) {}
  std::string name() const override { return k_->name(); }
  Elem unit() const override { return k_->one(); }
  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    return k_->plus(a, b);
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    return k_->times(a, b);
  }
  bool has_star() const override { return true; }
  std::optional<Elem> star(const Elem& e) const override { return k_->star(e); }
  bool equal(const Elem& a, const Elem& b) const override { return k_->equal(a, b); }
  std::string show(const Elem& e) const override { return k_->show(e); }
  bool has_sampler() const override { return true; }
  Elem sample(Rng& rng) const override { return k_->sample(rng); }
  std::optional<Elem> parse(std::string_view s) const override { return k_->parse(s); }

 private:
  KleenePtr k_;
};

bool ka_leq(const KleeneAlgebra& k, const Elem& a, const Elem& b) {
  return k.equal(k.plus(a, b), b);
}

}  // namespace

KleenePtr regular_language_ka(std::vector<std::string> alphabet) {
  return std::make_shared<RegexKA>(std::move(alphabet));
}

KleenePtr boolean_ka() { return std::make_shared<BoolKA>(); }

QuantalePtr as_effect_quantale(KleenePtr k) {
  return std::make_shared<KAQuantale>(std::move(k));
}

LawReport check_ka_laws(const KleeneAlgebra& k, const Budget& budget) {
  LawReport report;
  report.system = k.name();
  struct KALaw {
    const char* name;
    int arity;
    std::function<bool(const KleeneAlgebra&, const std::vector<Elem>&)> holds;
  };
  static const std::vector<KALaw> laws = {
      {"plus-commutative", 2,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         return k.equal(k.plus(w[0], w[1]), k.plus(w[1], w[0]));
       }},
      {"plus-associative", 3,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         return k.equal(k.plus(k.plus(w[0], w[1]), w[2]), k.plus(w[0], k.plus(w[1], w[2])));
       }},
      {"plus-idempotent", 1,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         return k.equal(k.plus(w[0], w[0]), w[0]);
       }},
      {"plus-zero-unit", 1,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         return k.equal(k.plus(w[0], k.zero()), w[0]);
       }},
      {"times-associative", 3,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         return k.equal(k.times(k.times(w[0], w[1]), w[2]), k.times(w[0], k.times(w[1], w[2])));
       }},
      {"times-one-unit", 1,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         return k.equal(k.times(k.one(), w[0]), w[0]) && k.equal(k.times(w[0], k.one()), w[0]);
       }},
      {"zero-nilpotent", 1,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         return k.equal(k.times(k.zero(), w[0]), k.zero()) &&
                k.equal(k.times(w[0], k.zero()), k.zero());
       }},
      {"times-distributes", 3,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         return k.equal(k.times(w[0], k.plus(w[1], w[2])),
                        k.plus(k.times(w[0], w[1]), k.times(w[0], w[2]))) &&
                k.equal(k.times(k.plus(w[0], w[1]), w[2]),
                        k.plus(k.times(w[0], w[2]), k.times(w[1], w[2])));
       }},
      {"star-unfold-left", 1,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         // 1 + x x* <= x*
         Elem s = k.star(w[0]);
         return ka_leq(k, k.plus(k.one(), k.times(w[0], s)), s);
       }},
      {"star-unfold-right", 1,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         Elem s = k.star(w[0]);
         return ka_leq(k, k.plus(k.one(), k.times(s, w[0])), s);
       }},
      {"star-induction-left", 3,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         // b + a x <= x  ->  a* b <= x
         const Elem &a = w[0], &b = w[1], &x = w[2];
         if (!ka_leq(k, k.plus(b, k.times(a, x)), x)) return true;
         return ka_leq(k, k.times(k.star(a), b), x);
       }},
      {"star-induction-right", 3,
       [](const KleeneAlgebra& k, const std::vector<Elem>& w) {
         const Elem &a = w[0], &b = w[1], &x = w[2];
         if (!ka_leq(k, k.plus(b, k.times(x, a)), x)) return true;
         return ka_leq(k, k.times(b, k.star(a)), x);
       }},
  };

  for (const auto& law : laws) {
    auto& out = report.entry(law.name);
    Rng rng(budget.seed * 0x1f3d5b79ULL + std::hash<std::string>{}(law.name));
    for (std::uint64_t i = 0; i < budget.samples; ++i) {
      std::vector<Elem> w;
      for (int j = 0; j < law.arity; ++j)
        w.push_back(rng.below(16) == 0 ? (rng.below(2) ? k.one() : k.zero()) : k.sample(rng));
      ++out.checked;
      if (!law.holds(k, w)) {
        Counterexample cx;
        cx.law = law.name;
        cx.witnesses = w;
        for (const auto& e : w) cx.witness_text.push_back(k.show(e));
        cx.observed = "law violated";
        cx.expected = "law holds";
        if (out.failures.size() < 32) out.failures.push_back(std::move(cx));
      }
    }
  }
  return report;
}

}  // namespace eq
