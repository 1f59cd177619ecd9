#include <memory>
#include <optional>
#include <vector>

#include "doctest.h"
#include "eq/instances.hpp"
#include "eq/laws.hpp"
#include "eq/quantale.hpp"
#include "eq/star.hpp"

using namespace eq;

namespace {

Elem atom(Atomicity a) { return Elem::make(a); }

// Wraps a quantale, overriding one seq entry. Used to corrupt tables.
class SeqOverride final : public EffectQuantale {
 public:
  SeqOverride(QuantalePtr base, Elem a, Elem b, std::optional<Elem> result)
      : base_(std::move(base)), a_(std::move(a)), b_(std::move(b)), result_(std::move(result)) {}

  std::string name() const override { return base_->name() + "-corrupt"; }
  Elem unit() const override { return base_->unit(); }
  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    return base_->join(a, b);
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    if (base_->equal(a, a_) && base_->equal(b, b_)) return result_;
    return base_->seq(a, b);
  }
  bool equal(const Elem& a, const Elem& b) const override { return base_->equal(a, b); }
  std::string show(const Elem& e) const override { return base_->show(e); }
  std::optional<std::vector<Elem>> enumerate() const override { return base_->enumerate(); }

 private:
  QuantalePtr base_;
  Elem a_, b_;
  std::optional<Elem> result_;
};

// Wraps a quantale with a fixed unary star override on one element.
class StarOverride final : public EffectQuantale {
 public:
  StarOverride(QuantalePtr base, Elem x, std::optional<Elem> result)
      : base_(std::move(base)), x_(std::move(x)), result_(std::move(result)) {}

  std::string name() const override { return base_->name(); }
  Elem unit() const override { return base_->unit(); }
  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    return base_->join(a, b);
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    return base_->seq(a, b);
  }
  bool has_star() const override { return true; }
  std::optional<Elem> star(const Elem& e) const override {
    if (base_->equal(e, x_)) return result_;
    return base_->star(e);
  }
  bool equal(const Elem& a, const Elem& b) const override { return base_->equal(a, b); }
  std::string show(const Elem& e) const override { return base_->show(e); }
  std::optional<std::vector<Elem>> enumerate() const override { return base_->enumerate(); }

 private:
  QuantalePtr base_;
  Elem x_;
  std::optional<Elem> result_;
};

// Independent oracle for the free iteration: scans candidates using only the
// join operation, with its own least-element search.
std::optional<Elem> oracle_star(const EffectQuantale& q, const Elem& x) {
  auto all = *q.enumerate();
  std::vector<Elem> cands;
  for (const auto& y : all) {
    auto above_x = q.join(x, y);
    auto above_i = q.join(q.unit(), y);
    if (!above_x || !q.equal(*above_x, y)) continue;
    if (!above_i || !q.equal(*above_i, y)) continue;
    auto yy = q.seq(y, y);
    if (!yy) continue;
    auto fold = q.join(*yy, y);
    if (!fold || !q.equal(*fold, y)) continue;
    cands.push_back(y);
  }
  for (const auto& y : cands) {
    bool least = true;
    for (const auto& z : cands) {
      auto j = q.join(y, z);
      if (!j || !q.equal(*j, z)) {
        least = false;
        break;
      }
    }
    if (least) return y;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("induced order on atomicity and locksets") {
  auto q = atomicity_quantale();
  CHECK(leq(*q, atom(Atomicity::B), atom(Atomicity::A)));
  CHECK_FALSE(leq(*q, atom(Atomicity::A), atom(Atomicity::B)));
  auto elems = *q->enumerate();
  for (const auto& x : elems) CHECK(leq(*q, x, x));

  auto lq = lockset_quantale({"l"});
  LockEffect acq{{}, {{"l", 1}}};
  LockEffect none{};
  // Oracle: the join side condition compares acquisition/release deltas.
  CHECK(mset_sub(acq.post, acq.pre) != mset_sub(none.post, none.pre));
  CHECK_FALSE(leq(*lq, Elem::make(acq), Elem::make(none)));
}

TEST_CASE("atomicity and crit law sweeps pass exhaustively") {
  for (auto q : {atomicity_quantale(), crit_quantale()}) {
    auto report = check_laws(*q, Budget::exhaust());
    CHECK(report.passed());
    CHECK(report.failure_count() == 0);
  }
}

TEST_CASE("one-element quantale degenerates cleanly") {
  FiniteSemilattice one;
  one.name = "one";
  one.elems = {"I"};
  one.join = [](int, int) { return 0; };
  auto q = lift_semilattice(one);
  CHECK(check_laws(*q, Budget::exhaust()).passed());
}

TEST_CASE("corrupted atomicity table is caught and replayable") {
  auto good = atomicity_quantale();
  auto bad = std::make_shared<SeqOverride>(good, atom(Atomicity::R), atom(Atomicity::L),
                                           atom(Atomicity::R));
  auto report = check_laws(*bad, Budget::exhaust());
  CHECK_FALSE(report.passed());
  bool assoc_or_dist = false;
  for (const auto& l : report.laws) {
    if (l.failures.empty()) continue;
    if (l.law.find("associative") != std::string::npos ||
        l.law.find("distributes") != std::string::npos)
      assoc_or_dist = true;
    for (const auto& cx : l.failures) CHECK(replay(*bad, cx));
  }
  CHECK(assoc_or_dist);
}

TEST_CASE("derived iteration matches the hand-designed operators") {
  auto q = atomicity_quantale();
  auto table = derive_star_finite(*q);
  CHECK(table.laxly_iterable);
  auto expect = [&](Atomicity x, Atomicity s) {
    auto hit = table.lookup(*q, atom(x));
    REQUIRE(hit);
    REQUIRE(*hit);
    CHECK(q->equal(**hit, atom(s)));
  };
  expect(Atomicity::B, Atomicity::B);
  expect(Atomicity::L, Atomicity::L);
  expect(Atomicity::R, Atomicity::R);
  expect(Atomicity::A, Atomicity::Top);
  expect(Atomicity::Top, Atomicity::Top);

  auto crit = crit_quantale();
  auto ct = derive_star_finite(*crit);
  CHECK(ct.laxly_iterable);
  auto centry = [&](CritEffect x) { return *ct.lookup(*crit, Elem::make(x)); };
  CHECK(crit->equal(*centry(CritEffect::Eps), Elem::make(CritEffect::Eps)));
  CHECK(crit->equal(*centry(CritEffect::Critical), Elem::make(CritEffect::Critical)));
  CHECK(crit->equal(*centry(CritEffect::Entrant), Elem::make(CritEffect::Entrant)));
  CHECK_FALSE(centry(CritEffect::Locking).has_value());
  CHECK_FALSE(centry(CritEffect::Unlocking).has_value());

  // Commutative lifts iterate as the identity.
  auto exc = exceptions_quantale();
  auto et = derive_star_finite(*exc);
  CHECK(et.laxly_iterable);
  for (const auto& [x, sx] : et.entries) {
    REQUIRE(sx);
    CHECK(exc->equal(*sx, x));
  }
}

TEST_CASE("derived iteration agrees with an independent candidate search") {
  for (auto q : {atomicity_quantale(), crit_quantale(), exceptions_quantale(),
                 product_quantale(atomicity_quantale(), crit_quantale())}) {
    auto table = derive_star_finite(*q);
    for (const auto& [x, sx] : table.entries) {
      auto expected = oracle_star(*q, x);
      REQUIRE(sx.has_value() == expected.has_value());
      if (sx) CHECK(q->equal(*sx, *expected));
    }
  }
}

TEST_CASE("star law suite on derived and broken operators") {
  auto q = with_derived_star(atomicity_quantale());
  CHECK(check_star_laws(*q, Budget::exhaust()).passed());

  // The everywhere-undefined operator satisfies the laws vacuously.
  auto none = std::make_shared<StarOverride>(atomicity_quantale(), atom(Atomicity::B),
                                             std::nullopt);
  CHECK(check_star_laws(*none, Budget::exhaust()).passed());

  // A |> A = TOP, so star(A) = A breaks foldability.
  auto bad = std::make_shared<StarOverride>(q, atom(Atomicity::A), atom(Atomicity::A));
  auto report = check_star_laws(*bad, Budget::exhaust());
  CHECK_FALSE(report.passed());
  bool foldable_failed = false;
  for (const auto& l : report.laws)
    if (l.law == "star-foldable" && !l.failures.empty()) foldable_failed = true;
  CHECK(foldable_failed);
}

TEST_CASE("derived star tables pass the star laws and close downward") {
  for (auto base : {atomicity_quantale(), crit_quantale(), exceptions_quantale(),
                    product_quantale(atomicity_quantale(), crit_quantale())}) {
    auto q = with_derived_star(base);
    CHECK(check_star_laws(*q, Budget::exhaust()).passed());
    auto all = *q->enumerate();
    for (const auto& x : all)
      for (const auto& y : all) {
        if (!leq(*q, x, y)) continue;
        if (q->star(y)) CHECK(q->star(x).has_value());
      }
  }
}

TEST_CASE("free iteration is maximally precise on the finite instances") {
  CHECK(check_star_precision(*atomicity_quantale()));
  CHECK(check_star_precision(*crit_quantale()));
  CHECK(check_star_precision(*exceptions_quantale()));
  // TOP is the only subidempotent above A, so nothing smaller could serve.
  auto q = atomicity_quantale();
  auto elems = *q->enumerate();
  for (const auto& y : elems) {
    if (!leq(*q, atom(Atomicity::A), y)) continue;
    auto yy = q->seq(y, y);
    bool subidem = yy && leq(*q, *yy, y);
    if (subidem) CHECK(q->equal(y, atom(Atomicity::Top)));
  }
}

TEST_CASE("seq_power folds the tables") {
  auto q = atomicity_quantale();
  auto r3 = seq_power(*q, atom(Atomicity::R), 3);
  REQUIRE(r3);
  CHECK(q->equal(*r3, atom(Atomicity::R)));
  CHECK(q->equal(*seq_power(*q, atom(Atomicity::A), 0), atom(Atomicity::B)));

  auto lq = lockset_quantale({"l"});
  Elem acq = Elem::make(LockEffect{{}, {{"l", 1}}});
  auto twice = seq_power(*lq, acq, 2);
  REQUIRE(twice);
  CHECK(lq->equal(*twice, Elem::make(LockEffect{{}, {{"l", 2}}})));
}

TEST_CASE("monotonicity holds on the full atomicity carrier") {
  auto q = atomicity_quantale();
  auto all = *q->enumerate();
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all)
        for (const auto& d : all) {
          if (!leq(*q, a, b) || !leq(*q, c, d)) continue;
          auto bd = q->seq(b, d);
          auto ac = q->seq(a, c);
          REQUIRE(bd);
          REQUIRE(ac);
          CHECK(leq(*q, *ac, *bd));
        }
}
