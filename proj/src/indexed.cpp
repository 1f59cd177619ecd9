#include "eq/indexed.hpp"

#include <set>

#include "eq/instances.hpp"
#include "eq/regex.hpp"

namespace eq {
namespace {

Multiset mset_rename(const Multiset& m, const IndexFn& f) {
  Multiset out;
  for (const auto& [k, n] : m) out[f(k)] += n;  // merged names sum multiplicities
  return out;
}

class LocksetIndexed final : public IndexedQuantale {
 public:
  std::string name() const override { return "lockset"; }
  QuantalePtr at(const std::vector<std::string>& index) const override {
    return lockset_quantale(index);
  }
  Elem map_effect(const IndexFn& f, const Elem& e) const override {
    const auto& le = e.get<LockEffect>();
    return Elem::make(LockEffect{mset_rename(le.pre, f), mset_rename(le.post, f)});
  }
  std::vector<std::string> indices(const Elem& e) const override {
    const auto& le = e.get<LockEffect>();
    std::set<std::string> seen;
    for (const auto& [k, _] : le.pre) seen.insert(k);
    for (const auto& [k, _] : le.post) seen.insert(k);
    return {seen.begin(), seen.end()};
  }
};

class TraceIndexed final : public IndexedQuantale {
 public:
  std::string name() const override { return "trace"; }
  QuantalePtr at(const std::vector<std::string>& index) const override {
    return trace_quantale(index);
  }
  Elem map_effect(const IndexFn& f, const Elem& e) const override {
    return Elem::make(rx_rename(e.get<RegexPtr>(), f));
  }
  std::vector<std::string> indices(const Elem& e) const override {
    return rx_symbols(e.get<RegexPtr>());
  }
};

class ConstantIndexed final : public IndexedQuantale {
 public:
  explicit ConstantIndexed(QuantalePtr q) : q_(std::move(q)) {}
  std::string name() const override { return q_->name(); }
  QuantalePtr at(const std::vector<std::string>&) const override { return q_; }
  Elem map_effect(const IndexFn&, const Elem& e) const override { return e; }
  std::vector<std::string> indices(const Elem&) const override { return {}; }

 private:
  QuantalePtr q_;
};

class ProductIndexed final : public IndexedQuantale {
 public:
  ProductIndexed(IndexedPtr left, IndexedPtr right)
      : left_(std::move(left)), right_(std::move(right)) {}
  std::string name() const override { return left_->name() + "*" + right_->name(); }
  QuantalePtr at(const std::vector<std::string>& index) const override {
    return product_quantale(left_->at(index), right_->at(index));
  }
  Elem map_effect(const IndexFn& f, const Elem& e) const override {
    const auto& p = e.get<ProductElem>();
    return Elem::make(ProductElem{left_->map_effect(f, p.left), right_->map_effect(f, p.right)});
  }
  std::vector<std::string> indices(const Elem& e) const override {
    const auto& p = e.get<ProductElem>();
    auto out = left_->indices(p.left);
    for (auto& s : right_->indices(p.right)) out.push_back(std::move(s));
    std::set<std::string> dedup(out.begin(), out.end());
    return {dedup.begin(), dedup.end()};
  }

 private:
  IndexedPtr left_;
  IndexedPtr right_;
};

Elem draw(const EffectQuantale& q, Rng& rng) {
  if (q.has_sampler()) return q.sample(rng);
  auto all = q.enumerate();
  if (!all || all->empty()) return q.unit();
  return (*all)[rng.below(all->size())];
}

}  // namespace

IndexedPtr lockset_indexed() { return std::make_shared<LocksetIndexed>(); }
IndexedPtr trace_indexed() { return std::make_shared<TraceIndexed>(); }
IndexedPtr constant_indexed(QuantalePtr q) {
  return std::make_shared<ConstantIndexed>(std::move(q));
}
IndexedPtr product_indexed(IndexedPtr left, IndexedPtr right) {
  return std::make_shared<ProductIndexed>(std::move(left), std::move(right));
}

LawReport check_homomorphism(const HomomorphismWitness& w, const Budget& budget) {
  LawReport report;
  report.system = w.source->name() + "->" + w.target->name();
  const auto& src = *w.source;
  const auto& dst = *w.target;

  // Create all entries up front; entry() references would otherwise be
  // invalidated by later insertions.
  report.entry("hom-preserves-unit");
  report.entry("hom-refines-seq");
  report.entry("hom-refines-join");

  auto& unit_law = report.entry("hom-preserves-unit");
  ++unit_law.checked;
  Elem mapped_unit = w.map(src.unit());
  if (!dst.equal(mapped_unit, dst.unit())) {
    unit_law.failures.push_back(Counterexample{"hom-preserves-unit",
                                               {src.unit()},
                                               {src.show(src.unit())},
                                               dst.show(mapped_unit),
                                               dst.show(dst.unit())});
  }

  Rng rng(budget.seed);
  auto& seq_law = report.entry("hom-refines-seq");
  auto& join_law = report.entry("hom-refines-join");
  for (std::uint64_t i = 0; i < budget.samples; ++i) {
    Elem x = draw(src, rng);
    Elem y = draw(src, rng);
    if (auto z = src.seq(x, y)) {
      ++seq_law.checked;
      auto mz = dst.seq(w.map(x), w.map(y));
      if (!mz || !leq(dst, *mz, w.map(*z))) {
        seq_law.failures.push_back(Counterexample{
            "hom-refines-seq",
            {x, y},
            {src.show(x), src.show(y)},
            mz ? dst.show(*mz) : "undefined",
            "defined and below " + dst.show(w.map(*z))});
      }
    }
    if (auto z = src.join(x, y)) {
      ++join_law.checked;
      auto mz = dst.join(w.map(x), w.map(y));
      if (!mz || !leq(dst, *mz, w.map(*z))) {
        join_law.failures.push_back(Counterexample{
            "hom-refines-join",
            {x, y},
            {src.show(x), src.show(y)},
            mz ? dst.show(*mz) : "undefined",
            "defined and below " + dst.show(w.map(*z))});
      }
    }
  }
  return report;
}

LawReport check_monotone(const IndexedQuantale& q, const std::vector<std::string>& small_index,
                         const std::vector<std::string>& big_index, const Budget& budget) {
  LawReport report;
  report.system = q.name();
  auto small_q = q.at(small_index);
  auto big_q = q.at(big_index);
  IndexFn identity = [](const std::string& s) { return s; };

  report.entry("inclusion-is-identity");
  report.entry("inclusion-preserves-ops");
  Rng rng(budget.seed);
  auto& incl_law = report.entry("inclusion-is-identity");
  auto& def_law = report.entry("inclusion-preserves-ops");
  for (std::uint64_t i = 0; i < budget.samples; ++i) {
    Elem x = draw(*small_q, rng);
    Elem y = draw(*small_q, rng);
    ++incl_law.checked;
    if (!big_q->equal(q.map_effect(identity, x), x)) {
      incl_law.failures.push_back(Counterexample{"inclusion-is-identity",
                                                 {x},
                                                 {small_q->show(x)},
                                                 big_q->show(q.map_effect(identity, x)),
                                                 small_q->show(x)});
    }
    ++def_law.checked;
    auto record_mismatch = [&](const char* op, const std::optional<Elem>& small_r,
                               const std::optional<Elem>& big_r) {
      bool ok = small_r.has_value() == big_r.has_value() &&
                (!small_r || big_q->equal(*small_r, *big_r));
      if (!ok) {
        def_law.failures.push_back(Counterexample{
            "inclusion-preserves-ops",
            {x, y},
            {small_q->show(x), small_q->show(y), op},
            small_r ? small_q->show(*small_r) : "undefined",
            big_r ? big_q->show(*big_r) : "undefined"});
      }
    };
    record_mismatch("seq", small_q->seq(x, y), big_q->seq(x, y));
    record_mismatch("join", small_q->join(x, y), big_q->join(x, y));
  }
  return report;
}

}  // namespace eq
