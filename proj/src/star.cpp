#include "eq/star.hpp"

#include <stdexcept>

namespace eq {
namespace {

bool subidempotent(const EffectQuantale& q, const Elem& y) {
  auto yy = q.seq(y, y);
  return yy && leq(q, *yy, y);
}

std::vector<Elem> candidates_above(const EffectQuantale& q, const std::vector<Elem>& all,
                                   const Elem& x) {
  std::vector<Elem> out;
  for (const auto& y : all)
    if (leq(q, x, y) && leq(q, q.unit(), y) && subidempotent(q, y)) out.push_back(y);
  return out;
}

// Quantale view over a fixed derived table.
class TableStarQuantale final : public EffectQuantale {
 public:
  TableStarQuantale(QuantalePtr base, StarTable table)
      : base_(std::move(base)), table_(std::move(table)) {}

  std::string name() const override { return base_->name(); }
  Elem unit() const override { return base_->unit(); }
  std::optional<Elem> join(const Elem& a, const Elem& b) const override { return base_->join(a, b); }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override { return base_->seq(a, b); }
  bool equal(const Elem& a, const Elem& b) const override { return base_->equal(a, b); }
  std::string show(const Elem& e) const override { return base_->show(e); }
  std::optional<std::vector<Elem>> enumerate() const override { return base_->enumerate(); }
  bool has_sampler() const override { return base_->has_sampler(); }
  Elem sample(Rng& rng) const override { return base_->sample(rng); }
  std::optional<Elem> parse(std::string_view s) const override { return base_->parse(s); }

  bool has_star() const override { return true; }
  std::optional<Elem> star(const Elem& x) const override {
    auto hit = table_.lookup(*base_, x);
    if (!hit) return std::nullopt;
    return *hit;
  }

 private:
  QuantalePtr base_;
  StarTable table_;
};

}  // namespace

StarTable derive_star_finite(const EffectQuantale& q) {
  auto all = q.enumerate();
  if (!all) throw std::invalid_argument(q.name() + ": star derivation needs a finite enumerator");
  StarTable table;
  for (const auto& x : *all) {
    auto cands = candidates_above(q, *all, x);
    if (cands.empty()) {
      table.entries.emplace_back(x, std::nullopt);
      continue;
    }
    std::optional<Elem> least;
    for (const auto& y : cands) {
      bool below_all = true;
      for (const auto& z : cands)
        if (!leq(q, y, z)) {
          below_all = false;
          break;
        }
      if (below_all) {
        least = y;
        break;
      }
    }
    if (!least) {
      table.laxly_iterable = false;
      table.non_lax_witness = x;
      table.entries.emplace_back(x, std::nullopt);
    } else {
      table.entries.emplace_back(x, least);
    }
  }
  return table;
}

bool check_star_precision(const EffectQuantale& q, const StarTable& table) {
  auto all = q.enumerate();
  if (!all) throw std::invalid_argument(q.name() + ": precision check needs a finite enumerator");
  for (const auto& [x, sx] : table.entries) {
    if (!sx) continue;
    for (const auto& y : candidates_above(q, *all, x))
      if (!leq(q, *sx, y)) return false;
  }
  return true;
}

bool check_star_precision(const EffectQuantale& q) {
  return check_star_precision(q, derive_star_finite(q));
}

QuantalePtr with_star_table(QuantalePtr q, StarTable table) {
  return std::make_shared<TableStarQuantale>(std::move(q), std::move(table));
}

QuantalePtr with_derived_star(QuantalePtr q) {
  if (q->has_star() || !q->enumerate()) return q;
  auto table = derive_star_finite(*q);
  return with_star_table(std::move(q), std::move(table));
}

}  // namespace eq
