#include "eq/instances.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace eq {

// ---------------------------------------------------------------------------
// Lower-bound count effects: seq adds, join takes the minimum, 0 is both the
// unit and the greatest element.
// ---------------------------------------------------------------------------

CountEffect count_seq(CountEffect a, CountEffect b) { return CountEffect{a.count + b.count}; }
CountEffect count_join(CountEffect a, CountEffect b) {
  return CountEffect{std::min(a.count, b.count)};
}

namespace {

class CountQuantale final : public EffectQuantale {
 public:
  std::string name() const override { return "count"; }
  Elem unit() const override { return Elem::make(CountEffect{0}); }
  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    return Elem::make(count_join(a.get<CountEffect>(), b.get<CountEffect>()));
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    return Elem::make(count_seq(a.get<CountEffect>(), b.get<CountEffect>()));
  }
  bool has_star() const override { return true; }
  std::optional<Elem> star(const Elem&) const override {
    // Every element is subidempotent here, but only 0 sits above the unit,
    // so the free closure collapses everything to 0.
    return unit();
  }
  bool equal(const Elem& a, const Elem& b) const override {
    return a.get<CountEffect>() == b.get<CountEffect>();
  }
  std::string show(const Elem& e) const override {
    return std::to_string(e.get<CountEffect>().count);
  }
  bool has_sampler() const override { return true; }
  Elem sample(Rng& rng) const override {
    return Elem::make(CountEffect{rng.below(21)});
  }
  std::optional<Elem> parse(std::string_view s) const override {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return Elem::make(CountEffect{v});
  }
};

// ---------------------------------------------------------------------------
// Commutative lift of a finite bounded join-semilattice with top.
// ---------------------------------------------------------------------------

class LiftQuantale final : public EffectQuantale {
 public:
  explicit LiftQuantale(FiniteSemilattice lat) : lat_(std::move(lat)) {}

  std::string name() const override { return lat_.name; }
  Elem unit() const override { return Elem::make(lat_.bottom); }
  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    return Elem::make(lat_.join(a.get<int>(), b.get<int>()));
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override { return join(a, b); }
  bool equal(const Elem& a, const Elem& b) const override { return a.get<int>() == b.get<int>(); }
  std::string show(const Elem& e) const override {
    return lat_.elems[static_cast<size_t>(e.get<int>())];
  }
  std::optional<std::vector<Elem>> enumerate() const override {
    std::vector<Elem> out;
    for (int i = 0; i < static_cast<int>(lat_.elems.size()); ++i) out.push_back(Elem::make(i));
    return out;
  }
  std::optional<Elem> parse(std::string_view s) const override {
    for (int i = 0; i < static_cast<int>(lat_.elems.size()); ++i)
      if (lat_.elems[static_cast<size_t>(i)] == s) return Elem::make(i);
    return std::nullopt;
  }

 private:
  FiniteSemilattice lat_;
};

// ---------------------------------------------------------------------------
// Finite trace sets, carried by empty-language-free regexes. Equality is
// language equality over the symbols both sides mention.
// ---------------------------------------------------------------------------

class TraceQuantale final : public EffectQuantale {
 public:
  explicit TraceQuantale(std::vector<std::string> alphabet, std::string name = "trace")
      : alphabet_(std::move(alphabet)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  Elem unit() const override { return Elem::make(rx_eps()); }
  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    return Elem::make(rx_alt(a.get<RegexPtr>(), b.get<RegexPtr>()));
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    return Elem::make(rx_cat(a.get<RegexPtr>(), b.get<RegexPtr>()));
  }
  bool has_star() const override { return true; }
  std::optional<Elem> star(const Elem& e) const override {
    return Elem::make(rx_star(e.get<RegexPtr>()));
  }
  bool equal(const Elem& a, const Elem& b) const override {
    return rx_equivalent(a.get<RegexPtr>(), b.get<RegexPtr>(), alphabet_);
  }
  std::string show(const Elem& e) const override { return rx_show(e.get<RegexPtr>()); }
  bool has_sampler() const override { return true; }
  Elem sample(Rng& rng) const override {
    return Elem::make(rx_random(rng, alphabet_, 3, /*allow_empty=*/false));
  }
  std::optional<Elem> parse(std::string_view s) const override {
    auto r = rx_parse(s, alphabet_);
    if (!r) return std::nullopt;
    return Elem::make(*r);
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }

 private:
  std::vector<std::string> alphabet_;
  std::string name_;
};

// ---------------------------------------------------------------------------
// Pointwise product
// ---------------------------------------------------------------------------

Elem sample_from(const EffectQuantale& q, Rng& rng) {
  if (q.has_sampler()) return q.sample(rng);
  auto all = q.enumerate();
  if (!all || all->empty()) return q.unit();
  return (*all)[rng.below(all->size())];
}

class ProductQuantale final : public EffectQuantale {
 public:
  ProductQuantale(QuantalePtr left, QuantalePtr right)
      : left_(std::move(left)), right_(std::move(right)) {}

  std::string name() const override { return left_->name() + "*" + right_->name(); }
  Elem unit() const override {
    return Elem::make(ProductElem{left_->unit(), right_->unit()});
  }
  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    const auto& pa = a.get<ProductElem>();
    const auto& pb = b.get<ProductElem>();
    auto l = left_->join(pa.left, pb.left);
    auto r = right_->join(pa.right, pb.right);
    if (!l || !r) return std::nullopt;
    return Elem::make(ProductElem{*l, *r});
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    const auto& pa = a.get<ProductElem>();
    const auto& pb = b.get<ProductElem>();
    auto l = left_->seq(pa.left, pb.left);
    auto r = right_->seq(pa.right, pb.right);
    if (!l || !r) return std::nullopt;
    return Elem::make(ProductElem{*l, *r});
  }
  bool has_star() const override { return left_->has_star() && right_->has_star(); }
  std::optional<Elem> star(const Elem& e) const override {
    if (!has_star()) return std::nullopt;
    const auto& p = e.get<ProductElem>();
    auto l = left_->star(p.left);
    auto r = right_->star(p.right);
    if (!l || !r) return std::nullopt;
    return Elem::make(ProductElem{*l, *r});
  }
  bool equal(const Elem& a, const Elem& b) const override {
    const auto& pa = a.get<ProductElem>();
    const auto& pb = b.get<ProductElem>();
    return left_->equal(pa.left, pb.left) && right_->equal(pa.right, pb.right);
  }
  std::string show(const Elem& e) const override {
    const auto& p = e.get<ProductElem>();
    return "(" + left_->show(p.left) + " , " + right_->show(p.right) + ")";
  }
  std::optional<std::vector<Elem>> enumerate() const override {
    auto ls = left_->enumerate();
    auto rs = right_->enumerate();
    if (!ls || !rs) return std::nullopt;
    std::vector<Elem> out;
    for (const auto& l : *ls)
      for (const auto& r : *rs) out.push_back(Elem::make(ProductElem{l, r}));
    return out;
  }
  bool has_sampler() const override {
    return (left_->has_sampler() || left_->enumerate()) &&
           (right_->has_sampler() || right_->enumerate());
  }
  Elem sample(Rng& rng) const override {
    return Elem::make(ProductElem{sample_from(*left_, rng), sample_from(*right_, rng)});
  }
  std::optional<Elem> parse(std::string_view s) const override {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
    std::string_view body = s.substr(1, s.size() - 2);
    int depth = 0;
    for (size_t i = 0; i + 2 < body.size(); ++i) {
      char c = body[i];
      if (c == '(' || c == '{' || c == '[') ++depth;
      if (c == ')' || c == '}' || c == ']') --depth;
      if (depth == 0 && body.substr(i, 3) == " , ") {
        auto l = left_->parse(body.substr(0, i));
        auto r = right_->parse(body.substr(i + 3));
        if (!l || !r) return std::nullopt;
        return Elem::make(ProductElem{*l, *r});
      }
    }
    return std::nullopt;
  }

 private:
  QuantalePtr left_;
  QuantalePtr right_;
};

}  // namespace

QuantalePtr count_quantale() { return std::make_shared<CountQuantale>(); }

QuantalePtr lift_semilattice(const FiniteSemilattice& lattice) {
  if (lattice.elems.empty()) throw std::invalid_argument("lift: empty carrier");
  if (lattice.bottom < 0 || lattice.bottom >= static_cast<int>(lattice.elems.size()) ||
      lattice.top < 0 || lattice.top >= static_cast<int>(lattice.elems.size()))
    throw std::invalid_argument("lift: carrier needs a bottom and a top");
  int n = static_cast<int>(lattice.elems.size());
  for (int i = 0; i < n; ++i) {
    if (lattice.join(lattice.bottom, i) != i)
      throw std::invalid_argument("lift: bottom is not a least element");
    if (lattice.join(lattice.top, i) != lattice.top)
      throw std::invalid_argument("lift: top is not a greatest element");
  }
  return std::make_shared<LiftQuantale>(lattice);
}

QuantalePtr exceptions_quantale() {
  // Powerset of {IOError, ArgError} under union, encoded as bitmasks.
  FiniteSemilattice lat;
  lat.name = "exceptions";
  lat.elems = {"{}", "{IOError}", "{ArgError}", "{IOError,ArgError}"};
  lat.join = [](int a, int b) { return a | b; };
  lat.bottom = 0;
  lat.top = 3;
  return lift_semilattice(lat);
}

QuantalePtr trace_quantale(std::vector<std::string> alphabet) {
  return std::make_shared<TraceQuantale>(std::move(alphabet));
}

QuantalePtr product_quantale(QuantalePtr left, QuantalePtr right) {
  return std::make_shared<ProductQuantale>(std::move(left), std::move(right));
}

}  // namespace eq
