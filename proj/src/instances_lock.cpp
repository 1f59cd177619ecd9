#include "eq/instances.hpp"

#include <set>
#include <sstream>
#include <tuple>

namespace eq {

// ---------------------------------------------------------------------------
// Lock multiset effects
// ---------------------------------------------------------------------------

LockEffect lock_seq(const LockEffect& a, const LockEffect& b) {
  // c  = a u (b - a')
  // c' = (((c - (a - a')) u (a' - a)) - (b - b')) u (b' - b)
  Multiset c = mset_add(a.pre, mset_sub(b.pre, a.post));
  Multiset cp = mset_add(
      mset_sub(mset_add(mset_sub(c, mset_sub(a.pre, a.post)), mset_sub(a.post, a.pre)),
               mset_sub(b.pre, b.post)),
      mset_sub(b.post, b.pre));
  return LockEffect{std::move(c), std::move(cp)};
}

std::optional<LockEffect> lock_join(const LockEffect& a, const LockEffect& b) {
  // Both sides must acquire and release the same locks the same number of times.
  if (mset_sub(b.pre, b.post) != mset_sub(a.pre, a.post)) return std::nullopt;
  if (mset_sub(b.post, b.pre) != mset_sub(a.post, a.pre)) return std::nullopt;
  return LockEffect{mset_max(a.pre, b.pre), mset_max(a.post, b.post)};
}

std::optional<LockEffect> lock_star(const LockEffect& a) {
  if (a.pre != a.post) return std::nullopt;
  return a;
}

namespace {

std::string lock_show(const LockEffect& e) {
  return mset_show(e.pre) + "=>" + mset_show(e.post);
}

std::optional<Multiset> mset_parse(std::string_view s) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') return std::nullopt;
  Multiset out;
  std::string body(s.substr(1, s.size() - 2));
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t b = item.find_first_not_of(' ');
    size_t e = item.find_last_not_of(' ');
    if (b == std::string::npos) return std::nullopt;
    out[item.substr(b, e - b + 1)] += 1;
  }
  return out;
}

class LocksetQuantale final : public EffectQuantale {
 public:
  explicit LocksetQuantale(std::vector<std::string> universe) : universe_(std::move(universe)) {}

  std::string name() const override { return "lockset"; }
  Elem unit() const override { return Elem::make(LockEffect{}); }

  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    auto r = lock_join(a.get<LockEffect>(), b.get<LockEffect>());
    if (!r) return std::nullopt;
    return Elem::make(*r);
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    return Elem::make(lock_seq(a.get<LockEffect>(), b.get<LockEffect>()));
  }
  bool has_star() const override { return true; }
  std::optional<Elem> star(const Elem& e) const override {
    auto r = lock_star(e.get<LockEffect>());
    if (!r) return std::nullopt;
    return Elem::make(*r);
  }
  bool equal(const Elem& a, const Elem& b) const override {
    return a.get<LockEffect>() == b.get<LockEffect>();
  }
  std::string show(const Elem& e) const override { return lock_show(e.get<LockEffect>()); }

  bool has_sampler() const override { return true; }
  Elem sample(Rng& rng) const override {
    LockEffect e;
    for (const auto& id : universe_) {
      int npre = rng.range(0, 2);
      int npost = rng.range(0, 2);
      if (npre) e.pre[id] = npre;
      if (npost) e.post[id] = npost;
    }
    return Elem::make(std::move(e));
  }

  std::optional<Elem> parse(std::string_view s) const override {
    size_t arrow = s.find("=>");
    if (arrow == std::string_view::npos) return std::nullopt;
    auto pre = mset_parse(s.substr(0, arrow));
    auto post = mset_parse(s.substr(arrow + 2));
    if (!pre || !post) return std::nullopt;
    return Elem::make(LockEffect{*pre, *post});
  }

 private:
  std::vector<std::string> universe_;
};

}  // namespace

QuantalePtr lockset_quantale(std::vector<std::string> universe) {
  return std::make_shared<LocksetQuantale>(std::move(universe));
}

// ---------------------------------------------------------------------------
// Deadlock-freedom effects (lock levels)
// ---------------------------------------------------------------------------

namespace {

using DLMap = std::map<std::string, DLEntry>;

bool unique_held_levels(const DLMap& m) {
  std::set<std::pair<bool, std::uint32_t>> seen;
  for (const auto& [_, e] : m) {
    if (!e.held) continue;
    if (!seen.insert({e.level.inf, e.level.n}).second) return false;
  }
  return true;
}

// Largest level among held locks; nullopt when none are held.
std::optional<Level> max_held_level(const DLMap& m) {
  std::optional<Level> out;
  for (const auto& [_, e] : m) {
    if (!e.held) continue;
    if (!out || *out < e.level) out = e.level;
  }
  return out;
}

bool levels_agree(const DLMap& a, const DLMap& b) {
  for (const auto& [k, e] : a) {
    auto it = b.find(k);
    if (it == b.end() || !(it->second.level == e.level)) return false;
  }
  return true;
}

DLMap restrict_out(const DLMap& m, const DLMap& excluded) {
  DLMap out;
  for (const auto& [k, e] : m)
    if (!excluded.count(k)) out[k] = e;
  return out;
}

// Compatible union; nullopt when the maps disagree on a shared lock.
std::optional<DLMap> compatible_union(const DLMap& a, const DLMap& b) {
  DLMap out = a;
  for (const auto& [k, e] : b) {
    auto it = out.find(k);
    if (it != out.end() && !(it->second == e)) return std::nullopt;
    out[k] = e;
  }
  return out;
}

// Bindings in exactly one of the two maps, as a set of full bindings.
using DLBinding = std::tuple<std::string, bool, bool, std::uint32_t>;  // lock, held, inf, level

std::set<DLBinding> sym_diff(const DLMap& x, const DLMap& y) {
  std::set<DLBinding> out;
  auto add = [&out](const std::string& k, const DLEntry& e) {
    out.insert({k, e.held, e.level.inf, e.level.n});
  };
  for (const auto& [k, e] : x) {
    auto it = y.find(k);
    if (it == y.end() || !(it->second == e)) add(k, e);
  }
  for (const auto& [k, e] : y) {
    auto it = x.find(k);
    if (it == x.end() || !(it->second == e)) add(k, e);
  }
  return out;
}

}  // namespace

bool dl_well_formed(const DLEffect& e) {
  if (e.pre.size() != e.post.size()) return false;
  for (const auto& [k, _] : e.pre)
    if (!e.post.count(k)) return false;
  if (!levels_agree(e.pre, e.post)) return false;
  auto held = max_held_level(e.pre);
  if (held && !(*held < e.bound)) return false;
  return unique_held_levels(e.pre) && unique_held_levels(e.post);
}

std::optional<DLEffect> dl_seq(const DLEffect& a, const DLEffect& b) {
  // Overlap agreement: a's post must match b's pre on the shared domain.
  for (const auto& [k, e] : a.post) {
    auto it = b.pre.find(k);
    if (it != b.pre.end() && !(it->second == e)) return std::nullopt;
  }
  // Locks still held after `a` that `b` does not mention must sit below b's
  // acquisition bound; symmetrically for locks b assumes but a never saw.
  auto resid_a = max_held_level(restrict_out(a.post, b.pre));
  if (resid_a && !(*resid_a < b.bound)) return std::nullopt;
  auto resid_b = max_held_level(restrict_out(b.pre, a.post));
  if (resid_b && !(*resid_b < a.bound)) return std::nullopt;

  DLEffect out;
  out.pre = a.pre;
  for (const auto& [k, e] : restrict_out(b.pre, a.pre)) out.pre[k] = e;
  out.bound = level_min(a.bound, b.bound);
  out.post = b.post;
  for (const auto& [k, e] : restrict_out(a.post, b.pre)) out.post[k] = e;
  if (!dl_well_formed(out)) return std::nullopt;
  return out;
}

std::optional<DLEffect> dl_join(const DLEffect& a, const DLEffect& b) {
  if (sym_diff(a.pre, a.post) != sym_diff(b.pre, b.post)) return std::nullopt;
  auto pre = compatible_union(a.pre, b.pre);
  auto post = compatible_union(a.post, b.post);
  if (!pre || !post) return std::nullopt;
  DLEffect out{*pre, level_min(a.bound, b.bound), *post};
  if (!dl_well_formed(out)) return std::nullopt;
  return out;
}

namespace {

std::string level_show(const Level& l) { return l.inf ? "inf" : std::to_string(l.n); }

std::string dl_map_show(const DLMap& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, e] : m) {
    if (!first) out += ",";
    out += k + ":" + level_show(e.level) + (e.held ? "!" : "");
    first = false;
  }
  return out + "}";
}

class SuenagaQuantale final : public EffectQuantale {
 public:
  explicit SuenagaQuantale(std::vector<std::string> universe) : universe_(std::move(universe)) {}

  std::string name() const override { return "dl"; }
  Elem unit() const override { return Elem::make(DLEffect{{}, Level::infinity(), {}}); }

  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    auto r = dl_join(a.get<DLEffect>(), b.get<DLEffect>());
    if (!r) return std::nullopt;
    return Elem::make(*r);
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    auto r = dl_seq(a.get<DLEffect>(), b.get<DLEffect>());
    if (!r) return std::nullopt;
    return Elem::make(*r);
  }
  bool has_star() const override { return true; }
  std::optional<Elem> star(const Elem& e) const override {
    // Identity exactly on the loop-invariant triples (X, L, X).
    const auto& d = e.get<DLEffect>();
    if (d.pre != d.post) return std::nullopt;
    return e;
  }
  bool equal(const Elem& a, const Elem& b) const override {
    return a.get<DLEffect>() == b.get<DLEffect>();
  }
  std::string show(const Elem& e) const override {
    const auto& d = e.get<DLEffect>();
    return dl_map_show(d.pre) + "-" + level_show(d.bound) + "->" + dl_map_show(d.post);
  }

  bool has_sampler() const override { return true; }
  Elem sample(Rng& rng) const override {
    for (int attempt = 0; attempt < 64; ++attempt) {
      DLEffect e;
      for (const auto& id : universe_) {
        if (rng.chance(0.5)) continue;
        Level lv = Level::of(static_cast<std::uint32_t>(rng.range(1, 3)));
        bool held_pre = rng.chance(0.4);
        bool held_post = rng.chance(0.4);
        e.pre[id] = DLEntry{lv, held_pre};
        e.post[id] = DLEntry{lv, held_post};
      }
      e.bound = rng.chance(0.3) ? Level::infinity()
                                : Level::of(static_cast<std::uint32_t>(rng.range(1, 4)));
      if (dl_well_formed(e)) return Elem::make(std::move(e));
    }
    return unit();
  }

 private:
  std::vector<std::string> universe_;
};

}  // namespace

QuantalePtr suenaga_quantale(std::vector<std::string> universe) {
  return std::make_shared<SuenagaQuantale>(std::move(universe));
}

}  // namespace eq
