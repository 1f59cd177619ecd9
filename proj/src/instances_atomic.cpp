#include "eq/instances.hpp"

#include <array>

namespace eq {
namespace {

constexpr int kUndef = -1;

// Rows are the first operand; order B, L, R, A, Top.
constexpr std::array<std::array<int, 5>, 5> kAtomSeq = {{
    {0, 1, 2, 3, 4},  // B;
    {1, 1, 4, 4, 4},  // L;
    {2, 3, 2, 3, 4},  // R;
    {3, 3, 4, 4, 4},  // A;
    {4, 4, 4, 4, 4},  // Top;
}};

// Total lattice join: B < L < A < Top, B < R < A.
constexpr std::array<std::array<int, 5>, 5> kAtomJoin = {{
    {0, 1, 2, 3, 4},
    {1, 1, 3, 3, 4},
    {2, 3, 2, 3, 4},
    {3, 3, 3, 3, 4},
    {4, 4, 4, 4, 4},
}};

// Order Eps, Locking, Unlocking, Critical, Entrant.
constexpr std::array<std::array<int, 5>, 5> kCritSeq = {{
    {0, 1, 2, 3, 4},
    {1, kUndef, 4, 1, kUndef},
    {2, 3, kUndef, kUndef, 2},
    {3, kUndef, 2, 3, kUndef},
    {4, 1, kUndef, kUndef, 4},
}};

const char* kAtomNames[5] = {"B", "L", "R", "A", "TOP"};
const char* kCritNames[5] = {"eps", "locking", "unlocking", "critical", "entrant"};

class AtomicityQuantale final : public EffectQuantale {
 public:
  std::string name() const override { return "atomicity"; }
  Elem unit() const override { return Elem::make(Atomicity::B); }

  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    return Elem::make(atomicity_join(a.get<Atomicity>(), b.get<Atomicity>()));
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    auto r = atomicity_seq(a.get<Atomicity>(), b.get<Atomicity>());
    if (!r) return std::nullopt;
    return Elem::make(*r);
  }
  bool equal(const Elem& a, const Elem& b) const override {
    return a.get<Atomicity>() == b.get<Atomicity>();
  }
  std::string show(const Elem& e) const override {
    return kAtomNames[static_cast<int>(e.get<Atomicity>())];
  }
  std::optional<std::vector<Elem>> enumerate() const override {
    std::vector<Elem> out;
    for (int i = 0; i < 5; ++i) out.push_back(Elem::make(static_cast<Atomicity>(i)));
    return out;
  }
  std::optional<Elem> parse(std::string_view s) const override {
    for (int i = 0; i < 5; ++i)
      if (s == kAtomNames[i]) return Elem::make(static_cast<Atomicity>(i));
    return std::nullopt;
  }
};

class CritQuantale final : public EffectQuantale {
 public:
  std::string name() const override { return "crit"; }
  Elem unit() const override { return Elem::make(CritEffect::Eps); }

  std::optional<Elem> join(const Elem& a, const Elem& b) const override {
    auto r = crit_join(a.get<CritEffect>(), b.get<CritEffect>());
    if (!r) return std::nullopt;
    return Elem::make(*r);
  }
  std::optional<Elem> seq(const Elem& a, const Elem& b) const override {
    auto r = crit_seq(a.get<CritEffect>(), b.get<CritEffect>());
    if (!r) return std::nullopt;
    return Elem::make(*r);
  }
  bool equal(const Elem& a, const Elem& b) const override {
    return a.get<CritEffect>() == b.get<CritEffect>();
  }
  std::string show(const Elem& e) const override {
    return kCritNames[static_cast<int>(e.get<CritEffect>())];
  }
  std::optional<std::vector<Elem>> enumerate() const override {
    std::vector<Elem> out;
    for (int i = 0; i < 5; ++i) out.push_back(Elem::make(static_cast<CritEffect>(i)));
    return out;
  }
  std::optional<Elem> parse(std::string_view s) const override {
    for (int i = 0; i < 5; ++i)
      if (s == kCritNames[i]) return Elem::make(static_cast<CritEffect>(i));
    return std::nullopt;
  }
};

}  // namespace

std::optional<Atomicity> atomicity_seq(Atomicity a, Atomicity b) {
  return static_cast<Atomicity>(kAtomSeq[static_cast<size_t>(a)][static_cast<size_t>(b)]);
}

Atomicity atomicity_join(Atomicity a, Atomicity b) {
  return static_cast<Atomicity>(kAtomJoin[static_cast<size_t>(a)][static_cast<size_t>(b)]);
}

std::optional<CritEffect> crit_seq(CritEffect a, CritEffect b) {
  int r = kCritSeq[static_cast<size_t>(a)][static_cast<size_t>(b)];
  if (r == kUndef) return std::nullopt;
  return static_cast<CritEffect>(r);
}

std::optional<CritEffect> crit_join(CritEffect a, CritEffect b) {
  if (a == b) return a;
  if (a == CritEffect::Eps && (b == CritEffect::Critical || b == CritEffect::Entrant)) return b;
  if (b == CritEffect::Eps && (a == CritEffect::Critical || a == CritEffect::Entrant)) return a;
  return std::nullopt;
}

QuantalePtr atomicity_quantale() { return std::make_shared<AtomicityQuantale>(); }
QuantalePtr crit_quantale() { return std::make_shared<CritQuantale>(); }

}  // namespace eq
