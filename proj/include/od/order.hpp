#pragma once

#include <functional>
#include <unordered_map>
#include <utility>

#include "od/term.hpp"

namespace od {

enum class Ordering { Less, Equal, Greater };

inline Ordering flip(Ordering o) {
  if (o == Ordering::Less) return Ordering::Greater;
  if (o == Ordering::Greater) return Ordering::Less;
  return Ordering::Equal;
}

inline const char* ordering_symbol(Ordering o) {
  switch (o) {
    case Ordering::Less: return "<";
    case Ordering::Equal: return "=";
    case Ordering::Greater: return ">";
  }
  return "?";
}

// Memo tables shared across normalize/compare calls.  Keys hold shared
// ownership of the terms they mention, so cached entries never dangle even
// when the terms were built transiently.  Not thread-safe; give each worker
// its own cache.
class OrderCache {
 public:
  TermPtr* find_norm(const TermPtr& t);
  void put_norm(const TermPtr& t, TermPtr n);
  Ordering* find_cmp(const TermPtr& a, const TermPtr& b);
  void put_cmp(const TermPtr& a, const TermPtr& b, Ordering o);
  bool* find_arity_ok(const TermPtr& t);
  void put_arity_ok(const TermPtr& t, bool ok);

 private:
  struct IdHash {
    std::size_t operator()(const TermPtr& t) const {
      return std::hash<std::uint64_t>{}(t->id());
    }
  };
  struct IdEq {
    bool operator()(const TermPtr& a, const TermPtr& b) const {
      return a.get() == b.get();
    }
  };
  struct PairHash {
    std::size_t operator()(const std::pair<TermPtr, TermPtr>& p) const {
      return std::hash<std::uint64_t>{}(p.first->id() * 0x9e3779b97f4a7c15ULL ^
                                        p.second->id());
    }
  };
  struct PairEq {
    bool operator()(const std::pair<TermPtr, TermPtr>& a,
                    const std::pair<TermPtr, TermPtr>& b) const {
      return a.first.get() == b.first.get() &&
             a.second.get() == b.second.get();
    }
  };
  std::unordered_map<TermPtr, TermPtr, IdHash, IdEq> norm_;
  std::unordered_map<std::pair<TermPtr, TermPtr>, Ordering, PairHash, PairEq>
      cmp_;
  std::unordered_map<TermPtr, bool, IdHash, IdEq> arity_ok_;
};

// Rewrites t to its canonical form: sums are flattened, zero summands are
// dropped, summands that are dominated by a later summand are absorbed,
// phi(a, phi(c, d)) collapses to phi(c, d) when a < c, empty sums become 0,
// one-element sums unwrap.  Idempotent; returns t itself when t is already
// canonical.  All collapses in t must match the flavor's annotation arity.
TermPtr normalize(const TermPtr& t, Flavor flavor, OrderCache* cache = nullptr);

// Total order on terms.  Equal holds exactly when the canonical forms are
// structurally identical.  All collapses in a and b must match the flavor's
// annotation arity; otherwise std::invalid_argument.
Ordering compare(const TermPtr& a, const TermPtr& b, Flavor flavor,
                 OrderCache* cache = nullptr);

inline bool less(const TermPtr& a, const TermPtr& b, Flavor flavor,
                 OrderCache* cache = nullptr) {
  return compare(a, b, flavor, cache) == Ordering::Less;
}

// True when every member of ks is below bound.
bool kset_less(const KSet& ks, const TermPtr& bound, Flavor flavor,
               OrderCache* cache = nullptr);

// True when some member of ks is >= bound (the negation of kset_less).
bool kset_reaches(const KSet& ks, const TermPtr& bound, Flavor flavor,
                  OrderCache* cache = nullptr);

}  // namespace od
