#pragma once

// Independent reference implementations used only by the tests.  Each one
// recomputes a fact the library also computes, by a different route, so the
// two can be cross-checked over exhaustive fragments.

#include <algorithm>
#include <optional>
#include <vector>

#include "od/order.hpp"
#include "od/term.hpp"

namespace oracles {

using od::eq;
using od::Kind;
using od::KSet;
using od::Ordering;
using od::Term;
using od::TermPtr;

// --- arithmetic comparison for terms built from 0, + and phi only ---
//
// Works on raw (possibly non-canonical) terms and decides genuine value
// equality, e.g. phi(0, phi(1, 0)) equals phi(1, 0).  The library never
// returns Equal for distinct canonical terms; this oracle checks the
// Less/Greater verdicts against textbook ordinal arithmetic.

inline Ordering veblen_value_cmp(const TermPtr& x, const TermPtr& y);

inline void additive_parts(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->kind() == Kind::Zero) return;
  if (t->kind() == Kind::Sum) {
    for (const auto& s : t->summands()) additive_parts(s, out);
    return;
  }
  out.push_back(t);
}

// Keeps only the summands that survive left absorption, i.e. each kept part
// is >= every part after it.
inline std::vector<TermPtr> surviving_parts(const TermPtr& t) {
  std::vector<TermPtr> parts;
  additive_parts(t, parts);
  std::vector<TermPtr> kept;
  for (std::size_t i = parts.size(); i-- > 0;) {
    if (kept.empty() ||
        veblen_value_cmp(parts[i], kept.back()) != Ordering::Less)
      kept.push_back(parts[i]);
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

inline Ordering phi_value_cmp(const TermPtr& x, const TermPtr& y) {
  Ordering ra = veblen_value_cmp(x->phi_first(), y->phi_first());
  if (ra == Ordering::Equal)
    return veblen_value_cmp(x->phi_second(), y->phi_second());
  if (ra == Ordering::Less) return veblen_value_cmp(x->phi_second(), y);
  Ordering rb = veblen_value_cmp(y->phi_second(), x);
  if (rb == Ordering::Less) return Ordering::Greater;
  if (rb == Ordering::Equal) return Ordering::Equal;
  return Ordering::Less;
}

inline Ordering veblen_value_cmp(const TermPtr& x, const TermPtr& y) {
  std::vector<TermPtr> xs = surviving_parts(x);
  std::vector<TermPtr> ys = surviving_parts(y);
  const std::size_t n = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < n; ++i) {
    Ordering r = phi_value_cmp(xs[i], ys[i]);
    if (r != Ordering::Equal) return r;
  }
  if (xs.size() == ys.size()) return Ordering::Equal;
  return xs.size() < ys.size() ? Ordering::Less : Ordering::Greater;
}

// --- literal two-sided rule for collapses sharing a base ---
//
// Evaluates the defining disjunction for d(s;...) < d(s;...) directly:
// the strict lexicographic drop with all tracked collapses kept below the
// right side, or the left side reaching into the right side's tracked
// collapses.  Component comparisons delegate to the library (they involve
// strictly smaller pairs); the top-level rule shape is independent.
// Returns nullopt when the two directions are inconsistent.

inline std::vector<TermPtr> rule_k_components(const TermPtr& c) {
  switch (c->annotation_count()) {
    case 0: return {c->arg()};
    case 1: return {c->arg(), c->q()};
    default: return {c->arg(), c->st4(), c->rg4(), c->st3(), c->rg3()};
  }
}

inline std::vector<TermPtr> rule_lex_components(const TermPtr& c) {
  switch (c->annotation_count()) {
    case 0: return {c->arg()};
    case 1: return {c->arg(), c->q()};
    default: return {c->arg(), c->st4(), c->st3(), c->rg4(), c->rg3()};
  }
}

inline std::optional<Ordering> same_base_rule(const TermPtr& c1,
                                              const TermPtr& c2,
                                              od::Flavor flavor,
                                              od::OrderCache* cache) {
  const TermPtr& sigma = c1->base();
  auto cmp = [&](const TermPtr& a, const TermPtr& b) {
    return od::compare(a, b, flavor, cache);
  };
  auto tracked = [&](const TermPtr& c) {
    std::vector<TermPtr> out;
    for (const auto& comp : rule_k_components(c))
      for (const auto& m : od::kset(sigma, comp).members) out.push_back(m);
    return out;
  };
  auto lex_below = [&](const TermPtr& a, const TermPtr& b) {
    std::vector<TermPtr> la = rule_lex_components(a);
    std::vector<TermPtr> lb = rule_lex_components(b);
    for (std::size_t i = 0; i < la.size(); ++i) {
      Ordering r = cmp(la[i], lb[i]);
      if (r != Ordering::Equal) return r == Ordering::Less;
    }
    return false;
  };
  auto strictly_less = [&](const TermPtr& a, const TermPtr& b) {
    bool all_below = true;
    for (const auto& m : tracked(a))
      if (cmp(m, b) != Ordering::Less) {
        all_below = false;
        break;
      }
    bool left = lex_below(a, b) && all_below;
    bool right = false;
    for (const auto& m : tracked(b))
      if (cmp(a, m) != Ordering::Greater) {
        right = true;
        break;
      }
    return left || right;
  };
  bool lt = strictly_less(c1, c2);
  bool gt = strictly_less(c2, c1);
  if (lt && gt) return std::nullopt;
  if (lt) return Ordering::Less;
  if (gt) return Ordering::Greater;
  if (eq(c1, c2)) return Ordering::Equal;
  return std::nullopt;  // distinct terms must be strictly ordered
}

// --- tracked-collapse set by occurrence scan ---
//
// Walks every occurrence in alpha with an explicit work list; a collapse
// whose iteratively-followed base chain reaches sigma is recorded and not
// entered, everything else is entered.  Result is the syntactically sorted
// set, the same presentation the library uses.

inline bool chain_hits(const TermPtr& c, const TermPtr& sigma) {
  TermPtr b = c;
  while (true) {
    if (b->kind() != Kind::Collapse) return false;
    b = b->base();
    if (eq(b, sigma)) return true;
  }
}

inline std::vector<TermPtr> kset_brute(const TermPtr& sigma,
                                       const TermPtr& alpha) {
  std::vector<TermPtr> found;
  std::vector<TermPtr> work{alpha};
  while (!work.empty()) {
    TermPtr t = work.back();
    work.pop_back();
    if (t->kind() == Kind::Collapse && chain_hits(t, sigma)) {
      found.push_back(t);
      continue;
    }
    for (const auto& k : t->kids()) work.push_back(k);
  }
  std::sort(found.begin(), found.end(), od::TermSynLess{});
  found.erase(std::unique(found.begin(), found.end(),
                          [](const TermPtr& a, const TermPtr& b) {
                            return eq(a, b);
                          }),
              found.end());
  return found;
}

}  // namespace oracles
