#include "od/order.hpp"

#include <algorithm>
#include <stdexcept>

namespace od {

TermPtr* OrderCache::find_norm(const TermPtr& t) {
  auto it = norm_.find(t);
  return it == norm_.end() ? nullptr : &it->second;
}

void OrderCache::put_norm(const TermPtr& t, TermPtr n) {
  norm_.emplace(t, std::move(n));
}

Ordering* OrderCache::find_cmp(const TermPtr& a, const TermPtr& b) {
  auto it = cmp_.find({a, b});
  return it == cmp_.end() ? nullptr : &it->second;
}

void OrderCache::put_cmp(const TermPtr& a, const TermPtr& b, Ordering o) {
  cmp_.emplace(std::make_pair(a, b), o);
}

bool* OrderCache::find_arity_ok(const TermPtr& t) {
  auto it = arity_ok_.find(t);
  return it == arity_ok_.end() ? nullptr : &it->second;
}

void OrderCache::put_arity_ok(const TermPtr& t, bool ok) {
  arity_ok_.emplace(t, ok);
}

namespace {

// All comparison helpers assume canonical inputs (outputs of nf) and return
// Equal exactly for structurally identical terms.  cmp() canonicalizes the
// orientation of every pair through the syntactic order, so antisymmetry
// holds by construction and each unordered pair is decided exactly once.
struct Ctx {
  Flavor flavor;
  OrderCache& cache;

  bool arity_ok(const TermPtr& t) {
    if (bool* hit = cache.find_arity_ok(t)) return *hit;
    bool ok = t->kind() != Kind::Collapse ||
              t->annotation_count() == flavor_arity(flavor);
    if (ok)
      for (const auto& k : t->kids())
        if (!arity_ok(k)) {
          ok = false;
          break;
        }
    cache.put_arity_ok(t, ok);
    return ok;
  }

  void ensure_arity(const TermPtr& t) {
    if (!arity_ok(t))
      throw std::invalid_argument(
          std::string("collapse annotation arity does not match system ") +
          flavor_name(flavor));
  }

  // --- canonical form ---

  TermPtr nf(const TermPtr& t) {
    if (TermPtr* hit = cache.find_norm(t)) return *hit;
    TermPtr r = nf_impl(t);
    cache.put_norm(t, r);
    if (r.get() != t.get()) cache.put_norm(r, r);
    return r;
  }

  TermPtr nf_impl(const TermPtr& t) {
    switch (t->kind()) {
      case Kind::Zero:
      case Kind::Pi:
        return t;
      case Kind::Adm: {
        TermPtr u = nf(t->adm_inner());
        return u.get() == t->adm_inner().get() ? t : Term::adm(std::move(u));
      }
      case Kind::Phi: {
        TermPtr a = nf(t->phi_first());
        TermPtr b = nf(t->phi_second());
        // phi(a, phi(c, d)) names the same ordinal as phi(c, d) when a < c:
        // the inner value is a fixed point of every level below c.
        if (b->kind() == Kind::Phi && cmp(a, b->phi_first()) == Ordering::Less)
          return b;
        if (a.get() == t->phi_first().get() &&
            b.get() == t->phi_second().get())
          return t;
        return Term::phi(std::move(a), std::move(b));
      }
      case Kind::Collapse: {
        const auto& kids = t->kids();
        std::vector<TermPtr> out;
        out.reserve(kids.size());
        bool changed = false;
        for (const auto& k : kids) {
          TermPtr n = nf(k);
          if (n.get() != k.get()) changed = true;
          out.push_back(std::move(n));
        }
        if (!changed) return t;
        std::vector<TermPtr> ann(out.begin() + 2, out.end());
        return Term::collapse_with(out[0], out[1], std::move(ann));
      }
      case Kind::Sum: {
        std::vector<TermPtr> parts;
        bool changed = false;
        for (const auto& s : t->summands()) {
          TermPtr n = nf(s);
          if (n.get() != s.get()) changed = true;
          if (n->kind() == Kind::Zero) {
            changed = true;
            continue;
          }
          if (n->kind() == Kind::Sum) {
            changed = true;
            for (const auto& inner : n->summands()) parts.push_back(inner);
            continue;
          }
          parts.push_back(std::move(n));
        }
        // Right-to-left absorption: a summand below the leading term of the
        // suffix contributes nothing, so only a non-increasing run survives.
        std::vector<TermPtr> kept;
        kept.reserve(parts.size());
        for (std::size_t i = parts.size(); i-- > 0;) {
          if (kept.empty() || cmp(parts[i], kept.back()) != Ordering::Less)
            kept.push_back(parts[i]);
          else
            changed = true;
        }
        std::reverse(kept.begin(), kept.end());
        if (kept.empty()) return Term::zero();
        if (kept.size() == 1) return kept[0];
        if (!changed) return t;
        return Term::sum(std::move(kept));
      }
    }
    return t;
  }

  // --- comparison ---

  Ordering cmp(const TermPtr& x, const TermPtr& y) {
    if (x.get() == y.get()) return Ordering::Equal;
    int syn = cmp_syntactic(x, y);
    if (syn == 0) return Ordering::Equal;
    if (syn > 0) return flip(cmp(y, x));
    if (Ordering* hit = cache.find_cmp(x, y)) return *hit;
    Ordering r = cmp_impl(x, y);
    cache.put_cmp(x, y, r);
    return r;
  }

  Ordering cmp_impl(const TermPtr& x, const TermPtr& y) {
    Kind kx = x->kind();
    Kind ky = y->kind();
    if (kx == Kind::Zero) return Ordering::Less;
    if (ky == Kind::Zero) return Ordering::Greater;
    if (kx == Kind::Sum || ky == Kind::Sum) return sum_lex(x, y);
    if (kx == Kind::Phi && ky == Kind::Phi) return veblen(x, y);
    if (kx == Kind::Phi) return phi_vs_critical(x, y);
    if (ky == Kind::Phi) return flip(phi_vs_critical(y, x));
    if (kx == Kind::Pi && ky == Kind::Adm) return pi_vs_adm(y);
    if (kx == Kind::Adm && ky == Kind::Pi) return flip(pi_vs_adm(x));
    if (kx == Kind::Adm && ky == Kind::Adm)
      return cmp(x->adm_inner(), y->adm_inner());
    if (kx == Kind::Collapse && ky == Kind::Collapse) return collapses(x, y);
    if (ky == Kind::Collapse) return regular_vs_collapse(x, y);
    if (kx == Kind::Collapse) return flip(regular_vs_collapse(y, x));
    return Ordering::Equal;  // two pi terms; identical, caught earlier
  }

  // Treats a non-sum term as a one-element sequence.  A proper prefix of a
  // longer sequence names a smaller ordinal because every canonical summand
  // is positive.
  Ordering sum_lex(const TermPtr& x, const TermPtr& y) {
    const std::vector<TermPtr> xs =
        x->kind() == Kind::Sum ? x->summands() : std::vector<TermPtr>{x};
    const std::vector<TermPtr> ys =
        y->kind() == Kind::Sum ? y->summands() : std::vector<TermPtr>{y};
    std::size_t n = std::min(xs.size(), ys.size());
    for (std::size_t i = 0; i < n; ++i) {
      Ordering r = cmp(xs[i], ys[i]);
      if (r != Ordering::Equal) return r;
    }
    if (xs.size() == ys.size()) return Ordering::Equal;
    return xs.size() < ys.size() ? Ordering::Less : Ordering::Greater;
  }

  Ordering veblen(const TermPtr& x, const TermPtr& y) {
    Ordering ra = cmp(x->phi_first(), y->phi_first());
    if (ra == Ordering::Equal) return cmp(x->phi_second(), y->phi_second());
    if (ra == Ordering::Less) return cmp(x->phi_second(), y);
    return flip(cmp(y->phi_second(), x));
  }

  // s is pi, an adm term, or a collapse: closed under phi, so phi(a, b)
  // stays below s exactly when both arguments do.
  Ordering phi_vs_critical(const TermPtr& x, const TermPtr& s) {
    if (cmp(x->phi_first(), s) == Ordering::Less &&
        cmp(x->phi_second(), s) == Ordering::Less)
      return Ordering::Less;
    return Ordering::Greater;
  }

  Ordering pi_vs_adm(const TermPtr& y) {
    return cmp(Term::pi(), y->adm_inner()) != Ordering::Greater
               ? Ordering::Less
               : Ordering::Greater;
  }

  // Everything a collapse with base sigma can reach lies strictly above this
  // bound: the next admissible covers its seed, every other base covers 0.
  TermPtr lower_bound(const TermPtr& sigma) {
    if (sigma->kind() == Kind::Adm) return sigma->adm_inner();
    return Term::zero();
  }

  // x is pi or an adm term, c a collapse with base sigma.  c lies in the
  // band (lower(sigma), sigma); inside the band the tracked subterms of x
  // decide the order.
  Ordering regular_vs_collapse(const TermPtr& x, const TermPtr& c) {
    const TermPtr& sigma = c->base();
    if (cmp(x, sigma) != Ordering::Less) return Ordering::Greater;
    if (cmp(x, lower_bound(sigma)) != Ordering::Greater) return Ordering::Less;
    for (const auto& m : kset(sigma, x).members)
      if (cmp(m, c) != Ordering::Less) return Ordering::Greater;
    return Ordering::Less;
  }

  // Components whose tracked collapses feed the K-clauses of the same-base
  // rule.
  std::vector<TermPtr> k_components(const TermPtr& c) {
    switch (c->annotation_count()) {
      case 0:
        return {c->arg()};
      case 1:
        return {c->arg(), c->q()};
      default:
        return {c->arg(), c->st4(), c->rg4(), c->st3(), c->rg3()};
    }
  }

  // Components compared lexicographically once the K-clauses are settled.
  std::vector<TermPtr> lex_components(const TermPtr& c) {
    switch (c->annotation_count()) {
      case 0:
        return {c->arg()};
      case 1:
        return {c->arg(), c->q()};
      default:
        return {c->arg(), c->st4(), c->st3(), c->rg4(), c->rg3()};
    }
  }

  // True when probe <= some collapse tracked through sigma inside host's
  // components.
  bool k_reaches(const TermPtr& probe, const TermPtr& host,
                 const TermPtr& sigma) {
    for (const auto& comp : k_components(host))
      for (const auto& m : kset(sigma, comp).members)
        if (cmp(probe, m) != Ordering::Greater) return true;
    return false;
  }

  Ordering same_base(const TermPtr& c1, const TermPtr& c2) {
    const TermPtr& sigma = c1->base();
    if (k_reaches(c1, c2, sigma)) return Ordering::Less;
    if (k_reaches(c2, c1, sigma)) return Ordering::Greater;
    std::vector<TermPtr> l1 = lex_components(c1);
    std::vector<TermPtr> l2 = lex_components(c2);
    for (std::size_t i = 0; i < l1.size(); ++i) {
      Ordering r = cmp(l1[i], l2[i]);
      if (r != Ordering::Equal) return r;
    }
    return Ordering::Equal;
  }

  // Order of other vs pivot once both lie inside the pivot's band: other
  // exceeds the pivot exactly when one of its collapses tracked through the
  // pivot's base does.
  Ordering band_decide(const TermPtr& other, const TermPtr& pivot) {
    for (const auto& m : kset(pivot->base(), other).members)
      if (cmp(m, pivot) != Ordering::Less) return Ordering::Greater;
    return Ordering::Less;
  }

  Ordering diff_base(const TermPtr& c1, const TermPtr& c2) {
    const TermPtr& s = c1->base();
    const TermPtr& t = c2->base();
    // Band exits: c1 lies in (lower(s), s) and c2 in (lower(t), t), so a
    // term clear of the other's band decides immediately.
    if (cmp(s, c2) != Ordering::Greater) return Ordering::Less;
    if (cmp(t, c1) != Ordering::Greater) return Ordering::Greater;
    if (cmp(c2, lower_bound(s)) != Ordering::Greater) return Ordering::Greater;
    if (cmp(c1, lower_bound(t)) != Ordering::Greater) return Ordering::Less;
    // Overlapping bands: the collapse with the smaller base pins the finer
    // band; membership of the other term in that band is decided by its
    // tracked collapses.  The smaller base never sits on the other's base
    // chain, so the recursion strictly shrinks.
    Ordering rb = cmp(s, t);
    if (rb == Ordering::Equal) return same_base(c1, c2);
    if (rb == Ordering::Less) return flip(band_decide(c2, c1));
    return band_decide(c1, c2);
  }

  Ordering collapses(const TermPtr& c1, const TermPtr& c2) {
    if (eq(c1->base(), c2->base())) return same_base(c1, c2);
    return diff_base(c1, c2);
  }
};

}  // namespace

TermPtr normalize(const TermPtr& t, Flavor flavor, OrderCache* cache) {
  OrderCache local;
  Ctx ctx{flavor, cache ? *cache : local};
  ctx.ensure_arity(t);
  return ctx.nf(t);
}

Ordering compare(const TermPtr& a, const TermPtr& b, Flavor flavor,
                 OrderCache* cache) {
  OrderCache local;
  Ctx ctx{flavor, cache ? *cache : local};
  ctx.ensure_arity(a);
  ctx.ensure_arity(b);
  return ctx.cmp(ctx.nf(a), ctx.nf(b));
}

bool kset_less(const KSet& ks, const TermPtr& bound, Flavor flavor,
               OrderCache* cache) {
  for (const auto& m : ks.members)
    if (compare(m, bound, flavor, cache) != Ordering::Less) return false;
  return true;
}

bool kset_reaches(const KSet& ks, const TermPtr& bound, Flavor flavor,
                  OrderCache* cache) {
  return !kset_less(ks, bound, flavor, cache);
}

}  // namespace od
