#include "od/harness.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace od {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               t0)
      .count();
}

struct Enumerator {
  Flavor flavor;
  const PoolConfig& pool;
  OrderCache* cache;
  std::vector<std::vector<TermPtr>> by_size;
  std::vector<TermPtr> atoms_desc;  // non-sum terms seen so far, largest first

  void run(std::size_t max_size) {
    by_size.assign(max_size + 1, {});
    for (std::size_t s = 1; s <= max_size; ++s) {
      std::vector<TermPtr> atoms = make_atoms(s);
      std::vector<TermPtr> sums;
      if (pool.plus) sums = make_sums(s);
      auto& level = by_size[s];
      level = atoms;
      level.insert(level.end(), sums.begin(), sums.end());
      atoms_desc.insert(atoms_desc.end(), atoms.begin(), atoms.end());
      std::sort(atoms_desc.begin(), atoms_desc.end(),
                [&](const TermPtr& a, const TermPtr& b) {
                  return compare(a, b, flavor, cache) == Ordering::Greater;
                });
    }
  }

  std::vector<TermPtr> make_atoms(std::size_t s) {
    std::vector<TermPtr> out;
    if (s == 1) {
      if (pool.zero) out.push_back(Term::zero());
      if (pool.pi) out.push_back(Term::pi());
      return out;
    }
    if (pool.adm)
      for (const auto& u : by_size[s - 1])
        if (u->kind() == Kind::Pi || u->kind() == Kind::Collapse)
          out.push_back(Term::adm(u));
    if (pool.phi)
      for (std::size_t i = 1; i + 2 <= s; ++i)
        for (const auto& a : by_size[i])
          for (const auto& b : by_size[s - 1 - i]) {
            // keep only canonical combinations: the inner value would
            // swallow the outer level
            if (b->kind() == Kind::Phi &&
                compare(a, b->phi_first(), flavor, cache) == Ordering::Less)
              continue;
            out.push_back(Term::phi(a, b));
          }
    if (pool.collapse && s >= 3) {
      std::vector<TermPtr> picked;
      gen_collapse(s - 1, 0, picked, out);
    }
    return out;
  }

  void gen_collapse(std::size_t remaining, std::size_t idx,
                    std::vector<TermPtr>& picked, std::vector<TermPtr>& out) {
    const std::size_t slots = 2 + static_cast<std::size_t>(flavor_arity(flavor));
    if (idx == slots) {
      if (remaining != 0) return;
      std::vector<TermPtr> ann(picked.begin() + 2, picked.end());
      TermPtr c = Term::collapse_with(picked[0], picked[1], std::move(ann));
      if (validate(c, flavor, {}, cache).empty()) out.push_back(std::move(c));
      return;
    }
    const std::size_t still_needed = slots - idx - 1;
    for (std::size_t sz = 1; sz + still_needed <= remaining; ++sz)
      for (const auto& t : by_size[sz]) {
        if (idx == 0 && !is_regular(t)) continue;
        picked.push_back(t);
        gen_collapse(remaining - sz, idx + 1, picked, out);
        picked.pop_back();
      }
  }

  // Canonical sums are non-increasing runs of positive non-sum terms, so a
  // non-decreasing index walk over the descending atom list enumerates each
  // exactly once.
  std::vector<TermPtr> make_sums(std::size_t s) {
    std::vector<TermPtr> out;
    if (s >= 3) {
      std::vector<TermPtr> cur;
      gen_sums(0, s - 1, cur, out);
    }
    return out;
  }

  void gen_sums(std::size_t start, std::size_t remaining,
                std::vector<TermPtr>& cur, std::vector<TermPtr>& out) {
    for (std::size_t i = start; i < atoms_desc.size(); ++i) {
      const auto& a = atoms_desc[i];
      if (a->kind() == Kind::Zero) continue;
      std::size_t sz = a->size();
      if (sz > remaining) continue;
      cur.push_back(a);
      if (remaining == sz && cur.size() >= 2) out.push_back(Term::sum(cur));
      if (remaining > sz) gen_sums(i, remaining - sz, cur, out);
      cur.pop_back();
    }
  }
};

}  // namespace

std::vector<TermPtr> enumerate_fragment(Flavor flavor, std::size_t max_size,
                                        const PoolConfig& pool,
                                        OrderCache* cache) {
  OrderCache local;
  OrderCache* c = cache ? cache : &local;
  Enumerator e{flavor, pool, c, {}, {}};
  e.run(max_size);
  std::vector<TermPtr> out;
  for (std::size_t s = 1; s <= max_size; ++s)
    out.insert(out.end(), e.by_size[s].begin(), e.by_size[s].end());
  for (const auto& t : out)
    if (normalize(t, flavor, c).get() != t.get())
      throw std::logic_error("enumeration produced a non-canonical term: " +
                             render(t));
  std::sort(out.begin(), out.end(), [](const TermPtr& a, const TermPtr& b) {
    if (a->size() != b->size()) return a->size() < b->size();
    return cmp_syntactic(a, b) < 0;
  });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (cmp_syntactic(out[i - 1], out[i]) == 0)
      throw std::logic_error("enumeration produced a duplicate: " +
                             render(out[i]));
  return out;
}

CheckReport check_order_laws_with(
    const std::vector<TermPtr>& terms,
    const std::function<Ordering(const TermPtr&, const TermPtr&)>& cmp,
    std::size_t transitivity_samples) {
  const auto t0 = Clock::now();
  CheckReport rep;
  rep.label = "order-laws";
  rep.fragment_size = terms.size();
  const std::size_t n = terms.size();
  const std::size_t violation_cap = 1000;
  auto flag = [&](const char* law, std::vector<std::string> witnesses,
                  std::string detail) {
    if (rep.violations.size() < violation_cap)
      rep.violations.push_back(
          {law, std::move(witnesses), std::move(detail)});
  };

  std::vector<signed char> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Ordering o = cmp(terms[i], terms[j]);
      m[i * n + j] = o == Ordering::Less ? -1 : (o == Ordering::Equal ? 0 : 1);
      ++rep.pairs;
    }

  for (std::size_t i = 0; i < n; ++i)
    if (m[i * n + i] != 0)
      flag("reflexivity", {render(terms[i])},
           "term does not compare equal to itself");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m[i * n + j] == 0)
        flag("equality", {render(terms[i]), render(terms[j])},
             "distinct canonical terms compare equal");
      if (m[i * n + j] != -m[j * n + i])
        flag("antisymmetry", {render(terms[i]), render(terms[j])},
             "swapped operands do not give the opposite verdict");
    }

  if (n > 0 && transitivity_samples > 0) {
    const unsigned long long total =
        static_cast<unsigned long long>(n) * n * n;
    const unsigned long long samples =
        transitivity_samples < total ? transitivity_samples : total;
    unsigned long long stride = 1;
    if (samples < total) {
      stride = (total / samples) | 1ULL;
      while (std::gcd(stride, total) != 1ULL) stride += 2;
      stride %= total;
      if (stride == 0) stride = 1;
    }
    unsigned long long idx = 0;
    for (unsigned long long k = 0; k < samples; ++k) {
      std::size_t i = static_cast<std::size_t>(idx / (n * n));
      std::size_t j = static_cast<std::size_t>((idx / n) % n);
      std::size_t l = static_cast<std::size_t>(idx % n);
      if (m[i * n + j] < 0 && m[j * n + l] < 0 && m[i * n + l] >= 0)
        flag("transitivity",
             {render(terms[i]), render(terms[j]), render(terms[l])},
             "a < b and b < c but not a < c");
      ++rep.pairs;
      idx += stride;
      if (idx >= total) idx -= total;
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

CheckReport check_order_laws(const std::vector<TermPtr>& terms, Flavor flavor,
                             std::size_t transitivity_samples,
                             OrderCache* cache) {
  OrderCache local;
  OrderCache* c = cache ? cache : &local;
  CheckReport rep = check_order_laws_with(
      terms,
      [&](const TermPtr& a, const TermPtr& b) {
        return compare(a, b, flavor, c);
      },
      transitivity_samples);
  rep.flavor = flavor;
  return rep;
}

CheckReport check_axioms(const std::vector<TermPtr>& terms, Flavor flavor,
                         OrderCache* cache) {
  const auto t0 = Clock::now();
  OrderCache local;
  OrderCache* c = cache ? cache : &local;
  CheckReport rep;
  rep.label = "collapse-bounds";
  rep.flavor = flavor;
  rep.fragment_size = terms.size();
  const std::size_t violation_cap = 1000;
  auto flag = [&](const char* law, std::vector<std::string> witnesses,
                  std::string detail) {
    if (rep.violations.size() < violation_cap)
      rep.violations.push_back(
          {law, std::move(witnesses), std::move(detail)});
  };
  auto lt = [&](const TermPtr& a, const TermPtr& b) {
    return compare(a, b, flavor, c) == Ordering::Less;
  };

  std::vector<TermPtr> collapses;
  for (const auto& t : terms)
    if (t->kind() == Kind::Collapse) collapses.push_back(t);

  for (const auto& col : collapses) {
    const TermPtr& sigma = col->base();
    ++rep.pairs;
    if (!lt(col, sigma))
      flag("below-base", {render(col), render(sigma)},
           "collapse must sit strictly below its base");
    const auto& kids = col->kids();
    for (std::size_t i = 1; i < kids.size(); ++i) {
      for (const auto& mem : kset(sigma, kids[i]).members) {
        ++rep.pairs;
        if (!lt(mem, col))
          flag("tracked-below-collapse", {render(mem), render(col)},
               "tracked collapse must sit strictly below the collapse");
        ++rep.pairs;
        if (compare(mem, kids[i], flavor, c) == Ordering::Greater)
          flag("tracked-within-component", {render(mem), render(kids[i])},
               "tracked collapse must not exceed its component");
      }
    }
  }

  for (const auto& col : collapses) {
    const TermPtr& sigma = col->base();
    for (const auto& alpha : terms) {
      if (!lt(alpha, sigma)) continue;
      bool all_below = true;
      for (const auto& mem : kset(sigma, alpha).members)
        if (!lt(mem, col)) {
          all_below = false;
          break;
        }
      ++rep.pairs;
      if (all_below && !lt(alpha, col))
        flag("band-membership", {render(alpha), render(col)},
             "term below the base with all tracked collapses below the "
             "collapse must itself lie below");
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

SuccessionTrace run_succession(Flavor flavor, const SuccessionPolicy& policy,
                               std::size_t step_budget, std::uint64_t seed,
                               OrderCache* cache) {
  OrderCache local;
  OrderCache* c = cache ? cache : &local;
  std::mt19937_64 rng(seed);
  SuccessionTrace trace;
  TermPtr sigma = Term::pi();
  for (std::size_t step = 0; step < step_budget; ++step) {
    std::vector<TermPtr> legal;
    auto consider = [&](TermPtr cand) {
      // Plain collapses carry no stage annotations, so every extension of a
      // well-formed base is well-formed; skip the walk as the terms grow.
      if (flavor == Flavor::M || validate(cand, flavor, {}, c).empty())
        legal.push_back(std::move(cand));
    };
    for (const auto& a : policy.arg_pool) {
      switch (flavor) {
        case Flavor::M:
          consider(Term::collapse(sigma, a));
          break;
        case Flavor::P3:
          for (const auto& q : policy.stage_pool)
            consider(Term::collapse(sigma, a, q));
          break;
        case Flavor::P4: {
          TermPtr root = sigma->kind() == Kind::Collapse ? chain_root(sigma)
                                                         : sigma;
          for (const auto& s4 : policy.stage_pool)
            for (const auto& s3 : policy.stage3_pool)
              consider(Term::collapse(sigma, a, s4, root, s3, root));
          break;
        }
      }
    }
    if (legal.empty()) {
      trace.reason = HaltReason::NoLegalExtension;
      return trace;
    }
    if (policy.pick == Pick::First) {
      sigma = legal.front();
    } else {
      std::uniform_int_distribution<std::size_t> d(0, legal.size() - 1);
      sigma = legal[d(rng)];
    }
    trace.steps.push_back(sigma);
  }
  trace.reason = HaltReason::Budget;
  return trace;
}

namespace {

// All terms obtained by replacing exactly one node of t (possibly the root)
// with a pool term.
void one_point_variants(const TermPtr& t, const std::vector<TermPtr>& pool,
                        std::vector<TermPtr>& out) {
  for (const auto& r : pool) out.push_back(r);
  const auto& kids = t->kids();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    std::vector<TermPtr> inner;
    one_point_variants(kids[i], pool, inner);
    for (auto& v : inner) {
      std::vector<TermPtr> nk = kids;
      nk[i] = std::move(v);
      switch (t->kind()) {
        case Kind::Phi:
          out.push_back(Term::phi(nk[0], nk[1]));
          break;
        case Kind::Adm:
          out.push_back(Term::adm(nk[0]));
          break;
        case Kind::Collapse:
          out.push_back(Term::collapse_with(
              nk[0], nk[1], {nk.begin() + 2, nk.end()}));
          break;
        case Kind::Sum: {
          // keep the factory invariant: splice nested sums, drop zeros
          std::vector<TermPtr> flat;
          for (const auto& s : nk) {
            if (s->kind() == Kind::Zero) continue;
            if (s->kind() == Kind::Sum)
              flat.insert(flat.end(), s->summands().begin(),
                          s->summands().end());
            else
              flat.push_back(s);
          }
          if (flat.empty())
            out.push_back(Term::zero());
          else if (flat.size() == 1)
            out.push_back(flat[0]);
          else
            out.push_back(Term::sum(std::move(flat)));
          break;
        }
        default:
          break;
      }
    }
  }
}

struct Descender {
  Flavor flavor;
  OrderCache* cache;
  const std::vector<TermPtr>& pool;
  std::size_t max_steps;
  std::map<std::string, std::vector<TermPtr>> memo;

  // Legal downhill moves from t, largest first.
  std::vector<TermPtr> moves(const TermPtr& t) {
    std::vector<TermPtr> raw;
    for (const auto& s : subterms(t))
      if (s->size() < t->size()) raw.push_back(s);
    if (t->kind() == Kind::Sum) {
      const auto& ss = t->summands();
      for (std::size_t i = 0; i < ss.size(); ++i) {
        std::vector<TermPtr> rest;
        for (std::size_t j = 0; j < ss.size(); ++j)
          if (j != i) rest.push_back(ss[j]);
        raw.push_back(rest.size() == 1 ? rest[0] : Term::sum(std::move(rest)));
      }
    }
    one_point_variants(t, pool, raw);
    std::vector<TermPtr> good;
    for (const auto& cand : raw) {
      TermPtr n;
      try {
        n = normalize(cand, flavor, cache);
      } catch (const std::invalid_argument&) {
        continue;  // pool term from another system slipped in
      }
      if (!validate(n, flavor, {}, cache).empty()) continue;
      if (compare(n, t, flavor, cache) != Ordering::Less) continue;
      good.push_back(std::move(n));
    }
    std::sort(good.begin(), good.end(),
              [](const TermPtr& a, const TermPtr& b) {
                return cmp_syntactic(a, b) < 0;
              });
    good.erase(std::unique(good.begin(), good.end(),
                           [](const TermPtr& a, const TermPtr& b) {
                             return cmp_syntactic(a, b) == 0;
                           }),
               good.end());
    std::sort(good.begin(), good.end(),
              [&](const TermPtr& a, const TermPtr& b) {
                return compare(a, b, flavor, cache) == Ordering::Greater;
              });
    return good;
  }

  const std::vector<TermPtr>& longest_from(const TermPtr& t) {
    std::string key = render(t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    memo[key] = {};  // guard; strict descent means no genuine cycles
    std::vector<TermPtr> best;
    for (const auto& c : moves(t)) {
      const auto& sub = longest_from(c);
      if (sub.size() + 1 > best.size()) {
        best.clear();
        best.push_back(c);
        best.insert(best.end(), sub.begin(), sub.end());
      }
    }
    return memo[key] = std::move(best);
  }
};

}  // namespace

std::vector<TermPtr> search_descending(const TermPtr& start, Flavor flavor,
                                       DescentStrategy strategy,
                                       const std::vector<TermPtr>& pool,
                                       std::size_t max_steps,
                                       std::uint64_t seed, OrderCache* cache) {
  OrderCache local;
  OrderCache* c = cache ? cache : &local;
  TermPtr cur = normalize(start, flavor, c);
  Descender d{flavor, c, pool, max_steps, {}};
  std::vector<TermPtr> chain{cur};
  if (strategy == DescentStrategy::Exhaustive) {
    const auto& rest = d.longest_from(cur);
    for (const auto& s : rest) {
      if (chain.size() > max_steps) break;
      chain.push_back(s);
    }
    return chain;
  }
  std::mt19937_64 rng(seed);
  while (chain.size() <= max_steps) {
    std::vector<TermPtr> mv = d.moves(cur);
    if (mv.empty()) break;
    if (strategy == DescentStrategy::Greedy) {
      cur = mv.front();
    } else {
      std::uniform_int_distribution<std::size_t> dist(0, mv.size() - 1);
      cur = mv[dist(rng)];
    }
    chain.push_back(cur);
  }
  return chain;
}

}  // namespace od
