#include "od/subst.hpp"

#include <chrono>
#include <stdexcept>

#include "od/wf.hpp"

namespace od {

namespace {

using Clock = std::chrono::steady_clock;

TermPtr map_term(const Substitution& f, const TermPtr& xi, OrderCache* c) {
  if (compare(xi, Term::pi(), f.flavor, c) == Ordering::Less) return xi;
  switch (xi->kind()) {
    case Kind::Pi:
      return f.target;
    case Kind::Adm:
      return Term::adm(map_term(f, xi->adm_inner(), c));
    case Kind::Sum: {
      std::vector<TermPtr> mapped;
      mapped.reserve(xi->summands().size());
      for (const auto& s : xi->summands())
        mapped.push_back(map_term(f, s, c));
      return Term::sum(std::move(mapped));
    }
    case Kind::Phi:
      return Term::phi(map_term(f, xi->phi_first(), c),
                       map_term(f, xi->phi_second(), c));
    case Kind::Collapse: {
      const auto& kids = xi->kids();
      std::vector<TermPtr> mapped;
      mapped.reserve(kids.size());
      for (const auto& k : kids) mapped.push_back(map_term(f, k, c));
      std::vector<TermPtr> ann(mapped.begin() + 2, mapped.end());
      return Term::collapse_with(mapped[0], mapped[1], std::move(ann));
    }
    case Kind::Zero:
      return xi;  // below pi; unreachable past the guard
  }
  return xi;
}

// a + b with the factory invariants respected.
TermPtr raw_sum(const TermPtr& a, const TermPtr& b) {
  std::vector<TermPtr> parts;
  auto add = [&](const TermPtr& t) {
    if (t->kind() == Kind::Zero) return;
    if (t->kind() == Kind::Sum)
      parts.insert(parts.end(), t->summands().begin(), t->summands().end());
    else
      parts.push_back(t);
  };
  add(a);
  add(b);
  if (parts.empty()) return Term::zero();
  if (parts.size() == 1) return parts[0];
  return Term::sum(std::move(parts));
}

}  // namespace

Substitution make_subst(TermPtr target, Flavor flavor, OrderCache* cache) {
  if (target->kind() != Kind::Collapse)
    throw std::invalid_argument("substitution target must be a collapse");
  OrderCache local;
  OrderCache* c = cache ? cache : &local;
  if (!validate(target, flavor, {}, c).empty())
    throw std::invalid_argument("substitution target must be well-formed");
  TermPtr n = normalize(target, flavor, c);
  if (compare(n, Term::pi(), flavor, c) != Ordering::Less)
    throw std::invalid_argument(
        "substitution target must sit strictly below pi");
  return Substitution{std::move(n), flavor};
}

bool in_domain(const Substitution& f, const TermPtr& xi, OrderCache* cache) {
  OrderCache local;
  OrderCache* c = cache ? cache : &local;
  TermPtr n = normalize(xi, f.flavor, c);
  return kset_less(kset(Term::pi(), n), f.target, f.flavor, c);
}

TermPtr apply(const Substitution& f, const TermPtr& xi, OrderCache* cache) {
  OrderCache local;
  OrderCache* c = cache ? cache : &local;
  TermPtr n = normalize(xi, f.flavor, c);
  return normalize(map_term(f, n, c), f.flavor, c);
}

CheckReport verify_embedding(const Substitution& f,
                             const std::vector<TermPtr>& terms,
                             OrderCache* cache) {
  const auto t0 = Clock::now();
  OrderCache local;
  OrderCache* c = cache ? cache : &local;
  CheckReport rep;
  rep.label = "substitution-embedding";
  rep.flavor = f.flavor;
  const std::size_t violation_cap = 1000;
  auto flag = [&](const char* law, std::vector<std::string> witnesses,
                  std::string detail) {
    if (rep.violations.size() < violation_cap)
      rep.violations.push_back({law, std::move(witnesses), std::move(detail)});
  };

  std::vector<TermPtr> dom;
  for (const auto& t : terms) {
    TermPtr n = normalize(t, f.flavor, c);
    if (in_domain(f, n, c)) dom.push_back(n);
  }
  rep.fragment_size = dom.size();

  ++rep.pairs;
  if (!eq(apply(f, Term::pi(), c), f.target))
    flag("target-image", {render(f.target)}, "pi must map to the target");

  std::vector<TermPtr> images;
  images.reserve(dom.size());
  for (const auto& xi : dom) images.push_back(apply(f, xi, c));

  const KSet target_tracked = kset(Term::pi(), f.target);
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const TermPtr& xi = dom[i];
    const TermPtr& fx = images[i];
    ++rep.pairs;
    if (compare(xi, Term::pi(), f.flavor, c) == Ordering::Less &&
        !eq(fx, xi))
      flag("identity-below", {render(xi), render(fx)},
           "terms below pi must be fixed");
    ++rep.pairs;
    if (!validate(fx, f.flavor, {}, c).empty())
      flag("wf-preserved", {render(xi), render(fx)},
           "image is not well-formed");
    // Collapses tracked through pi in the image must come from tracked
    // collapses of the argument or live inside the target.
    std::vector<TermPtr> allowed = target_tracked.members;
    for (const auto& m : kset(Term::pi(), xi).members)
      allowed.push_back(normalize(map_term(f, m, c), f.flavor, c));
    for (const auto& m : kset(Term::pi(), fx).members) {
      ++rep.pairs;
      bool found = false;
      for (const auto& a : allowed)
        if (eq(m, a)) {
          found = true;
          break;
        }
      if (!found)
        flag("tracked-commute", {render(xi), render(m)},
             "image tracks a collapse with no preimage");
    }
  }

  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j) {
      ++rep.pairs;
      Ordering before = compare(dom[i], dom[j], f.flavor, c);
      Ordering after = compare(images[i], images[j], f.flavor, c);
      if (before != after)
        flag("order-embedding", {render(dom[i]), render(dom[j])},
             std::string("order changed from ") + ordering_symbol(before) +
                 " to " + ordering_symbol(after));
      if (j <= i) continue;  // the homomorphism laws are symmetric
      ++rep.pairs;
      TermPtr lhs = apply(f, raw_sum(dom[i], dom[j]), c);
      TermPtr rhs = normalize(raw_sum(images[i], images[j]), f.flavor, c);
      if (!eq(lhs, rhs))
        flag("sum-homomorphic", {render(dom[i]), render(dom[j])},
             "mapping the sum differs from summing the images");
      ++rep.pairs;
      lhs = apply(f, Term::phi(dom[i], dom[j]), c);
      rhs = normalize(Term::phi(images[i], images[j]), f.flavor, c);
      if (!eq(lhs, rhs))
        flag("phi-homomorphic", {render(dom[i]), render(dom[j])},
             "mapping the phi term differs from phi of the images");
    }

  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       Clock::now() - t0)
                       .count();
  return rep;
}

}  // namespace od
