#include "od/wf.hpp"

#include <stdexcept>

namespace od {

bool is_regular(const TermPtr& t) {
  Kind k = t->kind();
  return k == Kind::Pi || k == Kind::Adm || k == Kind::Collapse;
}

std::vector<TermPtr> chain_of(const TermPtr& c) {
  std::vector<TermPtr> out{c};
  std::vector<TermPtr> rest = base_chain(c);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

TermPtr chain_root(const TermPtr& c) {
  TermPtr b = c->base();
  while (b->kind() == Kind::Collapse) b = b->base();
  return b;
}

const TermPtr& stage(const TermPtr& c, int level) {
  if (c->kind() == Kind::Collapse) {
    if (c->annotation_count() == 1 && level == 3) return c->q();
    if (c->annotation_count() == 4 && level == 4) return c->st4();
    if (c->annotation_count() == 4 && level == 3) return c->st3();
  }
  throw std::invalid_argument("no stage at this level");
}

const TermPtr& range_of(const TermPtr& c, int level) {
  if (c->kind() == Kind::Collapse && c->annotation_count() == 4) {
    if (level == 4) return c->rg4();
    if (level == 3) return c->rg3();
  }
  throw std::invalid_argument("no range at this level");
}

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::BadArity: return "bad-arity";
    case ViolationKind::BadBase: return "bad-base";
    case ViolationKind::BadAdm: return "bad-adm";
    case ViolationKind::Proviso1: return "proviso-1";
    case ViolationKind::Proviso2: return "proviso-2";
    case ViolationKind::Proviso3: return "proviso-3";
  }
  return "?";
}

namespace {

const char* annotation_slot_name(int arity, int index) {
  if (arity == 1) return ".q";
  switch (index) {
    case 0: return ".st4";
    case 1: return ".rg4";
    case 2: return ".st3";
    default: return ".rg3";
  }
}

struct Checker {
  Flavor flavor;
  const WfOptions& opts;
  OrderCache* cache;
  std::vector<Violation>& out;

  bool lt(const TermPtr& a, const TermPtr& b) {
    return compare(a, b, flavor, cache) == Ordering::Less;
  }

  void structural(const TermPtr& t, const std::string& path) {
    switch (t->kind()) {
      case Kind::Zero:
      case Kind::Pi:
        return;
      case Kind::Sum: {
        const auto& ss = t->summands();
        for (std::size_t i = 0; i < ss.size(); ++i)
          structural(ss[i], path + ".s" + std::to_string(i));
        return;
      }
      case Kind::Phi:
        structural(t->phi_first(), path + ".a");
        structural(t->phi_second(), path + ".b");
        return;
      case Kind::Adm: {
        const TermPtr& u = t->adm_inner();
        if (u->kind() != Kind::Pi && u->kind() != Kind::Collapse)
          out.push_back({ViolationKind::BadAdm, path,
                         "adm argument must be pi or a collapse, got " +
                             render(u)});
        structural(u, path + ".u");
        return;
      }
      case Kind::Collapse: {
        int want = flavor_arity(flavor);
        int have = t->annotation_count();
        if (have != want)
          out.push_back({ViolationKind::BadArity, path,
                         "system " + std::string(flavor_name(flavor)) +
                             " takes " + std::to_string(want) +
                             " annotation(s), found " + std::to_string(have)});
        if (!is_regular(t->base()))
          out.push_back({ViolationKind::BadBase, path,
                         "collapse base must be regular, got " +
                             render(t->base())});
        structural(t->base(), path + ".base");
        structural(t->arg(), path + ".arg");
        const auto& kids = t->kids();
        for (std::size_t i = 2; i < kids.size(); ++i)
          structural(kids[i],
                     path + annotation_slot_name(have, static_cast<int>(i - 2)));
        return;
      }
    }
  }

  void provisos(const TermPtr& t, const std::string& path) {
    switch (t->kind()) {
      case Kind::Zero:
      case Kind::Pi:
        return;
      case Kind::Sum: {
        const auto& ss = t->summands();
        for (std::size_t i = 0; i < ss.size(); ++i)
          provisos(ss[i], path + ".s" + std::to_string(i));
        return;
      }
      case Kind::Phi:
        provisos(t->phi_first(), path + ".a");
        provisos(t->phi_second(), path + ".b");
        return;
      case Kind::Adm:
        provisos(t->adm_inner(), path + ".u");
        return;
      case Kind::Collapse: {
        check_collapse(t, path);
        provisos(t->base(), path + ".base");
        provisos(t->arg(), path + ".arg");
        const auto& kids = t->kids();
        for (std::size_t i = 2; i < kids.size(); ++i)
          provisos(kids[i], path + annotation_slot_name(t->annotation_count(),
                                                        static_cast<int>(i - 2)));
        return;
      }
    }
  }

  void check_collapse(const TermPtr& c, const std::string& path) {
    switch (flavor) {
      case Flavor::M:
        return;
      case Flavor::P3: {
        if (c->base()->kind() == Kind::Collapse &&
            !lt(c->q(), c->base()->q()))
          out.push_back({ViolationKind::Proviso1, path,
                         "stage " + render(c->q()) +
                             " must drop strictly below the base's stage " +
                             render(c->base()->q())});
        if (opts.require_q_at_least_pi && lt(c->q(), Term::pi()))
          out.push_back({ViolationKind::Proviso1, path,
                         "stage " + render(c->q()) + " is below pi"});
        return;
      }
      case Flavor::P4: {
        TermPtr root = chain_root(c);
        if (!eq(c->rg4(), root))
          out.push_back({ViolationKind::Proviso2, path,
                         "level-4 range " + render(c->rg4()) +
                             " must name the chain root " + render(root)});
        bool on_chain = false;
        for (const auto& e : base_chain(c))
          if (eq(e, c->rg3())) {
            on_chain = true;
            break;
          }
        if (!on_chain)
          out.push_back({ViolationKind::Proviso3, path,
                         "level-3 range " + render(c->rg3()) +
                             " must name a base-chain element"});
        if (c->base()->kind() == Kind::Collapse &&
            !lt(c->st4(), c->base()->st4()))
          out.push_back(
              {ViolationKind::Proviso2, path,
               "level-4 stage " + render(c->st4()) +
                   " must drop strictly below the base's " +
                   render(c->base()->st4())});
        if (opts.require_q_at_least_pi &&
            (lt(c->st4(), Term::pi()) || lt(c->st3(), Term::pi())))
          out.push_back({ViolationKind::Proviso2, path,
                         "stage annotations are below pi"});
        TermPtr kappa = stage3_witness(c);
        if (kappa && !lt(c->st3(), kappa->st3()))
          out.push_back(
              {ViolationKind::Proviso3, path,
               "level-3 stage " + render(c->st3()) +
                   " must drop strictly below its witness's " +
                   render(kappa->st3()) + " (witness " + render(kappa) + ")"});
        return;
      }
    }
  }

  // The largest earlier collapse sharing c's level-3 range and sitting at or
  // above c's base; its level-3 stage bounds c's.
  TermPtr stage3_witness(const TermPtr& c) {
    std::vector<TermPtr> pool;
    if (opts.proviso3_chain_only) {
      for (const auto& e : base_chain(c))
        if (e->kind() == Kind::Collapse) pool.push_back(e);
    } else {
      const auto& kids = c->kids();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i == 1) continue;  // the argument does not witness stages
        for (const auto& s : subterms(kids[i]))
          if (s->kind() == Kind::Collapse) pool.push_back(s);
      }
    }
    TermPtr kappa;
    for (const auto& cand : pool) {
      if (cand->annotation_count() != 4) continue;
      if (!eq(cand->rg3(), c->rg3())) continue;
      if (lt(cand, c->base())) continue;
      if (!kappa || lt(kappa, cand)) kappa = cand;
    }
    return kappa;
  }
};

}  // namespace

std::vector<Violation> validate(const TermPtr& t, Flavor flavor,
                                const WfOptions& opts, OrderCache* cache) {
  std::vector<Violation> out;
  OrderCache local;
  Checker ck{flavor, opts, cache ? cache : &local, out};
  ck.structural(t, "root");
  if (!out.empty()) return out;
  ck.provisos(t, "root");
  return out;
}

}  // namespace od
