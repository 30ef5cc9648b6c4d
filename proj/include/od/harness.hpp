#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "od/order.hpp"
#include "od/report.hpp"
#include "od/term.hpp"
#include "od/wf.hpp"

namespace od {

// Which constructors the exhaustive enumeration may use.
struct PoolConfig {
  bool zero = true;
  bool pi = true;
  bool plus = true;
  bool phi = true;
  bool adm = true;
  bool collapse = true;
};

// Every well-formed canonical term of the given system whose node count is
// at most max_size, in deterministic (size, syntactic) order, without
// duplicates.
std::vector<TermPtr> enumerate_fragment(Flavor flavor, std::size_t max_size,
                                        const PoolConfig& pool = {},
                                        OrderCache* cache = nullptr);

// Checks that the comparison is a total order on the given terms: reflexive
// equality, equality only for identical terms, antisymmetry over all ordered
// pairs, and transitivity over at least transitivity_samples triples drawn
// deterministically from the full triple space.
CheckReport check_order_laws(const std::vector<TermPtr>& terms, Flavor flavor,
                             std::size_t transitivity_samples,
                             OrderCache* cache = nullptr);

// Same laws judged by an arbitrary comparison; lets tests confirm the
// checker flags a defective comparator.
CheckReport check_order_laws_with(
    const std::vector<TermPtr>& terms,
    const std::function<Ordering(const TermPtr&, const TermPtr&)>& cmp,
    std::size_t transitivity_samples);

// Checks the collapse bounds on every term of the fragment: each collapse
// sits below its base, strictly above the collapses tracked through its
// base inside its components, each tracked collapse stays at or below the
// component containing it, and any fragment term below the base whose
// tracked collapses stay below the collapse is itself below the collapse.
CheckReport check_axioms(const std::vector<TermPtr>& terms, Flavor flavor,
                         OrderCache* cache = nullptr);

enum class HaltReason { NoLegalExtension, Budget };
enum class Pick { First, Random };

struct SuccessionPolicy {
  std::vector<TermPtr> arg_pool;     // collapse arguments to try
  std::vector<TermPtr> stage_pool;   // q (one-annotation) or st4 candidates
  std::vector<TermPtr> stage3_pool;  // st3 candidates (four-annotation only)
  Pick pick = Pick::First;
};

struct SuccessionTrace {
  std::vector<TermPtr> steps;  // the successive collapses, oldest first
  HaltReason reason = HaltReason::Budget;
};

// Repeatedly collapses the current term (starting from pi) as the base of a
// new collapse, drawing arguments and stages from the policy pools and
// keeping only well-formed candidates, until no candidate is legal or the
// step budget runs out.
SuccessionTrace run_succession(Flavor flavor, const SuccessionPolicy& policy,
                               std::size_t step_budget, std::uint64_t seed,
                               OrderCache* cache = nullptr);

enum class DescentStrategy { Greedy, Random, Exhaustive };

// Builds a strictly descending chain from start by repeatedly moving to a
// smaller well-formed term (a proper subterm, the term with one summand
// dropped, or the term with one position replaced by a pool term).  Greedy
// takes the largest available step, Random a seeded uniform one, Exhaustive
// the longest chain reachable.  The chain starts at start and ends when no
// move applies or max_steps is reached.
std::vector<TermPtr> search_descending(const TermPtr& start, Flavor flavor,
                                       DescentStrategy strategy,
                                       const std::vector<TermPtr>& pool,
                                       std::size_t max_steps,
                                       std::uint64_t seed,
                                       OrderCache* cache = nullptr);

}  // namespace od
