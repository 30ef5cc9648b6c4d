#pragma once

#include <string>
#include <vector>

#include "od/order.hpp"
#include "od/term.hpp"

namespace od {

// Regular terms are the ones a collapse may take as its base: pi, a next
// admissible, or another collapse.
bool is_regular(const TermPtr& t);

// The base chain of c preceded by c itself.
std::vector<TermPtr> chain_of(const TermPtr& c);

// The non-collapse term topping c's base chain.
TermPtr chain_root(const TermPtr& c);

// Stage annotation of a collapse at the given level: level 3 is the q part
// of a one-annotation collapse or the st3 slot of a four-annotation one,
// level 4 the st4 slot.  Throws when the collapse has no such slot.
const TermPtr& stage(const TermPtr& c, int level);

// Range annotation (rg4 / rg3) of a four-annotation collapse.
const TermPtr& range_of(const TermPtr& c, int level);

enum class ViolationKind {
  BadArity,   // annotation count does not match the system
  BadBase,    // collapse base is not a regular term
  BadAdm,     // adm argument is neither pi nor a collapse
  Proviso1,   // one-annotation stage rule broken
  Proviso2,   // four-annotation level-4 rule broken
  Proviso3,   // four-annotation level-3 rule broken
};

const char* violation_kind_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string location;  // path from the root, e.g. "root.arg.s1"
  std::string detail;
};

struct WfOptions {
  // Additionally require every stage annotation to be >= pi.
  bool require_q_at_least_pi = false;
  // Restrict the level-3 witness search to the base chain instead of all
  // collapse subterms of the base and annotations.
  bool proviso3_chain_only = false;
};

// Structural checks run first (annotation arity, base regularity, adm
// argument shape); the stage provisos run only when the structure is clean,
// so they can compare annotation values safely.  Empty result means
// well-formed.
std::vector<Violation> validate(const TermPtr& t, Flavor flavor,
                                const WfOptions& opts = {},
                                OrderCache* cache = nullptr);

inline bool well_formed(const TermPtr& t, Flavor flavor,
                        const WfOptions& opts = {},
                        OrderCache* cache = nullptr) {
  return validate(t, flavor, opts, cache).empty();
}

}  // namespace od
