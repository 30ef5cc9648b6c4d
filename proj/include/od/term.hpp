#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace od {

// Notation system variant. Collapses carry no annotations (M), a q-part
// (P3), or the four-field stage/range record st4, rg4, st3, rg3 (P4).
enum class Flavor { M, P3, P4 };

int flavor_arity(Flavor f);
const char* flavor_name(Flavor f);

class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class Kind : unsigned char { Zero, Pi, Sum, Phi, Adm, Collapse };

/// Immutable ordinal-diagram term.
///
/// Children layout: Sum holds its summands (>= 2, never nested sums);
/// Phi holds [first, second]; Adm holds [inner]; Collapse holds
/// [base, arg, annotations...] with 0, 1 or 4 annotation slots for the
/// M, P3 and P4 systems respectively. Terms are values: shared, never
/// mutated, safe to use from any number of threads.
///
/// Construction is deliberately permissive (a Sum may contain Zero, a
/// Collapse may have a non-regular base): parsing stays structurally
/// faithful and wf::validate reports the well-formedness verdict.
class Term {
public:
  Kind kind() const { return kind_; }
  const std::vector<TermPtr>& kids() const { return kids_; }
  std::size_t size() const { return size_; }  // constructor node count
  std::size_t hash() const { return hash_; }
  std::uint64_t id() const { return id_; }    // unique per object, never reused

  const std::vector<TermPtr>& summands() const;

  const TermPtr& phi_first() const;
  const TermPtr& phi_second() const;

  const TermPtr& adm_inner() const;

  const TermPtr& base() const;
  const TermPtr& arg() const;
  int annotation_count() const;
  const TermPtr& q() const;    // P3
  const TermPtr& st4() const;  // P4
  const TermPtr& rg4() const;
  const TermPtr& st3() const;
  const TermPtr& rg3() const;

  static const TermPtr& zero();
  static const TermPtr& pi();
  static TermPtr sum(std::vector<TermPtr> summands);
  static TermPtr phi(TermPtr first, TermPtr second);
  static TermPtr adm(TermPtr inner);
  static TermPtr collapse(TermPtr base, TermPtr arg);
  static TermPtr collapse(TermPtr base, TermPtr arg, TermPtr q);
  static TermPtr collapse(TermPtr base, TermPtr arg, TermPtr st4, TermPtr rg4,
                          TermPtr st3, TermPtr rg3);
  static TermPtr collapse_with(TermPtr base, TermPtr arg,
                               std::vector<TermPtr> annotations);

private:
  Term(Kind k, std::vector<TermPtr> kids);

  Kind kind_;
  std::vector<TermPtr> kids_;
  std::size_t size_;
  std::size_t hash_;
  std::uint64_t id_;
};

/// Structural equality.
bool eq(const TermPtr& a, const TermPtr& b);

/// A cheap total order on term structure (kind, then children,
/// lexicographically). Used for deterministic sets and enumeration
/// order; unrelated to the semantic comparison in order.hpp.
int cmp_syntactic(const TermPtr& a, const TermPtr& b);

struct TermSynLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    return cmp_syntactic(a, b) < 0;
  }
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t at);
  std::size_t pos;
};

/// Parses the concrete grammar. Whitespace-insensitive. The result is
/// structurally faithful to the input; it is not normalized. Collapse
/// arity must match the flavor and adm() accepts only pi or a collapse.
TermPtr parse(std::string_view text, Flavor flavor);

/// Canonical text: single spaces around "+", no other whitespace.
/// parse(render(t)) is structurally identical to t.
std::string render(const TermPtr& t);

/// All subterms of t including t itself, as a set (syntactically
/// sorted, duplicates removed).
std::vector<TermPtr> subterms(const TermPtr& t);

/// [base(c), base(base(c)), ...] following collapse bases until the
/// first non-collapse; that root is the last element.
std::vector<TermPtr> base_chain(const TermPtr& c);

/// Finite set of collapse subdiagrams, syntactically sorted and unique.
struct KSet {
  std::vector<TermPtr> members;
  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

/// The set of last collapses of sigma inside alpha: collapse subterms
/// whose base chain passes through sigma, taken outermost-first (the
/// recursion does not look inside a member). sigma must be regular
/// (pi, an adm term, or a collapse).
KSet kset(const TermPtr& sigma, const TermPtr& alpha);

}  // namespace od
