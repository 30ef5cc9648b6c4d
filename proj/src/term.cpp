#include "od/term.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>

namespace od {

int flavor_arity(Flavor f) {
  switch (f) {
    case Flavor::M: return 0;
    case Flavor::P3: return 1;
    case Flavor::P4: return 4;
  }
  return 0;
}

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::M: return "m";
    case Flavor::P3: return "p3";
    case Flavor::P4: return "p4";
  }
  return "?";
}

namespace {

std::atomic<std::uint64_t> next_id{1};

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::size_t node_hash(Kind k, const std::vector<TermPtr>& kids) {
  std::size_t h = 0x243f6a8885a308d3ULL + static_cast<std::size_t>(k);
  h = mix(h, kids.size());
  for (const auto& c : kids) h = mix(h, c->hash());
  return h;
}

}  // namespace

Term::Term(Kind k, std::vector<TermPtr> kids)
    : kind_(k), kids_(std::move(kids)) {
  std::size_t n = 1;
  for (const auto& c : kids_) n += c->size();
  size_ = n;
  hash_ = node_hash(kind_, kids_);
  id_ = next_id.fetch_add(1, std::memory_order_relaxed);
}

const std::vector<TermPtr>& Term::summands() const {
  if (kind_ != Kind::Sum) throw std::invalid_argument("not a sum");
  return kids_;
}

const TermPtr& Term::phi_first() const {
  if (kind_ != Kind::Phi) throw std::invalid_argument("not a phi term");
  return kids_[0];
}

const TermPtr& Term::phi_second() const {
  if (kind_ != Kind::Phi) throw std::invalid_argument("not a phi term");
  return kids_[1];
}

const TermPtr& Term::adm_inner() const {
  if (kind_ != Kind::Adm) throw std::invalid_argument("not an adm term");
  return kids_[0];
}

const TermPtr& Term::base() const {
  if (kind_ != Kind::Collapse) throw std::invalid_argument("not a collapse");
  return kids_[0];
}

const TermPtr& Term::arg() const {
  if (kind_ != Kind::Collapse) throw std::invalid_argument("not a collapse");
  return kids_[1];
}

int Term::annotation_count() const {
  if (kind_ != Kind::Collapse) throw std::invalid_argument("not a collapse");
  return static_cast<int>(kids_.size()) - 2;
}

const TermPtr& Term::q() const {
  if (kind_ != Kind::Collapse || kids_.size() != 3)
    throw std::invalid_argument("no q-part");
  return kids_[2];
}

const TermPtr& Term::st4() const {
  if (kind_ != Kind::Collapse || kids_.size() != 6)
    throw std::invalid_argument("no st4 field");
  return kids_[2];
}

const TermPtr& Term::rg4() const {
  if (kind_ != Kind::Collapse || kids_.size() != 6)
    throw std::invalid_argument("no rg4 field");
  return kids_[3];
}

const TermPtr& Term::st3() const {
  if (kind_ != Kind::Collapse || kids_.size() != 6)
    throw std::invalid_argument("no st3 field");
  return kids_[4];
}

const TermPtr& Term::rg3() const {
  if (kind_ != Kind::Collapse || kids_.size() != 6)
    throw std::invalid_argument("no rg3 field");
  return kids_[5];
}

const TermPtr& Term::zero() {
  static const TermPtr t(new Term(Kind::Zero, {}));
  return t;
}

const TermPtr& Term::pi() {
  static const TermPtr t(new Term(Kind::Pi, {}));
  return t;
}

TermPtr Term::sum(std::vector<TermPtr> summands) {
  if (summands.size() < 2)
    throw std::invalid_argument("a sum needs at least two summands");
  for (const auto& s : summands)
    if (s->kind() == Kind::Sum)
      throw std::invalid_argument("sums do not nest");
  return TermPtr(new Term(Kind::Sum, std::move(summands)));
}

TermPtr Term::phi(TermPtr first, TermPtr second) {
  return TermPtr(new Term(Kind::Phi, {std::move(first), std::move(second)}));
}

TermPtr Term::adm(TermPtr inner) {
  return TermPtr(new Term(Kind::Adm, {std::move(inner)}));
}

TermPtr Term::collapse(TermPtr base, TermPtr arg) {
  return TermPtr(new Term(Kind::Collapse, {std::move(base), std::move(arg)}));
}

TermPtr Term::collapse(TermPtr base, TermPtr arg, TermPtr q) {
  return TermPtr(
      new Term(Kind::Collapse, {std::move(base), std::move(arg), std::move(q)}));
}

TermPtr Term::collapse(TermPtr base, TermPtr arg, TermPtr st4, TermPtr rg4,
                       TermPtr st3, TermPtr rg3) {
  return TermPtr(new Term(
      Kind::Collapse, {std::move(base), std::move(arg), std::move(st4),
                       std::move(rg4), std::move(st3), std::move(rg3)}));
}

TermPtr Term::collapse_with(TermPtr base, TermPtr arg,
                            std::vector<TermPtr> annotations) {
  const auto n = annotations.size();
  if (n != 0 && n != 1 && n != 4)
    throw std::invalid_argument("a collapse carries 0, 1 or 4 annotations");
  std::vector<TermPtr> kids;
  kids.reserve(2 + n);
  kids.push_back(std::move(base));
  kids.push_back(std::move(arg));
  for (auto& a : annotations) kids.push_back(std::move(a));
  return TermPtr(new Term(Kind::Collapse, std::move(kids)));
}

bool eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind() || a->size() != b->size() ||
      a->hash() != b->hash())
    return false;
  const auto& ka = a->kids();
  const auto& kb = b->kids();
  if (ka.size() != kb.size()) return false;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (!eq(ka[i], kb[i])) return false;
  return true;
}

int cmp_syntactic(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind())
    return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
  const auto& ka = a->kids();
  const auto& kb = b->kids();
  if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (int r = cmp_syntactic(ka[i], kb[i])) return r;
  return 0;
}

ParseError::ParseError(const std::string& msg, std::size_t at)
    : std::runtime_error(msg + " (offset " + std::to_string(at) + ")"),
      pos(at) {}

namespace {

struct Parser {
  std::string_view s;
  Flavor flavor;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos);
  }

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool peek(char c) {
    ws();
    return pos < s.size() && s[pos] == c;
  }

  void expect(char c, const char* what) {
    ws();
    if (pos >= s.size() || s[pos] != c) fail(std::string("expected ") + what);
    ++pos;
  }

  std::string ident() {
    ws();
    std::size_t b = pos;
    while (pos < s.size() &&
           std::islower(static_cast<unsigned char>(s[pos])))
      ++pos;
    return std::string(s.substr(b, pos - b));
  }

  TermPtr atom() {
    ws();
    if (pos >= s.size()) fail("expected a term");
    char c = s[pos];
    if (c == '0') {
      ++pos;
      return Term::zero();
    }
    if (!std::islower(static_cast<unsigned char>(c))) fail("expected a term");
    std::size_t at = pos;
    std::string id = ident();
    if (id == "pi") return Term::pi();
    if (id == "phi") {
      expect('(', "'('");
      TermPtr a = sum();
      expect(',', "','");
      TermPtr b = sum();
      expect(')', "')'");
      return Term::phi(std::move(a), std::move(b));
    }
    if (id == "adm") {
      expect('(', "'('");
      TermPtr u = sum();
      expect(')', "')'");
      if (u->kind() != Kind::Pi && u->kind() != Kind::Collapse) {
        pos = at;
        fail("adm argument must be pi or a collapse");
      }
      return Term::adm(std::move(u));
    }
    if (id == "d") {
      expect('(', "'('");
      TermPtr base = sum();
      expect(';', "';'");
      TermPtr arg = sum();
      switch (flavor) {
        case Flavor::M:
          if (peek(';') || peek(','))
            fail("collapse arity mismatch: system m takes d(base;arg)");
          expect(')', "')'");
          return Term::collapse(std::move(base), std::move(arg));
        case Flavor::P3: {
          if (!peek(';'))
            fail("collapse arity mismatch: system p3 takes d(base;arg;q)");
          expect(';', "';'");
          TermPtr q = sum();
          if (peek(',') || peek(';'))
            fail("collapse arity mismatch: system p3 takes d(base;arg;q)");
          expect(')', "')'");
          return Term::collapse(std::move(base), std::move(arg), std::move(q));
        }
        case Flavor::P4: {
          if (!peek(';'))
            fail(
                "collapse arity mismatch: system p4 takes "
                "d(base;arg;st4,rg4,st3,rg3)");
          expect(';', "';'");
          TermPtr st4 = sum();
          expect(',', "','");
          TermPtr rg4 = sum();
          expect(',', "','");
          TermPtr st3 = sum();
          expect(',', "','");
          TermPtr rg3 = sum();
          expect(')', "')'");
          return Term::collapse(std::move(base), std::move(arg), std::move(st4),
                                std::move(rg4), std::move(st3), std::move(rg3));
        }
      }
      fail("unreachable");
    }
    pos = at;
    fail(id.empty() ? "expected a term" : "unknown symbol '" + id + "'");
  }

  TermPtr sum() {
    std::vector<TermPtr> parts;
    parts.push_back(atom());
    while (peek('+')) {
      ++pos;
      parts.push_back(atom());
    }
    if (parts.size() == 1) return parts[0];
    return Term::sum(std::move(parts));
  }
};

void render_into(const TermPtr& t, std::string& out) {
  switch (t->kind()) {
    case Kind::Zero:
      out += '0';
      return;
    case Kind::Pi:
      out += "pi";
      return;
    case Kind::Sum: {
      bool first = true;
      for (const auto& s : t->summands()) {
        if (!first) out += " + ";
        first = false;
        render_into(s, out);
      }
      return;
    }
    case Kind::Phi:
      out += "phi(";
      render_into(t->phi_first(), out);
      out += ',';
      render_into(t->phi_second(), out);
      out += ')';
      return;
    case Kind::Adm:
      out += "adm(";
      render_into(t->adm_inner(), out);
      out += ')';
      return;
    case Kind::Collapse: {
      out += "d(";
      render_into(t->base(), out);
      out += ';';
      render_into(t->arg(), out);
      const auto& kids = t->kids();
      if (kids.size() >= 3) {
        out += ';';
        for (std::size_t i = 2; i < kids.size(); ++i) {
          if (i > 2) out += ',';
          render_into(kids[i], out);
        }
      }
      out += ')';
      return;
    }
  }
}

void sort_unique(std::vector<TermPtr>& v) {
  std::sort(v.begin(), v.end(), TermSynLess{});
  v.erase(std::unique(v.begin(), v.end(),
                      [](const TermPtr& a, const TermPtr& b) { return eq(a, b); }),
          v.end());
}

void collect_subterms(const TermPtr& t, std::vector<TermPtr>& out) {
  out.push_back(t);
  for (const auto& k : t->kids()) collect_subterms(k, out);
}

bool chain_reaches(const TermPtr& c, const TermPtr& sigma) {
  TermPtr b = c->base();
  while (true) {
    if (eq(b, sigma)) return true;
    if (b->kind() != Kind::Collapse) return false;
    b = b->base();
  }
}

void collect_kset(const TermPtr& t, const TermPtr& sigma,
                  std::vector<TermPtr>& out) {
  switch (t->kind()) {
    case Kind::Zero:
    case Kind::Pi:
      return;
    case Kind::Adm:
      collect_kset(t->adm_inner(), sigma, out);
      return;
    case Kind::Sum:
    case Kind::Phi:
      for (const auto& k : t->kids()) collect_kset(k, sigma, out);
      return;
    case Kind::Collapse:
      if (chain_reaches(t, sigma)) {
        out.push_back(t);
        return;
      }
      for (const auto& k : t->kids()) collect_kset(k, sigma, out);
      return;
  }
}

}  // namespace

TermPtr parse(std::string_view text, Flavor flavor) {
  Parser p{text, flavor};
  TermPtr t = p.sum();
  p.ws();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  return t;
}

std::string render(const TermPtr& t) {
  std::string out;
  out.reserve(t->size() * 4);
  render_into(t, out);
  return out;
}

std::vector<TermPtr> subterms(const TermPtr& t) {
  std::vector<TermPtr> out;
  out.reserve(t->size());
  collect_subterms(t, out);
  sort_unique(out);
  return out;
}

std::vector<TermPtr> base_chain(const TermPtr& c) {
  if (c->kind() != Kind::Collapse)
    throw std::invalid_argument("base_chain needs a collapse");
  std::vector<TermPtr> out;
  TermPtr b = c->base();
  while (true) {
    out.push_back(b);
    if (b->kind() != Kind::Collapse) break;
    b = b->base();
  }
  return out;
}

KSet kset(const TermPtr& sigma, const TermPtr& alpha) {
  if (sigma->kind() != Kind::Pi && sigma->kind() != Kind::Adm &&
      sigma->kind() != Kind::Collapse)
    throw std::invalid_argument("kset base must be a regular term");
  KSet ks;
  collect_kset(alpha, sigma, ks.members);
  sort_unique(ks.members);
  return ks;
}

}  // namespace od
