#include <string>
#include <vector>

#include "doctest.h"
#include "od/term.hpp"

using namespace od;

namespace {

TermPtr pm(const char* s) { return parse(s, Flavor::M); }
TermPtr p3(const char* s) { return parse(s, Flavor::P3); }
TermPtr p4(const char* s) { return parse(s, Flavor::P4); }

}  // namespace

TEST_CASE("parse and render round-trip") {
  const char* m_cases[] = {
      "0",
      "pi",
      "pi + pi",
      "phi(0,0)",
      "phi(pi,phi(0,0))",
      "adm(pi)",
      "adm(d(pi;0))",
      "d(pi;0)",
      "d(adm(pi);phi(0,pi) + pi)",
      "d(d(pi;pi);0)",
      "phi(0,0) + phi(0,0) + pi",
  };
  for (const char* s : m_cases) {
    CAPTURE(s);
    CHECK(render(pm(s)) == s);
  }
  const char* p3_cases[] = {
      "d(pi;0;0)",
      "d(pi;pi;phi(0,0))",
      "d(d(pi;0;phi(0,0));0;0)",
  };
  for (const char* s : p3_cases) {
    CAPTURE(s);
    CHECK(render(p3(s)) == s);
  }
  const char* p4_cases[] = {
      "d(pi;0;0,pi,0,pi)",
      "d(pi;phi(0,0);phi(0,0),pi,0,pi)",
  };
  for (const char* s : p4_cases) {
    CAPTURE(s);
    CHECK(render(p4(s)) == s);
  }
}

TEST_CASE("parsing ignores whitespace but rendering is canonical") {
  CHECK(render(pm("  pi+ pi ")) == "pi + pi");
  CHECK(render(pm("d( pi ; 0 )")) == "d(pi;0)");
  CHECK(render(p4("d(pi;0; 0 , pi , 0 , pi)")) == "d(pi;0;0,pi,0,pi)");
  CHECK(render(pm("phi( 0 , pi )")) == "phi(0,pi)");
}

TEST_CASE("parse rejects malformed input with positions") {
  auto rejects = [](const char* s, Flavor f) {
    CAPTURE(s);
    CHECK_THROWS_AS((void)parse(s, f), ParseError);
  };
  rejects("", Flavor::M);
  rejects("pi +", Flavor::M);
  rejects("pi pi", Flavor::M);
  rejects("phi(0)", Flavor::M);
  rejects("phi(0,0", Flavor::M);
  rejects("omega", Flavor::M);
  rejects("adm(0)", Flavor::M);
  rejects("adm(pi + pi)", Flavor::M);
  rejects("d(pi)", Flavor::M);
  // annotation arity must match the selected system
  rejects("d(pi;0;0)", Flavor::M);
  rejects("d(pi;0)", Flavor::P3);
  rejects("d(pi;0;0,pi,0,pi)", Flavor::P3);
  rejects("d(pi;0;0)", Flavor::P4);
  rejects("d(pi;0;0,pi,0)", Flavor::P4);
  try {
    (void)parse("pi + omega", Flavor::M);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.pos == 5);
    CHECK(std::string(e.what()).find("omega") != std::string::npos);
  }
}

TEST_CASE("terms are structurally shared immutable values") {
  TermPtr a = pm("d(pi;pi + phi(0,0))");
  CHECK(a->kind() == Kind::Collapse);
  CHECK(a->annotation_count() == 0);
  CHECK(a->base()->kind() == Kind::Pi);
  CHECK(a->arg()->kind() == Kind::Sum);
  CHECK(a->size() == 7);
  CHECK(eq(a, pm("d(pi;pi + phi(0,0))")));
  CHECK(!eq(a, pm("d(pi;pi)")));
  CHECK(a->id() != pm("d(pi;pi + phi(0,0))")->id());

  TermPtr c4 = p4("d(pi;0;phi(0,0),pi,0,pi)");
  CHECK(c4->annotation_count() == 4);
  CHECK(render(c4->st4()) == "phi(0,0)");
  CHECK(render(c4->rg4()) == "pi");
  CHECK(render(c4->st3()) == "0");
  CHECK(render(c4->rg3()) == "pi");
  CHECK_THROWS_AS((void)c4->q(), std::invalid_argument);
  CHECK_THROWS_AS((void)pm("pi")->base(), std::invalid_argument);
}

TEST_CASE("factory invariants") {
  CHECK_THROWS_AS((void)Term::sum({pm("pi")}), std::invalid_argument);
  CHECK_THROWS_AS((void)Term::sum({pm("pi + pi"), pm("pi")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)Term::collapse_with(Term::pi(), Term::zero(),
                                {Term::zero(), Term::zero()}),
      std::invalid_argument);
}

TEST_CASE("syntactic comparison is a strict total order on distinct terms") {
  std::vector<TermPtr> ts = {pm("0"),         pm("pi"),       pm("pi + pi"),
                             pm("phi(0,0)"),  pm("adm(pi)"),  pm("d(pi;0)"),
                             pm("d(pi;pi)"),  pm("adm(d(pi;0))")};
  for (const auto& a : ts)
    for (const auto& b : ts) {
      int ab = cmp_syntactic(a, b);
      int ba = cmp_syntactic(b, a);
      CHECK(((ab == 0) == eq(a, b)));
      CHECK(ab == -ba);
    }
}

TEST_CASE("subterms and base chains") {
  TermPtr t = pm("d(d(pi;pi);phi(0,pi))");
  auto subs = subterms(t);
  // the distinct subterms: 0, pi, phi(0,pi), d(pi;pi), and t itself
  CHECK(subs.size() == 5);
  bool saw_whole = false, saw_inner = false;
  for (const auto& s : subs) {
    if (eq(s, t)) saw_whole = true;
    if (eq(s, pm("d(pi;pi)"))) saw_inner = true;
  }
  CHECK(saw_whole);
  CHECK(saw_inner);

  auto chain = base_chain(t);
  REQUIRE(chain.size() == 2);
  CHECK(render(chain[0]) == "d(pi;pi)");
  CHECK(render(chain[1]) == "pi");
  CHECK_THROWS_AS((void)base_chain(pm("pi")), std::invalid_argument);
}

TEST_CASE("tracked collapses follow base chains, outermost only") {
  auto members = [](const char* sigma, const char* alpha) {
    KSet ks = kset(pm(sigma), pm(alpha));
    std::vector<std::string> out;
    for (const auto& m : ks.members) out.push_back(render(m));
    return out;
  };
  CHECK(members("pi", "0").empty());
  CHECK(members("pi", "pi").empty());
  CHECK(members("pi", "adm(pi)").empty());
  CHECK(members("pi", "d(pi;0)") == std::vector<std::string>{"d(pi;0)"});
  // the inner occurrence is shadowed by the qualifying outer collapse
  CHECK(members("pi", "d(pi;d(pi;pi))") ==
        std::vector<std::string>{"d(pi;d(pi;pi))"});
  // a collapse from a foreign band is entered, not recorded
  CHECK(members("pi", "d(adm(pi);d(pi;0))") ==
        std::vector<std::string>{"d(pi;0)"});
  CHECK(members("adm(pi)", "d(adm(pi);d(pi;0))") ==
        std::vector<std::string>{"d(adm(pi);d(pi;0))"});
  // chains pass through intermediate collapses
  CHECK(members("pi", "d(d(pi;pi);0)") ==
        std::vector<std::string>{"d(d(pi;pi);0)"});
  // sums and phi are searched component-wise; duplicates collapse
  CHECK(members("pi", "d(pi;0) + phi(d(pi;0),d(pi;pi))") ==
        std::vector<std::string>{"d(pi;0)", "d(pi;pi)"});
  CHECK_THROWS_AS((void)kset(pm("0"), pm("pi")), std::invalid_argument);
}
