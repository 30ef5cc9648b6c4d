#include <stdexcept>
#include <string>

#include "doctest.h"
#include "od/harness.hpp"
#include "od/order.hpp"
#include "od/subst.hpp"
#include "od/term.hpp"

using namespace od;

TEST_CASE("frozen images under the map sending pi to d(pi;0)") {
  OrderCache cache;
  Substitution f =
      make_subst(parse("d(pi;0)", Flavor::M), Flavor::M, &cache);
  auto image = [&](const char* s) {
    return render(apply(f, parse(s, Flavor::M), &cache));
  };
  CHECK(image("pi") == "d(pi;0)");
  CHECK(image("pi + pi") == "d(pi;0) + d(pi;0)");
  CHECK(image("adm(pi)") == "adm(d(pi;0))");
  CHECK(image("adm(d(adm(pi);0))") == "adm(d(adm(d(pi;0));0))");
  CHECK(image("phi(0,pi)") == "phi(0,d(pi;0))");
  CHECK(image("phi(pi,0)") == "phi(d(pi;0),0)");
  CHECK(image("d(adm(pi);pi)") == "d(adm(d(pi;0));d(pi;0))");
  CHECK(image("d(adm(pi);pi + pi)") ==
        "d(adm(d(pi;0));d(pi;0) + d(pi;0))");
  CHECK(image("adm(pi) + pi") == "adm(d(pi;0)) + d(pi;0)");
  // everything already below pi is fixed, including collapses at pi
  CHECK(image("0") == "0");
  CHECK(image("phi(0,0)") == "phi(0,0)");
  CHECK(image("d(pi;pi)") == "d(pi;pi)");
  CHECK(image("adm(d(pi;pi))") == "adm(d(pi;pi))");
  CHECK(image("pi + phi(0,0)") == "d(pi;0) + phi(0,0)");
  // raw input is canonicalized before mapping
  CHECK(image("0 + pi") == "d(pi;0)");
  CHECK(image("phi(0,0) + pi") == "d(pi;0)");
}

TEST_CASE("domain membership tracks the collapses seen through pi") {
  OrderCache cache;
  Substitution f0 =
      make_subst(parse("d(pi;0)", Flavor::M), Flavor::M, &cache);
  Substitution f1 =
      make_subst(parse("d(pi;pi)", Flavor::M), Flavor::M, &cache);
  auto in0 = [&](const char* s) {
    return in_domain(f0, parse(s, Flavor::M), &cache);
  };
  auto in1 = [&](const char* s) {
    return in_domain(f1, parse(s, Flavor::M), &cache);
  };
  // terms with no tracked collapse are always in the domain
  CHECK(in0("0"));
  CHECK(in0("pi"));
  CHECK(in0("adm(pi) + phi(pi,pi)"));
  // the tracked collapse must fall strictly below the target
  CHECK(!in0("d(pi;0)"));
  CHECK(in1("d(pi;0)"));
  CHECK(!in1("d(pi;pi)"));
  CHECK(in1("phi(d(pi;0),pi)"));
  CHECK(!in1("adm(pi) + d(pi;pi)"));
  // collapses of deeper bands do not track through pi
  CHECK(in0("d(adm(pi);0)"));
}

TEST_CASE("map construction rejects unusable targets") {
  OrderCache cache;
  CHECK_THROWS_AS((void)make_subst(parse("pi", Flavor::M), Flavor::M, &cache),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)make_subst(parse("phi(0,0)", Flavor::M), Flavor::M, &cache),
      std::invalid_argument);
  // a collapse from a higher band sits above pi
  CHECK_THROWS_AS(
      (void)make_subst(parse("d(adm(pi);0)", Flavor::M), Flavor::M, &cache),
      std::invalid_argument);
  // annotation arity must match the system
  CHECK_THROWS_AS((void)make_subst(Term::collapse(Term::pi(), Term::zero(),
                                                  Term::zero()),
                                   Flavor::M, &cache),
                  std::invalid_argument);
  // stage provisos are enforced on the target
  CHECK_THROWS_AS(
      (void)make_subst(parse("d(d(pi;0;0);0;0)", Flavor::P3), Flavor::P3,
                       &cache),
      std::invalid_argument);
  // the target itself is canonicalized
  Substitution f =
      make_subst(parse("d(pi;0 + pi)", Flavor::M), Flavor::M, &cache);
  CHECK(render(f.target) == "d(pi;pi)");
}

TEST_CASE("maps exist in every system") {
  OrderCache cache;
  Substitution f3 =
      make_subst(parse("d(pi;0;0)", Flavor::P3), Flavor::P3, &cache);
  CHECK(render(apply(f3, parse("pi", Flavor::P3), &cache)) == "d(pi;0;0)");
  CHECK(render(apply(f3, parse("adm(pi) + pi", Flavor::P3), &cache)) ==
        "adm(d(pi;0;0)) + d(pi;0;0)");
  CHECK(render(apply(f3, parse("d(pi;pi;0)", Flavor::P3), &cache)) ==
        "d(pi;pi;0)");

  Substitution f4 = make_subst(parse("d(pi;0;0,pi,0,pi)", Flavor::P4),
                               Flavor::P4, &cache);
  CHECK(render(apply(f4, parse("adm(pi)", Flavor::P4), &cache)) ==
        "adm(d(pi;0;0,pi,0,pi))");
}

TEST_CASE("embedding laws hold over an exhaustive fragment") {
  OrderCache cache;
  auto frag = enumerate_fragment(Flavor::M, 5, {}, &cache);
  for (const char* target : {"d(pi;0)", "d(pi;pi)"}) {
    CAPTURE(target);
    Substitution f =
        make_subst(parse(target, Flavor::M), Flavor::M, &cache);
    CheckReport rep = verify_embedding(f, frag, &cache);
    CHECK(rep.pass());
    CHECK(rep.fragment_size > 30);
    CHECK(rep.pairs > rep.fragment_size * rep.fragment_size);
    CHECK(rep.label == "substitution-embedding");
  }
}
