#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generator.hpp"
#include "support.hpp"

using namespace ts;

static const EngineConfig kCfg = EngineConfig::standard();

TEST_CASE("data structures and matchable forms") {
  CHECK(ppc::is_data_structure(A(M("c"), V("t"))));
  CHECK(ppc::is_matchable_form(A(M("c"), V("t"))));
  CHECK(ppc::is_matchable_form(P("[x] ^x -> x")));
  CHECK_FALSE(ppc::is_data_structure(P("[x] ^x -> x")));
  CHECK_FALSE(ppc::is_data_structure(A(V("x"), V("t"))));
  CHECK_FALSE(ppc::is_matchable_form(A(V("x"), V("t"))));
  CHECK_THROWS_AS(ppc::is_data_structure(S(M("c"), V("t"))), std::invalid_argument);
}

TEST_CASE("compound matching") {
  NameList th = names({"x"});
  // {^c t /x ^c ^x} = {x := t}
  MatchOutcome m = ppc::compound_match(A(M("c"), V("t")), A(M("c"), M("x")), th);
  REQUIRE(m.is_subst());
  CHECK(m.bindings.size() == 1);
  CHECK(alpha_equiv(m.bindings.at(name("x")), V("t")));
  // an uninstantiated pattern head waits
  CHECK(ppc::compound_match(A(M("c"), V("t")), A(V("y"), M("x")), th).is_wait());
  // a constructor never matches a compound
  CHECK(ppc::compound_match(M("c"), A(M("c"), M("x")), th).is_fail());
  // binding wins over a constructor self-match when the name is in theta
  MatchOutcome bind = ppc::compound_match(M("x"), M("x"), th);
  REQUIRE(bind.is_subst());
  CHECK(alpha_equiv(bind.bindings.at(name("x")), M("x")));
  // self-match outside theta gives the empty substitution
  MatchOutcome self = ppc::compound_match(M("c"), M("c"), th);
  REQUIRE(self.is_subst());
  CHECK(self.bindings.empty());
}

TEST_CASE("checked matching compares the domain with theta") {
  CHECK(ppc::checked_match(A(M("c"), V("t")), A(M("c"), M("x")), names({"x", "y"})).is_fail());
  MatchOutcome ok = ppc::checked_match(A(M("c"), V("t")), A(M("c"), M("x")), names({"x"}));
  REQUIRE(ok.is_subst());
  CHECK(alpha_equiv(ok.bindings.at(name("x")), V("t")));
  MatchOutcome empty = ppc::checked_match(M("c"), M("c"), {});
  REQUIRE(empty.is_subst());
  CHECK(empty.bindings.empty());
  // never a substitution with the wrong domain
  gen::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    TermPtr t = gen::pure_redex_term(rng);
    walk(t, [&](const Path&, const TermPtr& u) {
      if (u->kind != Kind::App || u->first->kind != Kind::Case) return;
      MatchOutcome r = ppc::checked_match(u->second, u->first->first, u->first->binders);
      if (r.is_subst()) {
        std::set<Name> th(u->first->binders.begin(), u->first->binders.end());
        std::set<Name> dom;
        for (const auto& [n, v] : r.bindings) dom.insert(n);
        CHECK(dom == th);
      }
    });
  }
}

TEST_CASE("the four worked judgments") {
  NameSession s(1);
  // ([x] ^c ^x -> x) (^c t) reduces to t
  TermPtr t1 = P("([x] ^c ^x -> x) (^c t)");
  auto r1 = ppc::redexes(t1);
  REQUIRE(r1.size() == 1);
  CHECK(alpha_equiv(ppc::step(t1, r1[0], kCfg, s), V("t")));

  // the check fails when a matching variable is left unbound
  TermPtr t2 = P("([x,y] ^c ^x -> x y) (^c t)");
  auto r2 = ppc::redexes(t2);
  REQUIRE(r2.size() == 1);
  CHECK(alpha_equiv(ppc::step(t2, r2[0], kCfg, s), kCfg.bot));

  // a constructor never matches a structural application
  TermPtr t3 = P("([x] ^c ^x -> x) ^c");
  auto r3 = ppc::redexes(t3);
  REQUIRE(r3.size() == 1);
  CHECK(alpha_equiv(ppc::step(t3, r3[0], kCfg, s), kCfg.bot));

  // an uninstantiated pattern is not a redex
  CHECK(ppc::redexes(P("([x] y ^x -> x) (^c t)")).empty());
}

TEST_CASE("step rejects non-redex positions") {
  NameSession s(1);
  TermPtr t = P("([x] y ^x -> x) (^c t)");
  CHECK_THROWS_AS(ppc::step(t, ppc::Redex{{}}, kCfg, s), std::invalid_argument);
  CHECK_THROWS_AS(ppc::step(P("x y"), ppc::Redex{{}}, kCfg, s), std::invalid_argument);
}

TEST_CASE("pattern linearity fails through the disjoint union") {
  NameList th = names({"x"});
  TermPtr pat = A(A(M("c"), M("x")), M("x"));
  TermPtr arg = A(A(M("c"), M("d")), M("e"));
  CHECK(ppc::compound_match(arg, pat, th).is_fail());
}

TEST_CASE("substitution commutes with reduction") {
  gen::Rng rng(31);
  EngineConfig cfg = EngineConfig::standard();
  int done = 0;
  for (int i = 0; i < 400 && done < 200; ++i) {
    TermPtr t = gen::pure_redex_term(rng);
    auto rs = ppc::redexes(t);
    if (rs.empty()) continue;
    const ppc::Redex& r = rs.front();

    std::set<Name> fv = free_variables(t);
    if (fv.empty()) continue;
    Subst sigma{{*fv.begin(), A(M("k0"), M("k1"))}};

    NameSession s1 = session_for(t);
    TermPtr stepped = ppc::step(t, r, cfg, s1);
    TermPtr stepped_subst = substitute(stepped, sigma, s1);

    NameSession s2 = session_for(t);
    TermPtr t_subst = substitute(t, sigma, s2);
    auto rs2 = ppc::redexes(t_subst);
    bool found = false;
    for (const ppc::Redex& r2 : rs2)
      if (r2.path == r.path) {
        found = true;
        CHECK(alpha_equiv(ppc::step(t_subst, r2, cfg, s2), stepped_subst));
      }
    CHECK(found);
    ++done;
  }
  CHECK(done == 200);
}
