#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generator.hpp"
#include "support.hpp"

using namespace ts;

TEST_CASE("parsing the core forms") {
  TermPtr t = P("[x] ^c ^x -> x");
  REQUIRE(t->kind == Kind::Case);
  CHECK(t->binders == names({"x"}));
  CHECK(t->first->kind == Kind::App);
  CHECK(t->first->first->kind == Kind::Matchable);
  CHECK(t->second->kind == Kind::Var);

  TermPtr m = P("b [x ; {x := ^c} ; (t ~ z)]");
  REQUIRE(m->kind == Kind::Matching);
  CHECK(m->binders == names({"x"}));
  REQUIRE(m->decided() != nullptr);
  CHECK(m->decided()->bindings.size() == 1);
  CHECK(m->pending.size() == 1);
  CHECK(m->pending[0].first->kind == Kind::Var);   // argument t
  CHECK(m->pending[0].second->kind == Kind::Var);  // pattern z

  CHECK(alpha_equiv(P("#bot"), default_bot()));
  CHECK(P("b [; #fail; ]")->decided()->failed);
}

TEST_CASE("application is left-associative, @ builds structure, suffix binds tightest") {
  CHECK(alpha_equiv(P("f x y"), A(A(V("f"), V("x")), V("y"))));
  CHECK(alpha_equiv(P("^c @ ^d @ ^e"), S(S(M("c"), M("d")), M("e"))));
  CHECK(alpha_equiv(P("f x @ y"), S(A(V("f"), V("x")), V("y"))));
  // the matching suffix attaches to the nearest atom
  TermPtr t = P("f b [; {}; ]");
  REQUIRE(t->kind == Kind::App);
  CHECK(t->second->kind == Kind::Matching);
}

TEST_CASE("used-variable lists parse into the variant state") {
  TermPtr t = P("b [x; {x}; (t ~ z)]");
  REQUIRE(t->kind == Kind::Matching);
  REQUIRE(t->tau() != nullptr);
  CHECK_FALSE(t->tau()->failed);
  CHECK(t->tau()->used == names({"x"}));
  // {} stays an empty substitution
  CHECK(P("b [x; {}; ]")->decided() != nullptr);
}

TEST_CASE("parse errors carry a position") {
  try {
    P("[x, x] ^x -> x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 5);
  }
  CHECK_THROWS_AS(P("f )"), ParseError);
  CHECK_THROWS_AS(P("#wrong"), ParseError);
  CHECK_THROWS_AS(P("f ?"), ParseError);
  CHECK_THROWS_AS(P(""), ParseError);
  CHECK_THROWS_AS(P("b [x; {x := a, x := b}; ]"), ParseError);
}

TEST_CASE("printing round-trips the concrete forms") {
  for (const char* src : {
           "[x] ^c ^x -> x",
           "[] ^c -> ^c",
           "[x, y] ^c ^x ^y -> x y",
           "f x @ y",
           "b[x; {x := ^c}; (t ~ z)]",
           "b[x; {x}; (t ~ z)]",
           "b[; #fail; ]",
           "([x] ^x -> x) ([y] ^y -> y)",
           "[x] [y] ^y -> y -> x",
       }) {
    TermPtr t = P(src);
    CHECK(alpha_equiv(P(print(t)), t));
  }
  // fixed strings print back exactly
  CHECK(print(P("[x] ^c ^x -> x")) == "[x] ^c ^x -> x");
  CHECK(print(P("f x @ y")) == "f x @ y");
  CHECK(print(P("b[x; {x := ^c}; (t ~ z)]")) == "b[x; {x := ^c}; (t ~ z)]");
}

TEST_CASE("printer avoids capture when binders collide") {
  // a freshened binder prints under a new name, not over the free x
  TermPtr t = case_of({name("x", 1)}, matchable(name("x", 1)), A(var(name("x", 1)), V("x")));
  std::string s = print(t);
  CHECK(alpha_equiv(P(s), t));
  // shadowing with no inner use of the outer name prints plainly
  TermPtr u = lam({"x"}, M("x"), lam({"x"}, M("x"), V("x")));
  CHECK(alpha_equiv(P(print(u)), u));
}

TEST_CASE("round trip over generated terms") {
  gen::Rng rng(23);
  for (int i = 0; i < 2000; ++i) {
    TermPtr t = gen::term(rng, {});
    TermPtr back = P(print(t));
    if (!alpha_equiv(back, t)) {
      CAPTURE(print(t));
      REQUIRE(alpha_equiv(back, t));
    }
  }
}

TEST_CASE("round trip over reducts with freshened binders") {
  gen::Rng rng(29);
  EngineConfig cfg = EngineConfig::standard();
  for (int i = 0; i < 400; ++i) {
    TermPtr t = gen::term(rng, {});
    NameSession s = session_for(t);
    for (int k = 0; k < 6; ++k) {
      std::vector<em::Redex> rs = em::redexes(t);
      if (rs.empty()) break;
      t = em::step(t, rs[rng() % rs.size()], cfg, s);
    }
    TermPtr back = P(print(t));
    if (!alpha_equiv(back, t)) {
      CAPTURE(print(t));
      REQUIRE(alpha_equiv(back, t));
    }
  }
}
