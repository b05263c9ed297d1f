#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generator.hpp"
#include "support.hpp"

using namespace ts;

TEST_CASE("names order and print") {
  CHECK(name("x") == name("x", 0));
  CHECK(name("x") < name("x", 1));
  CHECK(name("x") < name("y"));
  CHECK(to_string(name("x")) == "x");
  CHECK(to_string(name("x", 3)) == "x_3");
}

TEST_CASE("binder lists reject duplicates") {
  CHECK_THROWS_AS(case_of(names({"x", "x"}), M("x"), V("x")), std::invalid_argument);
  CHECK_THROWS_AS(matching(V("b"), names({"y", "y"}), DecidedMatch::empty_subst(), {}),
                  std::invalid_argument);
}

TEST_CASE("free variables") {
  // fv([x] y ^x -> x) = {y}
  CHECK(free_variables(lam({"x"}, A(V("y"), M("x")), V("x"))) == nameset({"y"}));
  CHECK(free_variables(M("x")).empty());
  // fv of a matching: (fv body \ theta) u fv codomain u fv of both pair sides
  TermPtr t = matching(A(V("x"), V("y")), names({"x"}),
                       DecidedMatch::subst({{name("x"), V("z")}}), {{V("w"), M("x")}});
  CHECK(free_variables(t) == nameset({"y", "z", "w"}));
}

TEST_CASE("free matchables") {
  // theta binds matchables in the pattern only; the body's variable stays a variable
  CHECK(free_matchables(lam({"x"}, A(V("x"), M("x")), V("y"))).empty());
  CHECK(free_matchables(S(M("c"), M("x"))) == nameset({"c", "x"}));
  // pattern-side matchables of the pending pairs are bound by theta
  TermPtr t = matching(V("y"), names({"x"}), DecidedMatch::empty_subst(), {{M("c"), M("x")}});
  CHECK(free_matchables(t) == nameset({"c"}));
}

TEST_CASE("free names") {
  // the pattern's variable occurrence and the body's matchable occurrence are free
  TermPtr t = lam({"x"}, A(V("x"), M("x")), A(V("x"), M("x")));
  CHECK(free_names(t) == nameset({"x"}));
  CHECK(free_names(A(V("y"), M("x"))) == nameset({"y", "x"}));
  CHECK(free_names(default_bot()).empty());
}

TEST_CASE("substitution basics") {
  NameSession s(1);
  // (x ^y)^{x := ^c} = ^c ^y
  CHECK(alpha_equiv(substitute(A(V("x"), M("y")), Subst{{name("x"), M("c")}}, s),
                    A(M("c"), M("y"))));
  // matchable occurrences are immutable
  CHECK(alpha_equiv(substitute(M("x"), Subst{{name("x"), M("c")}}, s), M("x")));
}

TEST_CASE("substitution renames captured binders") {
  NameSession s(1);
  // ([x] ^x -> x y)^{y := x} must not capture the free x
  TermPtr t = lam({"x"}, M("x"), A(V("x"), V("y")));
  TermPtr got = substitute(t, Subst{{name("y"), V("x")}}, s);
  TermPtr want = case_of({name("x", 1)}, matchable(name("x", 1)), A(var(name("x", 1)), V("x")));
  CHECK(alpha_equiv(got, want));
  CHECK(free_names(got) == nameset({"x"}));
}

TEST_CASE("substitution reaches pending pairs but not the binder scope") {
  NameSession s(1);
  // (x<{x}; {}; (^c ~ x)>)^{x := ^c}: the pattern-side x is a free variable
  // occurrence and becomes ^c; the binder x is freshened away first
  TermPtr t = matching(V("x"), names({"x"}), DecidedMatch::empty_subst(), {{M("c"), V("x")}});
  TermPtr got = substitute(t, Subst{{name("x"), M("c")}}, s);
  TermPtr want = matching(var(name("x", 1)), {name("x", 1)}, DecidedMatch::empty_subst(),
                          {{M("c"), M("c")}});
  CHECK(alpha_equiv(got, want));
}

TEST_CASE("alpha equivalence") {
  // [x] x ^x -> x ^x  =a  [y] x ^y -> y ^x
  TermPtr l = lam({"x"}, A(V("x"), M("x")), A(V("x"), M("x")));
  TermPtr r = lam({"y"}, A(V("x"), M("y")), A(V("y"), M("x")));
  CHECK(alpha_equiv(l, r));
  CHECK_FALSE(alpha_equiv(lam({"x"}, M("x"), V("x")), lam({"x"}, M("x"), V("y"))));
  // binder list order matters up to consistent renaming
  CHECK(alpha_equiv(lam({"x", "y"}, A(M("x"), M("y")), A(V("x"), V("y"))),
                    lam({"y", "x"}, A(M("y"), M("x")), A(V("y"), V("x")))));
  CHECK_FALSE(alpha_equiv(lam({"x", "y"}, A(M("x"), M("y")), A(V("x"), V("y"))),
                          lam({"x", "y"}, A(M("y"), M("x")), A(V("x"), V("y")))));
}

TEST_CASE("alpha equivalence is reflexive on random terms and respects substitution") {
  gen::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = gen::term(rng, {});
    CHECK(alpha_equiv(t, t));
    TermPtr variant = P(print(t));  // alpha-renamed through the printer
    REQUIRE(alpha_equiv(t, variant));
    Subst sigma;
    auto fv = free_variables(t);
    if (!fv.empty()) sigma.emplace(*fv.begin(), A(M("k"), M("k")));
    NameSession s1 = session_for(t);
    NameSession s2 = session_for(variant);
    CHECK(alpha_equiv(substitute(t, sigma, s1), substitute(variant, sigma, s2)));
  }
}

TEST_CASE("pending pairs compare as a multiset only in the multiset key") {
  TermPtr a = matching(V("b"), {}, DecidedMatch::empty_subst(), {{M("c"), M("c")}, {M("d"), M("d")}});
  TermPtr b = matching(V("b"), {}, DecidedMatch::empty_subst(), {{M("d"), M("d")}, {M("c"), M("c")}});
  CHECK_FALSE(alpha_equiv(a, b));
  CHECK(alpha_equiv_multiset(a, b));
}

TEST_CASE("sizes") {
  CHECK(term_size(V("x")) == 1);
  CHECK(term_size(A(V("x"), V("y"))) == 4);
  CHECK(term_size(S(V("x"), V("y"))) == 3);
  CHECK(term_size(lam({"x"}, M("x"), V("x"))) == 2);
  // matchings count the failure term once, bindings and pairs at full size
  TermPtr m = matching(V("b"), names({"x"}), DecidedMatch::subst({{name("x"), V("u")}}),
                       {{V("a"), V("p")}});
  CHECK(term_size(m, 2) == 1 + 2 + 1 + 2);
  gen::Rng rng(3);
  for (int i = 0; i < 200; ++i) CHECK(term_size(gen::term(rng, {})) > 0);
}

TEST_CASE("chain depth of the worked nesting example") {
  // ^c<;;(x~^c)(x~^c)> <x; x := y<y;;(^c~^y)>;>
  TermPtr m3 = matching(V("y"), names({"y"}), DecidedMatch::empty_subst(), {{M("c"), M("y")}});
  TermPtr m1 = matching(M("c"), {}, DecidedMatch::empty_subst(), {{V("x"), M("c")}, {V("x"), M("c")}});
  TermPtr t = matching(m1, names({"x"}), DecidedMatch::subst({{name("x"), m3}}), {});
  CHECK(chain_depth(t) == std::multiset<std::size_t>{3});

  // resolving the outer matching duplicates the inner one: two chains of length 2
  NameSession s = session_for(t);
  TermPtr reduct = em::step(t, {{}, em::RuleTag::ResolveSubst}, EngineConfig::standard(), s);
  CHECK(chain_depth(reduct) == std::multiset<std::size_t>({2, 2}));

  CHECK(chain_depth(P("[x] ^c ^x -> x")).empty());
}

TEST_CASE("multiset order on naturals") {
  using MS = std::multiset<std::size_t>;
  CHECK(multiset_less(MS{2, 2}, MS{3}));
  CHECK(multiset_less(MS{}, MS{1}));
  CHECK(multiset_less(MS{3}, MS{3, 1}));
  CHECK_FALSE(multiset_less(MS{3}, MS{3}));
  CHECK_FALSE(multiset_less(MS{3}, MS{2, 2}));
}

TEST_CASE("disjoint union") {
  MatchOutcome fail = MatchOutcome::fail();
  MatchOutcome wait = MatchOutcome::wait();
  CHECK(disjoint_union(fail, wait).is_fail());
  CHECK(disjoint_union(wait, fail).is_fail());
  CHECK(disjoint_union(MatchOutcome::subst({{name("x"), V("a")}}),
                       MatchOutcome::subst({{name("x"), V("b")}}))
            .is_fail());
  MatchOutcome empty = disjoint_union(MatchOutcome::subst({}), MatchOutcome::subst({}));
  CHECK(empty.is_subst());
  CHECK(empty.bindings.empty());
  CHECK(disjoint_union(wait, MatchOutcome::subst({})).is_wait());
}

TEST_CASE("disjoint union is commutative, and associative on decided matches") {
  gen::Rng rng(11);
  auto random_outcome = [&](bool decided) {
    switch (rng() % (decided ? 2 : 3)) {
      case 0: {
        Subst b;
        if (rng() % 2) b.emplace(name("x"), M("c"));
        if (rng() % 2) b.emplace(name("y"), M("d"));
        return MatchOutcome::subst(std::move(b));
      }
      case 1:
        return MatchOutcome::fail();
      default:
        return MatchOutcome::wait();
    }
  };
  for (int i = 0; i < 400; ++i) {
    MatchOutcome a = random_outcome(false), b = random_outcome(false);
    CHECK(outcome_equiv(disjoint_union(a, b), disjoint_union(b, a)));
    MatchOutcome x = random_outcome(true), y = random_outcome(true), z = random_outcome(true);
    CHECK(outcome_equiv(disjoint_union(disjoint_union(x, y), z),
                        disjoint_union(x, disjoint_union(y, z))));
    CHECK_FALSE(disjoint_union(x, y).is_wait());
  }
}

TEST_CASE("free names after substitution") {
  gen::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = gen::term(rng, {});
    std::set<Name> fv = free_variables(t);
    Subst sigma;
    int k = 0;
    for (const Name& n : fv)
      if (k++ % 2 == 0) sigma.emplace(n, A(M("k"), V("r")));
    NameSession s = session_for(t);
    TermPtr got = substitute(t, sigma, s);

    std::set<Name> want = free_matchables(t);
    for (const Name& n : fv)
      if (!sigma.count(n)) want.insert(n);
    bool used = false;
    for (const auto& [n, u] : sigma)
      if (fv.count(n)) used = true;
    if (used) {
      want.insert(name("k"));
      want.insert(name("r"));
    }
    CHECK(free_names(got) == want);
  }
}

TEST_CASE("substitution and canonicalization keep the stored-term convention") {
  gen::Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = gen::term(rng, {});
    REQUIRE(is_canonical(t));
    Subst sigma;
    auto fv = free_variables(t);
    if (!fv.empty()) sigma.emplace(*fv.begin(), lam({"x"}, M("x"), V("x")));
    NameSession s = session_for(t);
    TermPtr got = substitute(t, sigma, s);
    CHECK(is_canonical(got));
    // canonicalize never changes the alpha class and is idempotent
    NameSession s2 = session_for(got);
    TermPtr again = canonicalize(got, s2);
    CHECK(alpha_equiv(got, again));
  }
}
