#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generator.hpp"
#include "support.hpp"

using namespace ts;
using em::Redex;
using em::RuleTag;

static const EngineConfig kCfg = EngineConfig::standard();

TEST_CASE("depth-first left-to-right golden trace") {
  strat::RunResult r = strat::run(P("([x] ^c ^x -> x) (^c ^y)"), strat::df_lr(), 100, kCfg);
  CHECK(r.verdict == strat::Verdict::NormalForm);
  CHECK(alpha_equiv(r.final_term, M("y")));

  std::vector<std::pair<RuleTag, Path>> want = {
      {RuleTag::InitB, {}},          {RuleTag::StructHat, {1}}, {RuleTag::StructHat, {2}},
      {RuleTag::MatchDecompose, {1}}, {RuleTag::MatchConst, {1}}, {RuleTag::MatchBind, {1}},
      {RuleTag::ResolveSubst, {}},
  };
  REQUIRE(r.trace.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(r.trace[i].redex.tag == want[i].first);
    CHECK(r.trace[i].redex.path == want[i].second);
  }
}

TEST_CASE("a normal form runs to itself") {
  TermPtr nf = P("[x] ^x -> x");
  strat::RunResult r = strat::run(nf, strat::df_lr(), 10, kCfg);
  CHECK(r.trace.empty());
  CHECK(r.verdict == strat::Verdict::NormalForm);
  CHECK(alpha_equiv(r.final_term, nf));
}

TEST_CASE("diverging terms exhaust the budget") {
  TermPtr omega = P("([x] ^x -> x x) ([x] ^x -> x x)");
  strat::RunResult r = strat::run(omega, strat::df_lr(), 50, kCfg);
  CHECK(r.verdict == strat::Verdict::BudgetExhausted);
}

TEST_CASE("matching rules stay on the head pair") {
  TermPtr two = matching(V("b"), names({"x"}), DecidedMatch::empty_subst(),
                         {{M("c"), V("q")}, {M("d"), M("x")}});
  // the unrestricted relation may bind the second pair; the list strategy may not
  bool full_has_bind = false;
  for (const Redex& r : strat::full().admissible(two))
    if (r.tag == RuleTag::MatchBind) full_has_bind = true;
  CHECK(full_has_bind);
  for (const Redex& r : strat::df_lr().admissible(two)) CHECK(r.tag != RuleTag::MatchBind);
}

TEST_CASE("decomposition placement") {
  TermPtr t = matching(V("b"), names({"x"}), DecidedMatch::empty_subst(),
                       {{S(M("c"), M("d")), S(M("e"), M("x"))}, {M("g"), M("x")}});
  NameSession s1 = session_for(t);
  auto r = strat::select(strat::df_lr(), t);
  REQUIRE(r.has_value());
  REQUIRE(r->tag == RuleTag::MatchDecompose);

  TermPtr front = em::step(t, *r, kCfg, s1, em::DecomposePlacement::Front);
  REQUIRE(front->pending.size() == 3);
  CHECK(alpha_equiv(front->pending[0].first, M("c")));  // new pairs lead

  NameSession s2 = session_for(t);
  TermPtr back = em::step(t, *r, kCfg, s2, em::DecomposePlacement::Back);
  REQUIRE(back->pending.size() == 3);
  CHECK(alpha_equiv(back->pending[0].first, M("g")));  // the old tail leads
}

TEST_CASE("reordered runs reach the same resolved matches") {
  gen::Rng rng(71);
  for (int i = 0; i < 150; ++i) {
    TermPtr t = gen::pure_redex_term(rng);
    strat::RunResult a = strat::run(t, strat::df_lr(), 400, kCfg);
    strat::RunResult b = strat::run(t, strat::df_reordered(), 400, kCfg);
    if (a.verdict == strat::Verdict::NormalForm && b.verdict == strat::Verdict::NormalForm)
      CHECK(alpha_equiv_multiset(a.final_term, b.final_term));
  }
}

TEST_CASE("matching-driven selection") {
  strat::Strategy md = strat::matching_driven();

  // a pattern that is not a matchable form is reduced first
  TermPtr busy_pattern = matching(V("b"), names({"x"}), DecidedMatch::empty_subst(),
                                  {{M("c"), A(lam({}, M("c"), M("d")), M("c"))}});
  auto r1 = strat::select(md, busy_pattern);
  REQUIRE(r1.has_value());
  CHECK(r1->tag == RuleTag::InitB);
  CHECK(r1->path == Path{2});  // inside the head pair's pattern

  // with a structural pattern, the argument is evaluated
  TermPtr busy_arg = matching(V("b"), names({"x"}), DecidedMatch::empty_subst(),
                              {{A(M("c"), M("d")), S(M("c"), M("x"))}});
  auto r2 = strat::select(md, busy_arg);
  REQUIRE(r2.has_value());
  CHECK(r2->tag == RuleTag::StructHat);
  CHECK(r2->path == Path{1});

  // a binding matchable fires without evaluating the argument
  TermPtr bind_now = matching(V("b"), names({"x"}), DecidedMatch::empty_subst(),
                              {{A(M("c"), M("d")), M("x")}});
  auto r3 = strat::select(md, bind_now);
  REQUIRE(r3.has_value());
  CHECK(r3->tag == RuleTag::MatchBind);

  // no context enters a case body or a match codomain
  TermPtr under_case = lam({}, M("c"), P("([x] ^x -> x) ^d"));
  CHECK_FALSE(strat::select(md, under_case).has_value());
  TermPtr under_mu = matching(V("b"), names({"x"}),
                              DecidedMatch::subst({{name("x"), P("([x] ^x -> x) ^d")}}),
                              {{M("c"), V("q")}});
  CHECK_FALSE(strat::select(md, under_mu).has_value());

  // a failed matching resolves even with pairs pending
  TermPtr failed = matching(V("b"), names({"x"}), DecidedMatch::fail(), {{M("c"), M("c")}});
  auto r4 = strat::select(md, failed);
  REQUIRE(r4.has_value());
  CHECK(r4->tag == RuleTag::ResolveFail);
  CHECK(md.admissible(failed).size() == 1);
}

TEST_CASE("strategies never invent steps") {
  gen::Rng rng(73);
  for (int i = 0; i < 200; ++i) {
    gen::Config gc;
    gc.size_budget = 12;
    TermPtr t = gen::term(rng, gc);
    std::vector<Redex> all = em::redexes(t);
    for (const strat::Strategy& s : {strat::df_lr(), strat::df_reordered(), strat::matching_driven()})
      for (const Redex& r : s.admissible(t))
        CHECK(std::find(all.begin(), all.end(), r) != all.end());
  }
}

TEST_CASE("matching-driven admits at most one redex along its runs") {
  gen::Rng rng(79);
  strat::Strategy md = strat::matching_driven();
  for (int i = 0; i < 300; ++i) {
    gen::Config gc;
    gc.size_budget = 10;
    TermPtr t = gen::term(rng, gc);
    NameSession s = session_for(t);
    for (int k = 0; k < 30; ++k) {
      std::vector<Redex> adm = md.admissible(t);
      CHECK(adm.size() <= 1);
      if (adm.empty()) break;
      t = em::step(t, adm.front(), kCfg, s, md.placement);
    }
  }
}

TEST_CASE("replaying a trace rebuilds the run exactly") {
  gen::Rng rng(83);
  for (int i = 0; i < 100; ++i) {
    TermPtr t = gen::pure_redex_term(rng);
    strat::RunResult r = strat::run(t, strat::df_lr(), 200, kCfg);
    std::vector<Redex> steps;
    for (const strat::TraceEntry& e : r.trace) steps.push_back(e.redex);
    TermPtr replayed = strat::replay(t, steps, kCfg, em::DecomposePlacement::Front);
    CHECK(alpha_key(replayed) == alpha_key(r.final_term));
    CHECK(print(replayed) == print(r.final_term));
  }
}

TEST_CASE("strategies are found by name") {
  for (const std::string& n : strat::strategy_names()) {
    auto s = strat::by_name(n);
    REQUIRE(s.has_value());
    CHECK(s->name == n);
  }
  CHECK_FALSE(strat::by_name("eager").has_value());
}
