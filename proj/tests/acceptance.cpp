// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Counts and tolerances are fixed here, not configurable.

#include <chrono>
#include <cstdio>
#include <string>

#include "generator.hpp"
#include "ppc.hpp"
#include "suites.hpp"
#include "support.hpp"
#include "syntax.hpp"

using namespace ts;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int number, const std::string& what, bool ok, const std::string& stats) {
  if (!ok) ++g_failures;
  std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", number, what.c_str(),
              stats.c_str());
  std::fflush(stdout);
}

const EngineConfig kCfg = EngineConfig::standard();

// 1. The four worked judgments of the implicit calculus, alpha-exact, < 1 s.
void criterion_1() {
  auto start = Clock::now();
  bool ok = true;
  NameSession s(1);

  auto reduce_once = [&](const std::string& src) -> TermPtr {
    TermPtr t = P(src);
    auto rs = ppc::redexes(t);
    if (rs.size() != 1) return nullptr;
    return ppc::step(t, rs.front(), kCfg, s);
  };
  TermPtr r1 = reduce_once("([x] ^c ^x -> x) (^c t)");
  ok = ok && r1 && alpha_equiv(r1, V("t"));
  TermPtr r2 = reduce_once("([x,y] ^c ^x -> x y) (^c t)");
  ok = ok && r2 && alpha_equiv(r2, kCfg.bot);
  TermPtr r3 = reduce_once("([x] ^c ^x -> x) ^c");
  ok = ok && r3 && alpha_equiv(r3, kCfg.bot);
  ok = ok && ppc::redexes(P("([x] y ^x -> x) (^c t)")).empty();

  double dt = seconds_since(start);
  ok = ok && dt < 1.0;
  report(1, "worked implicit judgments reproduce exactly", ok,
         "4 judgments, " + std::to_string(dt) + " s");
}

// 2. 5000 random pure terms with a redex; every implicit step is matched by
//    an explicit init/(struct|match)*/resolve sequence to the alpha-same term.
void criterion_2() {
  auto start = Clock::now();
  suites::Result r = suites::simulation(1001, 5000, kCfg);
  double dt = seconds_since(start);
  bool ok = r.failed == 0 && r.passed == 5000 && dt < 120.0;
  report(2, "every implicit step simulated in the explicit calculus", ok,
         std::to_string(r.passed) + " terms, " + std::to_string(r.aux) + " steps, " +
             std::to_string(dt) + " s");
  for (const std::string& n : r.notes) std::printf("      %s\n", n.c_str());
}

// 3. 5000 explicit steps between terms with pure purifications project onto
//    zero or one implicit steps.
void criterion_3() {
  auto start = Clock::now();
  suites::Result r = suites::projection(1002, 5000, kCfg);
  double dt = seconds_since(start);
  bool ok = r.failed == 0 && r.passed == 5000 && dt < 120.0;
  report(3, "explicit steps project onto at most one implicit step", ok,
         std::to_string(r.passed) + " steps, " + std::to_string(dt) + " s");
  for (const std::string& n : r.notes) std::printf("      %s\n", n.c_str());
}

// 4. The (chain depth, size) measure drops on every p-step; at least 1e5
//    steps checked and 10000 normalizations completed, zero violations.
void criterion_4() {
  auto start = Clock::now();
  std::uint64_t runs = 0, steps = 0, failures = 0;
  std::uint64_t seed = 2000;
  while ((runs < 10000 || steps < 100000) && runs < 60000) {
    suites::Result r = suites::termination(seed++, 2500, kCfg);
    runs += r.passed + r.failed;
    steps += r.aux;
    failures += r.failed;
  }
  double dt = seconds_since(start);
  bool ok = failures == 0 && runs >= 10000 && steps >= 100000;
  report(4, "the termination measure drops on every p-step", ok,
         std::to_string(runs) + " normalizations, " + std::to_string(steps) + " steps, " +
             std::to_string(dt) + " s");
}

// 5. The worked chain-depth example: depth {3}, and {2,2} after resolution.
void criterion_5() {
  TermPtr m3 = matching(V("y"), names({"y"}), DecidedMatch::empty_subst(), {{M("c"), M("y")}});
  TermPtr m1 =
      matching(M("c"), {}, DecidedMatch::empty_subst(), {{V("x"), M("c")}, {V("x"), M("c")}});
  TermPtr t = matching(m1, names({"x"}), DecidedMatch::subst({{name("x"), m3}}), {});
  bool ok = chain_depth(t) == std::multiset<std::size_t>{3};
  NameSession s = session_for(t);
  TermPtr reduct = em::step(t, {{}, em::RuleTag::ResolveSubst}, kCfg, s);
  ok = ok && chain_depth(reduct) == std::multiset<std::size_t>({2, 2});
  report(5, "worked chain-depth example", ok, "depth {3} then {2,2}");
}

// 6. 2000 random divergences of length <= 4 joined within depth 8 per side;
//    zero failures, inconclusive rate at most 5 %.
void criterion_6() {
  auto start = Clock::now();
  suites::Result r = suites::confluence(1003, 2000, kCfg, 4, 8);
  double dt = seconds_since(start);
  double inc_rate = double(r.inconclusive) / 2000.0;
  bool ok = r.failed == 0 && inc_rate <= 0.05;
  report(6, "bounded confluence of the explicit relation", ok,
         std::to_string(r.passed) + " joined, " + std::to_string(r.inconclusive) +
             " inconclusive, " + std::to_string(dt) + " s");
}

// 7. Diamond property of parallel reduction over 500 small terms.
void criterion_7() {
  auto start = Clock::now();
  suites::Result r = suites::diamond(1004, 500, kCfg);
  double dt = seconds_since(start);
  bool ok = r.failed == 0 && r.passed + r.inconclusive == 500 && r.inconclusive <= 25;
  report(7, "parallel divergences close in one step each side", ok,
         std::to_string(r.passed) + " terms, " + std::to_string(r.aux) + " reducts, " +
             std::to_string(r.inconclusive) + " overflowed, " + std::to_string(dt) + " s");
}

// 8. Matching semantics stable across 2000 random flat matchings walked
//    through structural and matching steps.
void criterion_8() {
  auto start = Clock::now();
  suites::Result r = suites::semantics(1005, 2000, kCfg);
  double dt = seconds_since(start);
  bool ok = r.failed == 0 && r.passed == 2000;
  report(8, "matching semantics stable under struct and match steps", ok,
         std::to_string(r.passed) + " matchings, " + std::to_string(dt) + " s");
  for (const std::string& n : r.notes) std::printf("      %s\n", n.c_str());
}

// 9. Matching-driven selection admits at most one redex over 10000 terms and
//    every state of their runs.
void criterion_9() {
  auto start = Clock::now();
  suites::Result r = suites::determinism(1006, 10000, kCfg);
  double dt = seconds_since(start);
  bool ok = r.failed == 0 && r.passed == 10000;
  report(9, "matching-driven reduction is deterministic", ok,
         std::to_string(r.passed) + " terms, " + std::to_string(r.aux) + " states, " +
             std::to_string(dt) + " s");
}

// 10. The partial-substitution variant: the worked trace reproduces, 2000
//     random explicit steps are reflected through the translation, and the
//     reverse direction has the worked counterexample.
void criterion_10() {
  auto start = Clock::now();
  std::string msg;
  bool trace_ok = suites::partial_example_trace(kCfg, &msg);
  if (!trace_ok) std::printf("      %s\n", msg.c_str());
  bool reverse_ok = suites::partial_reverse_counterexample(kCfg, &msg);
  if (!reverse_ok) std::printf("      %s\n", msg.c_str());
  suites::Result r = suites::partial_sim(1007, 2000, kCfg);
  double dt = seconds_since(start);
  bool ok = trace_ok && reverse_ok && r.failed == 0 && r.passed == 2000;
  report(10, "partial substitution: worked trace, one-way simulation", ok,
         std::to_string(r.passed) + " steps, " + std::to_string(dt) + " s");
  for (const std::string& n : r.notes) std::printf("      %s\n", n.c_str());
}

// 11. parse . print is the identity up to alpha on 10000 generated terms.
void criterion_11() {
  auto start = Clock::now();
  gen::Rng rng(1008);
  std::uint64_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    gen::Config gc;
    gc.size_budget = 6 + int(rng() % 14);
    TermPtr t = gen::term(rng, gc);
    if (!alpha_equiv(P(print(t)), t)) ++bad;
  }
  double dt = seconds_since(start);
  report(11, "printer and parser round-trip", bad == 0,
         "10000 terms, " + std::to_string(bad) + " mismatches, " + std::to_string(dt) + " s");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
