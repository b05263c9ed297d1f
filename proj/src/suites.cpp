#include "suites.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ppc.hpp"
#include "syntax.hpp"

namespace ppcem::suites {

namespace {

int pick(gen::Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

TermPtr random_em_walk(const TermPtr& t, int steps, gen::Rng& rng, const EngineConfig& cfg,
                       NameSession& session) {
  TermPtr cur = t;
  for (int i = 0; i < steps; ++i) {
    std::vector<em::Redex> rs = em::redexes(cur);
    if (rs.empty()) break;
    cur = em::step(cur, rs[pick(rng, static_cast<int>(rs.size()))], cfg, session);
  }
  return cur;
}

enum class Join { Joined, Separated, Inconclusive };

Join join_search(const TermPtr& a, const TermPtr& b, const EngineConfig& cfg, int max_depth,
                 std::size_t node_cap) {
  NameSession session = session_for(a);
  session.reserve_at_least(max_tag(b));
  auto key = [](const TermPtr& t) { return alpha_key(t, true); };

  if (key(a) == key(b)) return Join::Joined;
  // cheap concrete join: both sides reduced to their p-normal forms
  {
    NameSession s2 = session;
    if (key(em::normalize_p(a, cfg, s2)) == key(em::normalize_p(b, cfg, s2))) return Join::Joined;
  }

  std::set<std::string> seen_a{key(a)}, seen_b{key(b)};
  std::vector<TermPtr> front_a{a}, front_b{b};
  int depth_a = 0, depth_b = 0;
  std::size_t nodes = 0;
  bool capped = false;

  auto expand = [&](std::vector<TermPtr>& front, std::set<std::string>& mine,
                    std::set<std::string>& other, int& depth) -> std::optional<Join> {
    std::vector<TermPtr> next;
    for (const TermPtr& u : front) {
      for (const em::Redex& r : em::redexes(u)) {
        if (++nodes > node_cap) {
          capped = true;
          front.clear();
          return std::nullopt;
        }
        TermPtr v = em::step(u, r, cfg, session);
        std::string k = key(v);
        if (other.count(k)) return Join::Joined;
        if (mine.insert(std::move(k)).second) next.push_back(std::move(v));
      }
    }
    front = std::move(next);
    ++depth;
    return std::nullopt;
  };

  for (;;) {
    bool can_a = !front_a.empty() && depth_a < max_depth && !capped;
    bool can_b = !front_b.empty() && depth_b < max_depth && !capped;
    if (!can_a && !can_b) break;
    bool pick_a = can_a && (!can_b || front_a.size() <= front_b.size());
    auto verdict = pick_a ? expand(front_a, seen_a, seen_b, depth_a)
                          : expand(front_b, seen_b, seen_a, depth_b);
    if (verdict) return *verdict;
  }
  // both reachable sets fully explored without meeting: a genuine failure
  if (front_a.empty() && front_b.empty() && !capped) return Join::Separated;
  return Join::Inconclusive;
}

std::string brief(const TermPtr& t) {
  std::string s = print(t);
  if (s.size() > 120) s = s.substr(0, 117) + "...";
  return s;
}

}  // namespace

std::string Result::summary() const {
  std::ostringstream os;
  os << name << ": " << passed << " passed, " << failed << " failed";
  if (inconclusive) os << ", " << inconclusive << " inconclusive";
  if (aux) os << " (aux " << aux << ")";
  for (const std::string& n : notes) os << "\n  - " << n;
  return os.str();
}

Result termination(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg) {
  Result res;
  res.name = "termination";
  gen::Rng rng(seed);
  for (std::uint32_t i = 0; i < count; ++i) {
    gen::Config gc;
    gc.size_budget = 16 + pick(rng, 16);
    TermPtr t = gen::term(rng, gc);
    NameSession session = session_for(t);
    bool bad = false;
    auto observer = [&](const em::StepRecord& rec) {
      ++res.aux;
      auto d0 = chain_depth(rec.before);
      auto d1 = chain_depth(rec.after);
      std::size_t s0 = term_size(rec.before, cfg.bot_size);
      std::size_t s1 = term_size(rec.after, cfg.bot_size);
      bool ok;
      if (rec.redex.tag == em::RuleTag::ResolveSubst) {
        ok = multiset_less(d1, d0);
      } else {
        ok = !multiset_less(d0, d1) && s1 < s0;
      }
      if (!ok) {
        bad = true;
        res.note(std::string("measure violation at ") + em::rule_name(rec.redex.tag) + " on " +
                 brief(rec.before));
      }
    };
    try {
      em::normalize_p(t, cfg, session, observer);
    } catch (const std::exception& e) {
      bad = true;
      res.note(std::string("normalize_p diverged: ") + e.what());
    }
    bad ? ++res.failed : ++res.passed;
  }
  return res;
}

Result confluence(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg, int diverge_len,
                  int join_depth) {
  Result res;
  res.name = "confluence";
  gen::Rng rng(seed);
  for (std::uint32_t i = 0; i < count; ++i) {
    gen::Config gc;
    gc.size_budget = 8 + pick(rng, 8);
    TermPtr t = gen::term(rng, gc);
    NameSession session = session_for(t);
    TermPtr a = random_em_walk(t, pick(rng, diverge_len + 1), rng, cfg, session);
    TermPtr b = random_em_walk(t, pick(rng, diverge_len + 1), rng, cfg, session);
    switch (join_search(a, b, cfg, join_depth, 20000)) {
      case Join::Joined:
        ++res.passed;
        break;
      case Join::Separated:
        ++res.failed;
        res.note("no common reduct for divergence from " + brief(t));
        break;
      case Join::Inconclusive:
        ++res.inconclusive;
        break;
    }
  }
  return res;
}

Result diamond(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg) {
  Result res;
  res.name = "diamond";
  gen::Rng rng(seed);
  constexpr std::size_t kBudget = 24;
  std::uint32_t produced = 0;
  std::uint64_t guard = 0;
  while (produced < count && ++guard < std::uint64_t(count) * 200) {
    gen::Config gc;
    gc.size_budget = 6 + pick(rng, 4);
    TermPtr t = gen::term(rng, gc);
    if (term_size(t, cfg.bot_size) > 10) continue;
    if (em::redexes(t).empty()) continue;  // keep the divergences real
    ++produced;
    try {
      std::vector<TermPtr> reducts = em::parallel_reducts(t, kBudget, cfg);
      std::map<std::string, std::set<std::string>> closures;
      auto keys_of = [&](const TermPtr& u) -> const std::set<std::string>& {
        std::string k = alpha_key(u, true);
        auto it = closures.find(k);
        if (it != closures.end()) return it->second;
        std::set<std::string> ks;
        for (const TermPtr& v : em::parallel_reducts(u, kBudget + 16, cfg))
          ks.insert(alpha_key(v, true));
        return closures.emplace(std::move(k), std::move(ks)).first->second;
      };
      bool bad = false;
      for (std::size_t i = 0; i < reducts.size() && !bad; ++i)
        for (std::size_t j = i + 1; j < reducts.size() && !bad; ++j) {
          const auto& ki = keys_of(reducts[i]);
          const auto& kj = keys_of(reducts[j]);
          bool met = false;
          for (const std::string& k : ki)
            if (kj.count(k)) {
              met = true;
              break;
            }
          if (!met) {
            bad = true;
            res.note("diamond fails between two parallel reducts of " + brief(t));
          }
        }
      bad ? ++res.failed : ++res.passed;
      res.aux += reducts.size();
    } catch (const em::ParallelOverflow&) {
      ++res.inconclusive;
    }
  }
  return res;
}

Result simulation(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg) {
  Result res;
  res.name = "simulation";
  gen::Rng rng(seed);
  for (std::uint32_t i = 0; i < count; ++i) {
    TermPtr t = gen::pure_redex_term(rng);
    std::vector<ppc::Redex> rs = ppc::redexes(t);
    bool bad = false;
    for (std::size_t k = 0; k < rs.size() && k < 3; ++k) {
      NameSession s1 = session_for(t);
      TermPtr expected = ppc::step(t, rs[k], cfg, s1);
      NameSession s2 = session_for(t);
      em::Simulation sim = em::simulate_ppc_step(t, rs[k], cfg, s2);
      ++res.aux;
      std::string why;
      if (!sim.ok) {
        why = "simulation got stuck: " + sim.error;
      } else if (!sim.mu_checkpoint_ok) {
        why = "partial match does not forget to the compound value";
      } else if (!alpha_equiv(sim.final_term, expected)) {
        why = "explicit run ends away from the implicit result";
      } else {
        if (sim.steps.front().tag != em::RuleTag::InitB) why = "run does not start with InitB";
        em::RuleTag last = sim.steps.back().tag;
        if (why.empty() && last != em::RuleTag::ResolveSubst &&
            last != em::RuleTag::ResolveDomMismatch && last != em::RuleTag::ResolveFail)
          why = "run does not end with a resolution step";
        for (std::size_t m = 1; why.empty() && m + 1 < sim.steps.size(); ++m) {
          em::RuleTag tag = sim.steps[m].tag;
          if (tag == em::RuleTag::InitB || !em::is_p_rule(tag) ||
              tag == em::RuleTag::ResolveSubst || tag == em::RuleTag::ResolveDomMismatch ||
              tag == em::RuleTag::ResolveFail)
            why = "inner step is not structural or matching";
        }
      }
      if (!why.empty()) {
        bad = true;
        res.note(why + " on " + brief(t));
      }
    }
    bad ? ++res.failed : ++res.passed;
  }
  return res;
}

Result projection(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg) {
  Result res;
  res.name = "projection";
  gen::Rng rng(seed);
  std::uint32_t produced = 0;
  std::uint64_t guard = 0;
  while (produced < count && ++guard < std::uint64_t(count) * 60) {
    TermPtr t = gen::reachable_term(rng, cfg, 5);
    std::vector<em::Redex> rs = em::redexes(t);
    if (rs.empty()) continue;
    NameSession session = session_for(t);
    TermPtr t2 = em::step(t, rs[pick(rng, static_cast<int>(rs.size()))], cfg, session);

    NameSession sp = session_for(t);
    sp.reserve_at_least(max_tag(t2));
    em::Purified p1 = em::purify(t, cfg, sp);
    em::Purified p2 = em::purify(t2, cfg, sp);
    if (!p1.pure || !p2.pure) continue;
    ++produced;
    ++res.aux;

    if (!em::is_well_formed(t) || !em::is_well_formed(t2)) {
      ++res.failed;
      res.note("reduct of a pure term is not well-formed: " + brief(t));
      continue;
    }
    bool ok = alpha_equiv(p1.term, p2.term);
    if (!ok)
      for (const ppc::Redex& r : ppc::redexes(p1.term)) {
        NameSession s = session_for(p1.term);
        if (alpha_equiv(ppc::step(p1.term, r, cfg, s), p2.term)) {
          ok = true;
          break;
        }
      }
    if (ok) {
      ++res.passed;
    } else {
      ++res.failed;
      res.note("purification moves by more than one implicit step on " + brief(t));
    }
  }
  if (produced < count) res.note("generator exhausted after " + std::to_string(produced) + " instances");
  return res;
}

Result semantics(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg) {
  Result res;
  res.name = "semantics";
  gen::Rng rng(seed);
  for (std::uint32_t i = 0; i < count; ++i) {
    gen::FlatMatching fm = gen::flat_matching(rng);
    TermPtr m0 = matching(var("q"), fm.theta, fm.mu, fm.delta);
    NameSession session = session_for(m0);
    TermPtr m = canonicalize(m0, session);

    bool bad = false;
    for (int step_no = 0; step_no < 6; ++step_no) {
      MatchOutcome before = em::matching_semantics(m->binders, *m->decided(), m->pending);
      // candidate steps: matching rules on this node's pairs, structural
      // steps inside the codomain or the pairs; resolution replaces the
      // object and body steps do not touch it
      std::vector<em::Redex> candidates;
      for (const em::Redex& r : em::redexes(m)) {
        bool struct_or_pair = r.tag == em::RuleTag::StructHat ||
                              r.tag == em::RuleTag::StructBullet || em::is_match_pair_rule(r.tag);
        if (!struct_or_pair) continue;
        if (!r.path.empty() && r.path[0] == 0) continue;
        candidates.push_back(r);
      }
      if (candidates.empty()) break;
      const em::Redex& r = candidates[pick(rng, static_cast<int>(candidates.size()))];
      TermPtr next = em::step(m, r, cfg, session);
      if (next->kind != Kind::Matching) break;  // stepped away (should not happen here)
      MatchOutcome after = em::matching_semantics(next->binders, *next->decided(), next->pending);
      // A decided semantics is invariant. A waiting one can only stay waiting
      // or fail: splitting a nonlinear pair may expose a domain overlap that
      // the wait-absorbing union had hidden.
      bool ok = before.is_wait() ? !after.is_subst() : outcome_equiv(before, after);
      if (!ok) {
        bad = true;
        res.note(std::string("semantics changed across ") + em::rule_name(r.tag) + " on " + brief(m));
        break;
      }
      m = next;
    }
    bad ? ++res.failed : ++res.passed;
  }
  return res;
}

Result determinism(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg) {
  Result res;
  res.name = "determinism";
  gen::Rng rng(seed);
  strat::Strategy md = strat::matching_driven();
  for (std::uint32_t i = 0; i < count; ++i) {
    gen::Config gc;
    gc.size_budget = 8 + pick(rng, 8);
    TermPtr t = gen::term(rng, gc);
    NameSession session = session_for(t);
    bool bad = false;
    for (int s = 0; s < 50; ++s) {
      std::vector<em::Redex> adm = md.admissible(t);
      ++res.aux;
      if (adm.size() > 1) {
        bad = true;
        res.note("more than one admissible redex on " + brief(t));
        break;
      }
      if (adm.empty()) break;
      std::vector<em::Redex> all = em::redexes(t);
      if (std::find(all.begin(), all.end(), adm.front()) == all.end()) {
        bad = true;
        res.note("strategy invented a step on " + brief(t));
        break;
      }
      t = em::step(t, adm.front(), cfg, session, md.placement);
    }
    bad ? ++res.failed : ++res.passed;
  }
  return res;
}

namespace {

TermPtr random_ps_walk(const TermPtr& t, int steps, gen::Rng& rng, const EngineConfig& cfg,
                       NameSession& session) {
  TermPtr cur = t;
  for (int i = 0; i < steps; ++i) {
    std::vector<em::Redex> rs = ps::redexes(cur);
    if (rs.empty()) break;
    cur = ps::step(cur, rs[pick(rng, static_cast<int>(rs.size()))], cfg, session);
  }
  return cur;
}

Join ps_join_search(const TermPtr& a, const TermPtr& b, const EngineConfig& cfg, int max_depth,
                    std::size_t node_cap) {
  NameSession session = session_for(a);
  session.reserve_at_least(max_tag(b));
  auto key = [](const TermPtr& t) { return alpha_key(t, true); };
  if (key(a) == key(b)) return Join::Joined;

  std::set<std::string> seen_a{key(a)}, seen_b{key(b)};
  std::vector<TermPtr> front_a{a}, front_b{b};
  int depth_a = 0, depth_b = 0;
  std::size_t nodes = 0;
  bool capped = false;

  auto expand = [&](std::vector<TermPtr>& front, std::set<std::string>& mine,
                    std::set<std::string>& other, int& depth) -> std::optional<Join> {
    std::vector<TermPtr> next;
    for (const TermPtr& u : front) {
      for (const em::Redex& r : ps::redexes(u)) {
        if (++nodes > node_cap) {
          capped = true;
          front.clear();
          return std::nullopt;
        }
        TermPtr v = ps::step(u, r, cfg, session);
        std::string k = key(v);
        if (other.count(k)) return Join::Joined;
        if (mine.insert(std::move(k)).second) next.push_back(std::move(v));
      }
    }
    front = std::move(next);
    ++depth;
    return std::nullopt;
  };

  for (;;) {
    bool can_a = !front_a.empty() && depth_a < max_depth && !capped;
    bool can_b = !front_b.empty() && depth_b < max_depth && !capped;
    if (!can_a && !can_b) break;
    bool pick_a = can_a && (!can_b || front_a.size() <= front_b.size());
    auto verdict = pick_a ? expand(front_a, seen_a, seen_b, depth_a)
                          : expand(front_b, seen_b, seen_a, depth_b);
    if (verdict) return *verdict;
  }
  if (front_a.empty() && front_b.empty() && !capped) return Join::Separated;
  return Join::Inconclusive;
}

}  // namespace

Result partial_confluence(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg,
                          int diverge_len, int join_depth) {
  Result res;
  res.name = "partial-confluence";
  gen::Rng rng(seed);
  for (std::uint32_t i = 0; i < count; ++i) {
    gen::Config gc;
    gc.size_budget = 8 + pick(rng, 8);
    TermPtr t = ps::translate(gen::term(rng, gc));
    NameSession session = session_for(t);
    TermPtr a = random_ps_walk(t, pick(rng, diverge_len + 1), rng, cfg, session);
    TermPtr b = random_ps_walk(t, pick(rng, diverge_len + 1), rng, cfg, session);
    switch (ps_join_search(a, b, cfg, join_depth, 20000)) {
      case Join::Joined:
        ++res.passed;
        break;
      case Join::Separated:
        ++res.failed;
        res.note("no common reduct in the variant from " + brief(t));
        break;
      case Join::Inconclusive:
        ++res.inconclusive;
        break;
    }
  }
  return res;
}

Result partial_sim(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg) {
  Result res;
  res.name = "partial-simulation";
  gen::Rng rng(seed);
  std::uint32_t produced = 0;
  std::uint64_t guard = 0;
  while (produced < count && ++guard < std::uint64_t(count) * 40) {
    gen::Config gc;
    gc.size_budget = 8 + pick(rng, 6);
    TermPtr t = gen::term(rng, gc);
    std::vector<em::Redex> rs = em::redexes(t);
    if (rs.empty()) continue;
    ++produced;
    NameSession session = session_for(t);
    TermPtr t2 = em::step(t, rs[pick(rng, static_cast<int>(rs.size()))], cfg, session);
    TermPtr x = ps::translate(t);
    TermPtr y = ps::translate(t2);
    ps::SimSearch found = ps::reduces_to(x, y, cfg, 8, 8000);
    res.aux += found.explored;
    if (found.found) {
      ++res.passed;
    } else {
      ++res.failed;
      res.note("translated step not reflected in the variant on " + brief(t));
    }
  }
  return res;
}

// -- Worked partial-substitution example -----------------------------------------------

namespace {

// ([x] ^x z -> (([] x -> b) ^c)) (^c t)
TermPtr partial_example_start() {
  TermPtr inner = app(case_of({}, var("x"), var("b")), matchable("c"));
  TermPtr outer_case = case_of({name("x")}, app(matchable("x"), var("z")), inner);
  return app(outer_case, app(matchable("c"), var("t")));
}

}  // namespace

bool partial_example_trace(const EngineConfig& cfg, std::string* msg) {
  auto fail = [&](const std::string& m) {
    if (msg) *msg = m;
    return false;
  };
  using em::RuleTag;
  TermPtr t = partial_example_start();
  NameSession session = session_for(t);
  auto go = [&](Path path, RuleTag tag) { t = ps::step(t, {std::move(path), tag}, cfg, session); };

  go({0, 1}, RuleTag::InitB);  // the inner application fires first
  TermPtr inner_blocked =
      matching(var("b"), {}, TauMatch::none_used(), {{matchable("c"), var("x")}});
  TermPtr line1 = app(case_of({name("x")}, app(matchable("x"), var("z")), inner_blocked),
                      app(matchable("c"), var("t")));
  if (!alpha_equiv(t, line1)) return fail("after the inner initialisation: " + print(t));

  go({}, RuleTag::InitB);
  TermPtr line2 = matching(inner_blocked, {name("x")}, TauMatch::none_used(),
                           {{app(matchable("c"), var("t")), app(matchable("x"), var("z"))}});
  if (!alpha_equiv(t, line2)) return fail("after the outer initialisation: " + print(t));

  go({1}, RuleTag::StructHat);
  go({2}, RuleTag::StructHat);
  TermPtr line3 = matching(inner_blocked, {name("x")}, TauMatch::none_used(),
                           {{sapp(matchable("c"), var("t")), sapp(matchable("x"), var("z"))}});
  if (!alpha_equiv(t, line3)) return fail("after the structural steps: " + print(t));

  go({1}, RuleTag::MatchDecompose);
  TermPtr line4 = matching(inner_blocked, {name("x")}, TauMatch::none_used(),
                           {{matchable("c"), matchable("x")}, {var("t"), var("z")}});
  if (!alpha_equiv(t, line4)) return fail("after decomposition: " + print(t));

  go({1}, RuleTag::PartialBind);  // substitutes into the body, unlocking the inner matching
  TermPtr inner_unlocked =
      matching(var("b"), {}, TauMatch::none_used(), {{matchable("c"), matchable("c")}});
  TermPtr line5 = matching(inner_unlocked, {name("x")}, TauMatch::of({name("x")}),
                           {{var("t"), var("z")}});
  if (!alpha_equiv(t, line5)) return fail("after the partial binding: " + print(t));

  go({0, 1}, RuleTag::MatchConst);
  go({0}, RuleTag::PartialResolveComplete);
  TermPtr line6 = matching(var("b"), {name("x")}, TauMatch::of({name("x")}), {{var("t"), var("z")}});
  if (!alpha_equiv(t, line6)) return fail("inner matching not solved: " + print(t));

  if (!ps::redexes(t).empty()) return fail("expected the final state to be stuck on (t ~ z)");
  return true;
}

bool partial_reverse_counterexample(const EngineConfig& cfg, std::string* msg) {
  auto fail = [&](const std::string& m) {
    if (msg) *msg = m;
    return false;
  };
  // the state reached by the explicit engine on the same example
  TermPtr inner_blocked =
      matching(var("b"), {}, DecidedMatch::empty_subst(), {{matchable("c"), var("x")}});
  TermPtr s = matching(inner_blocked, {name("x")},
                       DecidedMatch::subst({{name("x"), matchable("c")}}), {{var("t"), var("z")}});
  NameSession session = session_for(s);
  s = canonicalize(s, session);

  if (!em::redexes(s).empty()) return fail("explicit side should be stuck here");

  TermPtr x = ps::translate(s);
  strat::RunResult run = ps::run(x, 16, cfg);
  TermPtr target = matching(var("b"), {name("x")}, TauMatch::of({name("x")}),
                            {{var("t"), var("z")}});
  if (!alpha_equiv(run.final_term, target))
    return fail("variant run did not solve the inner matching: " + print(run.final_term));

  // no explicit reduct translates to the variant's result
  if (alpha_equiv(ps::translate(s), run.final_term))
    return fail("translation already equals the variant result; no counterexample");
  return true;
}

CompareReport compare(const TermPtr& t, std::size_t max_steps, const EngineConfig& cfg) {
  CompareReport rep;
  if (!is_pure(t)) {
    rep.ok = false;
    rep.error = "compare needs a pure term";
    return rep;
  }
  TermPtr cur = t;
  {
    NameSession s0 = session_for(cur);
    cur = canonicalize(cur, s0);
  }
  for (std::size_t n = 0;; ++n) {
    std::vector<ppc::Redex> rs = ppc::redexes(cur);
    if (rs.empty()) break;
    if (n >= max_steps) {
      rep.budget_exhausted = true;
      break;
    }
    NameSession s1 = session_for(cur);
    TermPtr next = ppc::step(cur, rs.front(), cfg, s1);
    NameSession s2 = session_for(cur);
    em::Simulation sim = em::simulate_ppc_step(cur, rs.front(), cfg, s2);

    CompareRow row;
    row.ppc_before = print(cur);
    row.ppc_after = print(next);
    row.em_steps = sim.steps.size();
    row.sim_ok = sim.ok && sim.mu_checkpoint_ok && alpha_equiv(sim.final_term, next);

    // each explicit step along the sequence must project onto 0 or 1 steps
    row.projection_ok = true;
    TermPtr u = cur;
    NameSession s3 = session_for(cur);
    for (const em::Redex& r : sim.steps) {
      TermPtr v = em::step(u, r, cfg, s3);
      NameSession s4 = session_for(u);
      s4.reserve_at_least(max_tag(v));
      em::Purified pu = em::purify(u, cfg, s4);
      em::Purified pv = em::purify(v, cfg, s4);
      if (pu.pure && pv.pure) {
        bool ok = alpha_equiv(pu.term, pv.term);
        if (!ok)
          for (const ppc::Redex& pr : ppc::redexes(pu.term)) {
            NameSession s5 = session_for(pu.term);
            if (alpha_equiv(ppc::step(pu.term, pr, cfg, s5), pv.term)) {
              ok = true;
              break;
            }
          }
        if (!ok) row.projection_ok = false;
      }
      u = v;
    }
    rep.ok = rep.ok && row.sim_ok && row.projection_ok;
    rep.rows.push_back(std::move(row));
    cur = next;
  }
  rep.final_term = print(cur);
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"termination", "confluence", "simulation",
                                                 "semantics",   "determinism", "partial"};
  return names;
}

std::optional<std::vector<Result>> run_suite(const std::string& name, std::uint64_t seed,
                                             std::uint32_t count, const EngineConfig& cfg) {
  if (name == "termination") return std::vector<Result>{termination(seed, count, cfg)};
  if (name == "confluence")
    return std::vector<Result>{confluence(seed, count, cfg),
                               diamond(seed + 1, std::max<std::uint32_t>(1, count / 4), cfg)};
  if (name == "simulation")
    return std::vector<Result>{simulation(seed, count, cfg), projection(seed + 1, count, cfg)};
  if (name == "semantics") return std::vector<Result>{semantics(seed, count, cfg)};
  if (name == "determinism") return std::vector<Result>{determinism(seed, count, cfg)};
  if (name == "partial") {
    std::vector<Result> out{partial_sim(seed, count, cfg),
                            partial_confluence(seed + 2, std::max<std::uint32_t>(1, count / 2), cfg)};
    Result fixed;
    fixed.name = "partial-worked-example";
    std::string msg;
    if (partial_example_trace(cfg, &msg)) ++fixed.passed;
    else {
      ++fixed.failed;
      fixed.note(msg);
    }
    if (partial_reverse_counterexample(cfg, &msg)) ++fixed.passed;
    else {
      ++fixed.failed;
      fixed.note(msg);
    }
    out.push_back(std::move(fixed));
    return out;
  }
  return std::nullopt;
}

}  // namespace ppcem::suites
