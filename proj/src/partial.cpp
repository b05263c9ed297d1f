#include "partial.hpp"

#include <algorithm>
#include <deque>

namespace ppcem::ps {

namespace {

bool in_theta(const NameList& theta, const Name& n) {
  return std::find(theta.begin(), theta.end(), n) != theta.end();
}

std::set<Name> name_set(const NameList& l) { return {l.begin(), l.end()}; }

bool names_intersect(const std::set<Name>& s, const NameList& l) {
  for (const Name& n : l)
    if (s.count(n)) return true;
  return false;
}

const TauMatch& tau_or_throw(const TermPtr& m, const char* who) {
  const TauMatch* tau = m->tau();
  if (!tau)
    throw std::invalid_argument(std::string(who) +
                                ": matching carries a substitution state; translate it first");
  return *tau;
}

std::optional<em::RuleTag> ps_pair_rule(const NameList& theta, const TauMatch& tau, const TermPtr& a,
                                        const TermPtr& p) {
  using em::RuleTag;
  if (p->kind == Kind::Matchable) {
    if (in_theta(theta, p->name)) {
      if (names_intersect(free_names(a), theta)) return std::nullopt;
      if (!tau.failed && tau.contains(p->name)) return RuleTag::PartialBindReuse;
      if (!tau.failed) return RuleTag::PartialBind;
      return std::nullopt;  // no binding into a failed matching
    }
    switch (a->kind) {
      case Kind::Matchable:
        return a->name == p->name ? RuleTag::MatchConst : RuleTag::FailConstMismatch;
      case Kind::SApp:
        return RuleTag::FailSAppVsConst;
      case Kind::Case:
        return RuleTag::FailCaseVsConst;
      default:
        return std::nullopt;
    }
  }
  if (p->kind == Kind::SApp) {
    switch (a->kind) {
      case Kind::SApp:
        return RuleTag::MatchDecompose;
      case Kind::Matchable:
        return RuleTag::FailConstVsSApp;
      case Kind::Case:
        return RuleTag::FailCaseVsSApp;
      default:
        return std::nullopt;
    }
  }
  if (p->kind == Kind::Case) {
    if (em::is_em_matchable_form(a)) return em::RuleTag::FailCasePattern;
    return std::nullopt;
  }
  return std::nullopt;
}

Delta erase_pair(const Delta& d, int k) {
  Delta out = d;
  out.erase(out.begin() + k);
  return out;
}

}  // namespace

TermPtr translate(const TermPtr& t, NameSession& session) {
  switch (t->kind) {
    case Kind::Var:
    case Kind::Matchable:
      return t;
    case Kind::App:
      return app(translate(t->first, session), translate(t->second, session));
    case Kind::SApp:
      return sapp(translate(t->first, session), translate(t->second, session));
    case Kind::Case:
      return case_of(t->binders, translate(t->first, session), translate(t->second, session));
    case Kind::Matching: {
      Delta pend;
      pend.reserve(t->pending.size());
      for (const MatchPair& p : t->pending)
        pend.emplace_back(translate(p.first, session), translate(p.second, session));
      if (const TauMatch* tau = t->tau())
        return matching(translate(t->first, session), t->binders, *tau, std::move(pend));
      const DecidedMatch& d = *t->decided();
      if (d.failed)
        return matching(translate(t->first, session), t->binders, TauMatch::fail(), std::move(pend));
      Subst sigma;
      NameList used;
      for (const auto& [n, u] : d.bindings) {
        sigma.emplace(n, translate(u, session));
        used.push_back(n);
      }
      TermPtr body = substitute(translate(t->first, session), sigma, session);
      return matching(std::move(body), t->binders, TauMatch::of(std::move(used)), std::move(pend));
    }
  }
  return t;
}

TermPtr translate(const TermPtr& t) {
  NameSession session = session_for(t);
  return canonicalize(translate(t, session), session);
}

std::vector<em::Redex> redexes(const TermPtr& t) {
  using em::RuleTag;
  std::vector<em::Redex> out;
  walk(t, [&](const Path& path, const TermPtr& u) {
    switch (u->kind) {
      case Kind::App:
        if (u->first->kind == Kind::Case) out.push_back({path, RuleTag::InitB});
        else if (u->first->kind == Kind::Matchable) out.push_back({path, RuleTag::StructHat});
        else if (u->first->kind == Kind::SApp) out.push_back({path, RuleTag::StructBullet});
        break;
      case Kind::Matching: {
        const TauMatch& tau = tau_or_throw(u, "redexes");
        if (tau.failed) {
          out.push_back({path, RuleTag::PartialResolveFail});
        } else if (u->pending.empty()) {
          out.push_back({path, name_set(tau.used) == name_set(u->binders)
                                   ? RuleTag::PartialResolveComplete
                                   : RuleTag::PartialResolveIncomplete});
        }
        for (int k = 0; k < static_cast<int>(u->pending.size()); ++k)
          if (auto tag = ps_pair_rule(u->binders, tau, u->pending[k].first, u->pending[k].second)) {
            Path p = path;
            p.push_back(1 + 2 * k);  // no substitution children in this variant
            out.push_back({std::move(p), *tag});
          }
        break;
      }
      default:
        break;
    }
  });
  return out;
}

TermPtr step(const TermPtr& t, const em::Redex& r, const EngineConfig& cfg, NameSession& session,
             em::DecomposePlacement placement) {
  using em::RuleTag;
  auto bad = [&](const char* why) {
    return std::invalid_argument(std::string("step: invalid redex (") + em::rule_name(r.tag) +
                                 "): " + why);
  };

  TermPtr result;
  switch (r.tag) {
    case RuleTag::InitB: {
      TermPtr u = subterm_at(t, r.path);
      if (u->kind != Kind::App || u->first->kind != Kind::Case) throw bad("no case application here");
      const TermPtr& fun = u->first;
      result = replace_at(t, r.path,
                          matching(fun->second, fun->binders, TauMatch::none_used(),
                                   {{u->second, fun->first}}));
      break;
    }
    case RuleTag::StructHat:
    case RuleTag::StructBullet: {
      TermPtr u = subterm_at(t, r.path);
      bool ok = u->kind == Kind::App && (r.tag == RuleTag::StructHat
                                             ? u->first->kind == Kind::Matchable
                                             : u->first->kind == Kind::SApp);
      if (!ok) throw bad("head has the wrong shape");
      result = replace_at(t, r.path, sapp(u->first, u->second));
      break;
    }
    case RuleTag::PartialResolveComplete:
    case RuleTag::PartialResolveIncomplete:
    case RuleTag::PartialResolveFail: {
      TermPtr m = subterm_at(t, r.path);
      if (m->kind != Kind::Matching) throw bad("not a matching");
      const TauMatch& tau = tau_or_throw(m, "step");
      if (r.tag == RuleTag::PartialResolveFail) {
        if (!tau.failed) throw bad("match state is not a failure");
        result = replace_at(t, r.path, cfg.bot);
      } else {
        if (tau.failed || !m->pending.empty()) throw bad("matching is not ready to resolve");
        bool complete = name_set(tau.used) == name_set(m->binders);
        if (r.tag == RuleTag::PartialResolveComplete) {
          if (!complete) throw bad("used list differs from the binder list");
          result = replace_at(t, r.path, m->first);
        } else {
          if (complete) throw bad("used list equals the binder list");
          result = replace_at(t, r.path, cfg.bot);
        }
      }
      break;
    }
    default: {
      if (!em::is_match_pair_rule(r.tag)) throw bad("unknown rule");
      if (r.path.empty()) throw bad("matching-rule redex with empty path");
      Path mpath(r.path.begin(), r.path.end() - 1);
      TermPtr m = subterm_at(t, mpath);
      if (m->kind != Kind::Matching) throw bad("path does not address a matching");
      const TauMatch& tau = tau_or_throw(m, "step");
      int off = r.path.back() - 1;
      if (off < 0 || off % 2 != 0 || off / 2 >= static_cast<int>(m->pending.size()))
        throw bad("path does not address a pending pair");
      int k = off / 2;
      const auto& [a, p] = m->pending[k];
      auto expect = ps_pair_rule(m->binders, tau, a, p);
      if (!expect || *expect != r.tag) throw bad("rule does not apply to this pair");

      MatchState st = m->state;
      TermPtr body = m->first;
      Delta pend;
      switch (r.tag) {
        case RuleTag::PartialBind: {
          body = substitute(body, Subst{{p->name, a}}, session);
          NameList used = tau.used;
          used.push_back(p->name);
          st = TauMatch::of(std::move(used));
          pend = erase_pair(m->pending, k);
          break;
        }
        case RuleTag::PartialBindReuse:
          st = TauMatch::fail();
          pend = erase_pair(m->pending, k);
          break;
        case RuleTag::MatchConst:
          pend = erase_pair(m->pending, k);
          break;
        case RuleTag::MatchDecompose: {
          pend = erase_pair(m->pending, k);
          MatchPair left{a->first, p->first}, right{a->second, p->second};
          if (placement == em::DecomposePlacement::Front) {
            pend.insert(pend.begin() + k, right);
            pend.insert(pend.begin() + k, left);
          } else {
            pend.push_back(std::move(left));
            pend.push_back(std::move(right));
          }
          break;
        }
        default:  // the six failure rules
          st = TauMatch::fail();
          pend = erase_pair(m->pending, k);
          break;
      }
      result = replace_at(t, mpath, matching(std::move(body), m->binders, std::move(st), std::move(pend)));
      break;
    }
  }
  return canonicalize(result, session);
}

strat::RunResult run(const TermPtr& t, std::size_t max_steps, const EngineConfig& cfg) {
  strat::RunResult res;
  NameSession session = session_for(t);
  TermPtr cur = t;
  for (std::size_t n = 0; n < max_steps; ++n) {
    std::vector<em::Redex> rs = redexes(cur);
    if (rs.empty()) {
      res.final_term = cur;
      res.verdict = strat::Verdict::NormalForm;
      return res;
    }
    cur = ps::step(cur, rs.front(), cfg, session);
    res.trace.push_back({rs.front(), cur});
  }
  res.final_term = cur;
  res.verdict = redexes(cur).empty() ? strat::Verdict::NormalForm : strat::Verdict::BudgetExhausted;
  return res;
}

std::vector<em::StuckPair> stuck_matchings(const TermPtr& t) {
  std::vector<em::StuckPair> out;
  walk(t, [&](const Path& path, const TermPtr& u) {
    if (u->kind != Kind::Matching) return;
    const TauMatch* tau = u->tau();
    if (!tau || tau->failed) return;
    if (u->pending.empty()) return;
    for (int k = 0; k < static_cast<int>(u->pending.size()); ++k) {
      const auto& [a, p] = u->pending[k];
      if (ps_pair_rule(u->binders, *tau, a, p)) continue;
      std::string reason;
      if (p->kind == Kind::Matchable && in_theta(u->binders, p->name) &&
          names_intersect(free_names(a), u->binders))
        reason = "argument would capture matching variables";
      else if (!em::is_em_matchable_form(p))
        reason = "pattern is not a matchable form";
      else
        reason = "argument is not a matchable form";
      out.push_back({path, k, std::move(reason)});
    }
  });
  return out;
}

TermPtr collapse_failures(const TermPtr& t, const EngineConfig& cfg, NameSession& session) {
  std::function<TermPtr(const TermPtr&)> rec = [&](const TermPtr& u) -> TermPtr {
    switch (u->kind) {
      case Kind::Var:
      case Kind::Matchable:
        return u;
      case Kind::App:
        return app(rec(u->first), rec(u->second));
      case Kind::SApp:
        return sapp(rec(u->first), rec(u->second));
      case Kind::Case:
        return case_of(u->binders, rec(u->first), rec(u->second));
      case Kind::Matching: {
        bool failed = (u->decided() && u->decided()->failed) || (u->tau() && u->tau()->failed);
        if (failed) return cfg.bot;
        MatchState st = u->state;
        if (DecidedMatch* d = std::get_if<DecidedMatch>(&st); d && d->is_subst())
          for (auto& [n, v] : d->bindings) v = rec(v);
        Delta pend;
        pend.reserve(u->pending.size());
        for (const MatchPair& p : u->pending) pend.emplace_back(rec(p.first), rec(p.second));
        return matching(rec(u->first), u->binders, std::move(st), std::move(pend));
      }
    }
    return u;
  };
  return canonicalize(rec(t), session);
}

SimSearch reduces_to(const TermPtr& source, const TermPtr& target, const EngineConfig& cfg,
                     int max_depth, std::size_t node_cap) {
  NameSession session = session_for(source);
  session.reserve_at_least(max_tag(target));

  auto key_of = [&](const TermPtr& u) {
    return alpha_key(collapse_failures(u, cfg, session), true);
  };
  const std::string goal = key_of(target);

  SimSearch res;
  std::set<std::string> visited;
  std::deque<std::pair<TermPtr, int>> queue;
  queue.emplace_back(source, 0);
  visited.insert(alpha_key(source, true));
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    ++res.explored;
    if (key_of(cur) == goal) {
      res.found = true;
      return res;
    }
    if (depth >= max_depth || res.explored > node_cap) continue;
    for (const em::Redex& r : redexes(cur)) {
      TermPtr next = ps::step(cur, r, cfg, session);
      if (visited.insert(alpha_key(next, true)).second) queue.emplace_back(next, depth + 1);
    }
  }
  return res;
}

}  // namespace ppcem::ps
