#include "em.hpp"

#include <algorithm>
#include <map>

namespace ppcem::em {

namespace {

bool in_theta(const NameList& theta, const Name& n) {
  return std::find(theta.begin(), theta.end(), n) != theta.end();
}

std::set<Name> theta_set(const NameList& theta) { return {theta.begin(), theta.end()}; }

int mu_n(const Term& m) {
  if (const DecidedMatch* d = m.decided(); d && d->is_subst()) return static_cast<int>(d->bindings.size());
  return 0;
}

bool names_intersect(const std::set<Name>& s, const NameList& l) {
  for (const Name& n : l)
    if (s.count(n)) return true;
  return false;
}

const DecidedMatch& decided_or_throw(const TermPtr& m, const char* who) {
  const DecidedMatch* d = m->decided();
  if (!d) throw std::invalid_argument(std::string(who) + ": matching carries a used-variable state");
  return *d;
}

}  // namespace

const char* rule_name(RuleTag tag) {
  switch (tag) {
    case RuleTag::InitB: return "InitB";
    case RuleTag::StructHat: return "StructHat";
    case RuleTag::StructBullet: return "StructBullet";
    case RuleTag::MatchBind: return "MatchBind";
    case RuleTag::MatchConst: return "MatchConst";
    case RuleTag::MatchDecompose: return "MatchDecompose";
    case RuleTag::FailConstMismatch: return "FailConstMismatch";
    case RuleTag::FailSAppVsConst: return "FailSAppVsConst";
    case RuleTag::FailCaseVsConst: return "FailCaseVsConst";
    case RuleTag::FailConstVsSApp: return "FailConstVsSApp";
    case RuleTag::FailCaseVsSApp: return "FailCaseVsSApp";
    case RuleTag::FailCasePattern: return "FailCasePattern";
    case RuleTag::ResolveSubst: return "ResolveSubst";
    case RuleTag::ResolveDomMismatch: return "ResolveDomMismatch";
    case RuleTag::ResolveFail: return "ResolveFail";
    case RuleTag::PartialBind: return "PartialBind";
    case RuleTag::PartialBindReuse: return "PartialBindReuse";
    case RuleTag::PartialResolveComplete: return "PartialResolveComplete";
    case RuleTag::PartialResolveIncomplete: return "PartialResolveIncomplete";
    case RuleTag::PartialResolveFail: return "PartialResolveFail";
  }
  return "?";
}

std::optional<RuleTag> rule_from_name(const std::string& s) {
  static const RuleTag all[] = {
      RuleTag::InitB,          RuleTag::StructHat,         RuleTag::StructBullet,
      RuleTag::MatchBind,      RuleTag::MatchConst,        RuleTag::MatchDecompose,
      RuleTag::FailConstMismatch, RuleTag::FailSAppVsConst, RuleTag::FailCaseVsConst,
      RuleTag::FailConstVsSApp, RuleTag::FailCaseVsSApp,   RuleTag::FailCasePattern,
      RuleTag::ResolveSubst,   RuleTag::ResolveDomMismatch, RuleTag::ResolveFail,
      RuleTag::PartialBind,    RuleTag::PartialBindReuse,  RuleTag::PartialResolveComplete,
      RuleTag::PartialResolveIncomplete, RuleTag::PartialResolveFail};
  for (RuleTag t : all)
    if (s == rule_name(t)) return t;
  return std::nullopt;
}

bool is_match_pair_rule(RuleTag tag) {
  switch (tag) {
    case RuleTag::MatchBind:
    case RuleTag::MatchConst:
    case RuleTag::MatchDecompose:
    case RuleTag::FailConstMismatch:
    case RuleTag::FailSAppVsConst:
    case RuleTag::FailCaseVsConst:
    case RuleTag::FailConstVsSApp:
    case RuleTag::FailCaseVsSApp:
    case RuleTag::FailCasePattern:
    case RuleTag::PartialBind:
    case RuleTag::PartialBindReuse:
      return true;
    default:
      return false;
  }
}

bool is_p_rule(RuleTag tag) {
  return tag != RuleTag::InitB;
}

bool is_em_data_structure(const TermPtr& t) {
  return t->kind == Kind::Matchable || t->kind == Kind::SApp;
}

bool is_em_matchable_form(const TermPtr& t) {
  return is_em_data_structure(t) || t->kind == Kind::Case;
}

TermPtr forget(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var:
    case Kind::Matchable:
      return t;
    case Kind::App: {
      TermPtr f = forget(t->first), a = forget(t->second);
      return f == t->first && a == t->second ? t : app(std::move(f), std::move(a));
    }
    case Kind::SApp:
      return app(forget(t->first), forget(t->second));
    case Kind::Case: {
      TermPtr p = forget(t->first), b = forget(t->second);
      return p == t->first && b == t->second ? t : case_of(t->binders, std::move(p), std::move(b));
    }
    case Kind::Matching: {
      TermPtr body = forget(t->first);
      MatchState st = t->state;
      if (DecidedMatch* d = std::get_if<DecidedMatch>(&st); d && d->is_subst())
        for (auto& [n, u] : d->bindings) u = forget(u);
      Delta pend;
      pend.reserve(t->pending.size());
      for (const MatchPair& p : t->pending) pend.emplace_back(forget(p.first), forget(p.second));
      return matching(std::move(body), t->binders, std::move(st), std::move(pend));
    }
  }
  return t;
}

bool is_well_formed(const TermPtr& t) {
  bool ok = true;
  walk(t, [&](const Path&, const TermPtr& u) {
    if (u->kind == Kind::SApp && u->first->kind != Kind::Matchable && u->first->kind != Kind::SApp)
      ok = false;
  });
  return ok;
}

namespace {

// Which rule, if any, consumes the pending pair (a, p) under binders theta.
std::optional<RuleTag> pair_rule_for(const NameList& theta, const TermPtr& a, const TermPtr& p) {
  if (p->kind == Kind::Matchable) {
    if (in_theta(theta, p->name)) {
      if (!names_intersect(free_names(a), theta)) return RuleTag::MatchBind;
      return std::nullopt;  // binding would capture matching variables
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
    if (is_em_matchable_form(a)) return RuleTag::FailCasePattern;
    return std::nullopt;
  }
  return std::nullopt;
}

Redex pair_redex(const Path& mpath, const Term& m, int k, RuleTag tag) {
  Path p = mpath;
  p.push_back(1 + mu_n(m) + 2 * k);
  return {std::move(p), tag};
}

struct DecodedPair {
  Path mpath;
  int k;
};

DecodedPair decode_pair(const TermPtr& t, const Redex& r) {
  if (r.path.empty()) throw std::invalid_argument("matching-rule redex with empty path");
  Path mpath(r.path.begin(), r.path.end() - 1);
  TermPtr m = subterm_at(t, mpath);
  if (m->kind != Kind::Matching) throw std::invalid_argument("redex path does not address a matching");
  int idx = r.path.back();
  int base = 1 + mu_n(*m);
  int off = idx - base;
  if (off < 0 || off % 2 != 0 || off / 2 >= static_cast<int>(m->pending.size()))
    throw std::invalid_argument("redex path does not address a pending pair");
  return {std::move(mpath), off / 2};
}

Delta erase_pair(const Delta& d, int k) {
  Delta out = d;
  out.erase(out.begin() + k);
  return out;
}

}  // namespace

std::optional<RuleTag> pair_rule(const NameList& theta, const TermPtr& a, const TermPtr& p) {
  return pair_rule_for(theta, a, p);
}

Redex make_pair_redex(const Path& mpath, const TermPtr& matching_node, int k, RuleTag tag) {
  if (matching_node->kind != Kind::Matching)
    throw std::invalid_argument("make_pair_redex: not a matching");
  return pair_redex(mpath, *matching_node, k, tag);
}

int pair_index_of(const TermPtr& t, const Redex& r) {
  if (!is_match_pair_rule(r.tag)) return -1;
  return decode_pair(t, r).k;
}

std::vector<Redex> redexes(const TermPtr& t) {
  std::vector<Redex> out;
  walk(t, [&](const Path& path, const TermPtr& u) {
    switch (u->kind) {
      case Kind::App:
        if (u->first->kind == Kind::Case) out.push_back({path, RuleTag::InitB});
        else if (u->first->kind == Kind::Matchable) out.push_back({path, RuleTag::StructHat});
        else if (u->first->kind == Kind::SApp) out.push_back({path, RuleTag::StructBullet});
        break;
      case Kind::Matching: {
        const DecidedMatch& d = decided_or_throw(u, "redexes");
        if (d.failed) {
          out.push_back({path, RuleTag::ResolveFail});
        } else if (u->pending.empty()) {
          out.push_back({path, d.domain() == theta_set(u->binders) ? RuleTag::ResolveSubst
                                                                   : RuleTag::ResolveDomMismatch});
        }
        for (int k = 0; k < static_cast<int>(u->pending.size()); ++k)
          if (auto tag = pair_rule_for(u->binders, u->pending[k].first, u->pending[k].second))
            out.push_back(pair_redex(path, *u, k, *tag));
        break;
      }
      default:
        break;
    }
  });
  return out;
}

TermPtr step(const TermPtr& t, const Redex& r, const EngineConfig& cfg, NameSession& session,
             DecomposePlacement placement) {
  auto bad = [&](const char* why) {
    return std::invalid_argument(std::string("step: invalid redex (") + rule_name(r.tag) + "): " + why);
  };

  TermPtr result;
  switch (r.tag) {
    case RuleTag::InitB: {
      TermPtr u = subterm_at(t, r.path);
      if (u->kind != Kind::App || u->first->kind != Kind::Case) throw bad("no case application here");
      const TermPtr& fun = u->first;
      TermPtr m = matching(fun->second, fun->binders, DecidedMatch::empty_subst(),
                           {{u->second, fun->first}});
      result = replace_at(t, r.path, m);
      break;
    }
    case RuleTag::StructHat: {
      TermPtr u = subterm_at(t, r.path);
      if (u->kind != Kind::App || u->first->kind != Kind::Matchable) throw bad("head is not a matchable");
      result = replace_at(t, r.path, sapp(u->first, u->second));
      break;
    }
    case RuleTag::StructBullet: {
      TermPtr u = subterm_at(t, r.path);
      if (u->kind != Kind::App || u->first->kind != Kind::SApp)
        throw bad("head is not a structural application");
      result = replace_at(t, r.path, sapp(u->first, u->second));
      break;
    }
    case RuleTag::ResolveSubst:
    case RuleTag::ResolveDomMismatch:
    case RuleTag::ResolveFail: {
      TermPtr m = subterm_at(t, r.path);
      if (m->kind != Kind::Matching) throw bad("not a matching");
      const DecidedMatch& d = decided_or_throw(m, "step");
      if (r.tag == RuleTag::ResolveFail) {
        if (!d.failed) throw bad("match state is not a failure");
        result = replace_at(t, r.path, cfg.bot);
      } else {
        if (d.failed || !m->pending.empty()) throw bad("matching is not ready to resolve");
        bool match = d.domain() == theta_set(m->binders);
        if (r.tag == RuleTag::ResolveSubst) {
          if (!match) throw bad("domain differs from the binder list");
          result = replace_at(t, r.path, substitute(m->first, d.bindings, session));
        } else {
          if (match) throw bad("domain equals the binder list");
          result = replace_at(t, r.path, cfg.bot);
        }
      }
      break;
    }
    default: {
      if (!is_match_pair_rule(r.tag)) throw bad("unknown rule");
      auto [mpath, k] = decode_pair(t, r);
      TermPtr m = subterm_at(t, mpath);
      const DecidedMatch& d = decided_or_throw(m, "step");
      const auto& [a, p] = m->pending[k];
      auto expect = pair_rule_for(m->binders, a, p);
      if (!expect || *expect != r.tag) throw bad("rule does not apply to this pair");

      MatchState st = m->state;
      Delta pend;
      switch (r.tag) {
        case RuleTag::MatchBind:
          st = disjoint_union(d, DecidedMatch::subst({{p->name, a}}));
          pend = erase_pair(m->pending, k);
          break;
        case RuleTag::MatchConst:
          pend = erase_pair(m->pending, k);
          break;
        case RuleTag::MatchDecompose: {
          pend = erase_pair(m->pending, k);
          MatchPair left{a->first, p->first}, right{a->second, p->second};
          if (placement == DecomposePlacement::Front) {
            pend.insert(pend.begin() + k, right);
            pend.insert(pend.begin() + k, left);
          } else {
            pend.push_back(std::move(left));
            pend.push_back(std::move(right));
          }
          break;
        }
        default:  // the six failure rules
          st = DecidedMatch::fail();
          pend = erase_pair(m->pending, k);
          break;
      }
      result = replace_at(t, mpath, matching(m->first, m->binders, std::move(st), std::move(pend)));
      break;
    }
  }
  return canonicalize(result, session);
}

TermPtr normalize_p(const TermPtr& t, const EngineConfig& cfg, NameSession& session,
                    const StepObserver& observer) {
  constexpr std::size_t kCap = 2'000'000;
  TermPtr cur = t;
  for (std::size_t n = 0; n < kCap; ++n) {
    std::vector<Redex> rs = redexes(cur);
    const Redex* pick = nullptr;
    for (const Redex& r : rs)
      if (is_p_rule(r.tag)) {
        pick = &r;
        break;
      }
    if (!pick) return cur;
    TermPtr next = step(cur, *pick, cfg, session);
    if (observer) observer({cur, *pick, next});
    cur = next;
  }
  throw std::logic_error("normalize_p: step cap exceeded");
}

Purified purify(const TermPtr& t, const EngineConfig& cfg, NameSession& session) {
  TermPtr nf = normalize_p(t, cfg, session);
  TermPtr f = forget(nf);
  return {f, !has_matching_node(f)};
}

MatchOutcome matching_semantics(const NameList& theta, const DecidedMatch& mu, const Delta& delta) {
  if (mu.is_subst())
    for (const auto& [n, u] : mu.bindings)
      if (has_matching_node(u))
        throw std::invalid_argument("matching_semantics: match codomain contains a matching");
  for (const MatchPair& p : delta)
    if (has_matching_node(p.first) || has_matching_node(p.second))
      throw std::invalid_argument("matching_semantics: pending pair contains a matching");

  // The union over all components has to be taken as a whole: a failure or a
  // domain overlap between any two substitutions fails the matching even when
  // some other component still waits.
  std::vector<MatchOutcome> parts;
  if (mu.failed) {
    parts.push_back(MatchOutcome::fail());
  } else {
    Subst forgotten;
    for (const auto& [n, u] : mu.bindings) forgotten.emplace(n, forget(u));
    parts.push_back(MatchOutcome::subst(std::move(forgotten)));
  }
  for (const MatchPair& p : delta)
    parts.push_back(ppc::compound_match(forget(p.first), forget(p.second), theta));

  bool waiting = false;
  Subst merged;
  for (const MatchOutcome& part : parts) {
    if (part.is_fail()) return MatchOutcome::fail();
    if (part.is_wait()) {
      waiting = true;
      continue;
    }
    for (const auto& [n, u] : part.bindings) {
      if (merged.count(n)) return MatchOutcome::fail();
      merged.emplace(n, u);
    }
  }
  if (waiting) return MatchOutcome::wait();
  return MatchOutcome::subst(std::move(merged));
}

// -- Parallel reduction -------------------------------------------------------------

namespace {

struct PEnum {
  NameSession session;
  const EngineConfig& cfg;
  std::size_t generated = 0;
  std::size_t cap;
  std::map<const Term*, std::vector<TermPtr>> memo;
};

using Choices = std::vector<const std::vector<TermPtr>*>;

void for_each_combo(const Choices& choices, const std::function<void(const std::vector<TermPtr>&)>& fn) {
  std::vector<std::size_t> idx(choices.size(), 0);
  std::vector<TermPtr> picked(choices.size());
  for (;;) {
    for (std::size_t i = 0; i < choices.size(); ++i) picked[i] = (*choices[i])[idx[i]];
    fn(picked);
    std::size_t i = 0;
    for (; i < choices.size(); ++i) {
      if (++idx[i] < choices[i]->size()) break;
      idx[i] = 0;
    }
    if (i == choices.size()) break;
  }
}

std::vector<TermPtr> preduce(PEnum& ctx, const TermPtr& t) {
  if (auto it = ctx.memo.find(t.get()); it != ctx.memo.end()) return it->second;

  std::vector<TermPtr> out;
  std::set<std::string> seen;
  auto add = [&](TermPtr u) {
    std::string k = alpha_key(u);
    if (seen.insert(std::move(k)).second) {
      out.push_back(std::move(u));
      if (++ctx.generated > ctx.cap)
        throw ParallelOverflow("parallel reduct enumeration exceeded its budget");
    }
  };

  switch (t->kind) {
    case Kind::Var:
    case Kind::Matchable:
      add(t);
      break;
    case Kind::SApp: {
      auto rh = preduce(ctx, t->first);
      auto ra = preduce(ctx, t->second);
      for_each_combo({&rh, &ra}, [&](const std::vector<TermPtr>& c) { add(sapp(c[0], c[1])); });
      break;
    }
    case Kind::Case: {
      auto rp = preduce(ctx, t->first);
      auto rb = preduce(ctx, t->second);
      for_each_combo({&rp, &rb},
                     [&](const std::vector<TermPtr>& c) { add(case_of(t->binders, c[0], c[1])); });
      break;
    }
    case Kind::App: {
      auto rf = preduce(ctx, t->first);
      auto ra = preduce(ctx, t->second);
      for_each_combo({&rf, &ra}, [&](const std::vector<TermPtr>& c) { add(app(c[0], c[1])); });
      if (t->first->kind == Kind::Case) {
        auto rp = preduce(ctx, t->first->first);
        auto rb = preduce(ctx, t->first->second);
        for_each_combo({&rp, &rb, &ra}, [&](const std::vector<TermPtr>& c) {
          add(matching(c[1], t->first->binders, DecidedMatch::empty_subst(), {{c[2], c[0]}}));
        });
      } else if (t->first->kind == Kind::Matchable) {
        for (const TermPtr& a : ra) add(sapp(t->first, a));
      } else if (t->first->kind == Kind::SApp) {
        auto r1 = preduce(ctx, t->first->first);
        auto r2 = preduce(ctx, t->first->second);
        for_each_combo({&r1, &r2, &ra},
                       [&](const std::vector<TermPtr>& c) { add(sapp(sapp(c[0], c[1]), c[2])); });
      }
      break;
    }
    case Kind::Matching: {
      const DecidedMatch& d = decided_or_throw(t, "parallel_reducts");
      auto rb = preduce(ctx, t->first);

      std::vector<Name> dom;
      std::vector<std::vector<TermPtr>> rcod;
      if (d.is_subst())
        for (const auto& [n, u] : d.bindings) {
          dom.push_back(n);
          rcod.push_back(preduce(ctx, u));
        }
      std::vector<std::vector<TermPtr>> rarg, rpat;
      for (const MatchPair& p : t->pending) {
        rarg.push_back(preduce(ctx, p.first));
        rpat.push_back(preduce(ctx, p.second));
      }

      // component choices shared by every rule: body, codomains, pairs
      Choices base;
      base.push_back(&rb);
      for (auto& r : rcod) base.push_back(&r);
      for (std::size_t k = 0; k < t->pending.size(); ++k) {
        base.push_back(&rarg[k]);
        base.push_back(&rpat[k]);
      }
      auto mu_of = [&](const std::vector<TermPtr>& c) {
        if (!d.is_subst()) return DecidedMatch::fail();
        Subst b;
        for (std::size_t i = 0; i < dom.size(); ++i) b.emplace(dom[i], c[1 + i]);
        return DecidedMatch::subst(std::move(b));
      };
      auto delta_of = [&](const std::vector<TermPtr>& c) {
        Delta out;
        for (std::size_t k = 0; k < t->pending.size(); ++k)
          out.emplace_back(c[1 + dom.size() + 2 * k], c[1 + dom.size() + 2 * k + 1]);
        return out;
      };

      // congruence
      for_each_combo(base, [&](const std::vector<TermPtr>& c) {
        add(matching(c[0], t->binders, mu_of(c), delta_of(c)));
      });

      // resolution
      if (!d.is_subst()) {
        add(ctx.cfg.bot);
      } else if (t->pending.empty()) {
        if (d.domain() == theta_set(t->binders)) {
          for_each_combo(base, [&](const std::vector<TermPtr>& c) {
            add(substitute(c[0], mu_of(c).bindings, ctx.session));
          });
        } else {
          add(ctx.cfg.bot);
        }
      }

      // matching rules, one pending pair consumed
      for (std::size_t k = 0; k < t->pending.size(); ++k) {
        const auto& [a, p] = t->pending[k];
        auto tag = pair_rule_for(t->binders, a, p);
        if (!tag) continue;
        auto rest_delta = [&](const std::vector<TermPtr>& c) {
          Delta out = delta_of(c);
          out.erase(out.begin() + static_cast<int>(k));
          return out;
        };
        switch (*tag) {
          case RuleTag::MatchBind:
            for_each_combo(base, [&](const std::vector<TermPtr>& c) {
              TermPtr a2 = c[1 + dom.size() + 2 * k];
              DecidedMatch mu2 = disjoint_union(mu_of(c), DecidedMatch::subst({{p->name, a2}}));
              add(matching(c[0], t->binders, std::move(mu2), rest_delta(c)));
            });
            break;
          case RuleTag::MatchConst:
            for_each_combo(base, [&](const std::vector<TermPtr>& c) {
              add(matching(c[0], t->binders, mu_of(c), rest_delta(c)));
            });
            break;
          case RuleTag::MatchDecompose: {
            auto ra1 = preduce(ctx, a->first);
            auto ra2 = preduce(ctx, a->second);
            auto rp1 = preduce(ctx, p->first);
            auto rp2 = preduce(ctx, p->second);
            Choices ext = base;
            ext.push_back(&ra1);
            ext.push_back(&ra2);
            ext.push_back(&rp1);
            ext.push_back(&rp2);
            for_each_combo(ext, [&](const std::vector<TermPtr>& c) {
              std::size_t b0 = base.size();
              Delta out = rest_delta(c);
              out.insert(out.begin() + static_cast<int>(k), {c[b0 + 1], c[b0 + 3]});
              out.insert(out.begin() + static_cast<int>(k), {c[b0], c[b0 + 2]});
              add(matching(c[0], t->binders, mu_of(c), std::move(out)));
            });
            break;
          }
          default:  // failure rules: partial match and the failing pair are dropped
            for_each_combo(base, [&](const std::vector<TermPtr>& c) {
              add(matching(c[0], t->binders, DecidedMatch::fail(), rest_delta(c)));
            });
            break;
        }
      }
      break;
    }
  }
  ctx.memo.emplace(t.get(), out);
  return out;
}

}  // namespace

std::vector<TermPtr> parallel_reducts(const TermPtr& t, std::size_t budget, const EngineConfig& cfg) {
  if (term_size(t, cfg.bot_size) > budget)
    throw ParallelOverflow("term size exceeds the parallel enumeration budget");
  PEnum ctx{session_for(t), cfg, 0, 200000, {}};
  std::vector<TermPtr> raw = preduce(ctx, t);
  std::vector<TermPtr> out;
  std::set<std::string> seen;
  for (const TermPtr& u : raw) {
    TermPtr cu = canonicalize(u, ctx.session);
    if (seen.insert(alpha_key(cu)).second) out.push_back(std::move(cu));
  }
  return out;
}

bool parallel_derivable(const TermPtr& t, const TermPtr& target, std::size_t budget,
                        const EngineConfig& cfg) {
  std::string key = alpha_key(target, true);
  for (const TermPtr& u : parallel_reducts(t, budget, cfg))
    if (alpha_key(u, true) == key) return true;
  return false;
}

// -- Simulation of one implicit step ----------------------------------------------------

namespace {

// Innermost structural step of an application spine, if any: the deepest
// application whose head is already a matchable or a structural application.
std::optional<Redex> spine_step(const TermPtr& u, const Path& at) {
  if (u->kind != Kind::App) return std::nullopt;
  switch (u->first->kind) {
    case Kind::Matchable:
      return Redex{at, RuleTag::StructHat};
    case Kind::SApp:
      return Redex{at, RuleTag::StructBullet};
    case Kind::App: {
      Path inner = at;
      inner.push_back(0);
      return spine_step(u->first, inner);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

Simulation simulate_ppc_step(const TermPtr& t, const ppc::Redex& r, const EngineConfig& cfg,
                             NameSession& session) {
  Simulation sim;
  TermPtr u = subterm_at(t, r.path);
  if (u->kind != Kind::App || u->first->kind != Kind::Case) {
    sim.error = "path does not address a case application";
    return sim;
  }
  const NameList theta = u->first->binders;
  MatchOutcome expected = ppc::compound_match(u->second, u->first->first, theta);
  if (expected.is_wait()) {
    sim.error = "compound match is not decided at this position";
    return sim;
  }

  TermPtr cur = t;
  auto apply = [&](const Redex& rd) {
    cur = step(cur, rd, cfg, session);
    sim.steps.push_back(rd);
  };

  apply({r.path, RuleTag::InitB});
  const Path mpath = r.path;

  constexpr int kCap = 100000;
  for (int guard = 0; guard < kCap; ++guard) {
    TermPtr m = subterm_at(cur, mpath);
    const DecidedMatch& d = *m->decided();
    if (d.failed || m->pending.empty()) {
      // the accumulated partial match must forget to the compound value
      MatchOutcome got = MatchOutcome::fail();
      if (d.is_subst()) {
        Subst fb;
        for (const auto& [n, v] : d.bindings) fb.emplace(n, forget(v));
        got = MatchOutcome::subst(std::move(fb));
      }
      sim.mu_checkpoint_ok = outcome_equiv(got, expected);
      if (d.failed)
        apply({mpath, RuleTag::ResolveFail});
      else
        apply({mpath, d.domain() == theta_set(m->binders) ? RuleTag::ResolveSubst
                                                          : RuleTag::ResolveDomMismatch});
      sim.ok = true;
      sim.final_term = cur;
      return sim;
    }

    bool progressed = false;
    for (int k = 0; k < static_cast<int>(m->pending.size()) && !progressed; ++k) {
      const auto& [a, p] = m->pending[k];
      if (auto tag = pair_rule_for(m->binders, a, p)) {
        apply(pair_redex(mpath, *m, k, *tag));
        progressed = true;
        break;
      }
      int base = 1 + mu_n(*m) + 2 * k;
      Path ppath = mpath;
      ppath.push_back(base + 1);
      if (auto s = spine_step(p, ppath)) {
        apply(*s);
        progressed = true;
        break;
      }
      Path apath = mpath;
      apath.push_back(base);
      if (auto s = spine_step(a, apath)) {
        apply(*s);
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      sim.error = "matching stuck although the compound match is decided";
      return sim;
    }
  }
  sim.error = "step cap exceeded";
  return sim;
}

std::vector<StuckPair> stuck_matchings(const TermPtr& t) {
  std::vector<StuckPair> out;
  walk(t, [&](const Path& path, const TermPtr& u) {
    if (u->kind != Kind::Matching) return;
    const DecidedMatch* d = u->decided();
    if (!d || d->failed) return;  // used-variable state or resolvable failure
    if (u->pending.empty()) return;
    for (int k = 0; k < static_cast<int>(u->pending.size()); ++k) {
      const auto& [a, p] = u->pending[k];
      if (pair_rule_for(u->binders, a, p)) continue;
      std::string reason;
      if (p->kind == Kind::Matchable && in_theta(u->binders, p->name) &&
          names_intersect(free_names(a), u->binders))
        reason = "argument would capture matching variables";
      else if (!is_em_matchable_form(p))
        reason = "pattern is not a matchable form";
      else
        reason = "argument is not a matchable form";
      out.push_back({path, k, std::move(reason)});
    }
  });
  return out;
}

void validate_bot(const TermPtr& bot) {
  if (!is_pure(bot)) throw std::invalid_argument("failure term must be pure");
  if (!free_names(bot).empty()) throw std::invalid_argument("failure term must be closed");
  if (!redexes(bot).empty()) throw std::invalid_argument("failure term must be normal");
}

}  // namespace ppcem::em
