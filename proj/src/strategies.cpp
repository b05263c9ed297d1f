#include "strategies.hpp"

#include <algorithm>

namespace ppcem::strat {

namespace {

bool in_theta(const NameList& theta, const Name& n) {
  return std::find(theta.begin(), theta.end(), n) != theta.end();
}

std::vector<em::Redex> head_pair_only(const TermPtr& t) {
  std::vector<em::Redex> out;
  for (em::Redex& r : em::redexes(t)) {
    if (em::is_match_pair_rule(r.tag) && em::pair_index_of(t, r) != 0) continue;
    out.push_back(std::move(r));
  }
  return out;
}

// The matching-driven relation: rules fire at the focus reached through the
// four context rules. Collects everything admissible; exclusivity of the
// branches is what the determinism suite checks.
void md_collect(const TermPtr& t, Path& at, std::vector<em::Redex>& out) {
  switch (t->kind) {
    case Kind::App: {
      switch (t->first->kind) {
        case Kind::Case:
          out.push_back({at, em::RuleTag::InitB});
          break;
        case Kind::Matchable:
          out.push_back({at, em::RuleTag::StructHat});
          break;
        case Kind::SApp:
          out.push_back({at, em::RuleTag::StructBullet});
          break;
        default:
          break;
      }
      at.push_back(0);  // reduce left of a functional application
      md_collect(t->first, at, out);
      at.pop_back();
      return;
    }
    case Kind::Matching: {
      const DecidedMatch* d = t->decided();
      if (!d)
        throw std::invalid_argument("matching-driven: matching carries a used-variable state");
      if (d->failed) {
        out.push_back({at, em::RuleTag::ResolveFail});
        return;  // resolve failed matchings before any remaining pair work
      }
      if (t->pending.empty()) {
        std::set<Name> theta(t->binders.begin(), t->binders.end());
        out.push_back({at, d->domain() == theta ? em::RuleTag::ResolveSubst
                                                : em::RuleTag::ResolveDomMismatch});
        return;
      }
      const auto& [a, p] = t->pending[0];
      if (auto tag = em::pair_rule(t->binders, a, p))
        out.push_back(em::make_pair_redex(at, t, 0, *tag));
      int mu = d->is_subst() ? static_cast<int>(d->bindings.size()) : 0;
      int arg_slot = 1 + mu;
      // pattern of the head pair
      at.push_back(arg_slot + 1);
      md_collect(p, at, out);
      at.pop_back();
      // argument of the head pair, when the pattern already settled its shape
      bool arg_ctx = (p->kind == Kind::Matchable && !in_theta(t->binders, p->name)) ||
                     p->kind == Kind::SApp;
      if (arg_ctx) {
        at.push_back(arg_slot);
        md_collect(a, at, out);
        at.pop_back();
      }
      return;
    }
    default:
      return;  // no context enters variables, matchables, cases or structural applications
  }
}

std::vector<em::Redex> md_admissible(const TermPtr& t) {
  std::vector<em::Redex> out;
  Path at;
  md_collect(t, at, out);
  return out;
}

}  // namespace

Strategy full() {
  return {"full", em::DecomposePlacement::Front, [](const TermPtr& t) { return em::redexes(t); }};
}

Strategy df_lr() {
  return {"df-lr", em::DecomposePlacement::Front, head_pair_only};
}

Strategy df_reordered() {
  return {"df-reordered", em::DecomposePlacement::Back, head_pair_only};
}

Strategy matching_driven() {
  return {"matching-driven", em::DecomposePlacement::Front, md_admissible};
}

std::optional<Strategy> by_name(const std::string& name) {
  if (name == "full") return full();
  if (name == "df-lr") return df_lr();
  if (name == "df-reordered") return df_reordered();
  if (name == "matching-driven") return matching_driven();
  return std::nullopt;
}

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {"full", "df-lr", "df-reordered", "matching-driven"};
  return names;
}

std::optional<em::Redex> select(const Strategy& s, const TermPtr& t) {
  std::vector<em::Redex> rs = s.admissible(t);
  if (rs.empty()) return std::nullopt;
  return rs.front();
}

RunResult run(const TermPtr& t, const Strategy& s, std::size_t max_steps, const EngineConfig& cfg) {
  RunResult res;
  NameSession session = session_for(t);
  TermPtr cur = t;
  for (std::size_t n = 0; n < max_steps; ++n) {
    auto r = select(s, cur);
    if (!r) {
      res.final_term = cur;
      res.verdict = Verdict::NormalForm;
      return res;
    }
    cur = em::step(cur, *r, cfg, session, s.placement);
    res.trace.push_back({*r, cur});
  }
  res.final_term = cur;
  res.verdict = select(s, cur) ? Verdict::BudgetExhausted : Verdict::NormalForm;
  return res;
}

TermPtr replay(const TermPtr& t0, const std::vector<em::Redex>& steps, const EngineConfig& cfg,
               em::DecomposePlacement placement) {
  NameSession session = session_for(t0);
  TermPtr cur = t0;
  for (const em::Redex& r : steps) cur = em::step(cur, r, cfg, session, placement);
  return cur;
}

}  // namespace ppcem::strat
