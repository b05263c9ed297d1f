#include "ppc.hpp"

#include <algorithm>

namespace ppcem::ppc {

namespace {

void require_pure(const TermPtr& t, const char* who) {
  if (!is_pure(t)) throw std::invalid_argument(std::string(who) + ": term is not pure");
}

bool in_theta(const NameList& theta, const Name& n) {
  return std::find(theta.begin(), theta.end(), n) != theta.end();
}

}  // namespace

bool is_data_structure(const TermPtr& t) {
  require_pure(t, "is_data_structure");
  if (t->kind == Kind::Matchable) return true;
  if (t->kind == Kind::App) return is_data_structure(t->first);
  return false;
}

bool is_matchable_form(const TermPtr& t) {
  require_pure(t, "is_matchable_form");
  if (t->kind == Kind::Case) return true;
  if (t->kind == Kind::Matchable) return true;
  if (t->kind == Kind::App) return is_data_structure(t->first);
  return false;
}

MatchOutcome compound_match(const TermPtr& a, const TermPtr& p, const NameList& theta) {
  require_pure(a, "compound_match");
  require_pure(p, "compound_match");
  if (p->kind == Kind::Matchable && in_theta(theta, p->name))
    return MatchOutcome::subst({{p->name, a}});
  if (p->kind == Kind::Matchable && a->kind == Kind::Matchable && a->name == p->name)
    return MatchOutcome::subst({});
  if (p->kind == Kind::App && a->kind == Kind::App && is_matchable_form(a) && is_matchable_form(p))
    return disjoint_union(compound_match(a->first, p->first, theta),
                          compound_match(a->second, p->second, theta));
  if (is_matchable_form(a) && is_matchable_form(p)) return MatchOutcome::fail();
  return MatchOutcome::wait();
}

MatchOutcome checked_match(const TermPtr& a, const TermPtr& p, const NameList& theta) {
  MatchOutcome m = compound_match(a, p, theta);
  if (!m.is_subst()) return m;
  std::set<Name> dom;
  for (const auto& [n, u] : m.bindings) dom.insert(n);
  std::set<Name> th(theta.begin(), theta.end());
  if (dom != th) return MatchOutcome::fail();
  return m;
}

std::vector<Redex> redexes(const TermPtr& t) {
  require_pure(t, "redexes");
  std::vector<Redex> out;
  walk(t, [&](const Path& path, const TermPtr& u) {
    if (u->kind != Kind::App) return;
    if (u->first->kind != Kind::Case) return;
    const TermPtr& fun = u->first;
    if (!checked_match(u->second, fun->first, fun->binders).is_wait()) out.push_back({path});
  });
  return out;
}

TermPtr step(const TermPtr& t, const Redex& r, const EngineConfig& cfg, NameSession& session) {
  require_pure(t, "step");
  TermPtr u = subterm_at(t, r.path);
  if (u->kind != Kind::App || u->first->kind != Kind::Case)
    throw std::invalid_argument("step: path does not address a beta_m redex");
  const TermPtr& fun = u->first;
  MatchOutcome m = checked_match(u->second, fun->first, fun->binders);
  if (m.is_wait()) throw std::invalid_argument("step: match is not decided at this position");
  TermPtr contractum = m.is_fail() ? cfg.bot : substitute(fun->second, m.bindings, session);
  return canonicalize(replace_at(t, r.path, contractum), session);
}

}  // namespace ppcem::ppc
