#include "term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ppcem {

namespace {

void check_binders(const NameList& binders) {
  for (std::size_t i = 0; i < binders.size(); ++i)
    for (std::size_t j = i + 1; j < binders.size(); ++j)
      if (binders[i] == binders[j])
        throw std::invalid_argument("duplicate name in binder list: " + to_string(binders[i]));
}

std::set<Name> set_minus(std::set<Name> s, const NameList& l) {
  for (const Name& n : l) s.erase(n);
  return s;
}

void set_add(std::set<Name>& into, const std::set<Name>& from) {
  into.insert(from.begin(), from.end());
}

using Renaming = std::map<Name, Name>;

Renaming scoped(const Renaming& r, const NameList& shadow) {
  Renaming out = r;
  for (const Name& n : shadow) out.erase(n);
  return out;
}

}  // namespace

std::set<Name> DecidedMatch::domain() const {
  std::set<Name> d;
  for (const auto& [n, t] : bindings) d.insert(n);
  return d;
}

TauMatch TauMatch::of(NameList names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return TauMatch{false, std::move(names)};
}

bool TauMatch::contains(const Name& n) const {
  return std::binary_search(used.begin(), used.end(), n);
}

// -- Construction --------------------------------------------------------------

TermPtr var(Name n) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->name = std::move(n);
  return t;
}

TermPtr var(const std::string& base) { return var(Name{base, 0}); }

TermPtr matchable(Name n) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Matchable;
  t->name = std::move(n);
  return t;
}

TermPtr matchable(const std::string& base) { return matchable(Name{base, 0}); }

TermPtr app(TermPtr fun, TermPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::App;
  t->first = std::move(fun);
  t->second = std::move(arg);
  return t;
}

TermPtr sapp(TermPtr head, TermPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::SApp;
  t->first = std::move(head);
  t->second = std::move(arg);
  return t;
}

TermPtr case_of(NameList binders, TermPtr pattern, TermPtr body) {
  check_binders(binders);
  auto t = std::make_shared<Term>();
  t->kind = Kind::Case;
  t->binders = std::move(binders);
  t->first = std::move(pattern);
  t->second = std::move(body);
  return t;
}

TermPtr matching(TermPtr body, NameList binders, MatchState state, Delta pending) {
  check_binders(binders);
  auto t = std::make_shared<Term>();
  t->kind = Kind::Matching;
  t->first = std::move(body);
  t->binders = std::move(binders);
  t->state = std::move(state);
  t->pending = std::move(pending);
  return t;
}

TermPtr app_spine(TermPtr head, const std::vector<TermPtr>& args) {
  TermPtr t = std::move(head);
  for (const TermPtr& a : args) t = app(t, a);
  return t;
}

// -- Paths ----------------------------------------------------------------------

static int mu_size(const Term& t) {
  if (const DecidedMatch* d = t.decided(); d && d->is_subst()) return static_cast<int>(d->bindings.size());
  return 0;
}

int child_count(const Term& t) {
  switch (t.kind) {
    case Kind::Var:
    case Kind::Matchable:
      return 0;
    case Kind::App:
    case Kind::SApp:
    case Kind::Case:
      return 2;
    case Kind::Matching:
      return 1 + mu_size(t) + 2 * static_cast<int>(t.pending.size());
  }
  return 0;
}

TermPtr child(const TermPtr& t, int i) {
  if (i < 0 || i >= child_count(*t)) throw std::invalid_argument("child index out of range");
  switch (t->kind) {
    case Kind::App:
    case Kind::SApp:
    case Kind::Case:
      return i == 0 ? t->first : t->second;
    case Kind::Matching: {
      if (i == 0) return t->first;
      int m = mu_size(*t);
      if (i <= m) {
        auto it = t->decided()->bindings.begin();
        std::advance(it, i - 1);
        return it->second;
      }
      int j = i - 1 - m;
      const MatchPair& p = t->pending[j / 2];
      return j % 2 == 0 ? p.first : p.second;
    }
    default:
      throw std::invalid_argument("leaf term has no children");
  }
}

TermPtr with_child(const TermPtr& t, int i, TermPtr c) {
  if (i < 0 || i >= child_count(*t)) throw std::invalid_argument("child index out of range");
  switch (t->kind) {
    case Kind::App:
      return i == 0 ? app(std::move(c), t->second) : app(t->first, std::move(c));
    case Kind::SApp:
      return i == 0 ? sapp(std::move(c), t->second) : sapp(t->first, std::move(c));
    case Kind::Case:
      return i == 0 ? case_of(t->binders, std::move(c), t->second)
                    : case_of(t->binders, t->first, std::move(c));
    case Kind::Matching: {
      if (i == 0) return matching(std::move(c), t->binders, t->state, t->pending);
      int m = mu_size(*t);
      if (i <= m) {
        Subst b = t->decided()->bindings;
        auto it = b.begin();
        std::advance(it, i - 1);
        it->second = std::move(c);
        return matching(t->first, t->binders, DecidedMatch::subst(std::move(b)), t->pending);
      }
      int j = i - 1 - m;
      Delta d = t->pending;
      if (j % 2 == 0)
        d[j / 2].first = std::move(c);
      else
        d[j / 2].second = std::move(c);
      return matching(t->first, t->binders, t->state, std::move(d));
    }
    default:
      throw std::invalid_argument("leaf term has no children");
  }
}

TermPtr subterm_at(const TermPtr& t, const Path& path) {
  TermPtr u = t;
  for (int i : path) u = child(u, i);
  return u;
}

TermPtr replace_at(const TermPtr& t, const Path& path, const TermPtr& replacement) {
  if (path.empty()) return replacement;
  std::function<TermPtr(const TermPtr&, std::size_t)> rec = [&](const TermPtr& u, std::size_t k) -> TermPtr {
    if (k == path.size()) return replacement;
    return with_child(u, path[k], rec(child(u, path[k]), k + 1));
  };
  return rec(t, 0);
}

// -- Predicates -------------------------------------------------------------------

bool is_pure(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var:
    case Kind::Matchable:
      return true;
    case Kind::App:
      return is_pure(t->first) && is_pure(t->second);
    case Kind::Case:
      return is_pure(t->first) && is_pure(t->second);
    case Kind::SApp:
    case Kind::Matching:
      return false;
  }
  return false;
}

bool has_matching_node(const TermPtr& t) {
  if (t->kind == Kind::Matching) return true;
  int n = child_count(*t);
  for (int i = 0; i < n; ++i)
    if (has_matching_node(child(t, i))) return true;
  return false;
}

bool uses_tau_state(const TermPtr& t) {
  if (t->kind == Kind::Matching && t->tau() != nullptr) return true;
  int n = child_count(*t);
  for (int i = 0; i < n; ++i)
    if (uses_tau_state(child(t, i))) return true;
  return false;
}

bool is_canonical(const TermPtr& t) {
  std::set<Name> binders;
  bool ok = true;
  walk(t, [&](const Path&, const TermPtr& u) {
    if (!ok) return;
    if (u->kind == Kind::Case || u->kind == Kind::Matching)
      for (const Name& b : u->binders) {
        if (binders.count(b)) ok = false;
        binders.insert(b);
      }
  });
  if (!ok) return false;
  for (const Name& n : free_names(t))
    if (binders.count(n)) return false;
  return true;
}

// -- Free names --------------------------------------------------------------------

std::set<Name> free_variables(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var:
      return {t->name};
    case Kind::Matchable:
      return {};
    case Kind::App:
    case Kind::SApp: {
      std::set<Name> s = free_variables(t->first);
      set_add(s, free_variables(t->second));
      return s;
    }
    case Kind::Case: {
      std::set<Name> s = free_variables(t->first);
      set_add(s, set_minus(free_variables(t->second), t->binders));
      return s;
    }
    case Kind::Matching: {
      std::set<Name> s = set_minus(free_variables(t->first), t->binders);
      if (const DecidedMatch* d = t->decided(); d && d->is_subst())
        for (const auto& [n, u] : d->bindings) set_add(s, free_variables(u));
      for (const MatchPair& p : t->pending) {
        set_add(s, free_variables(p.first));
        set_add(s, free_variables(p.second));
      }
      return s;
    }
  }
  return {};
}

std::set<Name> free_matchables(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var:
      return {};
    case Kind::Matchable:
      return {t->name};
    case Kind::App:
    case Kind::SApp: {
      std::set<Name> s = free_matchables(t->first);
      set_add(s, free_matchables(t->second));
      return s;
    }
    case Kind::Case: {
      std::set<Name> s = set_minus(free_matchables(t->first), t->binders);
      set_add(s, free_matchables(t->second));
      return s;
    }
    case Kind::Matching: {
      std::set<Name> s = free_matchables(t->first);
      if (const DecidedMatch* d = t->decided(); d && d->is_subst())
        for (const auto& [n, u] : d->bindings) set_add(s, free_matchables(u));
      std::set<Name> pats;
      for (const MatchPair& p : t->pending) {
        set_add(s, free_matchables(p.first));
        set_add(pats, free_matchables(p.second));
      }
      set_add(s, set_minus(std::move(pats), t->binders));
      return s;
    }
  }
  return {};
}

std::set<Name> free_names(const TermPtr& t) {
  std::set<Name> s = free_variables(t);
  set_add(s, free_matchables(t));
  return s;
}

std::uint32_t max_tag(const TermPtr& t) {
  std::uint32_t m = 0;
  auto see = [&](const Name& n) { m = std::max(m, n.tag); };
  walk(t, [&](const Path&, const TermPtr& u) {
    switch (u->kind) {
      case Kind::Var:
      case Kind::Matchable:
        see(u->name);
        break;
      case Kind::Case:
        for (const Name& n : u->binders) see(n);
        break;
      case Kind::Matching:
        for (const Name& n : u->binders) see(n);
        if (const DecidedMatch* d = u->decided(); d && d->is_subst())
          for (const auto& [n, v] : d->bindings) see(n);
        if (const TauMatch* tau = u->tau())
          for (const Name& n : tau->used) see(n);
        break;
      default:
        break;
    }
  });
  return m;
}

NameSession session_for(const TermPtr& t) { return NameSession(max_tag(t) + 1); }

// -- Renaming of bound occurrences ---------------------------------------------------
//
// Applies sort-aware renamings to occurrences. Binder lists themselves are not
// touched; callers renaming a binder list remap its own occurrences with this.

static TermPtr rename_occ(const TermPtr& t, const Renaming& vren, const Renaming& mren) {
  if (vren.empty() && mren.empty()) return t;
  switch (t->kind) {
    case Kind::Var: {
      auto it = vren.find(t->name);
      return it == vren.end() ? t : var(it->second);
    }
    case Kind::Matchable: {
      auto it = mren.find(t->name);
      return it == mren.end() ? t : matchable(it->second);
    }
    case Kind::App:
      return app(rename_occ(t->first, vren, mren), rename_occ(t->second, vren, mren));
    case Kind::SApp:
      return sapp(rename_occ(t->first, vren, mren), rename_occ(t->second, vren, mren));
    case Kind::Case: {
      // theta shadows matchables in the pattern and variables in the body
      TermPtr p = rename_occ(t->first, vren, scoped(mren, t->binders));
      TermPtr b = rename_occ(t->second, scoped(vren, t->binders), mren);
      return case_of(t->binders, std::move(p), std::move(b));
    }
    case Kind::Matching: {
      TermPtr body = rename_occ(t->first, scoped(vren, t->binders), mren);
      MatchState st = t->state;
      if (DecidedMatch* d = std::get_if<DecidedMatch>(&st); d && d->is_subst()) {
        for (auto& [n, u] : d->bindings) u = rename_occ(u, vren, mren);
      }
      Delta pend;
      pend.reserve(t->pending.size());
      Renaming mren_p = scoped(mren, t->binders);
      for (const MatchPair& pr : t->pending)
        pend.emplace_back(rename_occ(pr.first, vren, mren),
                          rename_occ(pr.second, vren, mren_p));
      return matching(std::move(body), t->binders, std::move(st), std::move(pend));
    }
  }
  return t;
}

namespace {

// Renames a subset of a node's own binders, remapping theta, the bound
// occurrences, domain keys and used-lists. Returns the rebuilt node.
TermPtr rename_own_binders(const TermPtr& t, const Renaming& rho) {
  NameList theta = t->binders;
  for (Name& n : theta)
    if (auto it = rho.find(n); it != rho.end()) n = it->second;
  if (t->kind == Kind::Case) {
    TermPtr p = rename_occ(t->first, {}, rho);
    TermPtr b = rename_occ(t->second, rho, {});
    return case_of(std::move(theta), std::move(p), std::move(b));
  }
  TermPtr body = rename_occ(t->first, rho, {});
  MatchState st = t->state;
  if (DecidedMatch* d = std::get_if<DecidedMatch>(&st); d && d->is_subst()) {
    Subst remapped;
    for (auto& [n, u] : d->bindings) {
      auto it = rho.find(n);
      remapped.emplace(it == rho.end() ? n : it->second, u);
    }
    d->bindings = std::move(remapped);
  } else if (TauMatch* tau = std::get_if<TauMatch>(&st); tau && !tau->failed) {
    for (Name& n : tau->used)
      if (auto it = rho.find(n); it != rho.end()) n = it->second;
    std::sort(tau->used.begin(), tau->used.end());
  }
  Delta pend;
  pend.reserve(t->pending.size());
  for (const MatchPair& pr : t->pending)
    pend.emplace_back(pr.first, rename_occ(pr.second, {}, rho));
  return matching(std::move(body), std::move(theta), std::move(st), std::move(pend));
}

std::set<Name> subst_free_names(const Subst& sigma) {
  std::set<Name> s;
  for (const auto& [n, u] : sigma) set_add(s, free_names(u));
  return s;
}

TermPtr raw_substitute(const TermPtr& t, const Subst& sigma, NameSession& session) {
  if (sigma.empty()) return t;
  switch (t->kind) {
    case Kind::Var: {
      auto it = sigma.find(t->name);
      return it == sigma.end() ? t : it->second;
    }
    case Kind::Matchable:
      return t;
    case Kind::App:
      return app(raw_substitute(t->first, sigma, session), raw_substitute(t->second, sigma, session));
    case Kind::SApp:
      return sapp(raw_substitute(t->first, sigma, session), raw_substitute(t->second, sigma, session));
    case Kind::Case:
    case Kind::Matching: {
      // Restrict to the bindings that can act below this node.
      std::set<Name> fv = free_variables(t);
      Subst sub;
      for (const auto& [n, u] : sigma)
        if (fv.count(n)) sub.emplace(n, u);
      if (sub.empty()) return t;

      TermPtr node = t;
      std::set<Name> avoid = subst_free_names(sub);
      for (const auto& [n, u] : sub) avoid.insert(n);
      Renaming rho;
      for (const Name& b : node->binders)
        if (avoid.count(b)) rho.emplace(b, session.fresh(b.base));
      if (!rho.empty()) node = rename_own_binders(node, rho);

      if (node->kind == Kind::Case)
        return case_of(node->binders, raw_substitute(node->first, sub, session),
                       raw_substitute(node->second, sub, session));

      TermPtr body = raw_substitute(node->first, sub, session);
      MatchState st = node->state;
      if (DecidedMatch* d = std::get_if<DecidedMatch>(&st); d && d->is_subst())
        for (auto& [n, u] : d->bindings) u = raw_substitute(u, sub, session);
      Delta pend;
      pend.reserve(node->pending.size());
      for (const MatchPair& pr : node->pending)
        pend.emplace_back(raw_substitute(pr.first, sub, session),
                          raw_substitute(pr.second, sub, session));
      return matching(std::move(body), node->binders, std::move(st), std::move(pend));
    }
  }
  return t;
}

}  // namespace

TermPtr canonicalize(const TermPtr& t, NameSession& session) {
  session.reserve_at_least(max_tag(t));
  std::set<Name> used = free_names(t);

  std::function<TermPtr(const TermPtr&, const Renaming&, const Renaming&)> rec =
      [&](const TermPtr& u, const Renaming& vren, const Renaming& mren) -> TermPtr {
    switch (u->kind) {
      case Kind::Var: {
        auto it = vren.find(u->name);
        return it == vren.end() ? u : var(it->second);
      }
      case Kind::Matchable: {
        auto it = mren.find(u->name);
        return it == mren.end() ? u : matchable(it->second);
      }
      case Kind::App:
        return app(rec(u->first, vren, mren), rec(u->second, vren, mren));
      case Kind::SApp:
        return sapp(rec(u->first, vren, mren), rec(u->second, vren, mren));
      case Kind::Case:
      case Kind::Matching: {
        Renaming rho;
        NameList theta = u->binders;
        for (Name& b : theta) {
          if (used.count(b)) {
            Name nb = session.fresh(b.base);
            rho.emplace(b, nb);
            used.insert(nb);
            b = nb;
          } else {
            used.insert(b);
          }
        }
        if (u->kind == Kind::Case) {
          Renaming mren2 = scoped(mren, u->binders);
          Renaming vren2 = scoped(vren, u->binders);
          for (const auto& [o, n] : rho) mren2[o] = n;
          for (const auto& [o, n] : rho) vren2[o] = n;
          return case_of(std::move(theta), rec(u->first, vren, mren2), rec(u->second, vren2, mren));
        }
        Renaming vren_body = scoped(vren, u->binders);
        Renaming mren_pat = scoped(mren, u->binders);
        for (const auto& [o, n] : rho) {
          vren_body[o] = n;
          mren_pat[o] = n;
        }
        TermPtr body = rec(u->first, vren_body, mren);
        MatchState st = u->state;
        if (DecidedMatch* d = std::get_if<DecidedMatch>(&st); d && d->is_subst()) {
          Subst remapped;
          for (auto& [n, v] : d->bindings) {
            auto it = rho.find(n);
            remapped.emplace(it == rho.end() ? n : it->second, rec(v, vren, mren));
          }
          d->bindings = std::move(remapped);
        } else if (TauMatch* tau = std::get_if<TauMatch>(&st); tau && !tau->failed) {
          for (Name& n : tau->used)
            if (auto it = rho.find(n); it != rho.end()) n = it->second;
          std::sort(tau->used.begin(), tau->used.end());
        }
        Delta pend;
        pend.reserve(u->pending.size());
        for (const MatchPair& pr : u->pending)
          pend.emplace_back(rec(pr.first, vren, mren), rec(pr.second, vren, mren_pat));
        return matching(std::move(body), std::move(theta), std::move(st), std::move(pend));
      }
    }
    return u;
  };
  return rec(t, {}, {});
}

TermPtr substitute(const TermPtr& t, const Subst& sigma, NameSession& session) {
  session.reserve_at_least(max_tag(t));
  for (const auto& [n, u] : sigma) session.reserve_at_least(max_tag(u));
  return canonicalize(raw_substitute(t, sigma, session), session);
}

TermPtr substitute(const TermPtr& t, const DecidedMatch& mu, NameSession& session) {
  if (!mu.is_subst()) throw std::invalid_argument("cannot substitute a failed match");
  return substitute(t, mu.bindings, session);
}

// -- Alpha keys ------------------------------------------------------------------

namespace {

struct KeyFrame {
  bool matchable_sort;
  const NameList* names;
};

std::string key_free(const Name& n) { return n.base + "#" + std::to_string(n.tag); }

std::optional<std::string> key_bound(const std::vector<KeyFrame>& frames, bool matchable_sort,
                                     const Name& n) {
  for (int i = static_cast<int>(frames.size()) - 1; i >= 0; --i) {
    if (frames[i].matchable_sort != matchable_sort) continue;
    const NameList& l = *frames[i].names;
    for (std::size_t p = 0; p < l.size(); ++p)
      if (l[p] == n) return std::to_string(i) + "." + std::to_string(p);
  }
  return std::nullopt;
}

std::string key_of(const TermPtr& t, std::vector<KeyFrame>& frames, bool msets) {
  switch (t->kind) {
    case Kind::Var: {
      auto b = key_bound(frames, false, t->name);
      return b ? "v(" + *b + ")" : "V(" + key_free(t->name) + ")";
    }
    case Kind::Matchable: {
      auto b = key_bound(frames, true, t->name);
      return b ? "m(" + *b + ")" : "C(" + key_free(t->name) + ")";
    }
    case Kind::App:
      return "a(" + key_of(t->first, frames, msets) + "," + key_of(t->second, frames, msets) + ")";
    case Kind::SApp:
      return "s(" + key_of(t->first, frames, msets) + "," + key_of(t->second, frames, msets) + ")";
    case Kind::Case: {
      std::string out = "c" + std::to_string(t->binders.size()) + "(";
      frames.push_back({true, &t->binders});
      out += key_of(t->first, frames, msets);
      frames.pop_back();
      out += ",";
      frames.push_back({false, &t->binders});
      out += key_of(t->second, frames, msets);
      frames.pop_back();
      return out + ")";
    }
    case Kind::Matching: {
      std::string out = "M" + std::to_string(t->binders.size()) + "(";
      frames.push_back({false, &t->binders});
      out += key_of(t->first, frames, msets);
      frames.pop_back();
      out += ";";
      if (const DecidedMatch* d = t->decided()) {
        if (d->failed) {
          out += "#F";
        } else {
          std::vector<std::string> entries;
          for (const auto& [n, u] : d->bindings) {
            std::string dk;
            bool bound = false;
            for (std::size_t p = 0; p < t->binders.size(); ++p)
              if (t->binders[p] == n) {
                dk = "b" + std::to_string(p);
                bound = true;
                break;
              }
            if (!bound) dk = "f" + key_free(n);
            entries.push_back(dk + ":" + key_of(u, frames, msets));
          }
          std::sort(entries.begin(), entries.end());
          out += "{";
          for (const std::string& e : entries) out += e + ",";
          out += "}";
        }
      } else {
        const TauMatch* tau = t->tau();
        if (tau->failed) {
          out += "#tF";
        } else {
          std::vector<std::string> entries;
          for (const Name& n : tau->used) {
            bool bound = false;
            for (std::size_t p = 0; p < t->binders.size(); ++p)
              if (t->binders[p] == n) {
                entries.push_back("b" + std::to_string(p));
                bound = true;
                break;
              }
            if (!bound) entries.push_back("f" + key_free(n));
          }
          std::sort(entries.begin(), entries.end());
          out += "t{";
          for (const std::string& e : entries) out += e + ",";
          out += "}";
        }
      }
      out += ";";
      std::vector<std::string> pairs;
      pairs.reserve(t->pending.size());
      for (const MatchPair& pr : t->pending) {
        std::string pk = "(" + key_of(pr.first, frames, msets) + "~";
        frames.push_back({true, &t->binders});
        pk += key_of(pr.second, frames, msets);
        frames.pop_back();
        pk += ")";
        pairs.push_back(std::move(pk));
      }
      if (msets) std::sort(pairs.begin(), pairs.end());
      for (const std::string& p : pairs) out += p;
      return out + ")";
    }
  }
  return "?";
}

}  // namespace

std::string alpha_key(const TermPtr& t, bool delta_as_multiset) {
  std::vector<KeyFrame> frames;
  return key_of(t, frames, delta_as_multiset);
}

bool alpha_equiv(const TermPtr& a, const TermPtr& b) {
  return a == b || alpha_key(a) == alpha_key(b);
}

bool alpha_equiv_multiset(const TermPtr& a, const TermPtr& b) {
  return a == b || alpha_key(a, true) == alpha_key(b, true);
}

// -- Measures --------------------------------------------------------------------

std::size_t term_size(const TermPtr& t, std::size_t bot_size) {
  switch (t->kind) {
    case Kind::Var:
    case Kind::Matchable:
      return 1;
    case Kind::App:
      return term_size(t->first, bot_size) + term_size(t->second, bot_size) + 2;
    case Kind::SApp:
      return term_size(t->first, bot_size) + term_size(t->second, bot_size) + 1;
    case Kind::Case:
      return term_size(t->first, bot_size) + term_size(t->second, bot_size);
    case Kind::Matching: {
      std::size_t s = term_size(t->first, bot_size) + bot_size;
      if (const DecidedMatch* d = t->decided(); d && d->is_subst())
        for (const auto& [n, u] : d->bindings) s += term_size(u, bot_size);
      for (const MatchPair& p : t->pending)
        s += term_size(p.first, bot_size) + term_size(p.second, bot_size);
      return s;
    }
  }
  return 0;
}

std::multiset<std::size_t> chain_depth(const TermPtr& t) {
  struct Occ {
    Path path;
    TermPtr node;
    std::set<Name> fv_parts;  // free variables of everything but the body
  };
  std::vector<Occ> occs;
  walk(t, [&](const Path& p, const TermPtr& u) {
    if (u->kind != Kind::Matching) return;
    std::set<Name> fvp;
    int n = child_count(*u);
    for (int i = 1; i < n; ++i) set_add(fvp, free_variables(child(u, i)));
    occs.push_back({p, u, std::move(fvp)});
  });

  const std::size_t n = occs.size();
  std::multiset<std::size_t> depth;
  if (n == 0) return depth;

  auto linked = [&](std::size_t i, std::size_t j) -> bool {
    if (i == j) return false;
    const Occ& a = occs[i];
    const Occ& b = occs[j];
    // nesting: b occurs inside a's pending pairs or match codomain
    if (b.path.size() > a.path.size() &&
        std::equal(a.path.begin(), a.path.end(), b.path.begin()) &&
        b.path[a.path.size()] >= 1)
      return true;
    // potential nesting: a binder of b occurs free there
    for (const Name& x : b.node->binders)
      if (a.fv_parts.count(x)) return true;
    return false;
  };

  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<bool> has_pred(n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (linked(i, j)) {
        succ[i].push_back(j);
        has_pred[j] = true;
      }

  std::vector<bool> on_path(n, false);
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t i, std::size_t len) {
    on_path[i] = true;
    bool extended = false;
    for (std::size_t j : succ[i])
      if (!on_path[j]) {
        extended = true;
        dfs(j, len + 1);
      }
    if (!extended) depth.insert(len);
    on_path[i] = false;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (!has_pred[i]) dfs(i, 1);
  return depth;
}

bool multiset_less(const std::multiset<std::size_t>& a, const std::multiset<std::size_t>& b) {
  // total on multisets of naturals: compare descending sequences, a missing
  // element counts below any present one
  auto ai = a.rbegin();
  auto bi = b.rbegin();
  for (; ai != a.rend() && bi != b.rend(); ++ai, ++bi)
    if (*ai != *bi) return *ai < *bi;
  return ai == a.rend() && bi != b.rend();
}

// -- Match outcomes ----------------------------------------------------------------

MatchOutcome disjoint_union(const MatchOutcome& a, const MatchOutcome& b) {
  if (a.is_fail() || b.is_fail()) return MatchOutcome::fail();
  if (a.is_wait() || b.is_wait()) return MatchOutcome::wait();
  Subst merged = a.bindings;
  for (const auto& [n, u] : b.bindings) {
    if (merged.count(n)) return MatchOutcome::fail();
    merged.emplace(n, u);
  }
  return MatchOutcome::subst(std::move(merged));
}

DecidedMatch disjoint_union(const DecidedMatch& a, const DecidedMatch& b) {
  if (a.failed || b.failed) return DecidedMatch::fail();
  Subst merged = a.bindings;
  for (const auto& [n, u] : b.bindings) {
    if (merged.count(n)) return DecidedMatch::fail();
    merged.emplace(n, u);
  }
  return DecidedMatch::subst(std::move(merged));
}

bool outcome_equiv(const MatchOutcome& a, const MatchOutcome& b) {
  if (a.k != b.k) return false;
  if (!a.is_subst()) return true;
  if (a.bindings.size() != b.bindings.size()) return false;
  auto ai = a.bindings.begin();
  auto bi = b.bindings.begin();
  for (; ai != a.bindings.end(); ++ai, ++bi) {
    if (ai->first != bi->first) return false;
    if (!alpha_equiv(ai->second, bi->second)) return false;
  }
  return true;
}

// -- Engine configuration -------------------------------------------------------------

TermPtr default_bot() {
  return case_of({name("x")}, matchable("x"), var("x"));
}

EngineConfig EngineConfig::standard() { return with_bot(default_bot()); }

EngineConfig EngineConfig::with_bot(TermPtr b) {
  std::size_t s = term_size(b, 0);
  return EngineConfig{std::move(b), s};
}

}  // namespace ppcem
