#pragma once

#include <vector>

#include "term.hpp"

namespace ppcem::ppc {

// The implicit calculus over pure terms: meta-level compound matching, the
// domain check, and the single beta_m rule. Also the oracle the explicit
// engine is tested against.

/// d ::= ^x | d t (pure terms only).
bool is_data_structure(const TermPtr& t);
/// m ::= d | case (pure terms only).
bool is_matchable_form(const TermPtr& t);

/// Compound matching {a /theta p}. Equations are tried in order: a matching
/// variable binds anything (binding wins over a constructor self-match),
/// constructors match themselves, compound patterns split when both sides
/// are matchable forms, any other pair of matchable forms fails, and
/// everything else waits.
MatchOutcome compound_match(const TermPtr& a, const TermPtr& p, const NameList& theta);

/// compound_match followed by the check dom(sigma) = theta. Never returns a
/// substitution whose domain differs from theta.
MatchOutcome checked_match(const TermPtr& a, const TermPtr& p, const NameList& theta);

struct Redex {
  Path path;
};

/// All application nodes whose function is a case and whose checked match is
/// decided, in leftmost-outermost order. Positions with a waiting match are
/// simply not redexes.
std::vector<Redex> redexes(const TermPtr& t);

TermPtr step(const TermPtr& t, const Redex& r, const EngineConfig& cfg, NameSession& session);

}  // namespace ppcem::ppc
