#pragma once

#include "strategies.hpp"

namespace ppcem::ps {

// The partial-substitution variant: a matching applies each binding to its
// body the moment it is obtained and remembers only the used names, so its
// state is a used-variable list (or failure) instead of a substitution.

/// Maps a term of the core calculus into the variant: every matching holding
/// a substitution has it applied to the (translated) body, keeping the
/// domain as the used list; failed matchings are unchanged. Homomorphic on
/// everything else.
TermPtr translate(const TermPtr& t, NameSession& session);
TermPtr translate(const TermPtr& t);

/// Redexes of the variant, leftmost-outermost. Initialisation, structural
/// application, decomposition, constructor matching and the six failure
/// rules are shared with the core calculus; binding becomes PartialBind
/// (substituting immediately, requiring the variable unused), a second use
/// of a variable fails the matching (PartialBindReuse), and resolution
/// compares the used list against the binder list.
std::vector<em::Redex> redexes(const TermPtr& t);

TermPtr step(const TermPtr& t, const em::Redex& r, const EngineConfig& cfg, NameSession& session,
             em::DecomposePlacement placement = em::DecomposePlacement::Front);

/// Leftmost-outermost reduction in the variant.
strat::RunResult run(const TermPtr& t, std::size_t max_steps, const EngineConfig& cfg);

std::vector<em::StuckPair> stuck_matchings(const TermPtr& t);

/// Replaces every failed matching by the failure term (exhaustive failure
/// resolution; a projection both calculi agree on).
TermPtr collapse_failures(const TermPtr& t, const EngineConfig& cfg, NameSession& session);

struct SimSearch {
  bool found = false;
  std::size_t explored = 0;
};

/// Bounded breadth-first search for a variant reduction from source to a term
/// equal to target modulo collapse_failures and pending-pair order.
SimSearch reduces_to(const TermPtr& source, const TermPtr& target, const EngineConfig& cfg,
                     int max_depth, std::size_t node_cap);

}  // namespace ppcem::ps
