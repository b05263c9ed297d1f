#pragma once

#include <optional>
#include <string>

#include "em.hpp"

namespace ppcem::strat {

enum class Verdict { NormalForm, BudgetExhausted };

struct TraceEntry {
  em::Redex redex;
  TermPtr after;
};

struct RunResult {
  TermPtr final_term;
  std::vector<TraceEntry> trace;
  Verdict verdict = Verdict::NormalForm;
};

/// A redex-selection policy. admissible returns the policy's redexes in
/// priority order; every one of them is also a redex of the unrestricted
/// relation. placement fixes where decomposition puts the two new pairs.
struct Strategy {
  std::string name;
  em::DecomposePlacement placement = em::DecomposePlacement::Front;
  std::function<std::vector<em::Redex>(const TermPtr&)> admissible;
};

/// The unrestricted relation; selection order is leftmost-outermost.
Strategy full();
/// List-structured pending pairs: matching rules act on the head pair only,
/// decomposition pushes the two new pairs onto the front.
Strategy df_lr();
/// As df_lr, but decomposition appends the two new pairs at the tail, so
/// matching proceeds in a completely different order.
Strategy df_reordered();
/// Matching-driven reduction: root rule applications under exactly four
/// contexts (left of a functional application; the head pair's pattern; the
/// head pair's argument when the pattern is a non-binding matchable or a
/// structural application). Resolution takes priority at failed matchings.
/// Admits at most one redex anywhere.
Strategy matching_driven();

std::optional<Strategy> by_name(const std::string& name);
const std::vector<std::string>& strategy_names();

std::optional<em::Redex> select(const Strategy& s, const TermPtr& t);

RunResult run(const TermPtr& t, const Strategy& s, std::size_t max_steps, const EngineConfig& cfg);

/// Reapplies a recorded redex sequence from the initial term. Sessions are
/// seeded the same way run seeds them, so replaying a run's trace rebuilds
/// the very same terms.
TermPtr replay(const TermPtr& t0, const std::vector<em::Redex>& steps, const EngineConfig& cfg,
               em::DecomposePlacement placement = em::DecomposePlacement::Front);

}  // namespace ppcem::strat
