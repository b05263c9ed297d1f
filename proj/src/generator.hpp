#pragma once

#include <random>

#include "term.hpp"

namespace ppcem::gen {

using Rng = std::mt19937_64;

struct Config {
  int size_budget = 12;      // rough node budget
  bool pure = false;         // restrict to the implicit calculus' grammar
  double match_bias = 1.0;   // >1 favours matchable-heavy shapes
  double app_bias = 1.0;     // >1 favours application-heavy shapes
  bool close_vars = false;   // bind leftover free variables under an outer case
};

/// Size-bounded random term over all constructors, canonicalized.
TermPtr term(Rng& rng, const Config& cfg = {});

/// Pure term with at least one decided beta_m redex somewhere.
TermPtr pure_redex_term(Rng& rng);

/// Well-formed term reached from a random pure term by a few random explicit
/// steps.
TermPtr reachable_term(Rng& rng, const EngineConfig& cfg, int max_steps);

/// Binder list, decided match and pending pairs with no nested matchings and
/// well-formed components.
struct FlatMatching {
  NameList theta;
  DecidedMatch mu;
  Delta delta;
};
FlatMatching flat_matching(Rng& rng);

}  // namespace ppcem::gen
