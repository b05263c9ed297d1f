#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "em.hpp"
#include "generator.hpp"
#include "partial.hpp"
#include "strategies.hpp"

namespace ppcem::suites {

struct Result {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t aux = 0;  // suite-specific counter, see each suite
  std::vector<std::string> notes;

  bool ok() const { return failed == 0; }
  std::string summary() const;

  void note(const std::string& s) {
    if (notes.size() < 8) notes.push_back(s);
  }
};

/// Measure check on every step of count p-normalizations: the pair
/// (chain depth, size) drops lexicographically, the substitution rule drops
/// the depth strictly, every other rule keeps depth and drops size. aux
/// counts checked steps.
Result termination(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg);

/// Random divergences of bounded length joined by bounded bidirectional
/// search; exhausted searches without a meet are failures, capped ones are
/// inconclusive.
Result confluence(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg,
                  int diverge_len = 4, int join_depth = 8);

/// Every one-step parallel divergence from small terms closes in one parallel
/// step on each side.
Result diamond(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg);

/// Each implicit step is replayed in the explicit calculus: initialisation,
/// structural/matching steps, one resolution; the accumulated match forgets
/// to the compound value and the final terms agree up to alpha.
Result simulation(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg);

/// Each explicit step between terms with pure purifications projects onto
/// zero or one implicit step.
Result projection(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg);

/// The matching semantics is invariant under structural and matching steps on
/// matchings free of nested matchings.
Result semantics(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg);

/// Matching-driven selection admits at most one redex anywhere along its own
/// runs, and each admissible redex belongs to the unrestricted relation.
Result determinism(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg);

/// Explicit steps are reflected in the partial-substitution variant through
/// the translation, modulo exhaustive resolution of failed matchings.
Result partial_sim(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg);

/// Bounded join search over the variant's own relation. Confluence of the
/// variant is open; verdicts are reported, never assumed.
Result partial_confluence(std::uint64_t seed, std::uint32_t count, const EngineConfig& cfg,
                          int diverge_len = 4, int join_depth = 8);

/// The worked partial-substitution trace: the outer binding unlocks the inner
/// matching, ending with it solved.
bool partial_example_trace(const EngineConfig& cfg, std::string* msg = nullptr);

/// The same configuration witnesses that the variant reduces strictly more:
/// the explicit calculus cannot match the unlocking sequence.
bool partial_reverse_counterexample(const EngineConfig& cfg, std::string* msg = nullptr);

struct CompareRow {
  std::string ppc_before;
  std::string ppc_after;
  std::size_t em_steps = 0;
  bool sim_ok = false;
  bool projection_ok = false;
};

struct CompareReport {
  bool ok = true;
  bool budget_exhausted = false;
  std::string error;
  std::vector<CompareRow> rows;
  std::string final_term;
};

/// Runs the implicit and explicit engines side by side from a pure term:
/// every implicit step must be matched by an explicit sequence, and every
/// explicit step along the way must project correctly.
CompareReport compare(const TermPtr& t, std::size_t max_steps, const EngineConfig& cfg);

const std::vector<std::string>& suite_names();
std::optional<std::vector<Result>> run_suite(const std::string& name, std::uint64_t seed,
                                             std::uint32_t count, const EngineConfig& cfg);

}  // namespace ppcem::suites
