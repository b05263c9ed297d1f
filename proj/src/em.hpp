#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ppc.hpp"
#include "term.hpp"

namespace ppcem::em {

/// One tag per rule. The first fifteen are the explicit-matching rules
/// (initialisation, two structural, nine matching, three resolution); the
/// Partial* tags belong to the partial-substitution variant and are never
/// produced by this engine.
enum class RuleTag {
  InitB,
  StructHat,
  StructBullet,
  MatchBind,
  MatchConst,
  MatchDecompose,
  FailConstMismatch,
  FailSAppVsConst,
  FailCaseVsConst,
  FailConstVsSApp,
  FailCaseVsSApp,
  FailCasePattern,
  ResolveSubst,
  ResolveDomMismatch,
  ResolveFail,
  PartialBind,
  PartialBindReuse,
  PartialResolveComplete,
  PartialResolveIncomplete,
  PartialResolveFail,
};

const char* rule_name(RuleTag tag);
std::optional<RuleTag> rule_from_name(const std::string& s);

bool is_match_pair_rule(RuleTag tag);
bool is_p_rule(RuleTag tag);  // structural, matching or resolution (not InitB)

/// A term position plus the rule applicable there. For matching-pair rules
/// the path addresses the selected pair's argument slot inside the matching
/// node; for every other rule it addresses the redex subterm itself.
struct Redex {
  Path path;
  RuleTag tag;

  bool operator==(const Redex&) const = default;
};

/// Explicit data structures d ::= ^x | t@t and matchable forms m ::= d | case.
bool is_em_data_structure(const TermPtr& t);
bool is_em_matchable_form(const TermPtr& t);

/// The forgetful map: structural applications become functional ones;
/// matchings are mapped componentwise. Pure terms are returned unchanged.
TermPtr forget(const TermPtr& t);

/// A term is well-formed when it can be rebuilt from its forgetful image by
/// structural-application steps alone; structurally, every structural
/// application must have a matchable or another structural application as
/// its head.
bool is_well_formed(const TermPtr& t);

/// Which matching rule, if any, consumes the pending pair (a, p) under theta.
std::optional<RuleTag> pair_rule(const NameList& theta, const TermPtr& a, const TermPtr& p);

/// Builds the redex for a matching rule acting on pair k of the matching node
/// at mpath.
Redex make_pair_redex(const Path& mpath, const TermPtr& matching_node, int k, RuleTag tag);

/// Index of the pending pair a matching-rule redex addresses, -1 otherwise.
int pair_index_of(const TermPtr& t, const Redex& r);

/// Every redex of the unrestricted relation, leftmost-outermost, pairs of a
/// matching enumerated left to right. Terms carrying used-variable states are
/// rejected.
std::vector<Redex> redexes(const TermPtr& t);

enum class DecomposePlacement { Front, Back };

TermPtr step(const TermPtr& t, const Redex& r, const EngineConfig& cfg, NameSession& session,
             DecomposePlacement placement = DecomposePlacement::Front);

struct StepRecord {
  TermPtr before;
  Redex redex;
  TermPtr after;
};
using StepObserver = std::function<void(const StepRecord&)>;

/// Normal form under the subsystem that computes existing matchings but never
/// creates new ones (no initialisation steps). Terminates unconditionally.
TermPtr normalize_p(const TermPtr& t, const EngineConfig& cfg, NameSession& session,
                    const StepObserver& observer = {});

struct Purified {
  TermPtr term;
  bool pure;
};

/// Forgetful image of the p-normal form. Not pure when an unsolvable matching
/// remains.
Purified purify(const TermPtr& t, const EngineConfig& cfg, NameSession& session);

/// Semantics of a matching: the disjoint union of the forgotten partial match
/// with the compound matches of the forgotten pending pairs. Components must
/// not contain matchings. May be wait.
MatchOutcome matching_semantics(const NameList& theta, const DecidedMatch& mu, const Delta& delta);

struct ParallelOverflow : std::runtime_error {
  explicit ParallelOverflow(const std::string& msg) : std::runtime_error(msg) {}
};

/// All one-step parallel reducts, duplicate-free up to alpha. The set is
/// exponential; budget bounds the input size and the enumeration, and
/// exceeding it raises ParallelOverflow rather than truncating.
std::vector<TermPtr> parallel_reducts(const TermPtr& t, std::size_t budget,
                                      const EngineConfig& cfg = EngineConfig::standard());

/// Whether target is reachable in one parallel step (modulo alpha and pending
/// pair order).
bool parallel_derivable(const TermPtr& t, const TermPtr& target, std::size_t budget,
                        const EngineConfig& cfg = EngineConfig::standard());

/// Deterministic replay of one implicit step inside the explicit calculus:
/// initialisation at the redex, then structural and matching steps mirroring
/// compound matching, then one resolution. Checks on the way out that the
/// forgotten partial match equals the compound-match value.
struct Simulation {
  bool ok = false;
  std::string error;
  std::vector<Redex> steps;
  TermPtr final_term;
  bool mu_checkpoint_ok = false;
};
Simulation simulate_ppc_step(const TermPtr& t, const ppc::Redex& r, const EngineConfig& cfg,
                             NameSession& session);

struct StuckPair {
  Path matching_path;
  int pair_index;
  std::string reason;
};
/// Pending pairs no rule applies to, with the reason (pattern not a matchable
/// form, argument not a matchable form, or a binding that would capture
/// matching variables).
std::vector<StuckPair> stuck_matchings(const TermPtr& t);

/// The failure term must be closed, pure and normal.
void validate_bot(const TermPtr& bot);

}  // namespace ppcem::em
