#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "name.hpp"

namespace ppcem {

class Term;
using TermPtr = std::shared_ptr<const Term>;
using Subst = std::map<Name, TermPtr>;

/// A decided match: failure, or a finite substitution. The third value of
/// meta-level matching ("wait") never appears here; see MatchOutcome.
struct DecidedMatch {
  bool failed = false;
  Subst bindings;

  static DecidedMatch fail() { return DecidedMatch{true, {}}; }
  static DecidedMatch subst(Subst b) { return DecidedMatch{false, std::move(b)}; }
  static DecidedMatch empty_subst() { return DecidedMatch{false, {}}; }

  bool is_subst() const { return !failed; }
  std::set<Name> domain() const;
};

/// Match state of the partial-substitution variant: failure, or the list of
/// matching variables already consumed (bindings are applied immediately and
/// not remembered).
struct TauMatch {
  bool failed = false;
  NameList used;  // kept sorted, duplicate-free

  static TauMatch fail() { return TauMatch{true, {}}; }
  static TauMatch none_used() { return TauMatch{false, {}}; }
  static TauMatch of(NameList names);

  bool contains(const Name& n) const;
};

using MatchState = std::variant<DecidedMatch, TauMatch>;

/// Pending work of a matching: (argument, pattern) pairs. The core calculus
/// treats this as a multiset; strategies read it as an ordered list, so the
/// representation keeps insertion order and multiset equality is computed
/// modulo order where it matters.
using MatchPair = std::pair<TermPtr, TermPtr>;
using Delta = std::vector<MatchPair>;

enum class Kind { Var, Matchable, App, SApp, Case, Matching };

class Term {
 public:
  Kind kind;
  Name name;            // Var, Matchable
  TermPtr first;        // App fun / SApp head / Case pattern / Matching body
  TermPtr second;       // App arg / SApp arg / Case body
  NameList binders;     // Case, Matching
  MatchState state;     // Matching
  Delta pending;        // Matching

  const DecidedMatch* decided() const { return std::get_if<DecidedMatch>(&state); }
  const TauMatch* tau() const { return std::get_if<TauMatch>(&state); }
};

// Construction. Binder lists must be duplicate-free (throws std::invalid_argument).
TermPtr var(Name n);
TermPtr var(const std::string& base);
TermPtr matchable(Name n);
TermPtr matchable(const std::string& base);
TermPtr app(TermPtr fun, TermPtr arg);
TermPtr sapp(TermPtr head, TermPtr arg);
TermPtr case_of(NameList binders, TermPtr pattern, TermPtr body);
TermPtr matching(TermPtr body, NameList binders, MatchState state, Delta pending);

/// Left-nested functional application f a1 a2 ... an.
TermPtr app_spine(TermPtr head, const std::vector<TermPtr>& args);

// -- Paths -------------------------------------------------------------------
//
// Subterms are addressed by child indices. For a matching node the children
// are: 0 the body, then the codomain terms of a substitution state in domain
// order, then the pending pairs interleaved (argument, pattern).

using Path = std::vector<int>;

int child_count(const Term& t);
TermPtr child(const TermPtr& t, int i);
TermPtr with_child(const TermPtr& t, int i, TermPtr c);
TermPtr subterm_at(const TermPtr& t, const Path& path);
TermPtr replace_at(const TermPtr& t, const Path& path, const TermPtr& replacement);

/// Preorder walk over all subterm occurrences, with their paths.
template <typename F>
void walk(const TermPtr& t, F&& fn) {
  Path path;
  auto rec = [&](auto&& self, const TermPtr& u) -> void {
    fn(static_cast<const Path&>(path), u);
    int n = child_count(*u);
    for (int i = 0; i < n; ++i) {
      path.push_back(i);
      self(self, child(u, i));
      path.pop_back();
    }
  };
  rec(rec, t);
}

// -- Predicates ---------------------------------------------------------------

/// Pure terms use neither structural application nor matchings.
bool is_pure(const TermPtr& t);
bool has_matching_node(const TermPtr& t);
/// True if some matching in t carries a used-variable state (partial world).
bool uses_tau_state(const TermPtr& t);

/// The stored-term convention: all binder names pairwise distinct and
/// disjoint from the free names of the whole term.
bool is_canonical(const TermPtr& t);

// -- Free names (fv / fm / fn) -------------------------------------------------

std::set<Name> free_variables(const TermPtr& t);
std::set<Name> free_matchables(const TermPtr& t);
std::set<Name> free_names(const TermPtr& t);

/// Largest freshness tag occurring anywhere in t (names, binders, domains).
std::uint32_t max_tag(const TermPtr& t);
NameSession session_for(const TermPtr& t);

// -- Substitution and renaming -------------------------------------------------

/// Capture-avoiding substitution of variables. Binders are renamed (tags
/// bumped via the session) whenever they would clash with the substitution,
/// and the result is re-canonicalized, so the operation is total.
TermPtr substitute(const TermPtr& t, const Subst& sigma, NameSession& session);
TermPtr substitute(const TermPtr& t, const DecidedMatch& mu, NameSession& session);

/// Renames binders as needed so the result satisfies the stored-term
/// convention. Never changes the alpha-class.
TermPtr canonicalize(const TermPtr& t, NameSession& session);

// -- Alpha equivalence ----------------------------------------------------------

/// Canonical serialization: two terms have equal keys iff they are equal up
/// to consistent renaming of bound names. With delta_as_multiset, pending
/// pairs are additionally identified modulo order (the core multiset view).
std::string alpha_key(const TermPtr& t, bool delta_as_multiset = false);
bool alpha_equiv(const TermPtr& a, const TermPtr& b);
bool alpha_equiv_multiset(const TermPtr& a, const TermPtr& b);

// -- Measures -------------------------------------------------------------------

/// Term size; bot_size is the size of the failure term substituted by the
/// resolution rules, counted once per matching node.
std::size_t term_size(const TermPtr& t, std::size_t bot_size = 2);

/// Multiset of lengths of the maximal potentially-nested matching chains.
/// Links are nesting (a matching occurs inside another's pending pairs or
/// match codomain) or potential nesting (a binder of one matching occurs
/// free in those parts of another). Assumes the stored-term convention.
std::multiset<std::size_t> chain_depth(const TermPtr& t);

/// Dershowitz-Manna multiset order on naturals (total).
bool multiset_less(const std::multiset<std::size_t>& a, const std::multiset<std::size_t>& b);

// -- Meta-level match outcomes ----------------------------------------------------

/// Result of meta-level compound matching: a substitution, failure, or wait.
struct MatchOutcome {
  enum class K { Subst, Fail, Wait };
  K k = K::Wait;
  Subst bindings;

  static MatchOutcome subst(Subst b) { return {K::Subst, std::move(b)}; }
  static MatchOutcome fail() { return {K::Fail, {}}; }
  static MatchOutcome wait() { return {K::Wait, {}}; }

  bool is_subst() const { return k == K::Subst; }
  bool is_fail() const { return k == K::Fail; }
  bool is_wait() const { return k == K::Wait; }
};

/// Commutative disjoint union enforcing pattern linearity: failure absorbs
/// everything (even wait), wait absorbs substitutions, and overlapping
/// domains fail.
MatchOutcome disjoint_union(const MatchOutcome& a, const MatchOutcome& b);
DecidedMatch disjoint_union(const DecidedMatch& a, const DecidedMatch& b);

bool outcome_equiv(const MatchOutcome& a, const MatchOutcome& b);

// -- Engine configuration ----------------------------------------------------------

/// The failure term and its size. Any closed pure normal term may be used;
/// the default is [x] ^x -> x.
struct EngineConfig {
  TermPtr bot;
  std::size_t bot_size;

  static EngineConfig standard();
  static EngineConfig with_bot(TermPtr b);
};

TermPtr default_bot();

}  // namespace ppcem
