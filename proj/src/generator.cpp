#include "generator.hpp"

#include <algorithm>

#include "em.hpp"
#include "ppc.hpp"

namespace ppcem::gen {

namespace {

const std::vector<std::string>& var_pool() {
  static const std::vector<std::string> p = {"x", "y", "z", "u", "v", "w"};
  return p;
}

const std::vector<std::string>& const_pool() {
  static const std::vector<std::string> p = {"c", "d", "e", "f", "g"};
  return p;
}

int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Name pick_name(Rng& rng, const std::vector<std::string>& pool) {
  return name(pool[pick(rng, static_cast<int>(pool.size()))]);
}

NameList pick_theta(Rng& rng, int max_len) {
  std::vector<std::string> pool = var_pool();
  std::shuffle(pool.begin(), pool.end(), rng);
  int len = pick(rng, max_len + 1);
  NameList theta;
  for (int i = 0; i < len; ++i) theta.push_back(name(pool[i]));
  return theta;
}

TermPtr leaf(Rng& rng, const Config& cfg) {
  if (chance(rng, 0.5 * cfg.match_bias / (cfg.match_bias + 1.0) + 0.25))
    return matchable(pick_name(rng, chance(rng, 0.6) ? const_pool() : var_pool()));
  return var(pick_name(rng, var_pool()));
}

// Random data-ish term: an application spine under a constructor.
TermPtr data_term(Rng& rng, int budget) {
  TermPtr t = matchable(pick_name(rng, const_pool()));
  int args = pick(rng, std::max(1, budget / 2));
  for (int i = 0; i < args; ++i) {
    TermPtr a;
    if (budget > 2 && chance(rng, 0.4))
      a = data_term(rng, budget / 2);
    else if (chance(rng, 0.4))
      a = var(pick_name(rng, var_pool()));
    else
      a = matchable(pick_name(rng, const_pool()));
    t = app(t, a);
  }
  return t;
}

// Pattern over theta: a data spine whose leaves mix theta matchables and
// constructors. May reuse a theta name (nonlinear) or sit under a variable
// head (waiting) with small probability.
TermPtr pattern_term(Rng& rng, const NameList& theta, int budget, bool allow_weird) {
  if (allow_weird && chance(rng, 0.08)) return var(pick_name(rng, var_pool()));
  if (budget <= 1 || chance(rng, 0.3)) {
    if (!theta.empty() && chance(rng, 0.7))
      return matchable(theta[pick(rng, static_cast<int>(theta.size()))]);
    return matchable(pick_name(rng, const_pool()));
  }
  TermPtr t = matchable(pick_name(rng, const_pool()));
  int args = 1 + pick(rng, 2);
  for (int i = 0; i < args; ++i) t = app(t, pattern_term(rng, theta, budget / 2, allow_weird));
  return t;
}

// Instantiates a pattern into an argument that usually matches it.
TermPtr instantiate(Rng& rng, const TermPtr& pat, const NameList& theta) {
  switch (pat->kind) {
    case Kind::Matchable:
      if (std::find(theta.begin(), theta.end(), pat->name) != theta.end())
        return chance(rng, 0.8) ? data_term(rng, 3) : var(pick_name(rng, var_pool()));
      if (chance(rng, 0.15)) return matchable(pick_name(rng, const_pool()));  // likely mismatch
      return pat;
    case Kind::App:
      if (chance(rng, 0.1)) return data_term(rng, 3);
      return app(instantiate(rng, pat->first, theta), instantiate(rng, pat->second, theta));
    default:
      return data_term(rng, 3);
  }
}

MatchPair gen_pair(Rng& rng, const NameList& theta, int budget) {
  TermPtr pat = pattern_term(rng, theta, std::max(2, budget), true);
  TermPtr arg = chance(rng, 0.8) ? instantiate(rng, pat, theta) : data_term(rng, budget);
  return {std::move(arg), std::move(pat)};
}

TermPtr gen(Rng& rng, const Config& cfg, int budget) {
  if (budget <= 1) return leaf(rng, cfg);
  double wa = 2.0 * cfg.app_bias, ws = cfg.pure ? 0.0 : 0.7, wc = 1.0,
         wm = cfg.pure ? 0.0 : 1.6, wl = 1.2, wr = 1.6;
  double total = wa + ws + wc + wm + wl + wr;
  double r = std::uniform_real_distribution<double>(0.0, total)(rng);
  if ((r -= wl) < 0) return leaf(rng, cfg);
  if ((r -= wa) < 0) {
    int left = 1 + pick(rng, budget - 1);
    return app(gen(rng, cfg, left), gen(rng, cfg, budget - left));
  }
  if ((r -= ws) < 0) {
    int left = 1 + pick(rng, budget - 1);
    return sapp(gen(rng, cfg, left), gen(rng, cfg, budget - left));
  }
  if ((r -= wc) < 0) {
    NameList theta = pick_theta(rng, 2);
    int left = 1 + pick(rng, budget - 1);
    TermPtr pattern = chance(rng, 0.6) ? pattern_term(rng, theta, left, true) : gen(rng, cfg, left);
    return case_of(std::move(theta), std::move(pattern), gen(rng, cfg, budget - left));
  }
  if ((r -= wr) < 0) {
    // an application of a case to an argument shaped after its pattern
    NameList theta = pick_theta(rng, 2);
    TermPtr pattern = pattern_term(rng, theta, std::max(2, budget / 3), true);
    TermPtr arg = chance(rng, 0.85) ? instantiate(rng, pattern, theta) : gen(rng, cfg, budget / 3);
    TermPtr body = gen(rng, cfg, std::max(1, budget / 4));
    return app(case_of(std::move(theta), std::move(pattern), std::move(body)), std::move(arg));
  }
  // matching with mostly consumable pending pairs
  NameList theta = pick_theta(rng, 2);
  Subst mu;
  if (chance(rng, 0.4))
    for (const Name& n : theta)
      if (chance(rng, 0.4)) mu.emplace(n, gen(rng, cfg, std::max(1, budget / 5)));
  MatchState st = chance(rng, 0.1) ? MatchState(DecidedMatch::fail())
                                   : MatchState(DecidedMatch::subst(std::move(mu)));
  Delta delta;
  int pairs = pick(rng, 3);
  for (int i = 0; i < pairs; ++i) delta.emplace_back(gen_pair(rng, theta, budget / 3));
  return matching(gen(rng, cfg, std::max(1, budget / 3)), std::move(theta), std::move(st),
                  std::move(delta));
}

TermPtr close_free_vars(const TermPtr& t, Rng& rng) {
  std::set<Name> fv = free_variables(t);
  if (fv.empty()) return t;
  NameList theta(fv.begin(), fv.end());
  TermPtr pattern = matchable(pick_name(rng, const_pool()));
  for (const Name& n : theta) pattern = app(pattern, matchable(n));
  return case_of(std::move(theta), std::move(pattern), t);
}

}  // namespace

TermPtr term(Rng& rng, const Config& cfg) {
  TermPtr t = gen(rng, cfg, std::max(1, cfg.size_budget));
  if (cfg.close_vars) t = close_free_vars(t, rng);
  NameSession session = session_for(t);
  return canonicalize(t, session);
}

TermPtr pure_redex_term(Rng& rng) {
  for (int tries = 0; tries < 200; ++tries) {
    NameList theta = pick_theta(rng, 2);
    TermPtr pat = pattern_term(rng, theta, 5, false);
    TermPtr arg = instantiate(rng, pat, theta);
    Config body_cfg;
    body_cfg.size_budget = 5;
    body_cfg.pure = true;
    TermPtr body = gen(rng, body_cfg, 4);
    if (ppc::compound_match(arg, pat, theta).is_wait()) continue;
    TermPtr redex = app(case_of(theta, pat, body), arg);
    switch (pick(rng, 4)) {
      case 0:
        break;
      case 1:
        redex = app(matchable(pick_name(rng, const_pool())), redex);
        break;
      case 2:
        redex = app(redex, data_term(rng, 3));
        break;
      default:
        redex = case_of({}, matchable(pick_name(rng, const_pool())), redex);
        break;
    }
    NameSession session = session_for(redex);
    TermPtr out = canonicalize(redex, session);
    if (!ppc::redexes(out).empty()) return out;
  }
  throw std::logic_error("pure_redex_term: generation failed");
}

TermPtr reachable_term(Rng& rng, const EngineConfig& cfg, int max_steps) {
  Config pc;
  pc.size_budget = 10;
  pc.pure = true;
  TermPtr t = chance(rng, 0.7) ? pure_redex_term(rng) : term(rng, pc);
  NameSession session = session_for(t);
  int steps = pick(rng, max_steps + 1);
  for (int i = 0; i < steps; ++i) {
    std::vector<em::Redex> rs = em::redexes(t);
    if (rs.empty()) break;
    t = em::step(t, rs[pick(rng, static_cast<int>(rs.size()))], cfg, session);
  }
  return t;
}

FlatMatching flat_matching(Rng& rng) {
  FlatMatching fm;
  fm.theta = pick_theta(rng, 2);
  Subst mu;
  for (const Name& n : fm.theta)
    if (chance(rng, 0.4)) mu.emplace(n, data_term(rng, 3));
  fm.mu = chance(rng, 0.15) ? DecidedMatch::fail() : DecidedMatch::subst(std::move(mu));
  int pairs = 1 + pick(rng, 2);
  for (int i = 0; i < pairs; ++i) fm.delta.emplace_back(gen_pair(rng, fm.theta, 4));
  return fm;
}

}  // namespace ppcem::gen
