#include "ppcem/ppcem.h"

#include <cstring>
#include <sstream>
#include <string>

#include "em.hpp"
#include "partial.hpp"
#include "ppc.hpp"
#include "strategies.hpp"
#include "suites.hpp"
#include "syntax.hpp"

using namespace ppcem;

struct ppcem_ctx {
  EngineConfig cfg = EngineConfig::standard();
  std::string error;
  int err_line = 0;
  int err_col = 0;

  void clear() {
    error.clear();
    err_line = err_col = 0;
  }
  ppcem_status set(ppcem_status st, const std::string& msg, int line = 0, int col = 0) {
    error = msg;
    err_line = line;
    err_col = col;
    return st;
  }
};

struct ppcem_term {
  TermPtr t;
};

struct TraceStep {
  Path path;
  std::string rule;
  std::string term;
};

struct ppcem_run {
  ppcem_status status = PPCEM_OK;
  TermPtr final_term;
  std::vector<TraceStep> steps;
  std::string stuck;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string stuck_report_text(const std::vector<em::StuckPair>& stuck) {
  std::ostringstream os;
  for (const em::StuckPair& s : stuck) {
    os << "stuck matching at path [";
    for (std::size_t i = 0; i < s.matching_path.size(); ++i)
      os << (i ? "," : "") << s.matching_path[i];
    os << "], pair " << s.pair_index << ": " << s.reason << "\n";
  }
  return os.str();
}

}  // namespace

extern "C" {

ppcem_ctx* ppcem_ctx_new(void) { return new ppcem_ctx(); }

void ppcem_ctx_free(ppcem_ctx* ctx) { delete ctx; }

const char* ppcem_last_error(const ppcem_ctx* ctx) { return ctx ? ctx->error.c_str() : ""; }
int ppcem_last_error_line(const ppcem_ctx* ctx) { return ctx ? ctx->err_line : 0; }
int ppcem_last_error_col(const ppcem_ctx* ctx) { return ctx ? ctx->err_col : 0; }

ppcem_status ppcem_set_bot(ppcem_ctx* ctx, const char* src) {
  ctx->clear();
  try {
    TermPtr b = parse(src ? src : "", default_bot());
    em::validate_bot(b);
    ctx->cfg = EngineConfig::with_bot(std::move(b));
    return PPCEM_OK;
  } catch (const ParseError& e) {
    return ctx->set(PPCEM_ERR_PARSE, e.what(), e.line, e.col);
  } catch (const std::exception& e) {
    return ctx->set(PPCEM_ERR_INVALID, e.what());
  }
}

ppcem_term* ppcem_parse(ppcem_ctx* ctx, const char* src) {
  ctx->clear();
  try {
    return new ppcem_term{parse(src ? src : "", ctx->cfg.bot)};
  } catch (const ParseError& e) {
    ctx->set(PPCEM_ERR_PARSE, e.what(), e.line, e.col);
    return nullptr;
  } catch (const std::exception& e) {
    ctx->set(PPCEM_ERR_INVALID, e.what());
    return nullptr;
  }
}

void ppcem_term_free(ppcem_term* t) { delete t; }

char* ppcem_print(const ppcem_term* t) { return dup_string(print(t->t)); }

void ppcem_str_free(char* s) { delete[] s; }

int ppcem_is_pure(const ppcem_term* t) { return is_pure(t->t) ? 1 : 0; }
int ppcem_is_well_formed(const ppcem_term* t) { return em::is_well_formed(t->t) ? 1 : 0; }
int ppcem_alpha_equal(const ppcem_term* a, const ppcem_term* b) {
  return alpha_equiv(a->t, b->t) ? 1 : 0;
}

ppcem_run* ppcem_reduce(ppcem_ctx* ctx, const ppcem_term* t, const char* engine,
                        const char* strategy, uint32_t max_steps) {
  ctx->clear();
  std::string eng = engine ? engine : "em";
  std::string str = strategy && *strategy ? strategy : "full";
  try {
    auto run = std::make_unique<ppcem_run>();
    if (eng == "ppc") {
      if (str != "full") {
        ctx->set(PPCEM_ERR_INVALID, "the implicit engine only supports the 'full' strategy");
        return nullptr;
      }
      if (!is_pure(t->t)) {
        ctx->set(PPCEM_ERR_INVALID, "the implicit engine needs a pure term");
        return nullptr;
      }
      NameSession session = session_for(t->t);
      TermPtr cur = canonicalize(t->t, session);
      for (uint32_t i = 0; i < max_steps; ++i) {
        std::vector<ppc::Redex> rs = ppc::redexes(cur);
        if (rs.empty()) break;
        cur = ppc::step(cur, rs.front(), ctx->cfg, session);
        run->steps.push_back({rs.front().path, "BetaMatch", print(cur)});
      }
      run->status = ppc::redexes(cur).empty() ? PPCEM_OK : PPCEM_ERR_BUDGET;
      run->final_term = cur;
    } else if (eng == "em") {
      auto s = strat::by_name(str);
      if (!s) {
        ctx->set(PPCEM_ERR_INVALID, "unknown strategy '" + str + "'");
        return nullptr;
      }
      NameSession session = session_for(t->t);
      TermPtr start = canonicalize(t->t, session);
      strat::RunResult r = strat::run(start, *s, max_steps, ctx->cfg);
      for (const strat::TraceEntry& e : r.trace)
        run->steps.push_back({e.redex.path, em::rule_name(e.redex.tag), print(e.after)});
      run->status = r.verdict == strat::Verdict::NormalForm ? PPCEM_OK : PPCEM_ERR_BUDGET;
      run->final_term = r.final_term;
      run->stuck = stuck_report_text(em::stuck_matchings(r.final_term));
    } else if (eng == "partial") {
      if (str != "full") {
        ctx->set(PPCEM_ERR_INVALID, "the partial engine only supports the 'full' strategy");
        return nullptr;
      }
      TermPtr start = ps::translate(t->t);
      strat::RunResult r = ps::run(start, max_steps, ctx->cfg);
      for (const strat::TraceEntry& e : r.trace)
        run->steps.push_back({e.redex.path, em::rule_name(e.redex.tag), print(e.after)});
      run->status = r.verdict == strat::Verdict::NormalForm ? PPCEM_OK : PPCEM_ERR_BUDGET;
      run->final_term = r.final_term;
      run->stuck = stuck_report_text(ps::stuck_matchings(r.final_term));
    } else {
      ctx->set(PPCEM_ERR_INVALID, "unknown engine '" + eng + "'");
      return nullptr;
    }
    return run.release();
  } catch (const std::exception& e) {
    ctx->set(PPCEM_ERR_INVALID, e.what());
    return nullptr;
  }
}

void ppcem_run_free(ppcem_run* r) { delete r; }

ppcem_status ppcem_run_status(const ppcem_run* r) { return r->status; }

ppcem_term* ppcem_run_final(const ppcem_run* r) { return new ppcem_term{r->final_term}; }

uint32_t ppcem_run_steps(const ppcem_run* r) { return static_cast<uint32_t>(r->steps.size()); }

const char* ppcem_run_rule(const ppcem_run* r, uint32_t i) {
  return i < r->steps.size() ? r->steps[i].rule.c_str() : "";
}

uint32_t ppcem_run_path(const ppcem_run* r, uint32_t i, uint32_t* out, uint32_t cap) {
  if (i >= r->steps.size()) return 0;
  const Path& p = r->steps[i].path;
  for (uint32_t k = 0; k < p.size() && k < cap; ++k) out[k] = static_cast<uint32_t>(p[k]);
  return static_cast<uint32_t>(p.size());
}

char* ppcem_run_term(const ppcem_run* r, uint32_t i) {
  return dup_string(i < r->steps.size() ? r->steps[i].term : "");
}

char* ppcem_run_stuck_report(const ppcem_run* r) { return dup_string(r->stuck); }

char* ppcem_run_trace_json(const ppcem_run* r) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r->steps.size(); ++i) {
    if (i) os << ",";
    os << "{\"step\":" << i + 1 << ",\"path\":[";
    const Path& p = r->steps[i].path;
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p[k];
    os << "],\"rule\":\"" << json_escape(r->steps[i].rule) << "\",\"term\":\""
       << json_escape(r->steps[i].term) << "\"}";
  }
  os << "]";
  return dup_string(os.str());
}

ppcem_status ppcem_compare(ppcem_ctx* ctx, const ppcem_term* t, uint32_t max_steps, char** report) {
  ctx->clear();
  try {
    suites::CompareReport rep = suites::compare(t->t, max_steps, ctx->cfg);
    std::ostringstream os;
    if (!rep.error.empty()) {
      if (report) *report = dup_string(rep.error + "\n");
      return ctx->set(PPCEM_ERR_INVALID, rep.error);
    }
    os << "step | explicit steps | simulated | projection | implicit step\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      const suites::CompareRow& row = rep.rows[i];
      os << (i + 1) << " | " << row.em_steps << " | " << (row.sim_ok ? "ok" : "MISMATCH") << " | "
         << (row.projection_ok ? "ok" : "MISMATCH") << " | " << row.ppc_before << "  =>  "
         << row.ppc_after << "\n";
    }
    os << "final: " << rep.final_term << "\n";
    if (rep.budget_exhausted) os << "stopped: step budget exhausted\n";
    if (report) *report = dup_string(os.str());
    if (!rep.ok) return ctx->set(PPCEM_ERR_PROPERTY, "simulation or projection mismatch");
    return rep.budget_exhausted ? PPCEM_ERR_BUDGET : PPCEM_OK;
  } catch (const std::exception& e) {
    return ctx->set(PPCEM_ERR_INVALID, e.what());
  }
}

ppcem_status ppcem_check(ppcem_ctx* ctx, const char* suite, uint64_t seed, uint32_t count,
                         uint64_t* passed, uint64_t* failed, uint64_t* inconclusive, char** report) {
  ctx->clear();
  try {
    auto results = suites::run_suite(suite ? suite : "", seed, count, ctx->cfg);
    if (!results) {
      std::string names;
      for (const std::string& n : suites::suite_names()) names += (names.empty() ? "" : ", ") + n;
      return ctx->set(PPCEM_ERR_INVALID, "unknown suite '" + std::string(suite ? suite : "") +
                                             "' (expected one of: " + names + ")");
    }
    uint64_t p = 0, f = 0, inc = 0;
    std::ostringstream os;
    for (const suites::Result& r : *results) {
      p += r.passed;
      f += r.failed;
      inc += r.inconclusive;
      os << r.summary() << "\n";
    }
    if (passed) *passed = p;
    if (failed) *failed = f;
    if (inconclusive) *inconclusive = inc;
    if (report) *report = dup_string(os.str());
    if (f) return ctx->set(PPCEM_ERR_PROPERTY, "property failures in suite");
    return PPCEM_OK;
  } catch (const std::exception& e) {
    return ctx->set(PPCEM_ERR_INVALID, e.what());
  }
}

}  // extern "C"
