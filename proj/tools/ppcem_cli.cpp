// Command-line front end. Everything goes through the shared library's C
// interface; no core headers are used here.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppcem/ppcem.h"

namespace {

struct CtxDeleter {
  void operator()(ppcem_ctx* c) const { ppcem_ctx_free(c); }
};
struct TermDeleter {
  void operator()(ppcem_term* t) const { ppcem_term_free(t); }
};
struct RunDeleter {
  void operator()(ppcem_run* r) const { ppcem_run_free(r); }
};

using Ctx = std::unique_ptr<ppcem_ctx, CtxDeleter>;
using Term = std::unique_ptr<ppcem_term, TermDeleter>;
using Run = std::unique_ptr<ppcem_run, RunDeleter>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  ppcem_str_free(s);
  return out;
}

int exit_for(ppcem_status st) {
  switch (st) {
    case PPCEM_OK: return 0;
    case PPCEM_ERR_PARSE: return 3;
    case PPCEM_ERR_BUDGET: return 2;
    default: return 1;
  }
}

int report_error(const ppcem_ctx* ctx, ppcem_status st) {
  std::fprintf(stderr, "error: %s\n", ppcem_last_error(ctx));
  return exit_for(st);
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pattern-calculus laboratory: implicit, explicit and partial-substitution engines"};
  app.require_subcommand(1);

  std::string bot;
  std::string term_src;
  std::string engine = "em";
  std::string strategy = "full";
  std::uint32_t max_steps = 1000;
  bool trace = false;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::uint32_t count = 200;
  std::string suite;

  auto add_bot = [&](CLI::App* cmd) {
    cmd->add_option("--bot", bot, "expression overriding the failure term (closed, pure, normal)");
  };

  CLI::App* cmd_parse = app.add_subcommand("parse", "parse a term and print it back");
  cmd_parse->add_option("term", term_src, "term in concrete syntax")->required();
  add_bot(cmd_parse);

  CLI::App* cmd_reduce = app.add_subcommand("reduce", "reduce a term");
  cmd_reduce->add_option("term", term_src, "term in concrete syntax")->required();
  cmd_reduce->add_option("--engine", engine, "ppc | em | partial")->capture_default_str();
  cmd_reduce->add_option("--strategy", strategy, "full | df-lr | df-reordered | matching-driven")
      ->capture_default_str();
  cmd_reduce->add_option("--max-steps", max_steps, "step budget")->capture_default_str();
  cmd_reduce->add_flag("--trace", trace, "print one line per reduction step");
  cmd_reduce->add_option("--format", format, "text | json")->capture_default_str();
  add_bot(cmd_reduce);

  CLI::App* cmd_compare = app.add_subcommand("compare", "run the implicit and explicit engines side by side");
  cmd_compare->add_option("term", term_src, "pure term in concrete syntax")->required();
  cmd_compare->add_option("--max-steps", max_steps, "implicit step budget")->capture_default_str();
  add_bot(cmd_compare);

  CLI::App* cmd_check = app.add_subcommand("check", "run a property suite");
  cmd_check->add_option("suite", suite,
                        "termination | confluence | simulation | semantics | determinism | partial")
      ->required();
  cmd_check->add_option("--seed", seed, "random seed")->capture_default_str();
  cmd_check->add_option("--count", count, "number of instances")->capture_default_str();
  add_bot(cmd_check);

  CLI11_PARSE(app, argc, argv);

  Ctx ctx(ppcem_ctx_new());
  if (!bot.empty()) {
    ppcem_status st = ppcem_set_bot(ctx.get(), bot.c_str());
    if (st != PPCEM_OK) return report_error(ctx.get(), st);
  }

  if (cmd_parse->parsed()) {
    Term t(ppcem_parse(ctx.get(), term_src.c_str()));
    if (!t) return report_error(ctx.get(), PPCEM_ERR_PARSE);
    std::printf("%s\n", take_string(ppcem_print(t.get())).c_str());
    return 0;
  }

  if (cmd_reduce->parsed()) {
    Term t(ppcem_parse(ctx.get(), term_src.c_str()));
    if (!t) return report_error(ctx.get(), PPCEM_ERR_PARSE);
    Run run(ppcem_reduce(ctx.get(), t.get(), engine.c_str(), strategy.c_str(), max_steps));
    if (!run) return report_error(ctx.get(), PPCEM_ERR_INVALID);

    ppcem_status st = ppcem_run_status(run.get());
    Term final_term(ppcem_run_final(run.get()));
    std::string final_str = take_string(ppcem_print(final_term.get()));
    std::string verdict = st == PPCEM_OK ? "normal-form" : "budget-exhausted";
    std::uint32_t steps = ppcem_run_steps(run.get());
    std::string stuck = take_string(ppcem_run_stuck_report(run.get()));

    if (format == "json") {
      std::printf("{\"final\":\"%s\",\"verdict\":\"%s\",\"steps\":%u", json_escape(final_str).c_str(),
                  verdict.c_str(), steps);
      if (trace) std::printf(",\"trace\":%s", take_string(ppcem_run_trace_json(run.get())).c_str());
      std::printf("}\n");
    } else {
      if (trace) {
        std::vector<std::uint32_t> path(64);
        for (std::uint32_t i = 0; i < steps; ++i) {
          std::uint32_t len = ppcem_run_path(run.get(), i, path.data(),
                                             static_cast<std::uint32_t>(path.size()));
          if (len > path.size()) {
            path.resize(len);
            ppcem_run_path(run.get(), i, path.data(), len);
          }
          std::string p;
          for (std::uint32_t k = 0; k < len; ++k) p += (k ? "," : "") + std::to_string(path[k]);
          std::printf("%4u. %-20s @ [%s]  %s\n", i + 1, ppcem_run_rule(run.get(), i), p.c_str(),
                      take_string(ppcem_run_term(run.get(), i)).c_str());
        }
      }
      std::printf("final: %s\n", final_str.c_str());
      std::printf("verdict: %s\n", verdict.c_str());
      std::printf("steps: %u\n", steps);
      if (!stuck.empty()) std::printf("%s", stuck.c_str());
    }
    return exit_for(st);
  }

  if (cmd_compare->parsed()) {
    Term t(ppcem_parse(ctx.get(), term_src.c_str()));
    if (!t) return report_error(ctx.get(), PPCEM_ERR_PARSE);
    char* report = nullptr;
    ppcem_status st = ppcem_compare(ctx.get(), t.get(), max_steps, &report);
    std::printf("%s", take_string(report).c_str());
    if (st == PPCEM_ERR_INVALID) return report_error(ctx.get(), st);
    return exit_for(st);
  }

  if (cmd_check->parsed()) {
    char* report = nullptr;
    std::uint64_t passed = 0, failed = 0, inconclusive = 0;
    ppcem_status st =
        ppcem_check(ctx.get(), suite.c_str(), seed, count, &passed, &failed, &inconclusive, &report);
    if (st == PPCEM_ERR_INVALID) return report_error(ctx.get(), st);
    std::printf("%s", take_string(report).c_str());
    std::printf("total: %llu passed, %llu failed, %llu inconclusive\n",
                static_cast<unsigned long long>(passed), static_cast<unsigned long long>(failed),
                static_cast<unsigned long long>(inconclusive));
    return exit_for(st);
  }

  return 0;
}
