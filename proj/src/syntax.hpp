#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "term.hpp"

namespace ppcem {

struct ParseError : std::runtime_error {
  int line;
  int col;
  std::vector<std::string> expected;

  ParseError(int line_, int col_, const std::string& msg, std::vector<std::string> exp = {})
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                           ": " + msg),
        line(line_),
        col(col_),
        expected(std::move(exp)) {}
};

/// Grammar:
///   term  ::= lam | app
///   lam   ::= '[' names ']' term '->' term
///   names ::= e | name (',' name)*
///   app   ::= app atom | app '@' atom | atom      (left-associative;
///             juxtaposition is functional application, '@' is structural)
///   atom  ::= name | '^' name | '(' term ')'
///           | atom '[' names ';' match ';' delta ']'
///   match ::= '#fail' | '{' (name ':=' term (',' name ':=' term)*)? '}'
///           | '{' name (',' name)* '}'            (used-variable list)
///   delta ::= e | '(' term '~' term ')' (',' '(' term '~' term ')')*
///   name  ::= [a-z][a-zA-Z0-9_]*
///
/// '#bot' is surface sugar for the configured failure term. Delta pairs are
/// written (argument ~ pattern). Duplicate names in one binder list are
/// rejected.
TermPtr parse(const std::string& src, const TermPtr& bot);
TermPtr parse(const std::string& src);

/// Pretty-printer, inverse of parse up to whitespace on terms whose names all
/// carry tag 0. Binders with nonzero tags (or that would capture) are printed
/// under fresh digit-suffixed names, so parse(print(t)) is alpha-equivalent
/// to t whenever the free names of t are tag 0.
std::string print(const TermPtr& t);

}  // namespace ppcem
