#pragma once

// Shared shorthand for the test suites.

#include <string>
#include <vector>

#include "em.hpp"
#include "partial.hpp"
#include "ppc.hpp"
#include "strategies.hpp"
#include "syntax.hpp"
#include "term.hpp"

namespace ts {

using namespace ppcem;

inline TermPtr V(const std::string& s) { return var(s); }
inline TermPtr M(const std::string& s) { return matchable(s); }
inline TermPtr A(TermPtr f, TermPtr a) { return app(std::move(f), std::move(a)); }
inline TermPtr S(TermPtr h, TermPtr a) { return sapp(std::move(h), std::move(a)); }

inline NameList names(std::initializer_list<std::string> bs) {
  NameList out;
  for (const auto& b : bs) out.push_back(name(b));
  return out;
}

inline TermPtr lam(std::initializer_list<std::string> theta, TermPtr p, TermPtr b) {
  return case_of(names(theta), std::move(p), std::move(b));
}

inline TermPtr P(const std::string& src) { return parse(src); }

inline std::set<Name> nameset(std::initializer_list<std::string> bs) {
  std::set<Name> out;
  for (const auto& b : bs) out.insert(name(b));
  return out;
}

inline TermPtr canon(TermPtr t) {
  NameSession s = session_for(t);
  return canonicalize(t, s);
}

}  // namespace ts
