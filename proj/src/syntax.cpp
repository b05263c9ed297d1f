#include "syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ppcem {

namespace {

enum class Tok {
  LBrack,
  RBrack,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semi,
  Assign,  // :=
  Arrow,   // ->
  Tilde,
  At,
  Hat,
  Bot,   // #bot
  Fail,  // #fail
  Ident,
  End,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Assign: return "':='";
    case Tok::Arrow: return "'->'";
    case Tok::Tilde: return "'~'";
    case Tok::At: return "'@'";
    case Tok::Hat: return "'^'";
    case Tok::Bot: return "'#bot'";
    case Tok::Fail: return "'#fail'";
    case Tok::Ident: return "name";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, int l, int c) { out.push_back({k, std::move(text), l, c}); };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    int l = line, cl = col;
    switch (c) {
      case '[': push(Tok::LBrack, "[", l, cl); ++i; ++col; continue;
      case ']': push(Tok::RBrack, "]", l, cl); ++i; ++col; continue;
      case '(': push(Tok::LParen, "(", l, cl); ++i; ++col; continue;
      case ')': push(Tok::RParen, ")", l, cl); ++i; ++col; continue;
      case '{': push(Tok::LBrace, "{", l, cl); ++i; ++col; continue;
      case '}': push(Tok::RBrace, "}", l, cl); ++i; ++col; continue;
      case ',': push(Tok::Comma, ",", l, cl); ++i; ++col; continue;
      case ';': push(Tok::Semi, ";", l, cl); ++i; ++col; continue;
      case '~': push(Tok::Tilde, "~", l, cl); ++i; ++col; continue;
      case '@': push(Tok::At, "@", l, cl); ++i; ++col; continue;
      case '^': push(Tok::Hat, "^", l, cl); ++i; ++col; continue;
      default: break;
    }
    if (c == ':' && i + 1 < src.size() && src[i + 1] == '=') {
      push(Tok::Assign, ":=", l, cl);
      i += 2;
      col += 2;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      push(Tok::Arrow, "->", l, cl);
      i += 2;
      col += 2;
      continue;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && std::isalpha(static_cast<unsigned char>(src[j]))) ++j;
      std::string word = src.substr(i, j - i);
      if (word == "#bot") {
        push(Tok::Bot, word, l, cl);
      } else if (word == "#fail") {
        push(Tok::Fail, word, l, cl);
      } else {
        throw ParseError(l, cl, "unknown keyword '" + word + "'", {"'#bot'", "'#fail'"});
      }
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      push(Tok::Ident, src.substr(i, j - i), l, cl);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, TermPtr bot) : toks_(std::move(toks)), bot_(std::move(bot)) {}

  TermPtr parse_all() {
    TermPtr t = parse_term();
    expect(Tok::End, {"end of input"});
    return t;
  }

 private:
  std::vector<Token> toks_;
  TermPtr bot_;
  std::size_t pos_ = 0;

  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + static_cast<std::size_t>(ahead);
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
    const Token& t = peek();
    throw ParseError(t.line, t.col, msg + ", got " + tok_name(t.kind), std::move(expected));
  }

  Token expect(Tok k, std::vector<std::string> expected) {
    if (peek().kind != k) fail("expected " + std::string(tok_name(k)), std::move(expected));
    return take();
  }

  NameList parse_names(Tok closer) {
    NameList names;
    if (peek().kind == closer) return names;
    for (;;) {
      Token id = expect(Tok::Ident, {"name"});
      Name n = name(id.text);
      if (std::find(names.begin(), names.end(), n) != names.end())
        throw ParseError(id.line, id.col, "duplicate name '" + id.text + "' in binder list");
      names.push_back(std::move(n));
      if (peek().kind != Tok::Comma) break;
      take();
    }
    return names;
  }

  TermPtr parse_term() {
    if (peek().kind == Tok::LBrack) {
      take();
      NameList names = parse_names(Tok::RBrack);
      expect(Tok::RBrack, {"']'"});
      TermPtr pattern = parse_term();
      expect(Tok::Arrow, {"'->'"});
      TermPtr body = parse_term();
      return case_of(std::move(names), std::move(pattern), std::move(body));
    }
    return parse_app();
  }

  bool starts_atom(Tok k) const {
    return k == Tok::Ident || k == Tok::Hat || k == Tok::LParen || k == Tok::Bot;
  }

  TermPtr parse_app() {
    TermPtr t = parse_atom();
    for (;;) {
      if (peek().kind == Tok::At) {
        take();
        t = sapp(std::move(t), parse_atom());
      } else if (starts_atom(peek().kind)) {
        t = app(std::move(t), parse_atom());
      } else {
        break;
      }
    }
    return t;
  }

  TermPtr parse_atom() {
    TermPtr t;
    switch (peek().kind) {
      case Tok::Ident:
        t = var(take().text);
        break;
      case Tok::Hat: {
        take();
        Token id = expect(Tok::Ident, {"name"});
        t = matchable(id.text);
        break;
      }
      case Tok::LParen: {
        take();
        t = parse_term();
        expect(Tok::RParen, {"')'"});
        break;
      }
      case Tok::Bot:
        take();
        t = bot_;
        break;
      default:
        fail("expected a term", {"name", "'^'", "'('", "'#bot'", "'['"});
    }
    while (peek().kind == Tok::LBrack) {
      take();
      NameList names = parse_names(Tok::Semi);
      expect(Tok::Semi, {"';'"});
      MatchState state = parse_match(names);
      expect(Tok::Semi, {"';'"});
      Delta delta = parse_delta();
      expect(Tok::RBrack, {"']'"});
      t = matching(std::move(t), std::move(names), std::move(state), std::move(delta));
    }
    return t;
  }

  MatchState parse_match(const NameList&) {
    if (peek().kind == Tok::Fail) {
      take();
      return DecidedMatch::fail();
    }
    expect(Tok::LBrace, {"'{'", "'#fail'"});
    if (peek().kind == Tok::RBrace) {
      take();
      return DecidedMatch::empty_subst();
    }
    Token first = expect(Tok::Ident, {"name", "'}'"});
    if (peek().kind == Tok::Assign) {
      Subst bindings;
      Token id = first;
      for (;;) {
        expect(Tok::Assign, {"':='"});
        TermPtr v = parse_term();
        if (!bindings.emplace(name(id.text), std::move(v)).second)
          throw ParseError(id.line, id.col, "name '" + id.text + "' bound twice");
        if (peek().kind != Tok::Comma) break;
        take();
        id = expect(Tok::Ident, {"name"});
      }
      expect(Tok::RBrace, {"'}'"});
      return DecidedMatch::subst(std::move(bindings));
    }
    // used-variable list
    NameList used{name(first.text)};
    while (peek().kind == Tok::Comma) {
      take();
      Token id = expect(Tok::Ident, {"name"});
      Name n = name(id.text);
      if (std::find(used.begin(), used.end(), n) != used.end())
        throw ParseError(id.line, id.col, "duplicate name '" + id.text + "' in used list");
      used.push_back(std::move(n));
    }
    expect(Tok::RBrace, {"'}'"});
    return TauMatch::of(std::move(used));
  }

  Delta parse_delta() {
    Delta d;
    if (peek().kind == Tok::RBrack) return d;
    for (;;) {
      expect(Tok::LParen, {"'('", "']'"});
      TermPtr a = parse_term();
      expect(Tok::Tilde, {"'~'"});
      TermPtr p = parse_term();
      expect(Tok::RParen, {"')'"});
      d.emplace_back(std::move(a), std::move(p));
      if (peek().kind != Tok::Comma) break;
      take();
    }
    return d;
  }
};

}  // namespace

TermPtr parse(const std::string& src, const TermPtr& bot) {
  return Parser(lex(src), bot).parse_all();
}

TermPtr parse(const std::string& src) { return parse(src, default_bot()); }

// -- Printer ---------------------------------------------------------------------

namespace {

enum Level { kTerm = 0, kApp = 1, kAtom = 2 };

using PrintMap = std::map<Name, std::string>;

std::string free_print(const Name& n) { return to_string(n); }

std::string lookup(const PrintMap& m, const Name& n) {
  auto it = m.find(n);
  return it == m.end() ? free_print(n) : it->second;
}

struct Printer {
  std::string render(const TermPtr& t, int level, const PrintMap& vrn, const PrintMap& mrn) {
    switch (t->kind) {
      case Kind::Var:
        return lookup(vrn, t->name);
      case Kind::Matchable:
        return "^" + lookup(mrn, t->name);
      case Kind::App: {
        std::string s = render(t->first, kApp, vrn, mrn) + " " + render(t->second, kAtom, vrn, mrn);
        return level > kApp ? paren(s) : s;
      }
      case Kind::SApp: {
        std::string s = render(t->first, kApp, vrn, mrn) + " @ " + render(t->second, kAtom, vrn, mrn);
        return level > kApp ? paren(s) : s;
      }
      case Kind::Case: {
        std::set<std::string> avoid;
        for (const Name& n : free_matchables(t->first))
          if (!bound_by(t->binders, n)) avoid.insert(lookup(mrn, n));
        for (const Name& n : free_variables(t->second))
          if (!bound_by(t->binders, n)) avoid.insert(lookup(vrn, n));
        PrintMap vrn2 = vrn, mrn2 = mrn;
        std::string names = assign_binders(t->binders, avoid, vrn2, mrn2);
        std::string s = "[" + names + "] " + render(t->first, kTerm, vrn, mrn2) + " -> " +
                        render(t->second, kTerm, vrn2, mrn);
        return level > kTerm ? paren(s) : s;
      }
      case Kind::Matching: {
        std::set<std::string> avoid;
        for (const Name& n : free_variables(t->first))
          if (!bound_by(t->binders, n)) avoid.insert(lookup(vrn, n));
        for (const MatchPair& p : t->pending)
          for (const Name& n : free_matchables(p.second))
            if (!bound_by(t->binders, n)) avoid.insert(lookup(mrn, n));
        // domain keys and used-lists outside theta print literally; keep the
        // binder names clear of them
        if (const DecidedMatch* d = t->decided(); d && d->is_subst()) {
          for (const auto& [n, u] : d->bindings)
            if (!bound_by(t->binders, n)) avoid.insert(free_print(n));
        } else if (const TauMatch* tau = t->tau(); tau && !tau->failed) {
          for (const Name& n : tau->used)
            if (!bound_by(t->binders, n)) avoid.insert(free_print(n));
        }
        PrintMap vrn2 = vrn, mrn2 = mrn;
        std::string names = assign_binders(t->binders, avoid, vrn2, mrn2);

        std::string s = render(t->first, kAtom, vrn2, mrn) + "[" + names + "; ";
        if (const DecidedMatch* d = t->decided()) {
          if (d->failed) {
            s += "#fail";
          } else {
            s += "{";
            bool comma = false;
            for (const auto& [n, u] : d->bindings) {
              if (comma) s += ", ";
              comma = true;
              s += binder_or_free(t->binders, vrn2, n) + " := " + render(u, kTerm, vrn, mrn);
            }
            s += "}";
          }
        } else {
          const TauMatch* tau = t->tau();
          if (tau->failed) {
            s += "#fail";
          } else {
            s += "{";
            bool comma = false;
            for (const Name& n : tau->used) {
              if (comma) s += ", ";
              comma = true;
              s += binder_or_free(t->binders, vrn2, n);
            }
            s += "}";
          }
        }
        s += "; ";
        bool comma = false;
        for (const MatchPair& p : t->pending) {
          if (comma) s += ", ";
          comma = true;
          s += "(" + render(p.first, kTerm, vrn, mrn) + " ~ " + render(p.second, kTerm, vrn, mrn2) + ")";
        }
        s += "]";
        return s;
      }
    }
    return "?";
  }

 private:
  static std::string paren(const std::string& s) { return "(" + s + ")"; }

  static bool bound_by(const NameList& theta, const Name& n) {
    return std::find(theta.begin(), theta.end(), n) != theta.end();
  }

  static std::string binder_or_free(const NameList& theta, const PrintMap& vrn, const Name& n) {
    if (bound_by(theta, n)) return lookup(vrn, n);
    return free_print(n);
  }

  // Picks printable names for a binder list: the base when possible, digit
  // suffixes when the base would capture something in scope.
  std::string assign_binders(const NameList& theta, std::set<std::string>& avoid, PrintMap& vrn,
                             PrintMap& mrn) {
    std::string out;
    bool comma = false;
    for (const Name& b : theta) {
      std::string chosen = b.base;
      for (unsigned k = 1; avoid.count(chosen); ++k) chosen = b.base + std::to_string(k);
      avoid.insert(chosen);
      vrn[b] = chosen;
      mrn[b] = chosen;
      if (comma) out += ", ";
      comma = true;
      out += chosen;
    }
    return out;
  }
};

}  // namespace

std::string print(const TermPtr& t) {
  Printer p;
  return p.render(t, kTerm, {}, {});
}

}  // namespace ppcem
