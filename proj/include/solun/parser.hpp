#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "solun/error.hpp"
#include "solun/problem.hpp"

namespace solun {

// Grammar (whitespace and newlines are insignificant, `--` starts a comment):
//
//   file     := (decl | equation)*
//   decl     := "type" IDENT "." | "const" IDENT ":" type "." | "var" IDENT ":" type "."
//   equation := "eq" term "=" term "."
//   type     := IDENT | "(" type ")" | type "->" type        (right-associative)
//   term     := IDENT | "(" term ")" | term term | "\" IDENT ":" type "." term
//
// Substitution files add
//
//   binding  := "subst" IDENT ":=" term "."
//
// and, unlike problem files, may declare `#`-prefixed variables so engine
// output can be read back.

namespace detail {

enum class Tok { Ident, Generated, Dot, Colon, Arrow, Equals, Assign, LParen, RParen, Lambda, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePosition where;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      SourcePosition at{line_, column_};
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, {}, at});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        out.push_back({Tok::Ident, ident(), at});
      } else if (c == '#') {
        advance();
        if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
          throw InputError(ErrorKind::Syntax, "expected a name after '#'", at);
        }
        out.push_back({Tok::Generated, "#" + ident(), at});
      } else if (c == '-' && peek(1) == '>') {
        advance(2);
        out.push_back({Tok::Arrow, "->", at});
      } else if (c == ':' && peek(1) == '=') {
        advance(2);
        out.push_back({Tok::Assign, ":=", at});
      } else {
        Tok kind;
        switch (c) {
          case '.': kind = Tok::Dot; break;
          case ':': kind = Tok::Colon; break;
          case '=': kind = Tok::Equals; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          case '\\': kind = Tok::Lambda; break;
          default:
            throw InputError(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", at);
        }
        advance();
        out.push_back({kind, std::string(1, c), at});
      }
    }
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '-' && peek(1) == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      advance();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

inline bool is_keyword(const std::string& s) {
  return s == "type" || s == "const" || s == "var" || s == "eq" || s == "subst";
}

class Parser {
 public:
  Parser(std::string_view text, Problem scope, bool allow_generated)
      : tokens_(Lexer(text).run()), problem_(std::move(scope)), allow_generated_(allow_generated) {}

  Problem parse_problem() {
    while (!at(Tok::End)) {
      const Token& t = expect(Tok::Ident, "a declaration or equation");
      if (t.text == "type") {
        std::string name = symbol_name();
        if (problem_.sorts.count(name)) throw InputError(ErrorKind::Syntax, "sort " + name + " declared twice", t.where);
        problem_.sorts.insert(name);
        expect(Tok::Dot, "'.'");
      } else if (t.text == "const" || t.text == "var") {
        declare(t.text == "var");
      } else if (t.text == "eq") {
        equation();
      } else {
        throw InputError(ErrorKind::Syntax, "unexpected '" + t.text + "'", t.where);
      }
    }
    return problem_;
  }

  /// Substitution file; `problem_` holds the problem's declarations.
  Substitution parse_substitution() {
    Substitution out;
    while (!at(Tok::End)) {
      const Token& t = expect(Tok::Ident, "'var' or 'subst'");
      if (t.text == "var") {
        declare(true);
      } else if (t.text == "subst") {
        SourcePosition where = tokens_[pos_].where;
        std::string name = symbol_name();
        auto it = problem_.variables.find(name);
        if (it == problem_.variables.end()) {
          throw InputError(ErrorKind::UndeclaredSymbol, "variable " + name + " is not declared", where);
        }
        expect(Tok::Assign, "':='");
        SourcePosition value_at = tokens_[pos_].where;
        Term value = term();
        expect(Tok::Dot, "'.'");
        if (!(value.type() == it->second)) {
          throw InputError(ErrorKind::IllTyped,
                           name + " : " + to_string(it->second) + " bound to a term of type " +
                               to_string(value.type()),
                           value_at);
        }
        out.bind(name, it->second, value);
      } else {
        throw InputError(ErrorKind::Syntax, "unexpected '" + t.text + "'", t.where);
      }
    }
    return out;
  }

  Term parse_single_term() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  const Problem& problem() const { return problem_; }

 private:
  bool at(Tok k) const { return tokens_[pos_].kind == k; }

  const Token& expect(Tok k, const std::string& what) {
    const Token& t = tokens_[pos_];
    if (t.kind != k) {
      throw InputError(ErrorKind::Syntax,
                       "expected " + what + " but found " + (t.kind == Tok::End ? "end of input" : "'" + t.text + "'"),
                       t.where);
    }
    ++pos_;
    return t;
  }

  std::string symbol_name() {
    const Token& t = tokens_[pos_];
    if (t.kind == Tok::Generated) {
      if (!allow_generated_) {
        throw InputError(ErrorKind::Syntax, "names starting with '#' are reserved", t.where);
      }
      ++pos_;
      return t.text;
    }
    expect(Tok::Ident, "a name");
    if (is_keyword(t.text)) throw InputError(ErrorKind::Syntax, "'" + t.text + "' is a keyword", t.where);
    return t.text;
  }

  void declare(bool is_var) {
    SourcePosition where = tokens_[pos_].where;
    std::string name = symbol_name();
    expect(Tok::Colon, "':'");
    Type ty = type();
    expect(Tok::Dot, "'.'");
    if (problem_.constants.count(name) || problem_.variables.count(name)) {
      throw InputError(ErrorKind::Syntax, name + " declared twice", where);
    }
    if (!is_var && is_generated_name(name)) {
      throw InputError(ErrorKind::Syntax, "names starting with '#' are reserved", where);
    }
    (is_var ? problem_.variables : problem_.constants).emplace(name, ty);
  }

  void equation() {
    SourcePosition where = tokens_[pos_].where;
    Term lhs = term();
    expect(Tok::Equals, "'='");
    Term rhs = term();
    expect(Tok::Dot, "'.'");
    if (!(lhs.type() == rhs.type())) {
      throw InputError(ErrorKind::IllTyped,
                       "equation relates " + to_string(lhs.type()) + " and " + to_string(rhs.type()), where);
    }
    if (!lhs.type().is_base()) {
      throw InputError(ErrorKind::EquationNotBaseType,
                       "equation has type " + to_string(lhs.type()) + "; equations must relate base-type terms",
                       where);
    }
    problem_.equations.push_back({normalize(lhs), normalize(rhs)});
  }

  Type type() {
    Type dom = type_atom();
    if (at(Tok::Arrow)) {
      ++pos_;
      return Type::arrow(dom, type());
    }
    return dom;
  }

  Type type_atom() {
    if (at(Tok::LParen)) {
      ++pos_;
      Type t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    const Token& t = expect(Tok::Ident, "a sort name");
    if (!problem_.sorts.count(t.text)) {
      throw InputError(ErrorKind::UndeclaredSymbol, "sort " + t.text + " is not declared", t.where);
    }
    return Type::base(t.text);
  }

  bool starts_atom() const { return at(Tok::Ident) || at(Tok::Generated) || at(Tok::LParen); }

  Term term() {
    if (at(Tok::Lambda)) return lambda();
    Term head = atom();
    while (starts_atom() || at(Tok::Lambda)) {
      SourcePosition arg_at = tokens_[pos_].where;
      Term arg = at(Tok::Lambda) ? lambda() : atom();
      try {
        head = Term::application(std::move(head), std::move(arg));
      } catch (const TypeError& e) {
        throw InputError(ErrorKind::IllTyped, e.what(), arg_at);
      }
    }
    return head;
  }

  Term lambda() {
    expect(Tok::Lambda, "'\\'");
    const Token& name = expect(Tok::Ident, "a binder name");
    expect(Tok::Colon, "':'");
    Type ty = type();
    expect(Tok::Dot, "'.'");
    binders_.push_back({name.text, ty});
    Term body = term();
    binders_.pop_back();
    return Term::abstraction(name.text, ty, std::move(body));
  }

  Term atom() {
    if (at(Tok::LParen)) {
      ++pos_;
      Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    const Token& t = tokens_[pos_];
    if (t.kind == Tok::Generated && !allow_generated_) {
      throw InputError(ErrorKind::Syntax, "names starting with '#' are reserved", t.where);
    }
    if (t.kind != Tok::Ident && t.kind != Tok::Generated) expect(Tok::Ident, "a term");
    ++pos_;
    if (is_keyword(t.text)) throw InputError(ErrorKind::Syntax, "'" + t.text + "' is a keyword", t.where);
    for (std::size_t i = binders_.size(); i-- > 0;) {
      if (binders_[i].first == t.text) return Term::bound(binders_.size() - 1 - i, binders_[i].second);
    }
    if (auto it = problem_.constants.find(t.text); it != problem_.constants.end()) {
      return Term::constant(t.text, it->second);
    }
    if (auto it = problem_.variables.find(t.text); it != problem_.variables.end()) {
      return Term::variable(t.text, it->second);
    }
    throw InputError(ErrorKind::UndeclaredSymbol, t.text + " is not declared", t.where);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Problem problem_;
  bool allow_generated_;
  std::vector<std::pair<std::string, Type>> binders_;
};

}  // namespace detail

/// Parses and validates a problem file.
inline Problem parse_problem(std::string_view text) {
  Problem p = detail::Parser(text, {}, false).parse_problem();
  require_valid(p);
  return p;
}

/// Parses a substitution file against the declarations of `scope`.
inline Substitution parse_substitution(std::string_view text, const Problem& scope) {
  Problem decls = scope;
  decls.equations.clear();
  return detail::Parser(text, std::move(decls), true).parse_substitution();
}

/// Parses a single term against the declarations of `scope`; generated
/// names must be declared in `scope`.
inline Term parse_term(std::string_view text, const Problem& scope) {
  Problem decls = scope;
  decls.equations.clear();
  return normalize(detail::Parser(text, std::move(decls), true).parse_single_term());
}

}  // namespace solun
