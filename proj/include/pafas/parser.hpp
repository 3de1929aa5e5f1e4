/*
 * Copyright (c) 2026, the pafas authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#ifndef PAFAS_PARSER_HPP_
#define PAFAS_PARSER_HPP_

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pafas/system.hpp"
#include "pafas/term.hpp"

namespace pafas {

// Concrete syntax, one definition per line ('#' starts a comment):
//
//   Name = expr            process equation
//   root = expr            the system's starting term (required)
//   hide {a,b}             shorthand: wraps the root in  / {a,b}
//   let N = {a,b}          set alias, usable as an element of later sets
//
//   expr   := choice ( '|[' names ']|' choice )*        left associative
//   choice := factor ( '+' factor )*                    left associative
//   factor := name '.' factor | '{' names '}' '|>' factor | post
//   post   := prim ( '[' name '->' name ',' ... ']' | '/' '{' names '}' )*
//   prim   := 'nil' | Name | '(' expr ')'
//
// 'tau' is a valid prefix, relabelling target and read-set member, nothing
// else.  Urgency markers and 'rec' are printed for diagnostics only and are
// not accepted here; every parsed term is initial.
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

namespace detail {

enum class Tok : uint8_t {
  Ident, Equals, Dot, Plus, Pipe, Gt, Arrow, Slash,
  LBrace, RBrace, LBracket, RBracket, LParen, RParen, Comma,
  Newline, End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

inline bool reserved_word(const std::string& s) {
  return s == "nil" || s == "tau" || s == "root" || s == "hide" ||
         s == "let" || s == "rec";
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string text, int c) {
    out.push_back({k, std::move(text), line, c});
  };
  while (i < src.size()) {
    char c = src[i];
    int at = col;
    if (c == '\n') {
      push(Tok::Newline, "\n", at);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;  // newline handled above, col unused until then
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_'))
        ++j;
      push(Tok::Ident, std::string(src.substr(i, j - i)), at);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = [&](char second) {
      return i + 1 < src.size() && src[i + 1] == second;
    };
    switch (c) {
      case '=': push(Tok::Equals, "=", at); break;
      case '.': push(Tok::Dot, ".", at); break;
      case '+': push(Tok::Plus, "+", at); break;
      case '|': push(Tok::Pipe, "|", at); break;
      case '>': push(Tok::Gt, ">", at); break;
      case '/': push(Tok::Slash, "/", at); break;
      case '{': push(Tok::LBrace, "{", at); break;
      case '}': push(Tok::RBrace, "}", at); break;
      case '[': push(Tok::LBracket, "[", at); break;
      case ']': push(Tok::RBracket, "]", at); break;
      case '(': push(Tok::LParen, "(", at); break;
      case ')': push(Tok::RParen, ")", at); break;
      case ',': push(Tok::Comma, ",", at); break;
      case '-':
        if (!two('>')) throw ParseError(line, at, "expected '->'");
        push(Tok::Arrow, "->", at);
        ++i;
        ++col;
        break;
      default:
        throw ParseError(line, at,
                         std::string("unexpected character '") + c + "'");
    }
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(TermPool& pool, std::string_view src)
      : pool_(pool), toks_(lex(src)) {}

  System parse_file() {
    System sys(pool_);
    bool have_root = false;
    bool have_hide = false;
    std::vector<ActionId> hide_set;
    for (;;) {
      while (at(Tok::Newline)) advance();
      if (at(Tok::End)) break;
      Token head = expect(Tok::Ident, "a definition");
      if (head.text == "let") {
        Token name = expect(Tok::Ident, "an alias name");
        if (reserved_word(name.text))
          throw ParseError(name.line, name.col,
                           "'" + name.text + "' is reserved");
        expect(Tok::Equals, "'='");
        aliases_[name.text] = parse_set(false);
      } else if (head.text == "hide") {
        if (have_hide)
          throw ParseError(head.line, head.col, "duplicate hide clause");
        have_hide = true;
        hide_set = parse_set(false);
      } else if (head.text == "root") {
        if (have_root)
          throw ParseError(head.line, head.col, "duplicate root definition");
        have_root = true;
        expect(Tok::Equals, "'='");
        sys.set_root(parse_expr());
      } else {
        if (reserved_word(head.text))
          throw ParseError(head.line, head.col,
                           "'" + head.text + "' is reserved");
        expect(Tok::Equals, "'='");
        TermId body = parse_expr();
        try {
          sys.define(pool_.name(head.text), body);
        } catch (const std::invalid_argument& e) {
          throw ParseError(head.line, head.col, e.what());
        }
      }
      if (!at(Tok::Newline) && !at(Tok::End))
        throw ParseError(peek().line, peek().col,
                         "unexpected '" + peek().text + "' after definition");
    }
    if (!have_root) {
      const Token& t = toks_.back();
      throw ParseError(t.line, t.col, "missing root definition");
    }
    if (have_hide && !hide_set.empty())
      sys.set_root(pool_.relabel(sys.root(), pool_.hiding(hide_set)));
    return sys;
  }

  TermId parse_single_term() {
    TermId t = parse_expr();
    while (at(Tok::Newline)) advance();
    if (!at(Tok::End))
      throw ParseError(peek().line, peek().col,
                       "unexpected '" + peek().text + "' after term");
    return t;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k, size_t ahead = 0) const { return peek(ahead).kind == k; }
  Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  Token expect(Tok k, const char* what) {
    if (!at(k))
      throw ParseError(peek().line, peek().col,
                       std::string("expected ") + what + ", found '" +
                           (peek().kind == Tok::End ? "end of input"
                            : peek().kind == Tok::Newline ? "end of line"
                                                          : peek().text) +
                           "'");
    return advance();
  }

  // Comma separated action names between the given delimiters.  An element
  // naming a 'let' alias contributes the alias members instead.
  std::vector<ActionId> parse_elements(Tok close, bool allow_tau) {
    std::vector<ActionId> out;
    if (!at(close)) {
      for (;;) {
        Token e = expect(Tok::Ident, "an action name");
        auto alias = aliases_.find(e.text);
        if (alias != aliases_.end()) {
          out.insert(out.end(), alias->second.begin(), alias->second.end());
        } else if (e.text == "tau") {
          if (!allow_tau)
            throw ParseError(e.line, e.col, "tau is not allowed here");
          out.push_back(kTau);
        } else if (reserved_word(e.text)) {
          throw ParseError(e.line, e.col, "'" + e.text + "' is reserved");
        } else {
          out.push_back(pool_.name(e.text));
        }
        if (!at(Tok::Comma)) break;
        advance();
      }
    }
    expect(close, close == Tok::RBrace ? "'}'" : "']'");
    return out;
  }

  std::vector<ActionId> parse_set(bool allow_tau) {
    expect(Tok::LBrace, "'{'");
    return parse_elements(Tok::RBrace, allow_tau);
  }

  TermId parse_expr() {
    TermId t = parse_choice();
    while (at(Tok::Pipe) && at(Tok::LBracket, 1)) {
      Token open = advance();
      advance();
      std::vector<ActionId> sync = parse_elements(Tok::RBracket, false);
      expect(Tok::Pipe, "'|' closing the synchronisation set");
      TermId r = parse_choice();
      try {
        t = pool_.parallel(t, pool_.action_set(std::move(sync)), r);
      } catch (const std::invalid_argument& e) {
        throw ParseError(open.line, open.col, e.what());
      }
    }
    return t;
  }

  TermId parse_choice() {
    TermId t = parse_factor();
    while (at(Tok::Plus)) {
      advance();
      t = pool_.choice(t, parse_factor());
    }
    return t;
  }

  TermId parse_factor() {
    if (at(Tok::LBrace)) {
      Token open = peek();
      std::vector<ActionId> actions = parse_set(true);
      expect(Tok::Pipe, "'|>'");
      expect(Tok::Gt, "'|>'");
      TermId body = parse_factor();
      std::vector<PrefixedAction> entries;
      entries.reserve(actions.size());
      for (ActionId a : actions) entries.push_back({a, Urgency::Lazy});
      try {
        return pool_.read_set(pool_.entries(std::move(entries)), body);
      } catch (const std::invalid_argument& e) {
        throw ParseError(open.line, open.col, e.what());
      }
    }
    if (at(Tok::Ident) && at(Tok::Dot, 1)) {
      Token act = advance();
      if (reserved_word(act.text) && act.text != "tau")
        throw ParseError(act.line, act.col, "'" + act.text + "' is reserved");
      advance();
      TermId cont = parse_factor();
      ActionId a = act.text == "tau" ? kTau : pool_.name(act.text);
      return pool_.prefix(a, Urgency::Lazy, cont);
    }
    return parse_postfixed();
  }

  TermId parse_postfixed() {
    TermId t = parse_primary();
    for (;;) {
      if (at(Tok::LBracket)) {
        Token open = advance();
        std::vector<std::pair<ActionId, ActionId>> pairs;
        if (!at(Tok::RBracket)) {
          for (;;) {
            Token src = expect(Tok::Ident, "an action name");
            if (reserved_word(src.text))
              throw ParseError(src.line, src.col,
                               "'" + src.text + "' cannot be relabelled");
            expect(Tok::Arrow, "'->'");
            Token dst = expect(Tok::Ident, "an action name");
            if (reserved_word(dst.text) && dst.text != "tau")
              throw ParseError(dst.line, dst.col,
                               "'" + dst.text + "' is reserved");
            pairs.emplace_back(
                pool_.name(src.text),
                dst.text == "tau" ? kTau : pool_.name(dst.text));
            if (!at(Tok::Comma)) break;
            advance();
          }
        }
        expect(Tok::RBracket, "']'");
        try {
          t = pool_.relabel(t, pool_.relabel_fn(std::move(pairs)));
        } catch (const std::invalid_argument& e) {
          throw ParseError(open.line, open.col, e.what());
        }
      } else if (at(Tok::Slash)) {
        Token slash = advance();
        std::vector<ActionId> actions = parse_set(false);
        try {
          t = pool_.relabel(t, pool_.hiding(actions));
        } catch (const std::invalid_argument& e) {
          throw ParseError(slash.line, slash.col, e.what());
        }
      } else {
        break;
      }
    }
    return t;
  }

  TermId parse_primary() {
    if (at(Tok::LParen)) {
      advance();
      TermId t = parse_expr();
      expect(Tok::RParen, "')'");
      return t;
    }
    Token id = expect(Tok::Ident, "a process term");
    if (id.text == "nil") return pool_.nil();
    if (reserved_word(id.text))
      throw ParseError(id.line, id.col, "'" + id.text + "' is reserved");
    return pool_.constant(pool_.name(id.text));
  }

  TermPool& pool_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::map<std::string, std::vector<ActionId>> aliases_;
};

}  // namespace detail

// Parses a whole system file.  Throws ParseError with position info; run
// validate() on the result to get well-formedness findings.
inline System parse_system(TermPool& pool, std::string_view text) {
  return detail::Parser(pool, text).parse_file();
}

// Parses a single expression (no equations, no root line).
inline TermId parse_term(TermPool& pool, std::string_view text) {
  return detail::Parser(pool, text).parse_single_term();
}

}  // namespace pafas

#endif  // PAFAS_PARSER_HPP_
