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

#ifndef PAFAS_PRINTER_HPP_
#define PAFAS_PRINTER_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "pafas/system.hpp"
#include "pafas/term.hpp"

namespace pafas {

// Operator strength: parallel binds loosest, then choice, then the prefix
// forms; postfix relabel/hide attach to a primary.  The printer inserts
// parentheses exactly where reparsing would otherwise group differently, so
// print followed by parse reproduces the original tree.
namespace detail {

enum Level : int { kPar = 0, kChoice = 1, kFactor = 2, kPrimary = 3 };

inline std::string action_text(const TermPool& pool, ActionId a) {
  return pool.text(a);
}

inline std::string set_text(const TermPool& pool,
                            const std::vector<ActionId>& actions) {
  std::vector<std::string> names;
  names.reserve(actions.size());
  for (ActionId a : actions) names.push_back(pool.text(a));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  out += '}';
  return out;
}

inline std::string entries_text(const TermPool& pool,
                                const std::vector<PrefixedAction>& entries) {
  std::vector<std::pair<std::string, Urgency>> names;
  names.reserve(entries.size());
  for (const PrefixedAction& e : entries)
    names.emplace_back(pool.text(e.action), e.urgency);
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    if (names[i].second == Urgency::Urgent) out += '_';
    out += names[i].first;
  }
  out += '}';
  return out;
}

inline void print_term(const TermPool& pool, TermId t, int min_level,
                       std::string* out) {
  const TermNode& n = pool.node(t);
  auto wrap = [&](int level, auto&& body) {
    bool parens = level < min_level;
    if (parens) *out += '(';
    body();
    if (parens) *out += ')';
  };
  switch (n.kind) {
    case TermKind::Nil:
      *out += "nil";
      return;
    case TermKind::Constant:
    case TermKind::Var:
      *out += pool.text(n.a);
      return;
    case TermKind::Prefix:
      wrap(kFactor, [&] {
        if (n.urgency == Urgency::Urgent) *out += '_';
        *out += pool.text(n.a);
        *out += '.';
        print_term(pool, n.b, kFactor, out);
      });
      return;
    case TermKind::ReadSet:
      wrap(kFactor, [&] {
        *out += entries_text(pool, pool.entry_list(n.a));
        *out += " |> ";
        print_term(pool, n.b, kFactor, out);
      });
      return;
    case TermKind::Choice:
      wrap(kChoice, [&] {
        print_term(pool, n.a, kChoice, out);
        *out += " + ";
        print_term(pool, n.b, kChoice + 1, out);
      });
      return;
    case TermKind::Parallel:
      wrap(kPar, [&] {
        print_term(pool, n.a, kPar, out);
        *out += " |[";
        const auto& sync = pool.set(n.b);
        std::vector<std::string> names;
        for (ActionId a : sync) names.push_back(pool.text(a));
        std::sort(names.begin(), names.end());
        for (size_t i = 0; i < names.size(); ++i) {
          if (i) *out += ',';
          *out += names[i];
        }
        *out += "]| ";
        print_term(pool, n.c, kPar + 1, out);
      });
      return;
    case TermKind::Relabel:
      wrap(kPrimary, [&] {
        print_term(pool, n.a, kPrimary, out);
        const RelabelFn& f = pool.fn(n.b);
        if (f.is_hiding()) {
          std::vector<ActionId> hidden;
          for (auto [src, dst] : f.pairs()) hidden.push_back(src);
          *out += " / ";
          *out += set_text(pool, hidden);
        } else {
          std::vector<std::pair<std::string, std::string>> maps;
          for (auto [src, dst] : f.pairs())
            maps.emplace_back(pool.text(src), pool.text(dst));
          std::sort(maps.begin(), maps.end());
          *out += '[';
          for (size_t i = 0; i < maps.size(); ++i) {
            if (i) *out += ',';
            *out += maps[i].first;
            *out += "->";
            *out += maps[i].second;
          }
          *out += ']';
        }
      });
      return;
    case TermKind::Rec:
      wrap(kFactor, [&] {
        *out += "rec ";
        *out += pool.text(n.a);
        *out += ". ";
        print_term(pool, n.b, kFactor, out);
      });
      return;
  }
}

}  // namespace detail

inline std::string print_term(const TermPool& pool, TermId t) {
  std::string out;
  detail::print_term(pool, t, detail::kPar, &out);
  return out;
}

// One definition per line, root last; reparsing yields the same system.
inline std::string print_system(const System& sys) {
  std::string out;
  for (const Equation& e : sys.equations()) {
    out += sys.pool().text(e.name);
    out += " = ";
    out += print_term(sys.pool(), e.body);
    out += '\n';
  }
  out += "root = ";
  out += print_term(sys.pool(), sys.root());
  out += '\n';
  return out;
}

}  // namespace pafas

#endif  // PAFAS_PRINTER_HPP_
