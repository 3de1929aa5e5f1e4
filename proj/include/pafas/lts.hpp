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

#ifndef PAFAS_LTS_HPP_
#define PAFAS_LTS_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pafas/printer.hpp"
#include "pafas/semantics.hpp"
#include "pafas/term.hpp"

namespace pafas {

// Explicit timed transition system of a process: every reachable term is a
// state, every state has its action successors plus at most one time
// successor (the full time unit).  State 0 is the root.
struct TimedLts {
  std::vector<TermId> states;
  std::vector<int64_t> time_succ;  // -1 when the state has no full time step
  std::vector<std::vector<std::pair<ActionId, uint32_t>>> act_succ;
  std::set<ActionId> labels;
  size_t action_edge_count = 0;
  size_t time_edge_count = 0;

  bool has_time_succ(uint32_t s) const { return time_succ[s] >= 0; }
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(size_t limit)
      : std::runtime_error("state budget of " + std::to_string(limit) +
                           " states exceeded"),
        limit(limit) {}
  size_t limit;
};

// Breadth-first exploration with a stable order: from each state the time
// successor is visited first, action successors follow sorted by label
// text, then by the successor's printed form.  Sorting on text rather than
// on internal ids makes the numbering depend only on the process itself,
// not on the order the pool happened to intern things.
inline TimedLts build_lts(Semantics& sem, TermPool& pool, TermId root,
                          size_t max_states = 1000000) {
  TimedLts lts;
  std::unordered_map<TermId, uint32_t> index;
  std::unordered_map<TermId, std::string> printed;
  auto print_of = [&](TermId t) -> const std::string& {
    auto it = printed.find(t);
    if (it != printed.end()) return it->second;
    return printed.emplace(t, print_term(pool, t)).first->second;
  };
  auto state_of = [&](TermId t) -> uint32_t {
    auto it = index.find(t);
    if (it != index.end()) return it->second;
    if (lts.states.size() >= max_states) throw BudgetExceeded(max_states);
    uint32_t s = static_cast<uint32_t>(lts.states.size());
    lts.states.push_back(t);
    index.emplace(t, s);
    return s;
  };

  state_of(root);
  for (uint32_t s = 0; s < lts.states.size(); ++s) {
    TermId t = lts.states[s];

    if (std::optional<TermId> u = sem.one_step(t)) {
      lts.time_succ.push_back(state_of(*u));
      ++lts.time_edge_count;
    } else {
      lts.time_succ.push_back(-1);
    }

    const auto& moves = sem.action_transitions(t);
    std::vector<std::pair<ActionId, TermId>> ordered(moves.begin(),
                                                     moves.end());
    std::sort(ordered.begin(), ordered.end(),
              [&](const auto& x, const auto& y) {
                const std::string& lx = pool.text(x.first);
                const std::string& ly = pool.text(y.first);
                if (lx != ly) return lx < ly;
                return print_of(x.second) < print_of(y.second);
              });
    lts.act_succ.emplace_back();
    for (auto [a, u] : ordered) {
      lts.act_succ[s].emplace_back(a, state_of(u));
      lts.labels.insert(a);
      ++lts.action_edge_count;
    }
  }
  return lts;
}

// GraphViz rendering.  Time steps are dashed and labelled 1; internal
// moves are grey; the given pair of actions (if any) is highlighted.
inline std::string to_dot(const TimedLts& lts, const TermPool& pool,
                          ActionId highlight_in = kTau,
                          ActionId highlight_out = kTau,
                          bool show_terms = false) {
  std::string out = "digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (size_t s = 0; s < lts.states.size(); ++s) {
    out += "  n" + std::to_string(s);
    out += " [label=\"" + std::to_string(s) + "\"";
    if (show_terms) {
      std::string term = print_term(pool, lts.states[s]);
      std::string escaped;
      for (char c : term) {
        if (c == '"' || c == '\\') escaped += '\\';
        escaped += c;
      }
      out += ", tooltip=\"" + escaped + "\"";
    }
    out += "];\n";
  }
  for (size_t s = 0; s < lts.states.size(); ++s) {
    if (lts.time_succ[s] >= 0)
      out += "  n" + std::to_string(s) + " -> n" +
             std::to_string(lts.time_succ[s]) +
             " [label=\"1\", style=dashed];\n";
    for (auto [a, u] : lts.act_succ[s]) {
      out += "  n" + std::to_string(s) + " -> n" + std::to_string(u) +
             " [label=\"" + pool.text(a) + "\"";
      if (a == kTau)
        out += ", color=grey, fontcolor=grey";
      else if (highlight_in != kTau &&
               (a == highlight_in || a == highlight_out))
        out += ", color=blue, fontcolor=blue, penwidth=2";
      out += "];\n";
    }
  }
  out += "}\n";
  return out;
}

// Tab separated edge list: src, kind (act|time), label, dst.
inline std::string to_tsv(const TimedLts& lts, const TermPool& pool) {
  std::string out = "src\tkind\tlabel\tdst\n";
  for (size_t s = 0; s < lts.states.size(); ++s) {
    if (lts.time_succ[s] >= 0)
      out += std::to_string(s) + "\ttime\t1\t" +
             std::to_string(lts.time_succ[s]) + "\n";
    for (auto [a, u] : lts.act_succ[s])
      out += std::to_string(s) + "\tact\t" + pool.text(a) + "\t" +
             std::to_string(u) + "\n";
  }
  return out;
}

}  // namespace pafas

#endif  // PAFAS_LTS_HPP_
