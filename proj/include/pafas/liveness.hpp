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

#ifndef PAFAS_LIVENESS_HPP_
#define PAFAS_LIVENESS_HPP_

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "pafas/lts.hpp"
#include "pafas/semantics.hpp"
#include "pafas/system.hpp"
#include "pafas/term.hpp"

namespace pafas {

// Turns a closed system into its request-response form for one process
// under scrutiny: that process's request action becomes "in", its critical
// action becomes "out", the rival's two actions become internal, and the
// equation given as idle_equation loses its "tau.<itself>" summand (the
// option of idling in the non-critical section forever must not count
// against the process we are checking).
//
// The process is then live under fairness of actions iff the transformed
// system has no reachable cycle that contains a full time step but neither
// an in- nor an out-transition.
struct IoSpec {
  ActionId req = 0;
  ActionId cs = 0;
  std::vector<ActionId> demote;  // the rival's visible actions, made internal
  NameId idle_equation = 0;
};

struct IoSystem {
  System system;  // copy with the renames applied inside equation bodies
  ActionId in_action = 0;
  ActionId out_action = 0;
};

namespace detail {

inline void flatten_choice(const TermPool& pool, TermId t,
                           std::vector<TermId>* out) {
  const TermNode& n = pool.node(t);
  if (n.kind == TermKind::Choice) {
    flatten_choice(pool, n.a, out);
    flatten_choice(pool, n.b, out);
  } else {
    out->push_back(t);
  }
}

inline TermId fold_choice(TermPool& pool, const std::vector<TermId>& summands) {
  TermId t = summands.front();
  for (size_t i = 1; i < summands.size(); ++i)
    t = pool.choice(t, summands[i]);
  return t;
}

// Renames prefix actions and read-set entries.  Occurrences in sync sets or
// relabelling functions are left to the caller to rule out: renaming those
// would change which transitions synchronize or how labels map.
inline TermId rewrite_actions(TermPool& pool, TermId t,
                              const std::map<ActionId, ActionId>& m) {
  auto ren = [&](ActionId a) {
    auto it = m.find(a);
    return it == m.end() ? a : it->second;
  };
  const TermNode& n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Constant:
    case TermKind::Var:
      return t;
    case TermKind::Prefix:
      return pool.prefix(ren(n.a), n.urgency, rewrite_actions(pool, n.b, m));
    case TermKind::ReadSet: {
      std::vector<PrefixedAction> es = pool.entry_list(n.a);
      for (PrefixedAction& e : es) e.action = ren(e.action);
      return pool.read_set(pool.entries(std::move(es)),
                           rewrite_actions(pool, n.b, m));
    }
    case TermKind::Choice:
      return pool.choice(rewrite_actions(pool, n.a, m),
                         rewrite_actions(pool, n.b, m));
    case TermKind::Parallel:
      return pool.parallel(rewrite_actions(pool, n.a, m), n.b,
                           rewrite_actions(pool, n.c, m));
    case TermKind::Relabel:
      return pool.relabel(rewrite_actions(pool, n.a, m), n.b);
    case TermKind::Rec:
      return pool.rec(n.a, rewrite_actions(pool, n.b, m));
  }
  return t;
}

// Rejects terms in which any of the given actions occurs in a sync set or
// in a relabelling function (either side).
inline void reject_fixed_occurrences(
    const TermPool& pool, TermId t, const std::set<ActionId>& renamed,
    const std::function<void(const std::string&)>& fail) {
  const TermNode& n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Constant:
    case TermKind::Var:
      return;
    case TermKind::Prefix:
    case TermKind::ReadSet:
    case TermKind::Rec:
      reject_fixed_occurrences(pool, n.b, renamed, fail);
      return;
    case TermKind::Choice:
      reject_fixed_occurrences(pool, n.a, renamed, fail);
      reject_fixed_occurrences(pool, n.b, renamed, fail);
      return;
    case TermKind::Parallel:
      for (ActionId a : pool.set(n.b))
        if (renamed.count(a))
          fail("'" + pool.text(a) + "' occurs in a synchronization set");
      reject_fixed_occurrences(pool, n.a, renamed, fail);
      reject_fixed_occurrences(pool, n.c, renamed, fail);
      return;
    case TermKind::Relabel:
      for (auto [src, dst] : pool.fn(n.b).pairs()) {
        if (renamed.count(src))
          fail("'" + pool.text(src) + "' is renamed by the system itself");
        if (renamed.count(dst))
          fail("'" + pool.text(dst) + "' is produced by a relabelling");
      }
      reject_fixed_occurrences(pool, n.a, renamed, fail);
      return;
  }
}

}  // namespace detail

inline IoSystem io_transform(TermPool& pool, const System& sys,
                             const IoSpec& spec) {
  auto fail = [](const std::string& msg) {
    throw std::runtime_error("io transformation: " + msg);
  };
  if (spec.req == spec.cs) fail("request and critical actions must differ");
  if (spec.req == kTau || spec.cs == kTau)
    fail("tau cannot be the request or critical action");
  std::set<ActionId> demoted(spec.demote.begin(), spec.demote.end());
  if (demoted.count(spec.req) || demoted.count(spec.cs))
    fail("the demoted actions overlap the request/critical pair");
  if (demoted.count(kTau)) fail("tau cannot be demoted");

  ActionId in_a = pool.name("in");
  ActionId out_a = pool.name("out");
  {
    std::set<ActionId> alphabet = sys.alphabet();
    if (alphabet.count(in_a) || alphabet.count(out_a))
      fail("the system already uses the action name 'in' or 'out'");
    if (!alphabet.count(spec.req))
      fail("request action '" + pool.text(spec.req) + "' does not occur");
    if (!alphabet.count(spec.cs))
      fail("critical action '" + pool.text(spec.cs) + "' does not occur");
    for (ActionId a : demoted)
      if (!alphabet.count(a))
        fail("demoted action '" + pool.text(a) + "' does not occur");
  }

  // The renames are applied inside equation bodies so the demoted taus sit
  // in the terms themselves, exactly like any other internal action.  That
  // only works where an action is free to change its name: occurrences in
  // sync sets or relabelling functions pin it down.
  std::set<ActionId> renamed = demoted;
  renamed.insert(spec.req);
  renamed.insert(spec.cs);
  auto reject = [&](TermId t) {
    detail::reject_fixed_occurrences(pool, t, renamed, fail);
  };
  for (const Equation& e : sys.equations()) reject(e.body);
  reject(sys.root());

  std::map<ActionId, ActionId> m;
  m[spec.req] = in_a;
  m[spec.cs] = out_a;
  for (ActionId a : demoted) m[a] = kTau;

  IoSystem out{System(pool), in_a, out_a};
  const Equation* idle = sys.find(spec.idle_equation);
  if (!idle)
    fail("no equation named '" + pool.text(spec.idle_equation) + "'");
  for (const Equation& e : sys.equations()) {
    TermId body = e.body;
    if (e.name == spec.idle_equation) {
      std::vector<TermId> summands;
      detail::flatten_choice(pool, body, &summands);
      TermId wanted = pool.prefix(kTau, Urgency::Lazy,
                                  pool.constant(spec.idle_equation));
      bool removed = false;
      std::vector<TermId> kept;
      for (TermId s : summands) {
        if (!removed && s == wanted) {
          removed = true;
          continue;
        }
        kept.push_back(s);
      }
      if (!removed)
        fail("equation '" + pool.text(e.name) +
             "' has no idling summand tau." + pool.text(e.name));
      if (kept.empty())
        fail("equation '" + pool.text(e.name) +
             "' consists only of its idling summand");
      body = detail::fold_choice(pool, kept);
    }
    out.system.define(e.name, detail::rewrite_actions(pool, body, m));
  }
  out.system.set_root(detail::rewrite_actions(pool, sys.root(), m));
  return out;
}

// One move of a violating run: either a full time step or a labelled one.
struct LassoStep {
  bool time = false;
  ActionId label = 0;  // meaningful when !time
  uint32_t dst = 0;
};

// A violating run: a finite path into `entry`, then a cycle back to it
// containing at least one time step and no in/out transitions.  Read as a
// fair run by looping the cycle forever.
struct Lasso {
  std::vector<LassoStep> prefix;
  std::vector<LassoStep> cycle;
  uint32_t entry = 0;
};

namespace detail {

// Strongly connected components (Tarjan, iterative).  adj holds the graph
// with in/out edges already removed.
inline std::vector<uint32_t> scc_of(
    const std::vector<std::vector<uint32_t>>& adj) {
  size_t n = adj.size();
  std::vector<uint32_t> comp(n, UINT32_MAX), low(n, 0), num(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<uint32_t> stack;
  uint32_t counter = 0, comps = 0;
  struct Frame {
    uint32_t v;
    size_t next_edge;
  };
  for (uint32_t start = 0; start < n; ++start) {
    if (num[start]) continue;
    std::vector<Frame> frames{{start, 0}};
    num[start] = low[start] = ++counter;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < adj[f.v].size()) {
        uint32_t w = adj[f.v][f.next_edge++];
        if (!num[w]) {
          num[w] = low[w] = ++counter;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w] && num[w] < low[f.v]) {
          low[f.v] = num[w];
        }
      } else {
        if (low[f.v] == num[f.v]) {
          for (;;) {
            uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = comps;
            if (w == f.v) break;
          }
          ++comps;
        }
        uint32_t v = f.v;
        frames.pop_back();
        if (!frames.empty() && low[v] < low[frames.back().v])
          low[frames.back().v] = low[v];
      }
    }
  }
  return comp;
}

}  // namespace detail

// Looks for a reachable cycle with a time step but no in/out edge.  Method:
// drop the in/out edges, compute strongly connected components, and check
// whether some time edge has both endpoints in one component.  The witness
// is the overall shortest cycle closing any such time edge (ties broken by
// the edge's state numbers, so the result is deterministic), plus a
// shortest path from the root to the cycle.
inline std::optional<Lasso> find_catastrophic_cycle(const TimedLts& lts,
                                                    ActionId in_action,
                                                    ActionId out_action) {
  size_t n = lts.states.size();

  // Filtered edges: everything except in/out labels.
  std::vector<std::vector<LassoStep>> steps(n);
  std::vector<std::vector<uint32_t>> adj(n);
  for (uint32_t s = 0; s < n; ++s) {
    if (lts.time_succ[s] >= 0) {
      uint32_t v = static_cast<uint32_t>(lts.time_succ[s]);
      steps[s].push_back({true, 0, v});
      adj[s].push_back(v);
    }
    for (auto [a, u] : lts.act_succ[s]) {
      if (a == in_action || a == out_action) continue;
      steps[s].push_back({false, a, u});
      adj[s].push_back(u);
    }
  }

  std::vector<uint32_t> comp = detail::scc_of(adj);

  // Shortest path inside the filtered graph, optionally confined to one
  // component and capped at max_edges steps.  Scratch buffers are reused
  // across calls (epoch marking); edges are relaxed in stored order, so the
  // result is stable.
  std::vector<int64_t> via(n, -1);  // previous state on the path
  std::vector<LassoStep> how(n);
  std::vector<uint32_t> dist(n, 0), seen_at(n, 0), queue;
  uint32_t epoch = 0;
  auto bfs = [&](uint32_t from, uint32_t to, bool confine, uint32_t the_comp,
                 size_t max_edges) -> std::optional<std::vector<LassoStep>> {
    if (from == to) return std::vector<LassoStep>{};
    if (max_edges == 0) return std::nullopt;
    ++epoch;
    queue.clear();
    queue.push_back(from);
    seen_at[from] = epoch;
    dist[from] = 0;
    for (size_t i = 0; i < queue.size() && seen_at[to] != epoch; ++i) {
      uint32_t v = queue[i];
      if (dist[v] >= max_edges) break;  // queue is in distance order
      for (const LassoStep& st : steps[v]) {
        if (confine && comp[st.dst] != the_comp) continue;
        if (seen_at[st.dst] == epoch) continue;
        seen_at[st.dst] = epoch;
        dist[st.dst] = dist[v] + 1;
        via[st.dst] = v;
        how[st.dst] = st;
        queue.push_back(st.dst);
      }
    }
    if (seen_at[to] != epoch) return std::nullopt;
    std::vector<LassoStep> path;
    for (uint32_t v = to; v != from; v = static_cast<uint32_t>(via[v]))
      path.push_back(how[v]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  // Any time edge inside one component closes into a cycle; keep the
  // overall shortest.  Candidates are visited in (source, target) order and
  // later ones must improve strictly, which fixes the tie break.
  struct Best {
    size_t len;
    uint32_t u, v;
    std::vector<LassoStep> back;
  };
  std::optional<Best> best;
  for (uint32_t u = 0; u < n && !(best && best->len <= 1); ++u) {
    if (lts.time_succ[u] < 0) continue;
    uint32_t v = static_cast<uint32_t>(lts.time_succ[u]);
    if (comp[u] != comp[v]) continue;
    size_t limit = best ? best->len - 2 : SIZE_MAX;
    auto back = bfs(v, u, true, comp[u], limit);
    if (!back) continue;
    best = Best{back->size() + 1, u, v, std::move(*back)};
  }
  if (!best) return std::nullopt;

  Lasso lasso;
  lasso.entry = best->v;
  lasso.cycle = std::move(best->back);
  lasso.cycle.push_back({true, 0, best->v});  // the closing time edge u -> v

  // The way in may use any edges, in/out included.
  std::vector<std::vector<LassoStep>> full(n);
  for (uint32_t s = 0; s < n; ++s) {
    if (lts.time_succ[s] >= 0)
      full[s].push_back({true, 0, static_cast<uint32_t>(lts.time_succ[s])});
    for (auto [a, u] : lts.act_succ[s]) full[s].push_back({false, a, u});
  }
  ++epoch;
  queue.clear();
  queue.push_back(0);
  seen_at[0] = epoch;
  via[0] = -1;
  for (size_t i = 0; i < queue.size(); ++i) {
    uint32_t v = queue[i];
    for (const LassoStep& st : full[v]) {
      if (seen_at[st.dst] == epoch) continue;
      seen_at[st.dst] = epoch;
      via[st.dst] = v;
      how[st.dst] = st;
      queue.push_back(st.dst);
    }
  }
  for (uint32_t v = lasso.entry; v != 0 && seen_at[v] == epoch && via[v] >= 0;
       v = static_cast<uint32_t>(via[v]))
    lasso.prefix.push_back(how[v]);
  std::reverse(lasso.prefix.begin(), lasso.prefix.end());
  return lasso;
}

// True when the lasso walks existing edges: the prefix from state 0 to the
// entry, then a cycle back to the entry containing a time step and no
// in/out action.
inline bool lasso_replays(const TimedLts& lts, const Lasso& lasso,
                          ActionId in_action, ActionId out_action) {
  auto step_ok = [&](uint32_t src, const LassoStep& st) -> bool {
    if (src >= lts.states.size() || st.dst >= lts.states.size()) return false;
    if (st.time) return lts.time_succ[src] == static_cast<int64_t>(st.dst);
    for (auto [a, u] : lts.act_succ[src])
      if (a == st.label && u == st.dst) return true;
    return false;
  };
  uint32_t at = 0;
  for (const LassoStep& st : lasso.prefix) {
    if (!step_ok(at, st)) return false;
    at = st.dst;
  }
  if (at != lasso.entry || lasso.cycle.empty()) return false;
  bool has_time = false;
  for (const LassoStep& st : lasso.cycle) {
    if (!st.time && (st.label == in_action || st.label == out_action))
      return false;
    if (!step_ok(at, st)) return false;
    if (st.time) has_time = true;
    at = st.dst;
  }
  return at == lasso.entry && has_time;
}

struct CheckStats {
  size_t states = 0;
  size_t action_edges = 0;
  size_t time_edges = 0;
  double elapsed_ms = 0;
};

struct LivenessResult {
  bool live = false;
  std::optional<Lasso> witness;
  CheckStats stats;
  TimedLts lts;  // of the transformed system
  ActionId in_action = 0;
  ActionId out_action = 0;
};

inline LivenessResult check_transformed(TermPool& pool, const IoSystem& io,
                                        size_t max_states = 1000000) {
  auto t0 = std::chrono::steady_clock::now();
  Semantics sem(pool, io.system);
  LivenessResult r;
  r.in_action = io.in_action;
  r.out_action = io.out_action;
  r.lts = build_lts(sem, pool, io.system.root(), max_states);
  r.witness = find_catastrophic_cycle(r.lts, io.in_action, io.out_action);
  r.live = !r.witness.has_value();
  r.stats.states = r.lts.states.size();
  r.stats.action_edges = r.lts.action_edge_count;
  r.stats.time_edges = r.lts.time_edge_count;
  r.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t0)
          .count();
  return r;
}

inline LivenessResult check_liveness(TermPool& pool, const System& sys,
                                     const IoSpec& spec,
                                     size_t max_states = 1000000) {
  return check_transformed(pool, io_transform(pool, sys, spec), max_states);
}

// For reporting: the action name a relabelled state performed underneath
// its outermost relabelling, e.g. which concrete action a tau stands for.
// Returns nothing for time steps or states without an outer relabelling.
inline std::optional<ActionId> underlying_label(TermPool& pool, Semantics& sem,
                                                TermId src, TermId dst,
                                                const LassoStep& step) {
  if (step.time) return std::nullopt;
  const TermNode& n = pool.node(src);
  if (n.kind != TermKind::Relabel) return std::nullopt;
  const RelabelFn& f = pool.fn(n.b);
  std::optional<ActionId> found;
  for (auto [raw, q] : sem.action_transitions(n.a)) {
    if (f.apply(raw) != step.label) continue;
    if (pool.relabel(q, n.b) != dst) continue;
    if (!found || pool.text(raw) < pool.text(*found)) found = raw;
  }
  if (found && *found == step.label) return std::nullopt;  // not renamed
  return found;
}

}  // namespace pafas

#endif  // PAFAS_LIVENESS_HPP_
