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

// Reference implementations used only by the tests.  Each is a direct,
// deliberately naive transcription of the defining rules, independent of
// the production code in include/: the action and refusal relations are
// enumerated rule by rule, and the cycle test walks every candidate edge.
// Keep these slow and obvious; they are what the fast code is checked
// against.

#ifndef PAFAS_TESTS_ORACLES_HPP_
#define PAFAS_TESTS_ORACLES_HPP_

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pafas/system.hpp"
#include "pafas/term.hpp"

namespace pafas::oracle {

// Capture-aware substitution of `replacement` for Var(var) in t.
inline TermId subst(TermPool& pool, TermId t, NameId var, TermId replacement) {
  const TermNode n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Constant:
      return t;
    case TermKind::Var:
      return n.a == var ? replacement : t;
    case TermKind::Prefix:
      return pool.prefix(n.a, n.urgency, subst(pool, n.b, var, replacement));
    case TermKind::ReadSet:
      return pool.read_set(n.a, subst(pool, n.b, var, replacement));
    case TermKind::Choice:
      return pool.choice(subst(pool, n.a, var, replacement),
                         subst(pool, n.b, var, replacement));
    case TermKind::Parallel:
      return pool.parallel(subst(pool, n.a, var, replacement), n.b,
                           subst(pool, n.c, var, replacement));
    case TermKind::Relabel:
      return pool.relabel(subst(pool, n.a, var, replacement), n.b);
    case TermKind::Rec:
      if (n.a == var) return t;  // inner binder shadows
      return pool.rec(n.a, subst(pool, n.b, var, replacement));
  }
  throw std::logic_error("bad term kind");
}

struct DepthGuard {
  int depth = 0;
  void enter() {
    if (++depth > 4000) throw std::runtime_error("oracle recursion too deep");
  }
  void leave() { --depth; }
};

// Action relation.  Rules, one clause each:
//   prefix     mu.P -a-> P                    for mu in {a, urgent a}
//   choice     from either summand
//   read (1)   E |> Q -a-> E |> Q             for each entry on a, unchanged
//   read (2)   E |> Q -a-> Q'                 if Q -a-> Q'
//   parallel   interleave when a not in A, handshake when a in A
//   relabel    Q[Phi] -Phi(a)-> Q'[Phi]
//   rec        unfold once; constants unfold their equation
inline std::set<std::pair<ActionId, TermId>> actions(TermPool& pool,
                                                     const System* sys,
                                                     TermId t,
                                                     DepthGuard& guard) {
  guard.enter();
  std::set<std::pair<ActionId, TermId>> out;
  const TermNode n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Var:
      break;
    case TermKind::Constant: {
      if (!sys || !sys->find(n.a))
        throw std::runtime_error("constant without equation");
      out = actions(pool, sys, sys->find(n.a)->body, guard);
      break;
    }
    case TermKind::Prefix:
      out.insert({n.a, n.b});
      break;
    case TermKind::ReadSet: {
      for (const PrefixedAction& e : pool.entry_list(n.a))
        out.insert({e.action, t});
      for (auto [a, q] : actions(pool, sys, n.b, guard)) out.insert({a, q});
      break;
    }
    case TermKind::Choice: {
      for (auto p : actions(pool, sys, n.a, guard)) out.insert(p);
      for (auto p : actions(pool, sys, n.b, guard)) out.insert(p);
      break;
    }
    case TermKind::Parallel: {
      auto left = actions(pool, sys, n.a, guard);
      auto right = actions(pool, sys, n.c, guard);
      for (auto [a, l] : left)
        if (!pool.set_contains(n.b, a))
          out.insert({a, pool.parallel(l, n.b, n.c)});
      for (auto [a, r] : right)
        if (!pool.set_contains(n.b, a))
          out.insert({a, pool.parallel(n.a, n.b, r)});
      for (auto [a, l] : left)
        if (pool.set_contains(n.b, a))
          for (auto [a2, r] : right)
            if (a2 == a) out.insert({a, pool.parallel(l, n.b, r)});
      break;
    }
    case TermKind::Relabel: {
      for (auto [a, q] : actions(pool, sys, n.a, guard))
        out.insert({pool.fn(n.b).apply(a), pool.relabel(q, n.b)});
      break;
    }
    case TermKind::Rec: {
      TermId unfolded = subst(pool, n.b, n.a, t);
      out = actions(pool, sys, unfolded, guard);
      break;
    }
  }
  guard.leave();
  return out;
}

inline std::set<std::pair<ActionId, TermId>> actions(TermPool& pool,
                                                     const System* sys,
                                                     TermId t) {
  DepthGuard guard;
  return actions(pool, sys, t, guard);
}

inline std::vector<PrefixedAction> all_urgent(
    const std::vector<PrefixedAction>& es) {
  std::vector<PrefixedAction> out = es;
  for (PrefixedAction& e : out) e.urgency = Urgency::Urgent;
  return out;
}

// Refusal relation: successors of t under refusal set X (X has no tau).
// Rules, one clause each:
//   nil        nil -X-> nil                                  always
//   lazy mu    mu.P -X-> urgent mu.P                         always
//   urgent a   a.P -X-> a.P      if a != tau and a not in X
//   choice     both summands step, stepping together
//   read       body steps, no urgent tau entry, no urgent entry in X;
//              every entry becomes urgent
//   parallel   sides step under X1, X2 with
//              X subset of (A n (X1 u X2)) u ((X1 n X2) \ A);
//              X1, X2 range over subsets of the mentioned actions
//   relabel    body steps under Phi-inverse(X u {tau}) minus tau
//   rec        unfold once; constants unfold their equation
inline std::set<TermId> time_step(TermPool& pool, const System* sys, TermId t,
                                  const std::set<ActionId>& X,
                                  DepthGuard& guard) {
  guard.enter();
  std::set<TermId> out;
  const TermNode n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
      out.insert(t);
      break;
    case TermKind::Var:
      break;
    case TermKind::Constant: {
      if (!sys || !sys->find(n.a))
        throw std::runtime_error("constant without equation");
      out = time_step(pool, sys, sys->find(n.a)->body, X, guard);
      break;
    }
    case TermKind::Prefix:
      if (n.urgency == Urgency::Lazy)
        out.insert(pool.prefix(n.a, Urgency::Urgent, n.b));
      else if (n.a != kTau && !X.count(n.a))
        out.insert(t);
      break;
    case TermKind::Choice: {
      for (TermId l : time_step(pool, sys, n.a, X, guard))
        for (TermId r : time_step(pool, sys, n.b, X, guard))
          out.insert(pool.choice(l, r));
      break;
    }
    case TermKind::ReadSet: {
      bool blocked = false;
      for (const PrefixedAction& e : pool.entry_list(n.a))
        if (e.urgency == Urgency::Urgent && (e.action == kTau || X.count(e.action)))
          blocked = true;
      if (!blocked) {
        EntriesId urgent = pool.entries(all_urgent(pool.entry_list(n.a)));
        for (TermId q : time_step(pool, sys, n.b, X, guard))
          out.insert(pool.read_set(urgent, q));
      }
      break;
    }
    case TermKind::Parallel: {
      // X1, X2 range over subsets of X only.  This is complete: the
      // relation is downward closed with unchanged successors (check each
      // rule), so any witnessing X1', X2' can be replaced by X1' n X and
      // X2' n X, and membership of each a in X in the composed bound is
      // preserved by that intersection.
      std::vector<ActionId> pool_actions(X.begin(), X.end());
      size_t m = pool_actions.size();
      if (m > 12) throw std::runtime_error("oracle alphabet too large");
      for (size_t bits1 = 0; bits1 < (size_t{1} << m); ++bits1) {
        std::set<ActionId> X1;
        for (size_t i = 0; i < m; ++i)
          if (bits1 & (size_t{1} << i)) X1.insert(pool_actions[i]);
        auto lefts = time_step(pool, sys, n.a, X1, guard);
        if (lefts.empty()) continue;
        for (size_t bits2 = 0; bits2 < (size_t{1} << m); ++bits2) {
          std::set<ActionId> X2;
          for (size_t i = 0; i < m; ++i)
            if (bits2 & (size_t{1} << i)) X2.insert(pool_actions[i]);
          bool ok = true;
          for (ActionId a : X) {
            bool in_a = pool.set_contains(n.b, a);
            bool allowed = in_a ? (X1.count(a) || X2.count(a))
                                : (X1.count(a) && X2.count(a));
            if (!allowed) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          auto rights = time_step(pool, sys, n.c, X2, guard);
          for (TermId l : lefts)
            for (TermId r : rights)
              out.insert(pool.parallel(l, n.b, r));
        }
      }
      break;
    }
    case TermKind::Relabel: {
      const RelabelFn& f = pool.fn(n.b);
      std::set<ActionId> pre;
      for (ActionId a : X)
        if (f.apply(a) == a) pre.insert(a);
      for (auto [src, dst] : f.pairs())
        if (dst == kTau || X.count(dst)) pre.insert(src);
      pre.erase(kTau);
      for (TermId q : time_step(pool, sys, n.a, pre, guard))
        out.insert(pool.relabel(q, n.b));
      break;
    }
    case TermKind::Rec: {
      TermId unfolded = subst(pool, n.b, n.a, t);
      out = time_step(pool, sys, unfolded, X, guard);
      break;
    }
  }
  guard.leave();
  return out;
}

inline std::set<TermId> time_step(TermPool& pool, const System* sys, TermId t,
                                  const std::set<ActionId>& X) {
  DepthGuard guard;
  return time_step(pool, sys, t, X, guard);
}

// A full 1-step refuses everything; by finite support it is equivalent to
// refusing every action mentioned anywhere in the term.
inline std::set<TermId> one_step(TermPool& pool, const System* sys, TermId t) {
  std::set<ActionId> all;
  collect_actions(pool, t, all);
  if (sys) {
    for (const Equation& e : sys->equations()) collect_actions(pool, e.body, all);
  }
  all.erase(kTau);
  return time_step(pool, sys, t, all);
}

// ---- cycle oracle ----

struct Edge {
  int src;
  int dst;
  bool time;    // a 1-step edge
  bool inout;   // labelled with the distinguished in or out action
};

// Is there a cycle containing a time edge but no in/out edge?  Checked the
// obvious way: drop in/out edges, then for every time edge (u,v) ask
// whether u is reachable from v over the remaining edges.
inline bool has_catastrophic_cycle(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges)
    if (!e.inout) adj[e.src].push_back(e.dst);
  auto reaches = [&](int from, int to) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    return false;
  };
  for (const Edge& e : edges)
    if (e.time && !e.inout && reaches(e.dst, e.src)) return true;
  return false;
}

}  // namespace pafas::oracle

#endif  // PAFAS_TESTS_ORACLES_HPP_
