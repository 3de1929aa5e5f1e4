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

#ifndef PAFAS_SEMANTICS_HPP_
#define PAFAS_SEMANTICS_HPP_

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pafas/system.hpp"
#include "pafas/term.hpp"

namespace pafas {

// Result of letting one unit of time pass over a term.
//
// The full relation indexes time steps by a set X of visible actions the
// environment refuses; a step under X exists iff the term can step at all
// and X avoids every urgent visible action.  The successor never depends
// on X, so the whole family compresses into this triple.  A term performs
// a full time unit on its own (a "1-step") iff can_step holds and
// urgent_visible is empty.
struct TimeStep {
  bool can_step = false;
  std::vector<ActionId> urgent_visible;  // sorted, tau never listed
  TermId successor = 0;                  // meaningful only if can_step
};

class Semantics {
 public:
  Semantics(TermPool& pool, const System& sys) : pool_(pool), sys_(sys) {}

  // All transitions of t, sorted by (action, successor) and deduplicated.
  const std::vector<std::pair<ActionId, TermId>>& action_transitions(TermId t) {
    auto it = act_cache_.find(t);
    if (it != act_cache_.end()) return it->second;
    Depth d(this);
    std::vector<std::pair<ActionId, TermId>> out;
    derive_actions(t, &out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return act_cache_.emplace(t, std::move(out)).first->second;
  }

  std::vector<ActionId> activated(TermId t) {
    std::vector<ActionId> out;
    for (auto [a, q] : action_transitions(t))
      if (out.empty() || out.back() != a) out.push_back(a);
    return out;
  }

  const TimeStep& time_step(TermId t) {
    auto it = time_cache_.find(t);
    if (it != time_cache_.end()) return it->second;
    Depth d(this);
    TimeStep step = derive_time(t);
    return time_cache_.emplace(t, std::move(step)).first->second;
  }

  std::optional<TermId> one_step(TermId t) {
    const TimeStep& s = time_step(t);
    if (s.can_step && s.urgent_visible.empty()) return s.successor;
    return std::nullopt;
  }

 private:
  // One unfolding step: for rec, the body with the binder substituted in;
  // for a constant, its defining equation's body.
  TermId unfold(TermId t) {
    auto it = unfold_cache_.find(t);
    if (it != unfold_cache_.end()) return it->second;
    const TermNode& n = pool_.node(t);
    TermId u;
    if (n.kind == TermKind::Rec) {
      u = subst(n.b, n.a, t);
    } else {
      const Equation* eq = sys_.find(n.a);
      if (!eq)
        throw std::runtime_error("no equation for constant '" +
                                 pool_.text(n.a) + "'");
      u = eq->body;
    }
    unfold_cache_.emplace(t, u);
    return u;
  }

  TermId subst(TermId t, NameId var, TermId replacement) {
    const TermNode n = pool_.node(t);
    switch (n.kind) {
      case TermKind::Nil:
      case TermKind::Constant:
        return t;
      case TermKind::Var:
        return n.a == var ? replacement : t;
      case TermKind::Prefix:
        return pool_.prefix(n.a, n.urgency, subst(n.b, var, replacement));
      case TermKind::ReadSet:
        return pool_.read_set(n.a, subst(n.b, var, replacement));
      case TermKind::Choice:
        return pool_.choice(subst(n.a, var, replacement),
                            subst(n.b, var, replacement));
      case TermKind::Parallel:
        return pool_.parallel(subst(n.a, var, replacement), n.b,
                              subst(n.c, var, replacement));
      case TermKind::Relabel:
        return pool_.relabel(subst(n.a, var, replacement), n.b);
      case TermKind::Rec:
        if (n.a == var) return t;
        return pool_.rec(n.a, subst(n.b, var, replacement));
    }
    throw std::logic_error("bad term kind");
  }

  void derive_actions(TermId t, std::vector<std::pair<ActionId, TermId>>* out) {
    const TermNode n = pool_.node(t);
    switch (n.kind) {
      case TermKind::Nil:
        return;
      case TermKind::Var:
        throw std::logic_error("action transitions of an unbound variable");
      case TermKind::Constant:
      case TermKind::Rec:
        for (auto p : action_transitions(unfold(t))) out->push_back(p);
        return;
      case TermKind::Prefix:
        out->push_back({n.a, n.b});
        return;
      case TermKind::ReadSet: {
        // Reading does not change the term, urgencies included.
        for (const PrefixedAction& e : pool_.entry_list(n.a))
          out->push_back({e.action, t});
        for (auto [a, q] : action_transitions(n.b)) out->push_back({a, q});
        return;
      }
      case TermKind::Choice:
        for (auto p : action_transitions(n.a)) out->push_back(p);
        for (auto p : action_transitions(n.b)) out->push_back(p);
        return;
      case TermKind::Parallel: {
        const auto& left = action_transitions(n.a);
        const auto& right = action_transitions(n.c);
        for (auto [a, l] : left)
          if (!pool_.set_contains(n.b, a))
            out->push_back({a, pool_.parallel(l, n.b, n.c)});
        for (auto [a, r] : right)
          if (!pool_.set_contains(n.b, a))
            out->push_back({a, pool_.parallel(n.a, n.b, r)});
        for (auto [a, l] : left) {
          if (!pool_.set_contains(n.b, a)) continue;
          for (auto [a2, r] : right)
            if (a2 == a) out->push_back({a, pool_.parallel(l, n.b, r)});
        }
        return;
      }
      case TermKind::Relabel: {
        const RelabelFn& f = pool_.fn(n.b);
        for (auto [a, q] : action_transitions(n.a))
          out->push_back({f.apply(a), pool_.relabel(q, n.b)});
        return;
      }
    }
  }

  TimeStep derive_time(TermId t) {
    const TermNode n = pool_.node(t);
    switch (n.kind) {
      case TermKind::Nil:
        return {true, {}, t};
      case TermKind::Var:
        throw std::logic_error("time step of an unbound variable");
      case TermKind::Constant:
      case TermKind::Rec:
        return time_step(unfold(t));
      case TermKind::Prefix: {
        if (n.urgency == Urgency::Lazy)
          return {true, {}, pool_.prefix(n.a, Urgency::Urgent, n.b)};
        if (n.a == kTau) return {};  // a pending internal step stops time
        return {true, {n.a}, t};
      }
      case TermKind::Choice: {
        const TimeStep& l = time_step(n.a);
        if (!l.can_step) return {};
        const TimeStep& r = time_step(n.b);
        if (!r.can_step) return {};
        return {true, merge(l.urgent_visible, r.urgent_visible),
                pool_.choice(l.successor, r.successor)};
      }
      case TermKind::ReadSet: {
        std::vector<ActionId> urgent;
        for (const PrefixedAction& e : pool_.entry_list(n.a))
          if (e.urgency == Urgency::Urgent) {
            if (e.action == kTau) return {};
            urgent.push_back(e.action);
          }
        const TimeStep& body = time_step(n.b);
        if (!body.can_step) return {};
        std::vector<PrefixedAction> es = pool_.entry_list(n.a);
        for (PrefixedAction& e : es) e.urgency = Urgency::Urgent;
        return {true, merge(urgent, body.urgent_visible),
                pool_.read_set(pool_.entries(std::move(es)), body.successor)};
      }
      case TermKind::Parallel: {
        const TimeStep& l = time_step(n.a);
        if (!l.can_step) return {};
        const TimeStep& r = time_step(n.c);
        if (!r.can_step) return {};
        // An action stays urgent if it is urgent on any side and free of
        // the sync set, or urgent on both sides of a handshake.
        std::vector<ActionId> uv;
        for (ActionId a : l.urgent_visible)
          if (!pool_.set_contains(n.b, a) ||
              std::binary_search(r.urgent_visible.begin(),
                                 r.urgent_visible.end(), a))
            uv.push_back(a);
        for (ActionId a : r.urgent_visible)
          if (!pool_.set_contains(n.b, a)) uv.push_back(a);
        std::sort(uv.begin(), uv.end());
        uv.erase(std::unique(uv.begin(), uv.end()), uv.end());
        return {true, std::move(uv),
                pool_.parallel(l.successor, n.b, r.successor)};
      }
      case TermKind::Relabel: {
        const TimeStep& body = time_step(n.a);
        if (!body.can_step) return {};
        const RelabelFn& f = pool_.fn(n.b);
        std::vector<ActionId> uv;
        for (ActionId a : body.urgent_visible) {
          ActionId img = f.apply(a);
          if (img == kTau) return {};  // urgent action about to become internal
          uv.push_back(img);
        }
        std::sort(uv.begin(), uv.end());
        uv.erase(std::unique(uv.begin(), uv.end()), uv.end());
        return {true, std::move(uv), pool_.relabel(body.successor, n.b)};
      }
    }
    throw std::logic_error("bad term kind");
  }

  static std::vector<ActionId> merge(const std::vector<ActionId>& a,
                                     const std::vector<ActionId>& b) {
    std::vector<ActionId> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(),
               std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  struct Depth {
    explicit Depth(Semantics* s) : s_(s) {
      if (++s_->depth_ > 10000)
        throw std::runtime_error("recursion depth exceeded; "
                                 "process is probably not guarded");
    }
    ~Depth() { --s_->depth_; }
    Semantics* s_;
  };

  TermPool& pool_;
  const System& sys_;
  int depth_ = 0;
  std::unordered_map<TermId, std::vector<std::pair<ActionId, TermId>>>
      act_cache_;
  std::unordered_map<TermId, TimeStep> time_cache_;
  std::unordered_map<TermId, TermId> unfold_cache_;
};

}  // namespace pafas

#endif  // PAFAS_SEMANTICS_HPP_
