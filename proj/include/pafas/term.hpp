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

#ifndef PAFAS_TERM_HPP_
#define PAFAS_TERM_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pafas {

// All names (actions, process constants, recursion variables) are interned
// strings.  Id 0 is reserved for the internal action tau.
using NameId = uint32_t;
using ActionId = NameId;
using TermId = uint32_t;
using SetId = uint32_t;
using EntriesId = uint32_t;
using RelabelId = uint32_t;

constexpr ActionId kTau = 0;

enum class Urgency : uint8_t { Lazy, Urgent };

// An action occurrence in prefix position or inside a read-set.  Urgent
// occurrences only arise from time steps; source text is always lazy.
struct PrefixedAction {
  ActionId action = kTau;
  Urgency urgency = Urgency::Lazy;

  friend bool operator==(const PrefixedAction& a, const PrefixedAction& b) {
    return a.action == b.action && a.urgency == b.urgency;
  }
  friend bool operator<(const PrefixedAction& a, const PrefixedAction& b) {
    return a.action != b.action ? a.action < b.action
                                : a.urgency < b.urgency;
  }
};

enum class TermKind : uint8_t {
  Nil,
  Constant,  // named process from the equation table
  Var,       // recursion variable bound by an enclosing Rec
  Prefix,
  ReadSet,
  Choice,
  Parallel,
  Relabel,
  Rec,
};

// One interned node.  Field use by kind:
//   Constant/Var:  a = name
//   Prefix:        a = action, b = continuation, urgency
//   ReadSet:       a = EntriesId, b = body
//   Choice:        a = left, b = right
//   Parallel:      a = left, b = SetId (sync set), c = right
//   Relabel:       a = body, b = RelabelId
//   Rec:           a = variable name, b = body
struct TermNode {
  TermKind kind = TermKind::Nil;
  Urgency urgency = Urgency::Lazy;
  uint32_t a = 0;
  uint32_t b = 0;
  uint32_t c = 0;

  friend bool operator==(const TermNode& x, const TermNode& y) {
    return x.kind == y.kind && x.urgency == y.urgency && x.a == y.a &&
           x.b == y.b && x.c == y.c;
  }
};

// Finite relabelling: identity outside the stored map, never defined on tau,
// targets may be tau (that is how hiding is represented).
class RelabelFn {
 public:
  explicit RelabelFn(std::vector<std::pair<ActionId, ActionId>> map)
      : map_(std::move(map)) {}

  ActionId apply(ActionId a) const {
    for (const auto& [src, dst] : map_)
      if (src == a) return dst;
    return a;
  }

  bool is_identity() const { return map_.empty(); }

  // True when every explicit target is tau, i.e. the function is a pure
  // hiding of its domain.
  bool is_hiding() const {
    for (const auto& [src, dst] : map_)
      if (dst != kTau) return false;
    return true;
  }

  const std::vector<std::pair<ActionId, ActionId>>& pairs() const {
    return map_;
  }

  friend bool operator==(const RelabelFn& a, const RelabelFn& b) {
    return a.map_ == b.map_;
  }

 private:
  std::vector<std::pair<ActionId, ActionId>> map_;  // sorted by source
};

namespace detail {

inline void hash_mix(size_t& seed, size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

struct NodeHash {
  size_t operator()(const TermNode& n) const {
    size_t h = static_cast<size_t>(n.kind);
    hash_mix(h, static_cast<size_t>(n.urgency));
    hash_mix(h, n.a);
    hash_mix(h, n.b);
    hash_mix(h, n.c);
    return h;
  }
};

template <class T>
struct VecHash {
  size_t operator()(const std::vector<T>& v) const {
    size_t h = v.size();
    for (const T& x : v) hash_mix(h, std::hash<T>{}(x));
    return h;
  }
};

struct PairVecHash {
  template <class A, class B>
  size_t operator()(const std::vector<std::pair<A, B>>& v) const {
    size_t h = v.size();
    for (const auto& [a, b] : v) {
      hash_mix(h, a);
      hash_mix(h, b);
    }
    return h;
  }
};

struct EntriesHash {
  size_t operator()(const std::vector<PrefixedAction>& v) const {
    size_t h = v.size();
    for (const PrefixedAction& p : v) {
      hash_mix(h, p.action);
      hash_mix(h, static_cast<size_t>(p.urgency));
    }
    return h;
  }
};

}  // namespace detail

// Interning pool for names, action sets, read-set entry lists, relabelling
// functions and terms.  Structural equality of terms is TermId equality;
// every constructor returns the canonical id for its arguments.  Terms are
// immutable once created.
class TermPool {
 public:
  TermPool() {
    name("tau");                       // NameId 0
    nil_ = intern({TermKind::Nil});    // TermId 0
    empty_set_ = action_set({});
  }

  TermPool(const TermPool&) = delete;
  TermPool& operator=(const TermPool&) = delete;

  // ---- names ----

  NameId name(std::string_view s) {
    auto it = name_ids_.find(std::string(s));
    if (it != name_ids_.end()) return it->second;
    NameId id = static_cast<NameId>(names_.size());
    names_.emplace_back(s);
    name_ids_.emplace(names_.back(), id);
    return id;
  }

  const std::string& text(NameId id) const { return names_.at(id); }

  // ---- action sets (sync sets, hiding arguments); tau is never a member ----

  SetId action_set(std::vector<ActionId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (!v.empty() && v.front() == kTau)
      throw std::invalid_argument("tau may not occur in an action set");
    auto it = set_ids_.find(v);
    if (it != set_ids_.end()) return it->second;
    SetId id = static_cast<SetId>(sets_.size());
    sets_.push_back(v);
    set_ids_.emplace(std::move(v), id);
    return id;
  }

  const std::vector<ActionId>& set(SetId id) const { return sets_.at(id); }
  SetId empty_set() const { return empty_set_; }

  bool set_contains(SetId id, ActionId a) const {
    const auto& v = sets_.at(id);
    return std::binary_search(v.begin(), v.end(), a);
  }

  // ---- read-set entry lists ----
  //
  // Entries are stored sorted.  A duplicate action name (in any urgency
  // combination) is representable so that validation can report it; the
  // semantics assumes validated input.

  EntriesId entries(std::vector<PrefixedAction> v) {
    if (v.empty())
      throw std::invalid_argument("read set must not be empty");
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    auto it = entries_ids_.find(v);
    if (it != entries_ids_.end()) return it->second;
    EntriesId id = static_cast<EntriesId>(entries_.size());
    entries_.push_back(v);
    entries_ids_.emplace(std::move(v), id);
    return id;
  }

  const std::vector<PrefixedAction>& entry_list(EntriesId id) const {
    return entries_.at(id);
  }

  // ---- relabelling functions ----

  RelabelId relabel_fn(std::vector<std::pair<ActionId, ActionId>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<std::pair<ActionId, ActionId>> kept;
    for (size_t i = 0; i < pairs.size(); ++i) {
      auto [src, dst] = pairs[i];
      if (src == kTau)
        throw std::invalid_argument("tau may not be relabelled");
      if (i + 1 < pairs.size() && pairs[i + 1].first == src)
        throw std::invalid_argument("conflicting relabelling of '" +
                                    text(src) + "'");
      if (src != dst) kept.push_back(pairs[i]);
    }
    auto it = fn_ids_.find(kept);
    if (it != fn_ids_.end()) return it->second;
    RelabelId id = static_cast<RelabelId>(fns_.size());
    fns_.emplace_back(kept);
    fn_ids_.emplace(std::move(kept), id);
    return id;
  }

  // Maps every listed action to tau; rejects tau itself.
  RelabelId hiding(const std::vector<ActionId>& actions) {
    std::vector<std::pair<ActionId, ActionId>> pairs;
    pairs.reserve(actions.size());
    for (ActionId a : actions) {
      if (a == kTau)
        throw std::invalid_argument("tau cannot be hidden");
      pairs.emplace_back(a, kTau);
    }
    return relabel_fn(std::move(pairs));
  }

  const RelabelFn& fn(RelabelId id) const { return fns_.at(id); }

  // ---- terms ----

  TermId nil() const { return nil_; }

  TermId constant(NameId n) { return intern({TermKind::Constant, Urgency::Lazy, n}); }
  TermId var(NameId n) { return intern({TermKind::Var, Urgency::Lazy, n}); }

  TermId prefix(ActionId act, Urgency u, TermId cont) {
    return intern({TermKind::Prefix, u, act, cont});
  }

  TermId read_set(EntriesId e, TermId body) {
    return intern({TermKind::ReadSet, Urgency::Lazy, e, body});
  }

  TermId choice(TermId l, TermId r) {
    return intern({TermKind::Choice, Urgency::Lazy, l, r});
  }

  TermId parallel(TermId l, SetId sync, TermId r) {
    return intern({TermKind::Parallel, Urgency::Lazy, l, sync, r});
  }

  TermId relabel(TermId body, RelabelId f) {
    if (fns_.at(f).is_identity()) return body;  // P[] behaves exactly like P
    return intern({TermKind::Relabel, Urgency::Lazy, body, f});
  }

  TermId rec(NameId v, TermId body) {
    return intern({TermKind::Rec, Urgency::Lazy, v, body});
  }

  const TermNode& node(TermId id) const { return nodes_.at(id); }
  size_t term_count() const { return nodes_.size(); }

 private:
  TermId intern(TermNode n) {
    auto it = node_ids_.find(n);
    if (it != node_ids_.end()) return it->second;
    TermId id = static_cast<TermId>(nodes_.size());
    nodes_.push_back(n);
    node_ids_.emplace(n, id);
    return id;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, NameId> name_ids_;

  std::vector<std::vector<ActionId>> sets_;
  std::unordered_map<std::vector<ActionId>, SetId,
                     detail::VecHash<ActionId>> set_ids_;

  std::vector<std::vector<PrefixedAction>> entries_;
  std::unordered_map<std::vector<PrefixedAction>, EntriesId,
                     detail::EntriesHash> entries_ids_;

  std::vector<RelabelFn> fns_;
  std::unordered_map<std::vector<std::pair<ActionId, ActionId>>, RelabelId,
                     detail::PairVecHash> fn_ids_;

  std::vector<TermNode> nodes_;
  std::unordered_map<TermNode, TermId, detail::NodeHash> node_ids_;

  TermId nil_ = 0;
  SetId empty_set_ = 0;
};

// True when the term carries no urgency marking anywhere.  Parsed terms and
// the builders only produce initial terms; urgent forms arise from time
// steps.
inline bool is_initial(const TermPool& pool, TermId t) {
  const TermNode& n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Constant:
    case TermKind::Var:
      return true;
    case TermKind::Prefix:
      return n.urgency == Urgency::Lazy && is_initial(pool, n.b);
    case TermKind::ReadSet:
      for (const PrefixedAction& p : pool.entry_list(n.a))
        if (p.urgency == Urgency::Urgent) return false;
      return is_initial(pool, n.b);
    case TermKind::Choice:
      return is_initial(pool, n.a) && is_initial(pool, n.b);
    case TermKind::Parallel:
      return is_initial(pool, n.a) && is_initial(pool, n.c);
    case TermKind::Relabel:
      return is_initial(pool, n.a);
    case TermKind::Rec:
      return is_initial(pool, n.b);
  }
  return true;
}

// Collects every action name syntactically occurring in the term: prefix
// actions, read-set entries, sync sets, and relabelling sources and targets.
// tau is not collected.
inline void collect_actions(const TermPool& pool, TermId t,
                            std::set<ActionId>& out) {
  const TermNode& n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Constant:
    case TermKind::Var:
      return;
    case TermKind::Prefix:
      if (n.a != kTau) out.insert(n.a);
      collect_actions(pool, n.b, out);
      return;
    case TermKind::ReadSet:
      for (const PrefixedAction& p : pool.entry_list(n.a))
        if (p.action != kTau) out.insert(p.action);
      collect_actions(pool, n.b, out);
      return;
    case TermKind::Choice:
      collect_actions(pool, n.a, out);
      collect_actions(pool, n.b, out);
      return;
    case TermKind::Parallel:
      for (ActionId a : pool.set(n.b)) out.insert(a);
      collect_actions(pool, n.a, out);
      collect_actions(pool, n.c, out);
      return;
    case TermKind::Relabel:
      for (const auto& [src, dst] : pool.fn(n.b).pairs()) {
        out.insert(src);
        if (dst != kTau) out.insert(dst);
      }
      collect_actions(pool, n.a, out);
      return;
    case TermKind::Rec:
      collect_actions(pool, n.b, out);
      return;
  }
}

}  // namespace pafas

#endif  // PAFAS_TERM_HPP_
