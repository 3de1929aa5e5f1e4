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

#ifndef PAFAS_SYSTEM_HPP_
#define PAFAS_SYSTEM_HPP_

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "pafas/term.hpp"

namespace pafas {

struct Equation {
  NameId name = 0;
  TermId body = 0;
};

// A process system: named equations in definition order plus a root term.
// Recursion is expressed through constants referring to equations; the Rec
// binder form is kept for terms built directly against the pool.
class System {
 public:
  explicit System(TermPool& pool) : pool_(&pool) {}

  TermPool& pool() const { return *pool_; }

  void define(NameId name, TermId body) {
    for (const Equation& e : equations_)
      if (e.name == name)
        throw std::invalid_argument("duplicate equation for '" +
                                    pool_->text(name) + "'");
    equations_.push_back({name, body});
  }

  void define(std::string_view name, TermId body) {
    define(pool_->name(name), body);
  }

  const Equation* find(NameId name) const {
    for (const Equation& e : equations_)
      if (e.name == name) return &e;
    return nullptr;
  }

  const std::vector<Equation>& equations() const { return equations_; }

  void replace_body(NameId name, TermId body) {
    for (Equation& e : equations_)
      if (e.name == name) {
        e.body = body;
        return;
      }
    throw std::invalid_argument("no equation '" + pool_->text(name) + "'");
  }

  TermId root() const { return root_; }
  void set_root(TermId r) { root_ = r; }

  // Every action name syntactically occurring in any equation body or the
  // root, including sync sets and relabelling sources/targets.
  std::set<ActionId> alphabet() const {
    std::set<ActionId> out;
    for (const Equation& e : equations_) collect_actions(*pool_, e.body, out);
    collect_actions(*pool_, root_, out);
    return out;
  }

 private:
  TermPool* pool_;
  std::vector<Equation> equations_;
  TermId root_ = 0;
};

// Spec-level well-formedness findings.  These are data for the caller, not
// exceptions: an interactive front end wants all of them at once.
struct Violation {
  enum class Kind {
    DuplicateReadAction,   // read set mentions the same action twice
    UndefinedConstant,     // constant with no equation
    UnboundVariable,       // Var outside any binding Rec
    UnguardedRecursion,    // constant cycle or Rec variable with no prefix
    NonInitialSubterm,     // urgency below a prefix or inside a Rec body
  };
  Kind kind;
  std::string subject;
};

namespace detail {

inline void validate_term(const TermPool& pool, TermId t,
                          std::vector<NameId>* bound,
                          std::vector<Violation>* out) {
  const TermNode& n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
      return;
    case TermKind::Constant:
      return;  // definedness is checked against the equation table
    case TermKind::Var: {
      for (NameId v : *bound)
        if (v == n.a) return;
      out->push_back({Violation::Kind::UnboundVariable, pool.text(n.a)});
      return;
    }
    case TermKind::Prefix:
      if (!is_initial(pool, n.b))
        out->push_back({Violation::Kind::NonInitialSubterm,
                        "continuation of prefix '" + pool.text(n.a) + "'"});
      validate_term(pool, n.b, bound, out);
      return;
    case TermKind::ReadSet: {
      const auto& es = pool.entry_list(n.a);
      for (size_t i = 0; i + 1 < es.size(); ++i)
        if (es[i].action == es[i + 1].action)
          out->push_back({Violation::Kind::DuplicateReadAction,
                          pool.text(es[i].action)});
      validate_term(pool, n.b, bound, out);
      return;
    }
    case TermKind::Choice:
    case TermKind::Parallel:
      validate_term(pool, n.a, bound, out);
      validate_term(pool, n.kind == TermKind::Parallel ? n.c : n.b, bound,
                    out);
      return;
    case TermKind::Relabel:
      validate_term(pool, n.a, bound, out);
      return;
    case TermKind::Rec:
      if (!is_initial(pool, n.b))
        out->push_back({Violation::Kind::NonInitialSubterm,
                        "body of rec " + pool.text(n.a)});
      bound->push_back(n.a);
      validate_term(pool, n.b, bound, out);
      bound->pop_back();
      return;
  }
}

// Occurrences reachable without passing through a prefix.  Read-set bodies
// and choice/parallel/relabel/rec contexts are transparent.
inline void unguarded_refs(const TermPool& pool, TermId t,
                           std::set<NameId>* constants,
                           std::set<NameId>* vars) {
  const TermNode& n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Prefix:
      return;
    case TermKind::Constant:
      constants->insert(n.a);
      return;
    case TermKind::Var:
      vars->insert(n.a);
      return;
    case TermKind::ReadSet:
    case TermKind::Relabel:
      unguarded_refs(pool, n.kind == TermKind::ReadSet ? n.b : n.a, constants,
                     vars);
      return;
    case TermKind::Choice:
      unguarded_refs(pool, n.a, constants, vars);
      unguarded_refs(pool, n.b, constants, vars);
      return;
    case TermKind::Parallel:
      unguarded_refs(pool, n.a, constants, vars);
      unguarded_refs(pool, n.c, constants, vars);
      return;
    case TermKind::Rec: {
      std::set<NameId> inner_vars;
      unguarded_refs(pool, n.b, constants, &inner_vars);
      inner_vars.erase(n.a);
      vars->insert(inner_vars.begin(), inner_vars.end());
      return;
    }
  }
}

// Every Rec binder whose variable occurs unguarded directly in its body.
inline void scan_unguarded_recs(const TermPool& pool, TermId t,
                                std::vector<Violation>* out) {
  const TermNode& n = pool.node(t);
  switch (n.kind) {
    case TermKind::Nil:
    case TermKind::Constant:
    case TermKind::Var:
      return;
    case TermKind::Prefix:
      scan_unguarded_recs(pool, n.b, out);
      return;
    case TermKind::ReadSet:
    case TermKind::Relabel:
      scan_unguarded_recs(pool, n.kind == TermKind::ReadSet ? n.b : n.a, out);
      return;
    case TermKind::Choice:
      scan_unguarded_recs(pool, n.a, out);
      scan_unguarded_recs(pool, n.b, out);
      return;
    case TermKind::Parallel:
      scan_unguarded_recs(pool, n.a, out);
      scan_unguarded_recs(pool, n.c, out);
      return;
    case TermKind::Rec: {
      std::set<NameId> cs, vs;
      unguarded_refs(pool, n.b, &cs, &vs);
      if (vs.count(n.a))
        out->push_back(
            {Violation::Kind::UnguardedRecursion, "rec " + pool.text(n.a)});
      scan_unguarded_recs(pool, n.b, out);
      return;
    }
  }
}

inline void scan_constants(const TermPool& pool, TermId t,
                           std::set<NameId>* out) {
  const TermNode& n = pool.node(t);
  switch (n.kind) {
    case TermKind::Constant:
      out->insert(n.a);
      return;
    case TermKind::Prefix:
    case TermKind::ReadSet:
    case TermKind::Rec:
      scan_constants(pool, n.b, out);
      return;
    case TermKind::Relabel:
      scan_constants(pool, n.a, out);
      return;
    case TermKind::Choice:
      scan_constants(pool, n.a, out);
      scan_constants(pool, n.b, out);
      return;
    case TermKind::Parallel:
      scan_constants(pool, n.a, out);
      scan_constants(pool, n.c, out);
      return;
    default:
      return;
  }
}

}  // namespace detail

// Checks the stated well-formedness conditions and returns every finding.
// An empty result means the system is safe to hand to the semantics.
inline std::vector<Violation> validate(const System& sys) {
  const TermPool& pool = sys.pool();
  std::vector<Violation> out;
  std::vector<NameId> bound;

  auto check_term = [&](TermId t) {
    detail::validate_term(pool, t, &bound, &out);
    detail::scan_unguarded_recs(pool, t, &out);
    std::set<NameId> used;
    detail::scan_constants(pool, t, &used);
    for (NameId c : used)
      if (!sys.find(c))
        out.push_back({Violation::Kind::UndefinedConstant, pool.text(c)});
  };

  for (const Equation& e : sys.equations()) check_term(e.body);
  check_term(sys.root());

  // Unguarded mutual recursion: a cycle in the constant reference graph
  // restricted to unguarded occurrences.
  std::vector<std::set<NameId>> succ(sys.equations().size());
  for (size_t i = 0; i < sys.equations().size(); ++i) {
    std::set<NameId> vars;
    detail::unguarded_refs(pool, sys.equations()[i].body, &succ[i], &vars);
  }
  std::vector<int> state(sys.equations().size(), 0);  // 0 new, 1 open, 2 done
  auto index_of = [&](NameId n) -> int {
    for (size_t i = 0; i < sys.equations().size(); ++i)
      if (sys.equations()[i].name == n) return static_cast<int>(i);
    return -1;
  };
  std::function<bool(int)> dfs = [&](int i) -> bool {
    state[i] = 1;
    for (NameId n : succ[i]) {
      int j = index_of(n);
      if (j < 0) continue;
      if (state[j] == 1) return true;
      if (state[j] == 0 && dfs(j)) return true;
    }
    state[i] = 2;
    return false;
  };
  for (size_t i = 0; i < sys.equations().size(); ++i)
    if (state[i] == 0 && dfs(static_cast<int>(i)))
      out.push_back({Violation::Kind::UnguardedRecursion,
                     pool.text(sys.equations()[i].name)});

  return out;
}

inline std::string to_string(const Violation& v) {
  switch (v.kind) {
    case Violation::Kind::DuplicateReadAction:
      return "action '" + v.subject + "' occurs twice in a read set";
    case Violation::Kind::UndefinedConstant:
      return "process '" + v.subject + "' has no defining equation";
    case Violation::Kind::UnboundVariable:
      return "recursion variable '" + v.subject + "' is unbound";
    case Violation::Kind::UnguardedRecursion:
      return "unguarded recursion through '" + v.subject + "'";
    case Violation::Kind::NonInitialSubterm:
      return "urgency marking inside the " + v.subject;
  }
  return "unknown violation";
}

// Hiding as a relabelling: every listed action maps to tau.
inline RelabelId make_hiding(TermPool& pool,
                             const std::vector<ActionId>& actions) {
  return pool.hiding(actions);
}

}  // namespace pafas

#endif  // PAFAS_SYSTEM_HPP_
