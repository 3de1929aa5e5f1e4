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

#ifndef PAFAS_MODELS_HPP_
#define PAFAS_MODELS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pafas/liveness.hpp"
#include "pafas/system.hpp"
#include "pafas/term.hpp"

namespace pafas {

// How shared variables are rendered as processes.  A variable with values
// v1..vn becomes one equation per value; reading never changes the value,
// writing w moves to the equation for w.
//
//   Blocking          every access is an ordinary action: the variable
//                     commits to one reader or writer at a time, so a
//                     spinning reader can starve a writer.
//   NonBlockingRead   reads sit in a read set and leave the process
//                     (urgencies included) untouched.
//   NonBlockingRewrite  reads and identity writes (writing the value the
//                     variable already holds) are both non-blocking.
enum class VariableStyle { Blocking, NonBlockingRead, NonBlockingRewrite };

inline const char* to_string(VariableStyle s) {
  switch (s) {
    case VariableStyle::Blocking: return "blocking";
    case VariableStyle::NonBlockingRead: return "nbread";
    case VariableStyle::NonBlockingRewrite: return "nbrw";
  }
  return "?";
}

inline VariableStyle style_from_string(std::string_view s) {
  if (s == "blocking") return VariableStyle::Blocking;
  if (s == "nbread") return VariableStyle::NonBlockingRead;
  if (s == "nbrw") return VariableStyle::NonBlockingRewrite;
  throw std::invalid_argument("unknown variable style '" + std::string(s) +
                              "' (expected blocking, nbread or nbrw)");
}

// A mutual exclusion model instantiated over a pool: the closed system
// plus the handles the liveness check needs (per process: its request and
// critical-section actions and the equation holding the idling summand).
struct ModelHandle {
  std::string name;
  VariableStyle style;
  System system;
  ActionId req[2] = {0, 0};
  ActionId cs[2] = {0, 0};
  NameId process_eq[2] = {0, 0};
};

inline IoSpec io_spec(const ModelHandle& m, int focus) {
  if (focus != 1 && focus != 2)
    throw std::invalid_argument("focus must be 1 or 2");
  int f = focus - 1, o = 1 - f;
  IoSpec spec;
  spec.req = m.req[f];
  spec.cs = m.cs[f];
  spec.demote = {m.req[o], m.cs[o]};
  spec.idle_equation = m.process_eq[f];
  return spec;
}

namespace detail {

// One shared variable: value-indexed constants plus a read and a write
// action per value, all in a fixed value order.
struct VarShape {
  std::vector<std::string> constants;
  std::vector<std::string> reads;
  std::vector<std::string> writes;
};

class ModelBuilder {
 public:
  ModelBuilder(TermPool& pool, System& sys) : p_(pool), sys_(sys) {}

  ActionId act(const std::string& s) { return p_.name(s); }
  TermId constant(const std::string& s) { return p_.constant(p_.name(s)); }

  // a1.a2...an.K
  TermId chain(const std::vector<std::string>& actions,
               const std::string& constant_name) {
    TermId t = constant(constant_name);
    for (auto it = actions.rbegin(); it != actions.rend(); ++it)
      t = p_.prefix(*it == "tau" ? kTau : act(*it), Urgency::Lazy, t);
    return t;
  }

  TermId sum(const std::vector<TermId>& summands) {
    TermId t = summands.front();
    for (size_t i = 1; i < summands.size(); ++i) t = p_.choice(t, summands[i]);
    return t;
  }

  TermId par(TermId l, const std::vector<ActionId>& sync, TermId r) {
    return p_.parallel(l, p_.action_set(sync), r);
  }

  void eq(const std::string& name, TermId body) { sys_.define(name, body); }

  // The idling pattern shared by every process equation: the request
  // branch plus the option to stay in the non-critical section.
  void process(const std::string& name,
               const std::vector<std::string>& request_chain,
               const std::string& next) {
    TermId active = chain(request_chain, next);
    TermId idle = p_.prefix(kTau, Urgency::Lazy, constant(name));
    eq(name, p_.choice(active, idle));
  }

  void variable(const VarShape& v, VariableStyle style,
                std::vector<ActionId>* sort) {
    size_t n = v.constants.size();
    for (size_t i = 0; i < n; ++i) {
      sort->push_back(act(v.reads[i]));
      sort->push_back(act(v.writes[i]));
    }
    for (size_t i = 0; i < n; ++i) {
      std::vector<TermId> writes;
      for (size_t j = 0; j < n; ++j) {
        if (style == VariableStyle::NonBlockingRewrite && j == i) continue;
        writes.push_back(
            p_.prefix(act(v.writes[j]), Urgency::Lazy, constant(v.constants[j])));
      }
      TermId body = 0;
      switch (style) {
        case VariableStyle::Blocking: {
          std::vector<TermId> summands{
              p_.prefix(act(v.reads[i]), Urgency::Lazy, constant(v.constants[i]))};
          summands.insert(summands.end(), writes.begin(), writes.end());
          body = sum(summands);
          break;
        }
        case VariableStyle::NonBlockingRead: {
          std::vector<PrefixedAction> entries{{act(v.reads[i]), Urgency::Lazy}};
          body = p_.read_set(p_.entries(entries), sum(writes));
          break;
        }
        case VariableStyle::NonBlockingRewrite: {
          std::vector<PrefixedAction> entries{{act(v.reads[i]), Urgency::Lazy},
                                              {act(v.writes[i]), Urgency::Lazy}};
          body = p_.read_set(p_.entries(entries), sum(writes));
          break;
        }
      }
      eq(v.constants[i], body);
    }
  }

  TermPool& p_;
  System& sys_;
};

inline VarShape bool_var(const std::string& letter, int i) {
  std::string n = std::to_string(i);
  return {{"B" + n + "f", "B" + n + "t"},
          {"rf" + letter + n, "rt" + letter + n},
          {"wf" + letter + n, "wt" + letter + n}};
}

inline VarShape bool_cvar(int i) {
  std::string n = std::to_string(i);
  return {{"C" + n + "f", "C" + n + "t"},
          {"rfc" + n, "rtc" + n},
          {"wfc" + n, "wtc" + n}};
}

inline VarShape turn_var() {
  return {{"K1", "K2"}, {"rk1", "rk2"}, {"wk1", "wk2"}};
}

inline VarShape counter_var(int i) {
  std::string n = std::to_string(i);
  return {{"C" + n + "0", "C" + n + "1", "C" + n + "2"},
          {"rc" + n + "0", "rc" + n + "1", "rc" + n + "2"},
          {"wc" + n + "0", "wc" + n + "1", "wc" + n + "2"}};
}

inline void fill_handle(ModelHandle& m, TermPool& pool) {
  m.req[0] = pool.name("req1");
  m.req[1] = pool.name("req2");
  m.cs[0] = pool.name("cs1");
  m.cs[1] = pool.name("cs2");
  m.process_eq[0] = pool.name("P1");
  m.process_eq[1] = pool.name("P2");
}

}  // namespace detail

// Two processes, a request flag per process and a turn variable.  A
// process raises its flag, yields the turn, then spins until the rival's
// flag is down or the turn comes back.
inline ModelHandle peterson(TermPool& pool,
                            VariableStyle style = VariableStyle::NonBlockingRead) {
  ModelHandle m{"peterson", style, System(pool)};
  detail::fill_handle(m, pool);
  detail::ModelBuilder b(pool, m.system);
  std::vector<ActionId> hidden;
  b.variable(detail::bool_var("b", 1), style, &hidden);
  b.variable(detail::bool_var("b", 2), style, &hidden);
  b.variable(detail::turn_var(), style, &hidden);

  b.process("P1", {"req1", "wtb1", "wk2"}, "P11");
  b.eq("P11", b.sum({b.chain({"rfb2"}, "P13"), b.chain({"rtb2"}, "P12")}));
  b.eq("P12", b.sum({b.chain({"rk2"}, "P11"), b.chain({"rk1"}, "P13")}));
  b.eq("P13", b.chain({"cs1", "wfb1"}, "P1"));
  b.process("P2", {"req2", "wtb2", "wk1"}, "P21");
  b.eq("P21", b.sum({b.chain({"rfb1"}, "P23"), b.chain({"rtb1"}, "P22")}));
  b.eq("P22", b.sum({b.chain({"rk1"}, "P21"), b.chain({"rk2"}, "P23")}));
  b.eq("P23", b.chain({"cs2", "wfb2"}, "P2"));

  TermId pv = b.par(b.par(b.constant("B1f"), {}, b.constant("B2f")), {},
                    b.constant("K1"));
  TermId body = b.par(b.par(b.constant("P1"), {}, b.constant("P2")), hidden, pv);
  m.system.set_root(pool.relabel(body, pool.hiding(hidden)));
  return m;
}

// Two processes with one flag each and no turn variable; the second
// process defers to the first, which makes the algorithm asymmetric.
inline ModelHandle lamport(TermPool& pool,
                           VariableStyle style = VariableStyle::NonBlockingRewrite) {
  ModelHandle m{"lamport", style, System(pool)};
  detail::fill_handle(m, pool);
  detail::ModelBuilder b(pool, m.system);
  std::vector<ActionId> hidden;
  b.variable(detail::bool_var("b", 1), style, &hidden);
  b.variable(detail::bool_var("b", 2), style, &hidden);

  b.process("P1", {"req1", "wtb1"}, "P11");
  b.eq("P11", b.sum({b.chain({"rfb2"}, "P12"), b.chain({"rtb2"}, "P11")}));
  b.eq("P12", b.chain({"cs1", "wfb1"}, "P1"));
  b.process("P2", {"req2", "wtb2"}, "P21");
  b.eq("P21", b.sum({b.chain({"rfb1"}, "P23"), b.chain({"rtb1", "wfb2"}, "P22")}));
  b.eq("P22", b.sum({b.chain({"rfb1", "wtb2"}, "P21"), b.chain({"rtb1"}, "P22")}));
  b.eq("P23", b.chain({"cs2", "wfb2"}, "P2"));

  TermId pv = b.par(b.constant("B1f"), {}, b.constant("B2f"));
  TermId body = b.par(b.par(b.constant("P1"), {}, b.constant("P2")), hidden, pv);
  m.system.set_root(pool.relabel(body, pool.hiding(hidden)));
  return m;
}

// Two processes, two flag arrays and a turn variable; reading the turn's
// flag is bracketed by get/put so the turn cannot change mid-check.
// Shared variables are fixed to the nbrw style.
inline ModelHandle dijkstra(TermPool& pool) {
  ModelHandle m{"dijkstra", VariableStyle::NonBlockingRewrite, System(pool)};
  detail::fill_handle(m, pool);
  detail::ModelBuilder b(pool, m.system);
  VariableStyle style = VariableStyle::NonBlockingRewrite;
  std::vector<ActionId> hidden;
  b.variable(detail::bool_var("b", 1), style, &hidden);
  b.variable(detail::bool_var("b", 2), style, &hidden);
  b.variable(detail::bool_cvar(1), style, &hidden);
  b.variable(detail::bool_cvar(2), style, &hidden);
  b.variable(detail::turn_var(), style, &hidden);
  b.eq("BK", b.chain({"get", "put"}, "BK"));

  b.process("P1", {"req1", "wfb1"}, "P11");
  b.eq("P11", b.sum({b.chain({"rk1"}, "P15"), b.chain({"rk2", "wtc1"}, "P12")}));
  b.eq("P12", pool.prefix(b.act("get"), Urgency::Lazy,
                          b.sum({b.chain({"rk1"}, "P13"),
                                 b.chain({"rk2"}, "P14")})));
  b.eq("P13", b.sum({b.chain({"rtb1", "put", "wk1"}, "P11"),
                     b.chain({"rfb1", "put"}, "P11")}));
  b.eq("P14", b.sum({b.chain({"rtb2", "put", "wk1"}, "P11"),
                     b.chain({"rfb2", "put"}, "P11")}));
  b.eq("P15", pool.prefix(b.act("wfc1"), Urgency::Lazy,
                          b.sum({b.chain({"rfc2"}, "P11"),
                                 b.chain({"rtc2"}, "P16")})));
  b.eq("P16", b.chain({"cs1", "wtc1", "wtb1"}, "P1"));
  b.process("P2", {"req2", "wfb2"}, "P21");
  b.eq("P21", b.sum({b.chain({"rk2"}, "P25"), b.chain({"rk1", "wtc2"}, "P22")}));
  b.eq("P22", pool.prefix(b.act("get"), Urgency::Lazy,
                          b.sum({b.chain({"rk2"}, "P23"),
                                 b.chain({"rk1"}, "P24")})));
  b.eq("P23", b.sum({b.chain({"rtb2", "put", "wk2"}, "P21"),
                     b.chain({"rfb2", "put"}, "P21")}));
  b.eq("P24", b.sum({b.chain({"rtb1", "put", "wk2"}, "P21"),
                     b.chain({"rfb1", "put"}, "P21")}));
  b.eq("P25", pool.prefix(b.act("wfc2"), Urgency::Lazy,
                          b.sum({b.chain({"rfc1"}, "P21"),
                                 b.chain({"rtc1"}, "P26")})));
  b.eq("P26", b.chain({"cs2", "wtc2", "wtb2"}, "P2"));

  TermId pv = b.par(
      b.par(b.par(b.par(b.constant("B1t"), {}, b.constant("B2t")), {},
                  b.constant("C1t")),
            {}, b.constant("C2t")),
      {}, b.constant("K1"));
  std::vector<ActionId> lock{b.act("get"), b.act("put")};
  TermId procs = b.par(b.par(b.constant("P1"), {}, b.constant("P2")), lock,
                       b.constant("BK"));
  TermId body = b.par(procs, hidden, pv);
  std::vector<ActionId> hide = hidden;
  hide.insert(hide.end(), lock.begin(), lock.end());
  m.system.set_root(pool.relabel(body, pool.hiding(hide)));
  return m;
}

// Two processes, a three-valued intent variable per process and a turn
// variable.  Shared variables are fixed to the nbrw style.
inline ModelHandle knuth(TermPool& pool) {
  ModelHandle m{"knuth", VariableStyle::NonBlockingRewrite, System(pool)};
  detail::fill_handle(m, pool);
  detail::ModelBuilder b(pool, m.system);
  VariableStyle style = VariableStyle::NonBlockingRewrite;
  std::vector<ActionId> hidden;
  b.variable(detail::counter_var(1), style, &hidden);
  b.variable(detail::counter_var(2), style, &hidden);
  b.variable(detail::turn_var(), style, &hidden);

  b.process("P1", {"req1", "wc11"}, "P11");
  b.eq("P11", b.sum({b.chain({"rk1"}, "P13"), b.chain({"rk2"}, "P12")}));
  b.eq("P12", b.sum({b.chain({"rc20"}, "P13"), b.chain({"rc21"}, "P11"),
                     b.chain({"rc22"}, "P11")}));
  b.eq("P13", b.chain({"wc12"}, "P14"));
  b.eq("P14", b.sum({b.chain({"rc20"}, "P15"), b.chain({"rc21"}, "P15"),
                     b.chain({"rc22"}, "P16")}));
  b.eq("P15", b.chain({"wk1", "cs1", "wk2", "wc10"}, "P1"));
  b.eq("P16", b.chain({"wc11"}, "P11"));
  b.process("P2", {"req2", "wc21"}, "P21");
  b.eq("P21", b.sum({b.chain({"rk2"}, "P23"), b.chain({"rk1"}, "P22")}));
  b.eq("P22", b.sum({b.chain({"rc10"}, "P23"), b.chain({"rc11"}, "P21"),
                     b.chain({"rc12"}, "P21")}));
  b.eq("P23", b.chain({"wc22"}, "P24"));
  b.eq("P24", b.sum({b.chain({"rc10"}, "P25"), b.chain({"rc11"}, "P25"),
                     b.chain({"rc12"}, "P26")}));
  b.eq("P25", b.chain({"wk2", "cs2", "wk1", "wc20"}, "P2"));
  b.eq("P26", b.chain({"wc21"}, "P21"));

  TermId pv = b.par(b.par(b.constant("C10"), {}, b.constant("C20")), {},
                    b.constant("K1"));
  TermId body = b.par(b.par(b.constant("P1"), {}, b.constant("P2")), hidden, pv);
  m.system.set_root(pool.relabel(body, pool.hiding(hidden)));
  return m;
}

struct CatalogEntry {
  const char* name;
  const char* default_style;
  bool style_fixed;
  const char* summary;
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"peterson", "nbread", false,
       "flag per process plus turn variable; live for both processes with "
       "non-blocking reads, not live with blocking variables"},
      {"lamport", "nbrw", false,
       "one flag per process, asymmetric; live for process 1 only (with "
       "non-blocking reads or rewrites)"},
      {"dijkstra", "nbrw", true,
       "flag arrays b and c plus a locked turn variable; not live"},
      {"knuth", "nbrw", true,
       "three-valued intent variables plus turn variable; not live"},
  };
  return entries;
}

inline ModelHandle build_model(TermPool& pool, std::string_view name,
                               std::string_view style_text = {}) {
  const CatalogEntry* entry = nullptr;
  for (const CatalogEntry& e : catalog())
    if (name == e.name) entry = &e;
  if (!entry)
    throw std::invalid_argument(
        "unknown model '" + std::string(name) +
        "' (expected peterson, lamport, dijkstra or knuth)");
  VariableStyle style = style_from_string(
      style_text.empty() ? entry->default_style : style_text);
  if (entry->style_fixed && style != style_from_string(entry->default_style))
    throw std::invalid_argument("model '" + std::string(name) +
                                "' supports only its fixed variable style " +
                                entry->default_style);
  if (name == "peterson") return peterson(pool, style);
  if (name == "lamport") return lamport(pool, style);
  if (name == "dijkstra") return dijkstra(pool);
  return knuth(pool);
}

}  // namespace pafas

#endif  // PAFAS_MODELS_HPP_
