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

#ifndef PAFAS_REPORT_HPP_
#define PAFAS_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pafas/liveness.hpp"
#include "pafas/printer.hpp"
#include "pafas/semantics.hpp"
#include "pafas/term.hpp"

namespace pafas {

// What was checked, kept in the verdict document so a witness can be
// replayed later against a freshly built transition system.
struct CheckSource {
  std::string model;  // built-in model name; empty when loaded from a file
  std::string style;
  int focus = 0;
  std::string file;
  std::string req, cs, idle;
  std::vector<std::string> demote;
};

inline nlohmann::json to_json(const CheckSource& s) {
  nlohmann::json j;
  if (!s.model.empty()) {
    j["model"] = s.model;
    j["style"] = s.style;
    j["focus"] = s.focus;
  } else {
    j["file"] = s.file;
    j["req"] = s.req;
    j["cs"] = s.cs;
    j["idle"] = s.idle;
    j["demote"] = s.demote;
    j["focus"] = s.focus;
  }
  return j;
}

inline CheckSource source_from_json(const nlohmann::json& j) {
  CheckSource s;
  if (j.contains("model")) {
    s.model = j.at("model").get<std::string>();
    s.style = j.value("style", "");
  } else {
    s.file = j.at("file").get<std::string>();
    s.req = j.at("req").get<std::string>();
    s.cs = j.at("cs").get<std::string>();
    s.idle = j.at("idle").get<std::string>();
    s.demote = j.at("demote").get<std::vector<std::string>>();
  }
  s.focus = j.value("focus", 0);
  return s;
}

namespace detail {

// The label a tau carries underneath the top relabelling, when the step is
// an internal rendering of a concrete hidden action.
inline std::optional<std::string> raw_of(TermPool& pool, Semantics& sem,
                                         const TimedLts& lts, uint32_t src,
                                         const LassoStep& st) {
  std::optional<ActionId> raw =
      underlying_label(pool, sem, lts.states[src], lts.states[st.dst], st);
  if (!raw) return std::nullopt;
  return pool.text(*raw);
}

inline nlohmann::json step_json(TermPool& pool, Semantics& sem,
                                const TimedLts& lts, uint32_t src,
                                const LassoStep& st) {
  nlohmann::json j;
  j["kind"] = st.time ? "time" : "act";
  j["label"] = st.time ? "1" : pool.text(st.label);
  if (auto raw = raw_of(pool, sem, lts, src, st)) j["raw"] = *raw;
  j["to"] = st.dst;
  j["state"] = print_term(pool, lts.states[st.dst]);
  return j;
}

}  // namespace detail

// The full verdict document.  Deterministic apart from stats.elapsedMs:
// object keys are emitted sorted and state numbering is fixed by the
// builder, so two runs differ in that single number only.
inline nlohmann::json verdict_json(TermPool& pool, Semantics& sem,
                                   const LivenessResult& r,
                                   const CheckSource& src) {
  nlohmann::json j;
  j["format"] = "pafas-verdict";
  j["version"] = 1;
  j["source"] = to_json(src);
  j["verdict"] = r.live ? "Live" : "NotLive";
  j["stats"] = {{"states", r.stats.states},
                {"actionEdges", r.stats.action_edges},
                {"timeEdges", r.stats.time_edges},
                {"elapsedMs", r.stats.elapsed_ms}};
  if (r.witness) {
    nlohmann::json w;
    w["root"] = print_term(pool, r.lts.states[0]);
    w["entry"] = r.witness->entry;
    uint32_t at = 0;
    w["prefix"] = nlohmann::json::array();
    for (const LassoStep& st : r.witness->prefix) {
      w["prefix"].push_back(detail::step_json(pool, sem, r.lts, at, st));
      at = st.dst;
    }
    w["cycle"] = nlohmann::json::array();
    for (const LassoStep& st : r.witness->cycle) {
      w["cycle"].push_back(detail::step_json(pool, sem, r.lts, at, st));
      at = st.dst;
    }
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

// Reads a witness back out of a verdict document.
inline std::optional<Lasso> lasso_from_json(TermPool& pool,
                                            const nlohmann::json& j) {
  if (!j.contains("witness") || j.at("witness").is_null())
    return std::nullopt;
  const nlohmann::json& w = j.at("witness");
  Lasso l;
  l.entry = w.at("entry").get<uint32_t>();
  auto read_steps = [&](const nlohmann::json& arr,
                        std::vector<LassoStep>* out) {
    for (const nlohmann::json& s : arr) {
      LassoStep st;
      st.time = s.at("kind").get<std::string>() == "time";
      st.label = st.time ? kTau : pool.name(s.at("label").get<std::string>());
      st.dst = s.at("to").get<uint32_t>();
      out->push_back(st);
    }
  };
  read_steps(w.at("prefix"), &l.prefix);
  read_steps(w.at("cycle"), &l.cycle);
  return l;
}

namespace detail {

inline std::string step_text(TermPool& pool, Semantics& sem,
                             const TimedLts& lts, uint32_t src,
                             const LassoStep& st) {
  if (st.time) return "1";
  std::string out = pool.text(st.label);
  if (auto raw = raw_of(pool, sem, lts, src, st)) out += " (" + *raw + ")";
  return out;
}

}  // namespace detail

// Human-readable verdict: one line per statistic, then (unless suppressed)
// the violating run laid out as a timed computation, every state printed.
inline std::string render_verdict(TermPool& pool, Semantics& sem,
                                  const LivenessResult& r, bool show_witness) {
  std::string out;
  out += std::string("verdict: ") + (r.live ? "Live" : "NotLive") + "\n";
  out += "states: " + std::to_string(r.stats.states) +
         "  action edges: " + std::to_string(r.stats.action_edges) +
         "  time edges: " + std::to_string(r.stats.time_edges) +
         "  elapsed: " + std::to_string(r.stats.elapsed_ms) + " ms\n";
  if (r.live) {
    if (show_witness)
      out += "every request of the checked process is eventually answered "
             "along fair runs\n";
    return out;
  }
  if (!show_witness) return out;
  const Lasso& l = *r.witness;
  out += "\nfound a reachable cycle with a time step but no in/out action; "
         "looping it forever\nis a fair run on which the checked process "
         "starves.\n";
  out += "\ninitial state 0: " + print_term(pool, r.lts.states[0]) + "\n";
  uint32_t at = 0;
  if (!l.prefix.empty()) {
    out += "\nway in:\n";
    for (const LassoStep& st : l.prefix) {
      out += "  --" + detail::step_text(pool, sem, r.lts, at, st) +
             "--> state " + std::to_string(st.dst) + ": " +
             print_term(pool, r.lts.states[st.dst]) + "\n";
      at = st.dst;
    }
  }
  out += "\ncycle (entered at state " + std::to_string(l.entry) +
         ", repeats forever):\n";
  for (const LassoStep& st : l.cycle) {
    out += "  --" + detail::step_text(pool, sem, r.lts, at, st) +
           "--> state " + std::to_string(st.dst) + ": " +
           print_term(pool, r.lts.states[st.dst]) + "\n";
    at = st.dst;
  }
  return out;
}

}  // namespace pafas

#endif  // PAFAS_REPORT_HPP_
