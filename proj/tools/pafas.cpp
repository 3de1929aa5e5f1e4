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

// Command line front end.  Exit codes: 0 success (for `check`: Live),
// 1 = NotLive, 2 = any error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pafas/liveness.hpp"
#include "pafas/lts.hpp"
#include "pafas/models.hpp"
#include "pafas/parser.hpp"
#include "pafas/printer.hpp"
#include "pafas/report.hpp"
#include "pafas/semantics.hpp"
#include "pafas/system.hpp"
#include "pafas/term.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

// Where the system under scrutiny comes from.
struct Selector {
  std::string model;
  std::string style;
  std::string file;
  std::string req, cs, idle;
  std::vector<std::string> demote;
  int focus = 2;
  size_t max_states = 1000000;
};

void add_selector(CLI::App* sub, Selector* s, bool with_io) {
  auto* model =
      sub->add_option("--model", s->model,
                      "built-in model: peterson, lamport, dijkstra, knuth");
  sub->add_option("--style", s->style,
                  "variable style for built-ins: blocking, nbread, nbrw")
      ->needs(model);
  auto* file = sub->add_option("--file", s->file,
                               "load the system from a .pafas file");
  model->excludes(file);
  file->excludes(model);
  sub->add_option("--max-states", s->max_states,
                  "exploration budget (default 1000000)");
  if (with_io) {
    sub->add_option("--focus", s->focus,
                    "process to check for built-ins: 1 or 2 (default 2)")
        ->check(CLI::Range(1, 2))
        ->needs(model);
    sub->add_option("--req", s->req, "request action of the checked process")
        ->needs(file);
    sub->add_option("--cs", s->cs,
                    "critical section action of the checked process")
        ->needs(file);
    sub->add_option("--demote", s->demote,
                    "rival actions to turn internal (repeat or comma list)")
        ->delimiter(',')
        ->needs(file);
    sub->add_option("--idle", s->idle,
                    "equation whose tau summand is dropped")
        ->needs(file);
  }
}

pafas::System load_system(pafas::TermPool& pool, const Selector& sel,
                          bool with_io, pafas::IoSpec* spec,
                          pafas::CheckSource* src) {
  using namespace pafas;
  if (!sel.model.empty()) {
    ModelHandle m = build_model(pool, sel.model, sel.style);
    if (with_io) *spec = io_spec(m, sel.focus);
    if (src) {
      src->model = m.name;
      src->style = to_string(m.style);
      src->focus = sel.focus;
    }
    return m.system;
  }
  if (sel.file.empty())
    throw std::runtime_error("one of --model or --file is required");
  System sys = parse_system(pool, read_file(sel.file));
  std::vector<Violation> bad = validate(sys);
  if (!bad.empty()) {
    std::string msg = "ill-formed system:";
    for (const Violation& v : bad) msg += "\n  " + to_string(v);
    throw std::runtime_error(msg);
  }
  if (with_io) {
    if (sel.req.empty() || sel.cs.empty() || sel.idle.empty())
      throw std::runtime_error(
          "--file checks need --req, --cs and --idle (and usually --demote)");
    spec->req = pool.name(sel.req);
    spec->cs = pool.name(sel.cs);
    spec->demote.clear();
    for (const std::string& d : sel.demote) spec->demote.push_back(pool.name(d));
    spec->idle_equation = pool.name(sel.idle);
    if (src) {
      src->file = sel.file;
      src->req = sel.req;
      src->cs = sel.cs;
      src->idle = sel.idle;
      src->demote = sel.demote;
    }
  }
  return sys;
}

int run_check(const Selector& sel, const std::string& dot_path,
              const std::string& json_path, bool quiet) {
  using namespace pafas;
  TermPool pool;
  IoSpec spec;
  CheckSource src;
  System sys = load_system(pool, sel, true, &spec, &src);
  IoSystem io = io_transform(pool, sys, spec);
  LivenessResult r = check_transformed(pool, io, sel.max_states);
  Semantics sem(pool, io.system);
  if (!json_path.empty())
    write_file(json_path, verdict_json(pool, sem, r, src).dump(2) + "\n");
  if (!dot_path.empty())
    write_file(dot_path,
               to_dot(r.lts, pool, r.in_action, r.out_action, true));
  std::cout << render_verdict(pool, sem, r, !quiet);
  return r.live ? 0 : 1;
}

int run_lts(const Selector& sel, bool transformed, const std::string& dot_path,
            const std::string& tsv_path) {
  using namespace pafas;
  TermPool pool;
  IoSpec spec;
  System sys = load_system(pool, sel, transformed, &spec, nullptr);
  ActionId hi_in = kTau, hi_out = kTau;
  TimedLts lts;
  if (transformed) {
    IoSystem io = io_transform(pool, sys, spec);
    Semantics sem(pool, io.system);
    lts = build_lts(sem, pool, io.system.root(), sel.max_states);
    hi_in = io.in_action;
    hi_out = io.out_action;
  } else {
    Semantics sem(pool, sys);
    lts = build_lts(sem, pool, sys.root(), sel.max_states);
  }
  if (!dot_path.empty())
    write_file(dot_path, to_dot(lts, pool, hi_in, hi_out, true));
  if (!tsv_path.empty()) write_file(tsv_path, to_tsv(lts, pool));
  std::cout << "states: " << lts.states.size()
            << "  action edges: " << lts.action_edge_count
            << "  time edges: " << lts.time_edge_count << "\n";
  return 0;
}

int run_trace(const std::string& input, size_t max_states) {
  using namespace pafas;
  nlohmann::json j = nlohmann::json::parse(read_file(input));
  if (j.value("format", "") != "pafas-verdict")
    throw std::runtime_error("'" + input + "' is not a verdict document");
  CheckSource src = source_from_json(j.at("source"));

  Selector sel;
  sel.model = src.model;
  sel.style = src.style;
  sel.file = src.file;
  sel.req = src.req;
  sel.cs = src.cs;
  sel.idle = src.idle;
  sel.demote = src.demote;
  sel.focus = src.focus;
  sel.max_states = max_states;

  TermPool pool;
  IoSpec spec;
  System sys = load_system(pool, sel, true, &spec, nullptr);
  IoSystem io = io_transform(pool, sys, spec);
  Semantics sem(pool, io.system);
  TimedLts lts = build_lts(sem, pool, io.system.root(), max_states);

  std::optional<Lasso> lasso = lasso_from_json(pool, j);
  if (!lasso) {
    std::cout << "verdict: Live (nothing to replay)\n";
    return 0;
  }
  if (!lasso_replays(lts, *lasso, io.in_action, io.out_action))
    throw std::runtime_error(
        "stored witness does not replay against the rebuilt system");

  LivenessResult r;
  r.live = false;
  r.witness = std::move(lasso);
  r.lts = std::move(lts);
  r.in_action = io.in_action;
  r.out_action = io.out_action;
  r.stats.states = r.lts.states.size();
  r.stats.action_edges = r.lts.action_edge_count;
  r.stats.time_edges = r.lts.time_edge_count;
  std::cout << render_verdict(pool, sem, r, true);
  return 0;
}

int run_models(const std::string& export_dir, const std::string& against_dir) {
  using namespace pafas;
  if (export_dir.empty() && against_dir.empty()) {
    for (const CatalogEntry& e : catalog()) {
      std::cout << e.name << "\n  styles: "
                << (e.style_fixed
                        ? std::string(e.default_style) + " (fixed)"
                        : "blocking, nbread, nbrw (default " +
                              std::string(e.default_style) + ")")
                << "\n  " << e.summary << "\n";
    }
    std::cout << "dekker\n  not built in; reported live for both processes "
                 "when variable reads\n  and identical-value rewrites are "
                 "non-blocking (external result)\n";
    return 0;
  }
  TermPool pool;
  bool all_match = true;
  if (!export_dir.empty())
    std::filesystem::create_directories(export_dir);
  for (const CatalogEntry& e : catalog()) {
    ModelHandle m = build_model(pool, e.name, {});
    std::string text = print_system(m.system);
    if (!export_dir.empty())
      write_file(export_dir + "/" + e.name + ".pafas", text);
    if (!against_dir.empty()) {
      std::string path = against_dir + "/" + std::string(e.name) + ".pafas";
      std::string expected = read_file(path);
      if (expected != text) {
        std::cerr << "mismatch: " << path
                  << " differs from the built-in definition\n";
        all_match = false;
      }
    }
  }
  if (!all_match) return 2;
  if (!export_dir.empty())
    std::cout << "exported " << catalog().size() << " models to " << export_dir
              << "\n";
  if (!against_dir.empty()) std::cout << "all model files match\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liveness checker for timed process terms with read sets"};
  app.require_subcommand(1);

  Selector check_sel;
  std::string check_dot, check_json;
  bool check_quiet = false;
  CLI::App* check =
      app.add_subcommand("check", "decide liveness under fairness of actions");
  add_selector(check, &check_sel, true);
  check->add_option("--dot", check_dot, "write the transformed system's graph");
  check->add_option("--json", check_json, "write the verdict document");
  check->add_flag("--quiet", check_quiet, "verdict and stats only");

  Selector lts_sel;
  std::string lts_dot, lts_tsv;
  bool lts_transformed = false;
  CLI::App* lts = app.add_subcommand(
      "lts", "build the timed transition system and export it");
  add_selector(lts, &lts_sel, true);
  lts->add_flag("--transformed", lts_transformed,
                "build the request-response form instead of the raw system");
  lts->add_option("--dot", lts_dot, "write GraphViz output");
  lts->add_option("--tsv", lts_tsv, "write a tab separated edge list");

  std::string trace_input;
  size_t trace_max = 1000000;
  CLI::App* trace =
      app.add_subcommand("trace", "replay a witness from a verdict document");
  trace->add_option("input", trace_input, "verdict json written by check")
      ->required();
  trace->add_option("--max-states", trace_max, "exploration budget");

  std::string models_export, models_against;
  CLI::App* models =
      app.add_subcommand("models", "list or export the built-in models");
  models->add_option("--export", models_export,
                     "write each model as a .pafas file into this directory");
  models->add_option("--check-against", models_against,
                     "compare the built-ins against .pafas files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(check_sel, check_dot, check_json, check_quiet);
    if (*lts) return run_lts(lts_sel, lts_transformed, lts_dot, lts_tsv);
    if (*trace) return run_trace(trace_input, trace_max);
    if (*models) return run_models(models_export, models_against);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
