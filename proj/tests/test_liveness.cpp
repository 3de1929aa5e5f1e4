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

#include <catch2/catch_amalgamated.hpp>

#include "agreement.hpp"
#include "pafas/liveness.hpp"
#include "pafas/models.hpp"
#include "pafas/parser.hpp"
#include "pafas/printer.hpp"

using namespace pafas;

namespace {

// A one-process skeleton used by the validation tests.
System tiny(TermPool& pool, const char* body = "req.a.cs.P + tau.P") {
  return parse_system(pool,
                      std::string("P = ") + body + "\nroot = P / {a}\n");
}

IoSpec tiny_spec(TermPool& pool) {
  IoSpec s;
  s.req = pool.name("req");
  s.cs = pool.name("cs");
  s.idle_equation = pool.name("P");
  return s;
}

TimedLts graph(TermPool& pool, int n,
               const std::vector<std::tuple<int, const char*, int>>& edges) {
  TimedLts lts;
  lts.states.assign(n, pool.nil());
  lts.time_succ.assign(n, -1);
  lts.act_succ.assign(n, {});
  for (auto [src, label, dst] : edges) {
    if (std::string(label) == "1") {
      lts.time_succ[src] = dst;
      ++lts.time_edge_count;
    } else {
      lts.act_succ[src].emplace_back(pool.name(label), dst);
      ++lts.action_edge_count;
    }
  }
  return lts;
}

}  // namespace

TEST_CASE("io transform rewrites the equations in place") {
  TermPool pool;
  ModelHandle m = peterson(pool);
  IoSystem io = io_transform(pool, m.system, io_spec(m, 2));

  auto body = [&](const System& sys, const char* name) {
    const Equation* e = sys.find(pool.name(name));
    REQUIRE(e != nullptr);
    return e->body;
  };

  // The focus process: request/critical renamed, idling summand removed.
  CHECK(body(io.system, "P2") == parse_term(pool, "in.wtb2.wk1.P21"));
  CHECK(body(io.system, "P23") == parse_term(pool, "out.wfb2.P2"));

  // The rival: demoted to internal moves, idling summand kept.
  CHECK(body(io.system, "P1") ==
        parse_term(pool, "tau.wtb1.wk2.P11 + tau.P1"));
  CHECK(body(io.system, "P13") == parse_term(pool, "tau.wfb1.P1"));

  // Untouched equations and the root keep their exact terms.
  CHECK(body(io.system, "P12") == body(m.system, "P12"));
  CHECK(body(io.system, "K1") == body(m.system, "K1"));
  CHECK(io.system.root() == m.system.root());

  CHECK(pool.text(io.in_action) == "in");
  CHECK(pool.text(io.out_action) == "out");
  CHECK(validate(io.system).empty());
}

TEST_CASE("io transform reaches read-set entries") {
  TermPool pool;
  System sys = parse_system(pool,
                            "P = {req} |> cs.P + tau.P\n"
                            "root = P\n");
  IoSystem io = io_transform(pool, sys, tiny_spec(pool));
  CHECK(io.system.find(pool.name("P"))->body ==
        parse_term(pool, "{in} |> out.P"));
}

TEST_CASE("io transform validation") {
  auto rejects = [](const char* why, auto mutate,
                    const char* body = "req.a.cs.P + tau.P") {
    TermPool pool;
    System sys = tiny(pool, body);
    IoSpec spec = tiny_spec(pool);
    mutate(pool, sys, spec);
    INFO(why);
    CHECK_THROWS_AS(io_transform(pool, sys, spec), std::runtime_error);
  };

  rejects("request equals critical",
          [](TermPool&, System&, IoSpec& s) { s.cs = s.req; });
  rejects("tau as request",
          [](TermPool&, System&, IoSpec& s) { s.req = kTau; });
  rejects("demoting the request",
          [](TermPool&, System&, IoSpec& s) { s.demote = {s.req}; });
  rejects("demoting tau",
          [](TermPool&, System&, IoSpec& s) { s.demote = {kTau}; });
  rejects("request does not occur",
          [](TermPool& p, System&, IoSpec& s) { s.req = p.name("zzz"); });
  rejects("critical does not occur",
          [](TermPool& p, System&, IoSpec& s) { s.cs = p.name("zzz"); });
  rejects("demoted action does not occur",
          [](TermPool& p, System&, IoSpec& s) { s.demote = {p.name("zzz")}; });
  rejects("no equation by the idle name",
          [](TermPool& p, System&, IoSpec& s) { s.idle_equation = p.name("Q"); });
  rejects("name in already taken",
          [](TermPool&, System&, IoSpec&) {}, "req.a.cs.P + tau.P + in.nil");
  rejects("no idling summand",
          [](TermPool&, System&, IoSpec&) {}, "req.a.cs.P");
  rejects("only an idling summand",
          [](TermPool& p, System& sys, IoSpec&) {
            sys.replace_body(p.name("P"),
                             p.prefix(kTau, Urgency::Lazy,
                                      p.constant(p.name("P"))));
            // req/cs still occur: stash them in a dead equation.
            sys.define("Dead", parse_term(p, "req.cs.nil"));
          });
  rejects("renamed action in a synchronisation set",
          [](TermPool& p, System& sys, IoSpec&) {
            sys.set_root(p.parallel(sys.root(),
                                    p.action_set({p.name("req")}),
                                    p.nil()));
          });
  rejects("renamed action as a relabelling source",
          [](TermPool& p, System& sys, IoSpec&) {
            sys.set_root(p.relabel(sys.root(),
                                   p.relabel_fn({{p.name("req"),
                                                  p.name("zz")}})));
          });
  rejects("renamed action as a relabelling target",
          [](TermPool& p, System& sys, IoSpec&) {
            sys.set_root(p.relabel(sys.root(),
                                   p.relabel_fn({{p.name("zz"),
                                                  p.name("cs")}})));
          });
}

TEST_CASE("catastrophic cycles in hand-built graphs") {
  TermPool pool;
  ActionId in_a = pool.name("in"), out_a = pool.name("out");

  SECTION("no edges, no cycle") {
    TimedLts lts = graph(pool, 1, {});
    CHECK_FALSE(find_catastrophic_cycle(lts, in_a, out_a).has_value());
  }

  SECTION("time self loop at the root") {
    TimedLts lts = graph(pool, 1, {{0, "1", 0}});
    auto got = find_catastrophic_cycle(lts, in_a, out_a);
    REQUIRE(got.has_value());
    CHECK(got->entry == 0);
    CHECK(got->prefix.empty());
    REQUIRE(got->cycle.size() == 1);
    CHECK(got->cycle[0].time);
    CHECK(lasso_replays(lts, *got, in_a, out_a));
  }

  SECTION("cycle reached through a prefix") {
    TimedLts lts = graph(pool, 3, {{0, "a", 1}, {1, "1", 2}, {2, "e", 1}});
    auto got = find_catastrophic_cycle(lts, in_a, out_a);
    REQUIRE(got.has_value());
    CHECK(got->entry == 2);
    CHECK(got->prefix.size() == 2);
    CHECK(got->cycle.size() == 2);
    CHECK(lasso_replays(lts, *got, in_a, out_a));
  }

  SECTION("an in or out edge breaks the cycle") {
    TimedLts bad_in = graph(pool, 2, {{0, "1", 1}, {1, "in", 0}});
    CHECK_FALSE(find_catastrophic_cycle(bad_in, in_a, out_a).has_value());
    TimedLts bad_out = graph(pool, 2, {{0, "1", 1}, {1, "out", 0}});
    CHECK_FALSE(find_catastrophic_cycle(bad_out, in_a, out_a).has_value());
    // The same trip with an ordinary label is catastrophic.
    TimedLts fine = graph(pool, 2, {{0, "1", 1}, {1, "e", 0}});
    CHECK(find_catastrophic_cycle(fine, in_a, out_a).has_value());
  }

  SECTION("a time edge leaving its component does not count") {
    TimedLts lts = graph(pool, 3, {{0, "e", 1}, {1, "1", 2}, {2, "e", 2}});
    CHECK_FALSE(find_catastrophic_cycle(lts, in_a, out_a).has_value());
  }

  SECTION("the shortest cycle wins") {
    TimedLts lts = graph(pool, 4,
                         {{0, "a", 1}, {1, "1", 2}, {2, "e", 1},
                          {0, "a", 3}, {3, "1", 3}});
    auto got = find_catastrophic_cycle(lts, in_a, out_a);
    REQUIRE(got.has_value());
    CHECK(got->entry == 3);
    CHECK(got->cycle.size() == 1);
  }

  SECTION("ties break on the smaller state numbers") {
    TimedLts lts = graph(pool, 3, {{0, "a", 1}, {0, "a", 2},
                                   {1, "1", 1}, {2, "1", 2}});
    auto got = find_catastrophic_cycle(lts, in_a, out_a);
    REQUIRE(got.has_value());
    CHECK(got->entry == 1);
  }
}

TEST_CASE("lasso replay rejects broken runs") {
  TermPool pool;
  ActionId in_a = pool.name("in"), out_a = pool.name("out");
  TimedLts lts = graph(pool, 3, {{0, "a", 1}, {1, "1", 2}, {2, "e", 1},
                                 {1, "in", 0}});
  Lasso good;
  good.entry = 2;
  good.prefix = {{false, pool.name("a"), 1}, {true, 0, 2}};
  good.cycle = {{false, pool.name("e"), 1}, {true, 0, 2}};
  REQUIRE(lasso_replays(lts, good, in_a, out_a));

  Lasso wrong_entry = good;
  wrong_entry.entry = 1;
  CHECK_FALSE(lasso_replays(lts, wrong_entry, in_a, out_a));

  Lasso no_time = good;
  no_time.cycle = {{false, pool.name("e"), 1}, {false, in_a, 0}};
  CHECK_FALSE(lasso_replays(lts, no_time, in_a, out_a));

  Lasso wrong_label = good;
  wrong_label.cycle[0].label = pool.name("zz");
  CHECK_FALSE(lasso_replays(lts, wrong_label, in_a, out_a));

  Lasso uses_in = good;
  uses_in.prefix = {{false, pool.name("a"), 1}, {false, in_a, 0},
                    {false, pool.name("a"), 1}, {true, 0, 2}};
  CHECK(lasso_replays(lts, uses_in, in_a, out_a));  // in is fine on the way in
  Lasso in_cycle = good;
  in_cycle.cycle = {{false, in_a, 0}, {false, pool.name("a"), 1},
                    {true, 0, 2}};
  in_cycle.entry = 2;
  CHECK_FALSE(lasso_replays(lts, in_cycle, in_a, out_a));

  Lasso empty_cycle = good;
  empty_cycle.cycle.clear();
  CHECK_FALSE(lasso_replays(lts, empty_cycle, in_a, out_a));

  Lasso out_of_range = good;
  out_of_range.cycle[0].dst = 99;
  CHECK_FALSE(lasso_replays(lts, out_of_range, in_a, out_a));
}

TEST_CASE("random graphs agree with the cycle oracle") {
  testgen::Agreement r = testgen::cycle_agreement(200, 7);
  INFO(r.first);
  CHECK(r.failures == 0);
  CHECK(r.cases == 200);
}

TEST_CASE("underlying labels of hidden moves") {
  TermPool pool;
  System sys(pool);
  Semantics sem(pool, sys);
  NameId x = pool.name("x");
  ActionId a = pool.name("a");
  TermId spin = pool.rec(x, pool.prefix(a, Urgency::Lazy, pool.var(x)));
  TermId root = pool.relabel(spin, pool.hiding({a}));
  TimedLts lts = build_lts(sem, pool, root);
  REQUIRE(lts.states.size() == 2);

  // State 1 is the time successor; its tau move goes back to state 0.
  LassoStep step{false, kTau, 0};
  CHECK(underlying_label(pool, sem, lts.states[1], lts.states[0], step) == a);

  // Time steps and unrenamed labels recover nothing.
  CHECK_FALSE(underlying_label(pool, sem, lts.states[1], lts.states[1],
                               LassoStep{true, 0, 1})
                  .has_value());
  TermId plain = pool.relabel(
      pool.prefix(a, Urgency::Lazy, pool.nil()),
      pool.relabel_fn({{pool.name("zz"), pool.name("qq")}}));
  CHECK_FALSE(underlying_label(pool, sem, plain, pool.relabel(
                                   pool.nil(), pool.relabel_fn(
                                       {{pool.name("zz"), pool.name("qq")}})),
                               LassoStep{false, a, 0})
                  .has_value());
}

TEST_CASE("liveness end to end") {
  {
    TermPool pool;
    ModelHandle m = peterson(pool);
    LivenessResult r = check_liveness(pool, m.system, io_spec(m, 1));
    CHECK(r.live);
    CHECK_FALSE(r.witness.has_value());
    CHECK(r.stats.states > 0);
    CHECK(r.lts.labels.count(r.in_action));
    CHECK(r.lts.labels.count(r.out_action));
  }
  {
    TermPool pool;
    ModelHandle m = peterson(pool, VariableStyle::Blocking);
    LivenessResult r = check_liveness(pool, m.system, io_spec(m, 2));
    CHECK_FALSE(r.live);
    REQUIRE(r.witness.has_value());
    CHECK(lasso_replays(r.lts, *r.witness, r.in_action, r.out_action));
  }
}

TEST_CASE("state budget propagates out of the checker") {
  TermPool pool;
  ModelHandle m = peterson(pool);
  CHECK_THROWS_AS(check_liveness(pool, m.system, io_spec(m, 1), 50),
                  BudgetExceeded);
}
