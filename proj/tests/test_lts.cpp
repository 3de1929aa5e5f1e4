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

#include "pafas/lts.hpp"
#include "pafas/models.hpp"
#include "pafas/parser.hpp"
#include "pafas/printer.hpp"

using namespace pafas;

namespace {

TermId loop_term(TermPool& pool) {
  // rec x. a.x + b.nil
  NameId x = pool.name("x");
  return pool.rec(
      x, pool.choice(pool.prefix(pool.name("a"), Urgency::Lazy, pool.var(x)),
                     pool.prefix(pool.name("b"), Urgency::Lazy, pool.nil())));
}

}  // namespace

TEST_CASE("small golden transition system") {
  TermPool pool;
  System sys(pool);
  Semantics sem(pool, sys);
  TimedLts lts = build_lts(sem, pool, loop_term(pool));

  // Root first, its time successor next (before any action successor),
  // nil last; nil keeps idling via a time self loop.
  REQUIRE(lts.states.size() == 3);
  CHECK(lts.time_edge_count == 2);
  CHECK(lts.action_edge_count == 4);
  CHECK(to_tsv(lts, pool) ==
        "src\tkind\tlabel\tdst\n"
        "0\ttime\t1\t1\n"
        "0\tact\ta\t0\n"
        "0\tact\tb\t2\n"
        "1\tact\ta\t0\n"
        "1\tact\tb\t2\n"
        "2\ttime\t1\t2\n");
  CHECK(lts.has_time_succ(0));
  CHECK_FALSE(lts.has_time_succ(1));
  CHECK(lts.labels == std::set<ActionId>{pool.name("a"), pool.name("b")});
}

TEST_CASE("state budget") {
  TermPool pool;
  System sys(pool);
  Semantics sem(pool, sys);
  try {
    build_lts(sem, pool, loop_term(pool), 2);
    FAIL("expected the budget to trip");
  } catch (const BudgetExceeded& e) {
    CHECK(e.limit == 2);
  }
}

TEST_CASE("numbering is stable across pools and across parse/print") {
  std::string first_tsv;
  {
    TermPool pool;
    ModelHandle m = lamport(pool);
    Semantics sem(pool, m.system);
    first_tsv = to_tsv(build_lts(sem, pool, m.system.root()), pool);
  }
  {
    // Same model, a fresh pool whose ids intern in a different order.
    TermPool pool;
    for (const char* warm : {"zz", "cs2", "wtb2", "k"}) pool.name(warm);
    ModelHandle m = lamport(pool);
    Semantics sem(pool, m.system);
    CHECK(to_tsv(build_lts(sem, pool, m.system.root()), pool) == first_tsv);
  }
  {
    // Through the printer and parser instead of the builder.
    TermPool build_pool;
    std::string text = print_system(lamport(build_pool).system);
    TermPool pool;
    System sys = parse_system(pool, text);
    REQUIRE(validate(sys).empty());
    Semantics sem(pool, sys);
    CHECK(to_tsv(build_lts(sem, pool, sys.root()), pool) == first_tsv);
  }
}

TEST_CASE("dot output") {
  TermPool pool;
  System sys(pool);
  Semantics sem(pool, sys);
  ActionId in_a = pool.name("in"), out_a = pool.name("out");
  TermId t = pool.prefix(
      in_a, Urgency::Lazy,
      pool.prefix(kTau, Urgency::Lazy,
                  pool.prefix(out_a, Urgency::Lazy, pool.nil())));
  TimedLts lts = build_lts(sem, pool, t);

  std::string dot = to_dot(lts, pool, in_a, out_a);
  CHECK(dot.find("digraph lts {") == 0);
  CHECK(dot.find("label=\"1\", style=dashed") != std::string::npos);
  CHECK(dot.find("label=\"in\", color=blue") != std::string::npos);
  CHECK(dot.find("label=\"out\", color=blue") != std::string::npos);
  CHECK(dot.find("label=\"tau\", color=grey") != std::string::npos);
  CHECK(dot.find("tooltip") == std::string::npos);

  std::string with_terms = to_dot(lts, pool, in_a, out_a, true);
  CHECK(with_terms.find("tooltip=\"in.tau.out.nil\"") != std::string::npos);

  // Unhighlighted render marks nothing blue.
  CHECK(to_dot(lts, pool).find("blue") == std::string::npos);
}
