#include "doctest.h"

#include "ima/axioms.hpp"
#include "ima/subjects.hpp"

using namespace ima;
using namespace ima::axioms;

TEST_CASE("every law family is covered") {
  auto r = run(graph_subject(), 1, 1);
  for (auto f : {"I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8", "I9"}) {
    bool found = false;
    for (auto const& l : r.laws) {
      found = found || l.family == f;
    }
    CHECK_MESSAGE(found, f);
  }
}

TEST_CASE("graphs") {
  auto r = run(graph_subject(), 100, 3);
  CHECK_MESSAGE(r.ok(), r.summary());
}

TEST_CASE("automata") {
  auto r = run(automata_subject(), 100, 5);
  CHECK_MESSAGE(r.ok(), r.summary());
}

TEST_CASE("data automata") {
  auto r = run(dflow_subject(), 30, 7);
  CHECK_MESSAGE(r.ok(), r.summary());
}

TEST_CASE("no cases, no failures") {
  auto r = run(automata_subject(), 0, 1);
  CHECK(r.ok());
  for (auto const& l : r.laws) {
    CHECK(l.cases == 0);
  }
}

TEST_CASE("runs are reproducible") {
  CHECK(run(graph_subject(), 20, 9).summary()
        == run(graph_subject(), 20, 9).summary());
  auto broken = automata_subject(automata::ProductMode::truncated);
  CHECK(run(broken, 50, 9).summary() == run(broken, 50, 9).summary());
}

TEST_CASE("a cut-short star breaks trace swapping") {
  auto r = run(automata_subject(automata::ProductMode::truncated), 200, 1);
  CHECK_FALSE(r.family_ok("I9"));
  for (auto const& l : r.laws) {
    if (l.failures != 0) {
      CHECK(!l.counterexample.empty());
    }
  }
}

TEST_CASE("dropping the row exchange breaks the identities") {
  auto r = run(automata_subject(automata::ProductMode::plain), 200, 1);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.family_ok("I5"));
}
