#include "doctest.h"

#include "ima/dflow.hpp"
#include "ima/error.hpp"
#include "ima/tm.hpp"

using namespace ima;
using namespace ima::tm;
using dflow::position;

namespace {

  constexpr std::size_t blank = 0;
  constexpr std::size_t one   = 1;
  constexpr std::size_t scan  = 0;
  constexpr std::size_t halt  = 1;

  // Every transition of the machine from interface 1 in the given tape
  // state with datum `start`.
  std::vector<automata::Transition> exits(dflow::GraphMachine const& m,
                                          std::vector<std::size_t> const& tape,
                                          std::size_t start) {
    auto const ev   = dflow::evaluate(m);
    auto const from = m.encode(tape);
    auto const in   = position(0, start, m.data());
    std::vector<automata::Transition> out;
    for (auto const& t : ev.base().transitions()) {
      if (t.from == from && t.in == in) {
        out.push_back(t);
      }
    }
    return out;
  }

}  // namespace

TEST_CASE("reference interpreter") {
  auto spec = unary_increment();
  auto out  = run(spec, {one, one, blank, blank}, scan);
  REQUIRE(out);
  CHECK(out->tape == std::vector<std::size_t>{one, one, one, blank});
  CHECK(out->state == halt);
  CHECK(out->side == 0);

  // Walking off the right end in a non-halting state is an error.
  CHECK_THROWS(run(spec, {one, one}, scan));

  TMSpec step_right{{"go", "stop"}, {"x"}, {1}, {{0, 0, 1, 0, Move::right}}};
  auto   right = run(step_right, {0}, 0);
  REQUIRE(right);
  CHECK(right->side == 1);

  TMSpec stuck{{"go", "stop"}, {"x", "y"}, {1}, {{0, 0, 0, 0, Move::right}}};
  CHECK_FALSE(run(stuck, {0, 1}, 0));
  // Runs forever between two cells.
  TMSpec loop{{"a", "b", "h"},
              {"x"},
              {2},
              {{0, 0, 1, 0, Move::right}, {1, 0, 0, 0, Move::left}}};
  CHECK_FALSE(run(loop, {0, 0}, 0, 100));
}

TEST_CASE("validation") {
  auto spec = unary_increment();
  spec.rules.push_back({0, 1, 1, 0, Move::left});
  CHECK_THROWS_AS(spec.validate(), InvalidSpec);
  spec = unary_increment();
  spec.rules.push_back({1, 0, 0, 0, Move::left});
  CHECK_THROWS_AS(spec.validate(), InvalidSpec);
  spec = unary_increment();
  spec.rules.push_back({0, 5, 0, 0, Move::left});
  CHECK_THROWS_AS(spec.validate(), InvalidSpec);
  CHECK_THROWS_AS(encode(unary_increment(), 0), InvalidSpec);
}

TEST_CASE("cell automaton") {
  auto spec = unary_increment();
  auto cell = cell_automaton(spec);
  CHECK(cell.data() == 2);
  CHECK(cell.num_states() == 2);
  auto const& b = cell.base();
  // Reading 1 in scan: write 1, leave to the right in scan.
  CHECK(b.has({one, position(0, scan, 2), one, position(1, scan, 2)}));
  CHECK(b.has({one, position(1, scan, 2), one, position(1, scan, 2)}));
  // Reading a blank: write 1, leave to the left in halt.
  CHECK(b.has({blank, position(0, scan, 2), one, position(0, halt, 2)}));
  // The halting state passes to the left, changing nothing.
  for (std::size_t g : {blank, one}) {
    CHECK(b.has({g, position(1, halt, 2), g, position(0, halt, 2)}));
  }
  CHECK(automata::is_deterministic(b));
}

TEST_CASE("encoded machine matches the interpreter") {
  auto spec = unary_increment();
  for (std::size_t len = 1; len <= 3; ++len) {
    for (std::size_t bits = 0; bits < (1u << len); ++bits) {
      std::vector<std::size_t> tape(5, blank);
      for (std::size_t i = 0; i < len; ++i) {
        tape[i] = (bits >> i) & 1;
      }
      auto m   = encode(spec, tape.size());
      auto ref = run(spec, tape, scan);
      REQUIRE(ref);
      auto out = exits(m, tape, scan);
      REQUIRE(out.size() == 1);
      CHECK(m.decode(out[0].to) == ref->tape);
      CHECK(out[0].out == position(ref->side, ref->state, 2));
    }
  }
}

TEST_CASE("reversed rules give the reversed machine") {
  auto spec = unary_increment();
  for (std::size_t len = 1; len <= 3; ++len) {
    auto m = dflow::evaluate(encode(spec, len));
    auto r = dflow::evaluate(encode_reversed(spec, len));
    CHECK(automata::reverse(m.base()) == r.base());
  }
}
