#include <set>

#include "doctest.h"

#include "ima/algebra.hpp"
#include "ima/decompose.hpp"
#include "ima/dflow.hpp"
#include "ima/error.hpp"
#include "ima/random.hpp"
#include "ima/soliton.hpp"
#include "ima/term.hpp"

using namespace ima;
using namespace ima::dflow;

namespace {

  Obj w(char const* s) {
    return Obj::from_letters(s);
  }

  // Two switches c<a> and c<b> joined port 0 to port 0; the remaining ports
  // are interfaces.
  graph::SigmaGraph joined(std::size_t a, std::size_t b) {
    graph::SigmaGraph g;
    auto u = g.add_symbol_vertex(switch_symbol(a), machine_word(a));
    auto v = g.add_symbol_vertex(switch_symbol(b), machine_word(b));
    g.connect({u, 0}, {v, 0});
    for (std::size_t p = 1; p < a; ++p) {
      g.connect({u, p}, {g.add_interface(machine_sort()), 0});
    }
    for (std::size_t p = 1; p < b; ++p) {
      g.connect({v, p}, {g.add_interface(machine_sort()), 0});
    }
    return g;
  }

  graph::SigmaGraph single(std::size_t n) {
    graph::SigmaGraph g;
    auto u = g.add_symbol_vertex(switch_symbol(n), machine_word(n));
    for (std::size_t p = 0; p < n; ++p) {
      g.connect({u, p}, {g.add_interface(machine_sort()), 0});
    }
    return g;
  }

}  // namespace

TEST_CASE("positions and expansion") {
  CHECK(position(0, 1, 2) == 1);
  CHECK(position(2, 0, 2) == 4);
  random::Rng rng(73);
  for (int k = 0; k < 100; ++k) {
    auto dom  = random::random_obj(rng, 4);
    auto r    = random::random_perm(rng, dom);
    auto data = random::uniform(rng, 1, 3);
    auto e    = expand(r, data);
    CHECK(e.dom() == dom.repeat_letters(data));
    auto f  = r.flatten();
    auto fe = e.flatten();
    for (std::size_t p = 0; p < dom.size(); ++p) {
      for (std::size_t d = 0; d < data; ++d) {
        CHECK(fe[position(p, d, data)] == position(f[p], d, data));
      }
    }
  }
}

TEST_CASE("identities of the data algebra") {
  DFlowAlgebra alg(2);
  auto         id = alg.identity(w("AB"));
  CHECK(id.base() == automata::identity_automaton(w("AABB")));
  CHECK(id.iface() == w("ABAB"));
  CHECK_THROWS_AS(
      DFlowAutomaton(2, w("A"), automata::identity_automaton(w("AB"))),
      InvalidSpec);
}

TEST_CASE("alternating switch") {
  CHECK(alternating_switch(1).base().transitions().size() == 6);
  CHECK(alternating_switch(2).base().transitions().size() == 22);
  CHECK(alternating_switch(3).base().transitions().size() == 51);

  auto const& s = alternating_switch(2).base();
  // State 0: port 0 positive.  Port 1 takes datum 0, and control leaves
  // port 0 with datum 1 while the positive port moves to 1.
  CHECK(s.has({0, position(1, 0, 2), 1, position(0, 1, 2)}));
  // Entering the positive port with 1 leaves another port with 0.
  CHECK(s.has({1, position(1, 1, 2), 0, position(0, 0, 2)}));
  // A positive port only takes 1, a negative one only 0.
  for (State q = 0; q < 2; ++q) {
    for (auto const& t : s.transitions()) {
      if (t.from == q && t.in == position(q, 0, 2)) {
        CHECK(t.out == kAnchor);
      }
      if (t.from == q && t.in == position(1 - q, 1, 2)) {
        CHECK(t.out == kAnchor);
      }
    }
  }
  CHECK(alternating_switch(1).base().has(
      {0, position(0, 1, 2), 0, position(0, 0, 2)}));
  CHECK_THROWS_AS(alternating_switch(0), InvalidArity);
  CHECK(atomic_switch(2).base().transitions().size() == 14);
}

TEST_CASE("machines") {
  auto m = switch_machine(joined(2, 3), SwitchKind::alternating);
  CHECK(m.components() == std::vector<std::size_t>{0, 1});
  CHECK(m.num_global_states() == 6);
  CHECK(m.encode({1, 2}) == 1 * 3 + 2);
  CHECK(m.decode(5) == std::vector<State>{1, 2});
  CHECK_THROWS(m.encode({2, 0}));

  graph::SigmaGraph bad;
  auto u = bad.add_symbol_vertex("f", machine_word(1));
  bad.connect({u, 0}, {bad.add_interface(machine_sort()), 0});
  CHECK_THROWS_AS(switch_machine(bad, SwitchKind::atomic), BadLabel);
  CHECK_THROWS_AS(GraphMachine(bad, 2, {}), MissingSymbol);
}

TEST_CASE("evaluation on generators and the empty graph") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto m = switch_machine(single(n), SwitchKind::alternating);
    CHECK(evaluate(m) == alternating_switch(n));
    auto a = switch_machine(single(n), SwitchKind::atomic);
    CHECK(evaluate(a) == atomic_switch(n));
  }
  GraphMachine empty(graph::SigmaGraph(), 2, {});
  auto         e = evaluate(empty);
  CHECK(e.iface() == Obj());
  CHECK(e.num_states() == 1);
  CHECK(e.base().transitions().empty());
}

TEST_CASE("steps") {
  // Atomic switch c2 in state 0, control about to enter port 1.
  auto m = switch_machine(single(2), SwitchKind::atomic);
  Config c{{0}, AtPort{{0, 1}}, 0};
  auto   next = step(m, c);
  // Out through port 0, or to the anchor with the state kept.
  REQUIRE(next.size() == 2);
  std::set<Config> expected{{{1}, AtInterface{0}, 0},
                            {{0}, AtAnchor{}, std::nullopt}};
  CHECK(std::set<Config>(next.begin(), next.end()) == expected);

  // The alternating switch lets datum 1 through its negative port only to
  // the anchor.
  auto alt = switch_machine(single(2), SwitchKind::alternating);
  for (auto const& n : step(alt, {{0}, AtPort{{0, 1}}, 1})) {
    CHECK(std::holds_alternative<AtAnchor>(n.locus));
  }
  // From an interface control just crosses the edge.
  auto in = step(alt, {{0}, AtInterface{1}, 0});
  REQUIRE(in.size() == 1);
  CHECK(std::get<AtPort>(in[0].locus).port == graph::PortRef{0, 1});

  CHECK_THROWS_AS(step(alt, {{0}, AtAnchor{}, 0}), IllFormedConfig);
  CHECK_THROWS_AS(step(alt, {{0}, AtPort{{0, 0}}, std::nullopt}),
                  IllFormedConfig);
  CHECK_THROWS_AS(step(alt, {{0, 0}, AtInterface{0}, 0}), IllFormedConfig);
}

TEST_CASE("anchor walks") {
  // Switches whose only transitions are anchor self-loops.
  auto quiet = make_dflow(2, machine_word(2), 2,
                          {{0, std::nullopt, 0, std::nullopt},
                           {1, std::nullopt, 1, std::nullopt}});
  GraphMachine m(joined(2, 2), 2, {{switch_symbol(2), quiet}});
  auto         rel = walks(m, kAnchor, kAnchor);
  CHECK(rel == automata::Rel::identity(4));
  CHECK(walks(m).transitions().size() == 4);
  CHECK(evaluate(m).base() == walks(m));

  GraphMachine none(joined(2, 2), 2,
                    {{switch_symbol(2), make_dflow(2, machine_word(2), 1, {})}});
  CHECK(step(none, {{0, 0}, AtAnchor{}, std::nullopt}).empty());
}

TEST_CASE("evaluation agrees with walks") {
  for (auto kind : {SwitchKind::atomic, SwitchKind::alternating}) {
    for (std::size_t a = 1; a <= 3; ++a) {
      for (std::size_t b = 1; b <= 3; ++b) {
        auto m = switch_machine(joined(a, b), kind);
        CHECK(evaluate(m).base() == walks(m));
      }
    }
  }
  random::Rng rng(79);
  for (int k = 0; k < 30; ++k) {
    auto g = random::random_switch_graph(rng, 3, random::uniform(rng, 0, 2));
    auto m = switch_machine(g, SwitchKind::alternating);
    CHECK(evaluate(m).base() == walks(m));
  }
}

TEST_CASE("random data automata satisfy the derived identities") {
  DFlowAlgebra alg(2);
  random::Rng  rng(83);
  for (int k = 0; k < 50; ++k) {
    auto f = random::random_dflow(rng, 2, w("AB"), 2, 0.1);
    CHECK(alg.equivalent(
        compose(alg, f, {w("A"), w("B")}, alg.identity(w("B")),
                {w("B"), w("B")}),
        f));
  }
  CHECK_THROWS(alg.sum(random::random_dflow(rng, 2, w("A"), 2),
                       random::random_dflow(rng, 3, w("A"), 2)));
}

TEST_CASE("reverse machines") {
  // Reversing every local automaton reverses the whole machine.
  random::Rng rng(89);
  for (int k = 0; k < 20; ++k) {
    auto g    = random::random_switch_graph(rng, 3, 2);
    auto m    = switch_machine(g, SwitchKind::alternating);
    auto omega = m.omega();
    for (auto& [name, t] : omega) {
      t = DFlowAutomaton(t.data(), t.iface(), automata::reverse(t.base()));
    }
    GraphMachine r(g, 2, omega);
    CHECK(automata::reverse(evaluate(m).base()) == evaluate(r).base());
  }
}
