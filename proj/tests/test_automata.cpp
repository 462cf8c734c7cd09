#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "doctest.h"

#include "ima/algebra.hpp"
#include "ima/automata.hpp"
#include "ima/error.hpp"
#include "ima/random.hpp"

using namespace ima;
using namespace ima::automata;

namespace {

  Obj w(char const* s) {
    return Obj::from_letters(s);
  }

  // Trace by following control: leaving at <z,1> re-enters at <z,2> and
  // back, until control leaves at a surviving position or the anchor.
  std::set<Transition> path_trace(TuringAutomaton const& t, std::size_t na) {
    auto external = [na](Point p) { return p == kAnchor || p >= 2 * na; };
    auto mate     = [na](Point p) { return p < na ? p + na : p - na; };
    auto rename   = [na](Point p) { return p == kAnchor ? p : p - 2 * na; };
    std::vector<Point> entries{kAnchor};
    for (Point p = 2 * na; p < t.num_points(); ++p) {
      entries.push_back(p);
    }
    std::set<Transition> out;
    for (State q = 0; q < t.num_states(); ++q) {
      for (auto x : entries) {
        std::set<std::pair<State, Point>>   seen{{q, x}};
        std::deque<std::pair<State, Point>> todo{{q, x}};
        while (!todo.empty()) {
          auto [s, e] = todo.front();
          todo.pop_front();
          for (auto const& tr : t.transitions()) {
            if (tr.from != s || tr.in != e) {
              continue;
            }
            if (external(tr.out)) {
              out.insert({q, rename(x), tr.to, rename(tr.out)});
            } else if (seen.insert({tr.to, mate(tr.out)}).second) {
              todo.push_back({tr.to, mate(tr.out)});
            }
          }
        }
      }
    }
    return out;
  }

  std::set<Transition> as_set(TuringAutomaton const& t) {
    return {t.transitions().begin(), t.transitions().end()};
  }

  bool brute_equivalent(TuringAutomaton const& t, TuringAutomaton const& u) {
    if (t.iface() != u.iface() || t.num_states() != u.num_states()) {
      return false;
    }
    std::vector<State> perm(t.num_states());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::set<Transition> moved;
      for (auto tr : t.transitions()) {
        moved.insert({perm[tr.from], tr.in, perm[tr.to], tr.out});
      }
      if (moved == as_set(u)) {
        return true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  }

  Rel rel(std::size_t n, std::vector<std::pair<State, State>> const& pairs) {
    Rel r(n);
    for (auto [i, j] : pairs) {
      r.insert(i, j);
    }
    return r;
  }

}  // namespace

TEST_CASE("relations") {
  auto a = rel(3, {{0, 1}, {1, 2}});
  auto b = rel(3, {{1, 0}, {2, 2}});
  CHECK((a * b) == rel(3, {{0, 0}, {1, 2}}));
  CHECK((a | b).count() == 4);
  CHECK(a.converse() == rel(3, {{1, 0}, {2, 1}}));
  CHECK(Rel(3).empty());
  CHECK(Rel(3) == rel(3, {}));
  CHECK((Rel::identity(3) * a) == a);
  CHECK(rel(70, {{65, 3}}).contains(65, 3));
}

TEST_CASE("alternating product") {
  auto const ident = Rel::identity(2);
  auto       alt   = alt_identity(2);
  CHECK(alt(0, 0).empty());
  CHECK(alt(1, 1).empty());
  CHECK(alt(0, 1) == ident);
  CHECK(alt(1, 0) == ident);

  auto r = rel(2, {{0, 1}});
  auto p = rel(2, {{1, 1}});
  auto s = rel(2, {{1, 0}});
  auto row = RelMatrix(1, 2, {r, Rel(2)});
  auto col = RelMatrix(2, 1, {p, s});
  CHECK(alt_product(row, col)(0, 0) == r * s);
}

TEST_CASE("alternating star") {
  CHECK(alt_star(RelMatrix(2, 2, 2)) == alt_identity(2));
  auto one = Rel::identity(1);
  auto all = RelMatrix(2, 2, {one, one, one, one});
  CHECK(alt_star(all) == all);
  // The star absorbs one more factor.
  random::Rng rng(41);
  for (int k = 0; k < 50; ++k) {
    auto t = random::random_automaton(rng, w("AA"), 3, 0.3);
    auto u = RelMatrix(2, 2, {t.relation(0, 0), t.relation(0, 1),
                              t.relation(1, 0), t.relation(1, 1)});
    auto s    = alt_star(u);
    auto next = s;
    next |= alt_product(s, u);
    CHECK(next == s);
  }
}

TEST_CASE("identity automaton and its trace") {
  auto id = identity_automaton(w("AB"));
  CHECK(id.num_states() == 1);
  CHECK(id.transitions().size() == 4);
  CHECK(id.has({0, 0, 0, 2}));
  CHECK(id.has({0, 3, 0, 1}));
  auto loop = trace(identity_automaton(w("A")), w("A"));
  CHECK(loop.num_states() == 1);
  CHECK(loop.transitions().empty());
  CHECK(loop.iface() == Obj());
}

TEST_CASE("reindexing and sum") {
  random::Rng rng(43);
  auto        t = random::random_automaton(rng, w("AB"), 3, 0.3);
  CHECK(reindex(t, PermSymbol::identity(w("AB"))) == t);
  auto swapped = reindex(t, PermSymbol::block_transposition(w("A"), w("B")));
  CHECK(swapped.iface() == w("BA"));
  for (auto const& tr : t.transitions()) {
    auto move = [](Point p) { return p == kAnchor ? p : 1 - p; };
    CHECK(swapped.has({tr.from, move(tr.in), tr.to, move(tr.out)}));
  }

  // Both components may fire on the anchor, each on its own.
  TuringAutomaton a(w("A"), 2, {{0, kAnchor, 1, kAnchor}});
  TuringAutomaton b(w("B"), 2, {{1, kAnchor, 0, kAnchor}, {0, 0, 0, 0}});
  auto            s = sum(a, b);
  CHECK(s.iface() == w("AB"));
  CHECK(s.num_states() == 4);
  std::set<Transition> expected;
  for (State q2 = 0; q2 < 2; ++q2) {
    expected.insert({0 * 2 + q2, kAnchor, 1 * 2 + q2, kAnchor});
  }
  for (State q1 = 0; q1 < 2; ++q1) {
    expected.insert({q1 * 2 + 1, kAnchor, q1 * 2 + 0, kAnchor});
    expected.insert({q1 * 2 + 0, 1, q1 * 2 + 0, 1});
  }
  CHECK(as_set(s) == expected);
}

TEST_CASE("trace agrees with following control") {
  random::Rng rng(47);
  for (int k = 0; k < 300; ++k) {
    auto a    = random::random_obj(rng, 2);
    auto rest = random::random_obj(rng, 2);
    auto t    = random::random_automaton(rng, a + a + rest, 3, 0.15);
    CHECK(as_set(trace(t, a)) == path_trace(t, a.size()));
  }
  random::Rng rng2(53);
  for (int k = 0; k < 100; ++k) {
    auto t = random::random_automaton(rng2, w("AA"), 3, 0.2);
    CHECK(trace(t, Obj()) == t);
  }
}

TEST_CASE("elimination order does not matter") {
  random::Rng rng(59);
  for (int k = 0; k < 50; ++k) {
    auto a    = Obj::from_letters("ABA");
    auto t    = random::random_automaton(rng, a + a + w("B"), 3, 0.08);
    auto base = trace(t, a);
    std::vector<std::size_t> order{0, 1, 2};
    do {
      CHECK(trace(t, a, order) == base);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  auto t = identity_automaton(w("AA"));
  std::vector<std::size_t> bad{0, 0};
  CHECK_THROWS(trace(t, w("A"), bad));
}

TEST_CASE("reverse") {
  random::Rng rng(61);
  for (int k = 0; k < 100; ++k) {
    auto t = random::random_automaton(rng, w("AB"), 3, 0.2);
    CHECK(reverse(reverse(t)) == t);
    for (auto const& tr : t.transitions()) {
      CHECK(reverse(t).has({tr.to, tr.out, tr.from, tr.in}));
    }
    // Reversal commutes with trace.
    auto a = random::random_automaton(rng, w("AAB"), 2, 0.2);
    CHECK(reverse(trace(a, w("A"))) == trace(reverse(a), w("A")));
  }
}

TEST_CASE("determinism") {
  CHECK(is_deterministic(identity_automaton(w("A"))));
  CHECK(is_deterministic(atomic_switch(2)));
  TuringAutomaton t(w("AB"), 3, {{0, 0, 1, 1}, {0, 0, 2, 1}});
  CHECK_FALSE(is_deterministic(t));
}

TEST_CASE("equivalence") {
  random::Rng rng(67);
  for (int k = 0; k < 200; ++k) {
    auto t = random::random_automaton(rng, w("AB"), 4, 0.15);
    auto u = random::coin(rng)
                 ? random::random_automaton(rng, w("AB"), 4, 0.15)
                 : t;
    // Rename the states of u at random.
    std::vector<State> perm(u.num_states());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Transition> moved;
    for (auto tr : u.transitions()) {
      moved.push_back({perm[tr.from], tr.in, perm[tr.to], tr.out});
    }
    TuringAutomaton v(u.iface(), u.num_states(), moved);
    CHECK(equal_under(u, v, perm));
    CHECK(equivalent(t, v) == brute_equivalent(t, v));
  }
  CHECK_FALSE(equivalent(TuringAutomaton(w("A"), 1, {}),
                         TuringAutomaton(w("A"), 2, {})));

  // Reassociating a threefold sum.
  auto x = random::random_automaton(rng, w("A"), 2, 0.4);
  auto y = random::random_automaton(rng, w("B"), 3, 0.4);
  auto z = random::random_automaton(rng, w("A"), 2, 0.4);
  CHECK(equivalent(sum(sum(x, y), z), sum(x, sum(y, z))));
}

TEST_CASE("atomic switch") {
  CHECK(atomic_switch(1).transitions().size() == 4);
  CHECK(atomic_switch(2).transitions().size() == 14);
  CHECK(atomic_switch(3).transitions().size() == 33);
  auto s = atomic_switch(2);
  // In state 1 (port 1 positive), entering port 2 leaves through port 1.
  CHECK(s.has({0, 1, 1, 0}));
  CHECK_FALSE(s.has({0, 1, 0, 0}));
  CHECK_THROWS_AS(atomic_switch(0), InvalidArity);
}

TEST_CASE("composition with identities") {
  AutomatonAlgebra alg;
  random::Rng      rng(71);
  for (int k = 0; k < 100; ++k) {
    auto f = random::random_automaton(rng, w("AB"), 3, 0.2);
    CHECK(equivalent(
        compose(alg, f, {w("A"), w("B")}, identity_automaton(w("B")),
                {w("B"), w("B")}),
        f));
    CHECK(equivalent(
        compose(alg, identity_automaton(w("A")), {w("A"), w("A")}, f,
                {w("A"), w("B")}),
        f));
  }
}

TEST_CASE("malformed automata") {
  CHECK_THROWS(TuringAutomaton(w("A"), 0, {}));
  CHECK_THROWS(TuringAutomaton(w("A"), 1, {{0, 1, 0, 0}}));
  CHECK_THROWS(TuringAutomaton(w("A"), 1, {{1, 0, 0, 0}}));
  CHECK_THROWS_AS(trace(identity_automaton(w("A")), w("B")), RankMismatch);
}
