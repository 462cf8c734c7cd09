#include <algorithm>
#include <numeric>

#include "doctest.h"

#include "ima/algebra.hpp"
#include "ima/decompose.hpp"
#include "ima/error.hpp"
#include "ima/graph.hpp"
#include "ima/random.hpp"
#include "ima/term.hpp"

using namespace ima;
using namespace ima::graph;

namespace {

  Obj w(char const* s) {
    return Obj::from_letters(s);
  }

  RankedAlphabet const& sigma() {
    return random::test_alphabet();
  }

  // Tries every relabelling of the non-interface vertices.  Only usable on
  // small graphs; independent of the library's isomorphism search.
  bool brute_isomorphic(SigmaGraph const& g, SigmaGraph const& h) {
    if (g.num_vertices() != h.num_vertices() || g.rank() != h.rank()) {
      return false;
    }
    std::vector<std::size_t> gi;
    std::vector<std::size_t> hi;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      if (g.vertex(v).kind != VertexKind::interface) {
        gi.push_back(v);
      }
      if (h.vertex(v).kind != VertexKind::interface) {
        hi.push_back(v);
      }
    }
    if (gi.size() != hi.size()) {
      return false;
    }
    std::vector<std::size_t> order(hi.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      std::vector<std::size_t> map(g.num_vertices(), SigmaGraph::npos);
      for (std::size_t k = 0; k < g.num_interfaces(); ++k) {
        map[g.interface_vertex(k)] = h.interface_vertex(k);
      }
      for (std::size_t k = 0; k < gi.size(); ++k) {
        map[gi[k]] = hi[order[k]];
      }
      bool ok = true;
      for (std::size_t v = 0; v < g.num_vertices() && ok; ++v) {
        ok = g.vertex(v) == h.vertex(map[v]);
      }
      for (std::size_t v = 0; v < g.num_vertices() && ok; ++v) {
        for (std::size_t p = 0; p < g.vertex(v).ports.size() && ok; ++p) {
          if (g.vertex(v).kind == VertexKind::loop) {
            break;
          }
          auto m  = g.mate({v, p});
          auto hm = h.mate({map[v], p});
          ok      = hm == PortRef{map[m.vertex], m.port};
        }
      }
      if (ok) {
        return true;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
  }

}  // namespace

TEST_CASE("atoms") {
  auto f = atom(sigma(), "f");
  CHECK(f.count(VertexKind::symbol) == 1);
  CHECK(f.num_interfaces() == 2);
  CHECK(f.rank() == w("BA"));
  CHECK(atom(sigma(), "g").rank() == w("ABA"));
  auto k = atom(sigma(), "k");
  CHECK(k.num_vertices() == 1);
  CHECK(k.num_interfaces() == 0);
  CHECK(k.rank() == Obj());
  CHECK_THROWS_AS(atom(sigma(), "nope"), UnknownSymbol);
}

TEST_CASE("identity graphs") {
  auto a = identity_graph(w("A"));
  CHECK(a.num_vertices() == 2);
  CHECK(a.edges().size() == 1);
  CHECK(identity_graph(Obj()).num_vertices() == 0);
  auto ab = identity_graph(w("AB"));
  REQUIRE(ab.num_interfaces() == 4);
  CHECK(ab.mate({ab.interface_vertex(0), 0}).vertex == ab.interface_vertex(2));
  CHECK(ab.mate({ab.interface_vertex(1), 0}).vertex == ab.interface_vertex(3));
  CHECK(ab.rank() == w("ABAB"));
}

TEST_CASE("reindexing") {
  auto f = atom(sigma(), "f");
  CHECK(isomorphic(reindex(f, PermSymbol::identity(w("BA"))), f));
  auto a = identity_graph(w("A"));
  CHECK(isomorphic(
      reindex(a, PermSymbol::block_transposition(w("A"), w("A"))), a));

  auto swapped = reindex(f, PermSymbol::block_transposition(w("B"), w("A")));
  CHECK(swapped.rank() == w("AB"));
  // Interface 1 now meets the A port of f.
  CHECK(swapped.mate({swapped.interface_vertex(0), 0}).port == 1);
  CHECK(swapped.mate({swapped.interface_vertex(1), 0}).port == 0);
  CHECK_THROWS_AS(reindex(f, PermSymbol::identity(w("AB"))), RankMismatch);
}

TEST_CASE("sums") {
  auto f = atom(sigma(), "f");
  CHECK(isomorphic(sum(f, identity_graph(Obj())), f));
  auto ff = sum(f, f);
  CHECK(ff.num_interfaces() == 4);
  CHECK(ff.rank() == w("BABA"));
  CHECK(ff.count(VertexKind::symbol) == 2);
  CHECK(ff.mate({ff.interface_vertex(2), 0}).vertex == 3);
}

TEST_CASE("traces") {
  auto loop = trace(identity_graph(w("A")), w("A"));
  REQUIRE(loop.num_vertices() == 1);
  CHECK(loop.vertex(0).kind == VertexKind::loop);
  CHECK(loop.vertex(0).sort() == Sort("A"));
  CHECK(loop.rank() == Obj());

  // Two f stars, interfaces brought into the order A A B B, A glued.
  auto f  = atom(sigma(), "f");
  auto ff = reindex(sum(f, f),
                    PermSymbol::from_positions(w("BABA"), {2, 0, 3, 1}));
  REQUIRE(ff.rank() == w("AABB"));
  auto glued = trace(ff, w("A"));
  SigmaGraph expected;
  auto       u = expected.add_symbol_vertex("f", w("BA"));
  auto       v = expected.add_symbol_vertex("f", w("BA"));
  expected.connect({u, 1}, {v, 1});
  expected.connect({u, 0}, {expected.add_interface(Sort("B")), 0});
  expected.connect({v, 0}, {expected.add_interface(Sort("B")), 0});
  CHECK(glued.rank() == w("BB"));
  CHECK(isomorphic(glued, expected));
  CHECK(brute_isomorphic(glued, expected));

  CHECK(isomorphic(trace(f, Obj()), f));
  CHECK_THROWS_AS(trace(f, w("B")), RankMismatch);
}

TEST_CASE("derived composition with identities") {
  GraphAlgebra alg(sigma());
  auto         f = atom(sigma(), "f");  // B -> A
  auto         g = atom(sigma(), "g");  // AB -> A
  CHECK(isomorphic(
      compose(alg, f, {w("B"), w("A")}, identity_graph(w("A")), {w("A"), w("A")}),
      f));
  CHECK(isomorphic(
      compose(alg, identity_graph(w("B")), {w("B"), w("B")}, f, {w("B"), w("A")}),
      f));
  CHECK(isomorphic(compose(alg,
                           identity_graph(w("AB")),
                           {w("AB"), w("AB")},
                           g,
                           {w("AB"), w("A")}),
                   g));
  CHECK_THROWS_AS(compose(alg, f, {w("B"), w("A")}, f, {w("B"), w("A")}),
                  SplitMismatch);
}

TEST_CASE("isomorphism") {
  auto f = atom(sigma(), "f");
  CHECK(isomorphic(f, f));
  CHECK_FALSE(
      isomorphic(identity_graph(w("A")), trace(identity_graph(w("A")), w("A"))));
  CHECK_FALSE(isomorphic(f, reindex(f, PermSymbol::block_transposition(
                                           w("B"), w("A")))));

  // Associativity of sum, read through a reindexing.
  auto g  = atom(sigma(), "g");
  auto u  = atom(sigma(), "u");
  auto l  = sum(sum(f, g), u);
  auto r  = sum(f, sum(g, u));
  CHECK(isomorphic(l, r));
  CHECK(brute_isomorphic(l, r));
  // Commutativity up to the block transposition.
  auto fg = reindex(sum(f, g), PermSymbol::block_transposition(w("BA"), w("ABA")));
  CHECK(isomorphic(fg, sum(g, f)));
  CHECK(brute_isomorphic(fg, sum(g, f)));
}

TEST_CASE("isomorphism agrees with brute force on random graphs") {
  random::Rng rng(23);
  int         agree = 0;
  for (int k = 0; k < 200; ++k) {
    auto rank = random::random_obj(rng, 3);
    auto g    = random::random_graph(rng, sigma(), rank, 3);
    // A random relabelling of g, or an unrelated graph of the same rank.
    SigmaGraph h = random::coin(rng)
                       ? term::normalize(graph::decompose(g), sigma())
                       : random::random_graph(rng, sigma(), rank, 3);
    if (h.num_vertices() > 9) {
      continue;
    }
    CHECK(isomorphic(g, h) == brute_isomorphic(g, h));
    CHECK(isomorphic(g, h) == isomorphic(h, g));
    ++agree;
  }
  CHECK(agree > 100);
}

TEST_CASE("validation") {
  SigmaGraph g;
  auto       u = g.add_symbol_vertex("f", w("BA"));
  CHECK_THROWS(g.validate());
  auto a = g.add_interface(Sort("A"));
  CHECK_THROWS(g.connect({u, 0}, {a, 0}));  // sorts differ
  g.connect({u, 1}, {a, 0});
  CHECK_THROWS(g.connect({u, 1}, {a, 0}));  // already connected
}
