#include <algorithm>
#include <set>

#include "doctest.h"

#include "ima/dflow.hpp"
#include "ima/error.hpp"
#include "ima/random.hpp"
#include "ima/soliton.hpp"

using namespace ima;
using namespace ima::soliton;

namespace {

  // u - v with one interface on each.  Ports: interface first, then the
  // edge.
  UndirectedGraph path2() {
    return {2, {{0, 1}}, {0, 1}};
  }

  graph::Edge middle(PreSolitonAutomaton const& p) {
    auto edges = p.internal_edges();
    REQUIRE(edges.size() == 1);
    return edges[0];
  }

}  // namespace

TEST_CASE("graphs become switch machines") {
  auto one = make_presoliton(to_sigma_graph({1, {}, {0}}));
  CHECK(dflow::evaluate(one.machine()) == dflow::alternating_switch(1));

  auto two = make_presoliton(to_sigma_graph(path2()));
  CHECK(two.machine().components().size() == 2);
  CHECK(two.num_states() == 4);
  CHECK(two.graph().vertex(0).symbol == "c2");

  graph::SigmaGraph bad;
  auto u = bad.add_symbol_vertex("x", dflow::machine_word(1));
  bad.connect({u, 0}, {bad.add_interface(dflow::machine_sort()), 0});
  CHECK_THROWS_AS(make_presoliton(bad), BadLabel);
  CHECK_THROWS_AS(to_sigma_graph({2, {}, {0}}), InvalidSpec);

  // Rotation moves the interface port of u to the back.
  auto r = to_sigma_graph(path2(), {1, 0});
  CHECK(r.mate({r.interface_vertex(0), 0}) == graph::PortRef{0, 1});
}

TEST_CASE("edge consistency") {
  auto p = make_presoliton(to_sigma_graph(path2()));
  auto e = middle(p);
  CHECK(edge_consistent(p, {1, 1}, e));
  CHECK(edge_consistent(p, {0, 0}, e));
  CHECK_FALSE(edge_consistent(p, {1, 0}, e));
  CHECK_FALSE(edge_consistent(p, {0, 1}, e));

  // A self-loop is consistent only while negative.
  auto loop = make_presoliton(to_sigma_graph({1, {{0, 0}}, {0}}));
  auto l    = middle(loop);
  CHECK(edge_consistent(loop, {0}, l));
  CHECK_FALSE(edge_consistent(loop, {1}, l));
  CHECK_FALSE(edge_consistent(loop, {2}, l));

  graph::Edge outer{{0, 0}, {p.graph().interface_vertex(0), 0}};
  CHECK_THROWS_AS(edge_consistent(p, {0, 0}, outer), NotInternalEdge);
}

TEST_CASE("perfect internal matchings") {
  auto p = make_presoliton(to_sigma_graph(path2()));
  CHECK(is_pim(p, {1, 1}));
  CHECK(is_pim(p, {0, 0}));
  CHECK_FALSE(is_pim(p, {1, 0}));
  CHECK(enumerate_pims(p) == std::vector<SolitonState>{{0, 0}, {1, 1}});

  // A triangle with no interfaces has no perfect matching.
  auto tri = make_presoliton(to_sigma_graph({3, {{0, 1}, {1, 2}, {2, 0}}, {}}));
  CHECK(enumerate_pims(tri).empty());
  // A square has two.
  auto sq = make_presoliton(
      to_sigma_graph({4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {}}));
  CHECK(enumerate_pims(sq).size() == 2);
}

TEST_CASE("walks through one cell") {
  auto p     = make_presoliton(to_sigma_graph({1, {}, {0, 0}}));
  auto walks = soliton_walks(p, {0}, 0, 1, 10);
  REQUIRE(walks.size() == 1);
  CHECK(walks[0].configs.size() == 3);
  CHECK(walks[0].final == SolitonState{1});
  CHECK(is_pim(p, walks[0].final));
}

TEST_CASE("walks along a path") {
  auto p = make_presoliton(to_sigma_graph(path2()));
  auto w = soliton_walks(p, {0, 0}, 0, 1, 10);
  REQUIRE(w.size() == 1);
  CHECK(w[0].final == SolitonState{1, 1});
  // The middle edge is inconsistent: data do not match across it.
  CHECK(soliton_walks(p, {1, 0}, 0, 1, 10).empty());
  // The anchor loop is always available.
  CHECK_FALSE(soliton_walks(p, {0, 0}, std::nullopt, std::nullopt, 1).empty());
  CHECK_THROWS_AS(soliton_walks(p, {0, 0}, 5, 1, 10), IllFormedConfig);
}

TEST_CASE("bounded walks and unbounded ends agree") {
  random::Rng rng(97);
  for (int k = 0; k < 30; ++k) {
    auto g = random::random_switch_graph(rng, 3, random::uniform(rng, 1, 2));
    auto p = make_presoliton(g);
    for (auto const& q : enumerate_pims(p)) {
      std::set<dflow::Config> bounded;
      for (std::size_t to = 0; to < g.num_interfaces(); ++to) {
        for (auto const& w : soliton_walks(p, q, 0, to, 12)) {
          bounded.insert(w.configs.back());
        }
      }
      std::set<dflow::Config> all;
      for (auto const& c : walk_ends(p, q, 0)) {
        if (!std::holds_alternative<dflow::AtAnchor>(c.locus)) {
          all.insert(c);
        }
      }
      CHECK(std::includes(
          all.begin(), all.end(), bounded.begin(), bounded.end()));
    }
  }
}
