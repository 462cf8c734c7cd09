#include "ima/soliton.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ima/error.hpp"

namespace ima::soliton {

  std::size_t UndirectedGraph::degree(std::size_t u) const {
    std::size_t d = 0;
    for (auto const& [a, b] : edges) {
      d += (a == u) + (b == u);
    }
    for (auto v : interfaces) {
      d += v == u;
    }
    return d;
  }

  bool UndirectedGraph::connected() const {
    if (internal == 0) {
      return interfaces.empty();
    }
    std::vector<std::size_t> parent(internal);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    for (auto const& [a, b] : edges) {
      parent[find(a)] = find(b);
    }
    for (std::size_t u = 0; u < internal; ++u) {
      if (find(u) != find(0)) {
        return false;
      }
    }
    return true;
  }

  graph::SigmaGraph to_sigma_graph(UndirectedGraph const&          g,
                                   std::vector<std::size_t> const& rotation) {
    if (!rotation.empty() && rotation.size() != g.internal) {
      throw InvalidSpec("one rotation per internal vertex expected");
    }
    for (auto const& [a, b] : g.edges) {
      if (a >= g.internal || b >= g.internal) {
        throw InvalidSpec("edge mentions an unknown vertex");
      }
    }
    for (auto u : g.interfaces) {
      if (u >= g.internal) {
        throw InvalidSpec("interface attached to an unknown vertex");
      }
    }

    // Incidences per vertex, in order of appearance, as (edge index or
    // interface, end).  Interfaces are tagged by offsetting past the edges.
    std::vector<std::vector<std::size_t>> slots(g.internal);
    auto const                            tag = g.edges.size();
    for (std::size_t k = 0; k < g.interfaces.size(); ++k) {
      slots[g.interfaces[k]].push_back(2 * (tag + k));
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      slots[g.edges[e].first].push_back(2 * e);
      slots[g.edges[e].second].push_back(2 * e + 1);
    }

    graph::SigmaGraph out;
    for (std::size_t u = 0; u < g.internal; ++u) {
      auto const n = slots[u].size();
      if (n == 0) {
        throw InvalidSpec("internal vertex " + std::to_string(u)
                          + " has no neighbours");
      }
      if (!rotation.empty()) {
        std::rotate(slots[u].begin(),
                    slots[u].begin() + rotation[u] % n,
                    slots[u].end());
      }
      out.add_symbol_vertex(dflow::switch_symbol(n), dflow::machine_word(n));
    }
    std::vector<std::size_t> iface;
    for (std::size_t k = 0; k < g.interfaces.size(); ++k) {
      iface.push_back(out.add_interface(dflow::machine_sort()));
    }

    // End -> port.
    std::vector<graph::PortRef> where(2 * (tag + g.interfaces.size()));
    for (std::size_t u = 0; u < g.internal; ++u) {
      for (std::size_t p = 0; p < slots[u].size(); ++p) {
        where[slots[u][p]] = {u, p};
      }
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      out.connect(where[2 * e], where[2 * e + 1]);
    }
    for (std::size_t k = 0; k < g.interfaces.size(); ++k) {
      out.connect(where[2 * (tag + k)], {iface[k], 0});
    }
    return out;
  }

  PreSolitonAutomaton::PreSolitonAutomaton(graph::SigmaGraph g)
      : _machine(dflow::switch_machine(std::move(g),
                                       dflow::SwitchKind::alternating)) {}

  std::vector<graph::Edge> PreSolitonAutomaton::internal_edges() const {
    std::vector<graph::Edge> out;
    for (auto const& e : graph().edges()) {
      if (graph().vertex(e.a.vertex).kind == graph::VertexKind::symbol
          && graph().vertex(e.b.vertex).kind == graph::VertexKind::symbol) {
        out.push_back(e);
      }
    }
    return out;
  }

  PreSolitonAutomaton make_presoliton(graph::SigmaGraph g) {
    return PreSolitonAutomaton(std::move(g));
  }

  namespace {

    std::size_t component(PreSolitonAutomaton const& p, std::size_t vertex) {
      auto const& comps = p.machine().components();
      auto it = std::find(comps.begin(), comps.end(), vertex);
      if (it == comps.end()) {
        throw NotInternalEdge("vertex " + std::to_string(vertex)
                              + " is not internal");
      }
      return it - comps.begin();
    }

    void check_state(PreSolitonAutomaton const& p, SolitonState const& q) {
      p.encode(q);
    }

  }  // namespace

  bool edge_consistent(PreSolitonAutomaton const& p,
                       SolitonState const&        q,
                       graph::Edge const&         e) {
    check_state(p, q);
    auto const u = component(p, e.a.vertex);
    auto const v = component(p, e.b.vertex);
    return (q[u] == e.a.port) == (q[v] == e.b.port);
  }

  bool is_pim(PreSolitonAutomaton const& p, SolitonState const& q) {
    check_state(p, q);
    std::vector<std::size_t> covered(q.size(), 0);
    for (auto const& e : p.internal_edges()) {
      if (!edge_consistent(p, q, e)) {
        return false;
      }
      auto const u = component(p, e.a.vertex);
      auto const v = component(p, e.b.vertex);
      if (q[u] == e.a.port) {
        ++covered[u];
        ++covered[v];
      }
    }
    auto const& g = p.graph();
    for (std::size_t k = 0; k < g.num_interfaces(); ++k) {
      auto const port = g.mate({g.interface_vertex(k), 0});
      if (g.vertex(port.vertex).kind != graph::VertexKind::symbol) {
        continue;
      }
      auto const u = component(p, port.vertex);
      covered[u] += q[u] == port.port;
    }
    return std::all_of(
        covered.begin(), covered.end(), [](std::size_t c) { return c == 1; });
  }

  std::vector<SolitonState> enumerate_pims(PreSolitonAutomaton const& p) {
    std::vector<SolitonState> out;
    for (automata::State s = 0; s < p.num_states(); ++s) {
      auto q = p.decode(s);
      if (is_pim(p, q)) {
        out.push_back(std::move(q));
      }
    }
    return out;
  }

  namespace {

    std::vector<dflow::Config> starts(PreSolitonAutomaton const& p,
                                      SolitonState const&        q,
                                      Endpoint                   from) {
      check_state(p, q);
      if (!from) {
        return {{q, dflow::AtAnchor{}, std::nullopt}};
      }
      if (*from >= p.graph().num_interfaces()) {
        throw IllFormedConfig("no interface " + std::to_string(*from + 1));
      }
      std::vector<dflow::Config> out;
      for (std::size_t d = 0; d < p.machine().data(); ++d) {
        out.push_back({q, dflow::AtInterface{*from}, d});
      }
      return out;
    }

    bool at(dflow::Config const& c, Endpoint e) {
      if (!e) {
        return std::holds_alternative<dflow::AtAnchor>(c.locus);
      }
      auto const* i = std::get_if<dflow::AtInterface>(&c.locus);
      return i != nullptr && i->serial == *e;
    }

    bool external(dflow::Config const& c) {
      return !std::holds_alternative<dflow::AtPort>(c.locus);
    }

    void extend(PreSolitonAutomaton const&  p,
                std::vector<dflow::Config>& path,
                Endpoint                    to,
                std::size_t                 budget,
                std::vector<Walk>&          out) {
      if (budget == 0) {
        return;
      }
      for (auto& next : dflow::step(p.machine(), path.back())) {
        bool const done = external(next);
        path.push_back(std::move(next));
        if (done) {
          if (at(path.back(), to)) {
            out.push_back({path, path.back().local});
          }
        } else {
          extend(p, path, to, budget - 1, out);
        }
        path.pop_back();
      }
    }

  }  // namespace

  std::vector<Walk> soliton_walks(PreSolitonAutomaton const& p,
                                  SolitonState const&        q,
                                  Endpoint                   from,
                                  Endpoint                   to,
                                  std::size_t                max_steps) {
    std::vector<Walk> out;
    for (auto const& s : starts(p, q, from)) {
      std::vector<dflow::Config> path{s};
      extend(p, path, to, max_steps, out);
    }
    return out;
  }

  std::vector<dflow::Config> walk_ends(PreSolitonAutomaton const& p,
                                       SolitonState const&        q,
                                       Endpoint                   from) {
    std::set<dflow::Config> all;
    for (auto const& s : starts(p, q, from)) {
      auto found = dflow::reach(p.machine(), s);
      all.insert(found.begin(), found.end());
    }
    return {all.begin(), all.end()};
  }

}  // namespace ima::soliton
