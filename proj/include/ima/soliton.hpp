// Pre-soliton automata: undirected graphs whose internal vertices are
// alternating switches, with states that pick one positive port per vertex.

#ifndef IMA_SOLITON_HPP_
#define IMA_SOLITON_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ima/dflow.hpp"

namespace ima::soliton {

  // A plain undirected multigraph with numbered internal vertices and
  // interfaces hanging off internal vertices.
  struct UndirectedGraph {
    std::size_t                                      internal = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    // interfaces[k] is the internal vertex interface k is attached to.
    std::vector<std::size_t>                         interfaces;

    std::size_t degree(std::size_t u) const;
    bool        connected() const;
  };

  // Internal vertex u becomes vertex u labelled c<degree>, its ports taken in
  // order of appearance: attached interfaces first, then edges.  `rotation`
  // (one entry per vertex, default none) cyclically shifts the port order.
  // Throws InvalidSpec for an isolated internal vertex.
  graph::SigmaGraph to_sigma_graph(UndirectedGraph const&          g,
                                   std::vector<std::size_t> const& rotation
                                   = {});

  // Positive port of each internal vertex, indexed like the machine's
  // components.
  using SolitonState = std::vector<std::size_t>;

  class PreSolitonAutomaton {
   public:
    // Throws BadLabel unless every symbol vertex is c<n> over the machine
    // sort.
    explicit PreSolitonAutomaton(graph::SigmaGraph g);

    dflow::GraphMachine const& machine() const noexcept {
      return _machine;
    }
    graph::SigmaGraph const& graph() const noexcept {
      return _machine.graph();
    }

    std::size_t num_states() const noexcept {
      return _machine.num_global_states();
    }
    automata::State encode(SolitonState const& q) const {
      return _machine.encode(q);
    }
    SolitonState decode(automata::State s) const {
      return _machine.decode(s);
    }

    // Edges between two internal vertices (self-loops included).
    std::vector<graph::Edge> internal_edges() const;

   private:
    dflow::GraphMachine _machine;
  };

  PreSolitonAutomaton make_presoliton(graph::SigmaGraph g);

  // Throws NotInternalEdge.
  bool edge_consistent(PreSolitonAutomaton const& p,
                       SolitonState const&        q,
                       graph::Edge const&         e);
  // Every internal edge consistent, and the positive edges a matching that
  // covers every internal vertex.
  bool is_pim(PreSolitonAutomaton const& p, SolitonState const& q);
  std::vector<SolitonState> enumerate_pims(PreSolitonAutomaton const& p);

  // nullopt is the anchor.
  using Endpoint = std::optional<std::size_t>;

  struct Walk {
    std::vector<dflow::Config> configs;  // from entry to exit
    SolitonState               final;
  };

  // Walks from `from` to `to` of at most `max_steps` moves.  From an
  // interface every datum the switches accept is tried.
  std::vector<Walk> soliton_walks(PreSolitonAutomaton const& p,
                                  SolitonState const&        q,
                                  Endpoint                   from,
                                  Endpoint                   to,
                                  std::size_t                max_steps);

  // Every external configuration reachable from `from` in state q, without
  // a step bound.
  std::vector<dflow::Config> walk_ends(PreSolitonAutomaton const& p,
                                       SolitonState const&        q,
                                       Endpoint                   from);

}  // namespace ima::soliton

#endif  // IMA_SOLITON_HPP_
