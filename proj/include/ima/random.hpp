// Random instances for property tests and the axiom suites.  Every
// generator draws from the engine it is given and nothing else, so a seed
// reproduces a run.

#ifndef IMA_RANDOM_HPP_
#define IMA_RANDOM_HPP_

#include <cstddef>
#include <random>
#include <vector>

#include "ima/automata.hpp"
#include "ima/dflow.hpp"
#include "ima/graph.hpp"
#include "ima/perm.hpp"
#include "ima/term.hpp"

namespace ima::random {

  using Rng = std::mt19937_64;

  // Uniform in [lo, hi].
  std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);
  bool        coin(Rng& rng, double p = 0.5);

  // f : BA, g : ABA, u : A, v : B, k : (), p : AABB.
  graph::RankedAlphabet const& test_alphabet();

  // Length in [0, max_len], letters from `sorts` (default A, B).
  Obj random_obj(Rng& rng, std::size_t max_len, Obj const& sorts = Obj());

  // dom cut into random contiguous blocks, permuted at random.
  PermSymbol random_perm(Rng& rng, Obj const& dom);
  // The given blocks, permuted at random.
  PermSymbol random_perm_over(Rng& rng, std::vector<Obj> const& blocks);
  // dom cut into groups of blocks, groups permuted at random.
  NestedPermSymbol random_nested(Rng& rng, Obj const& dom);

  // A graph of rank `rank` with up to `max_vertices` symbol vertices from
  // `alphabet`, random edges, and sometimes loop vertices.  The alphabet
  // must offer a unary symbol for each sort of `rank` and of its symbols.
  graph::SigmaGraph random_graph(Rng&                         rng,
                                 graph::RankedAlphabet const& alphabet,
                                 Obj const&                   rank,
                                 std::size_t                  max_vertices);

  // Up to max_states states; each possible transition is present with
  // probability `density`.
  automata::TuringAutomaton random_automaton(Rng&        rng,
                                             Obj const&  iface,
                                             std::size_t max_states,
                                             double      density = 0.15);
  dflow::DFlowAutomaton random_dflow(Rng&        rng,
                                     std::size_t data,
                                     Obj const&  iface,
                                     std::size_t max_states,
                                     double      density = 0.15);

  // A well-ranked term over `alphabet` with at most `depth` levels.
  term::Term random_term(Rng&                         rng,
                         graph::RankedAlphabet const& alphabet,
                         std::size_t                  depth);

  // A connected single-sorted graph with up to max_vertices internal
  // vertices, each labelled c<degree>, and `interfaces` interfaces.
  graph::SigmaGraph random_switch_graph(Rng&        rng,
                                        std::size_t max_vertices,
                                        std::size_t interfaces);

}  // namespace ima::random

#endif  // IMA_RANDOM_HPP_
