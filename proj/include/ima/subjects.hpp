// The three algebras of the library packaged for the axiom suite.

#ifndef IMA_SUBJECTS_HPP_
#define IMA_SUBJECTS_HPP_

#include "ima/axioms.hpp"
#include "ima/io.hpp"

namespace ima::axioms {

  inline Subject<graph::GraphAlgebra> graph_subject() {
    return {graph::GraphAlgebra(random::test_alphabet()),
            [](Rng& rng, Obj const& rank, std::size_t size) {
              return random::random_graph(
                  rng, random::test_alphabet(), rank, size);
            },
            [](graph::SigmaGraph const& g) { return io::describe(g); },
            Obj::from_letters("AB"),
            2,
            3};
  }

  inline Subject<automata::AutomatonAlgebra> automata_subject(
      automata::ProductMode mode = automata::ProductMode::alternating) {
    return {automata::AutomatonAlgebra(mode),
            [](Rng& rng, Obj const& rank, std::size_t size) {
              return random::random_automaton(rng, rank, size, 0.1);
            },
            [](automata::TuringAutomaton const& t) { return io::describe(t); },
            Obj::from_letters("AB"),
            2,
            3};
  }

  inline Subject<dflow::DFlowAlgebra> dflow_subject() {
    return {dflow::DFlowAlgebra(2),
            [](Rng& rng, Obj const& rank, std::size_t size) {
              return random::random_dflow(rng, 2, rank, size, 0.05);
            },
            [](dflow::DFlowAutomaton const& t) { return io::describe(t); },
            Obj::from_letters("AB"),
            1,
            3};
  }

}  // namespace ima::axioms

#endif  // IMA_SUBJECTS_HPP_
