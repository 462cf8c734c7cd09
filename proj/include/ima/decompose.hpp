// Reconstruction of a Sigma-graph from its vertices: a term built from star
// graphs, identities and one trace that evaluates back to the graph.

#ifndef IMA_DECOMPOSE_HPP_
#define IMA_DECOMPOSE_HPP_

#include "ima/graph.hpp"
#include "ima/term.hpp"

namespace ima::graph {

  // Symbol vertices become atoms (summed in vertex order), edges between two
  // interfaces become identities, loop vertices become tr(A, id(A)).  Every
  // internal edge is created by the final trace.
  term::Term decompose(SigmaGraph const& g);

}  // namespace ima::graph

#endif  // IMA_DECOMPOSE_HPP_
