// Text and JSON formats for graphs, automata, machines and states, and DOT
// export.  All external formats number vertices, ports, interfaces, states
// and positions from 1; data values are written as they are (from 0).
//
// Graph text format:
//
//   graph <rank word>
//   symbol <name> <word>            (optional; declares port sorts)
//   vertex <id> sym:<name>
//   vertex <id> in:<serial>:<sort>
//   vertex <id> loop:<sort>
//   edge <id>.<port> <id>.<port>
//
// `#` starts a comment.  Undeclared symbols take their port sorts from the
// edges they meet when every port is joined to an interface or a declared
// vertex; otherwise they must be declared.
//
// Soliton graph format (plain undirected graph):
//
//   vertices <n>                    (optional; else the largest id seen)
//   edge <u> <v>
//   interface <k> <u>

#ifndef IMA_IO_HPP_
#define IMA_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ima/automata.hpp"
#include "ima/dflow.hpp"
#include "ima/graph.hpp"
#include "ima/soliton.hpp"

namespace ima::io {

  using Json = nlohmann::json;

  // Throws FormatError / SyntaxError.
  graph::SigmaGraph read_graph(std::string_view text);
  // Declares every symbol used, so read_graph(write_graph(g)) == g.
  std::string write_graph(graph::SigmaGraph const& g);
  // Interfaces as boxes, loop vertices as diamonds.
  std::string to_dot(graph::SigmaGraph const& g);

  // {"iface": "AB", "states": n, "transitions": [[q, x, q', y], ...]},
  // positions 1-based, "*" for the anchor.
  Json                      automaton_to_json(automata::TuringAutomaton const& t);
  automata::TuringAutomaton automaton_from_json(Json const& j);

  // {"data": D, "iface": "11", "states": n,
  //  "transitions": [[q, [port, datum] | "*", q', [port, datum] | "*"], ...]}
  Json                  dflow_to_json(dflow::DFlowAutomaton const& t);
  dflow::DFlowAutomaton dflow_from_json(Json const& j);

  // {"graph": "<file>" | {"text": "..."}, "data": D,
  //  "symbols": {"<name>": "<file>" | {"builtin": "alternating_switch" |
  //  "atomic_switch", "n": k} | <inline automaton>}}
  // File names are relative to `base`.
  dflow::GraphMachine machine_from_json(Json const&                  j,
                                        std::filesystem::path const& base);

  soliton::UndirectedGraph read_soliton_graph(std::string_view text);
  std::string              write_soliton_graph(soliton::UndirectedGraph const& g);

  // Whitespace-separated 1-based numbers, e.g. local states or positive
  // ports.
  std::vector<std::size_t> read_state(std::string_view text);
  std::string              write_state(std::vector<std::size_t> const& s);

  // Objects with one line per top-level key and per array element; other
  // values as indented JSON.
  std::string dump(Json const& j);

  // Reads a whole file.  Throws ima::Error.
  std::string slurp(std::filesystem::path const& path);

  // Short human-readable renderings used in reports.
  std::string describe(automata::TuringAutomaton const& t);
  std::string describe(dflow::DFlowAutomaton const& t);
  std::string describe(graph::SigmaGraph const& g);

}  // namespace ima::io

#endif  // IMA_IO_HPP_
