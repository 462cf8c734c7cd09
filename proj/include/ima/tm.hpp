// Classical Turing machines on a bounded tape, a reference interpreter, and
// their encoding as a graph machine: a path of cells whose automaton states
// are tape symbols and whose data are machine states.

#ifndef IMA_TM_HPP_
#define IMA_TM_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ima/dflow.hpp"

namespace ima::tm {

  enum class Move { left, right };

  struct Rule {
    std::size_t state;
    std::size_t symbol;
    std::size_t next_state;
    std::size_t write;
    Move        move;
  };

  // States and symbols are referred to by index.  Halting states have no
  // rules.
  struct TMSpec {
    std::vector<std::string> states;
    std::vector<std::string> symbols;
    std::vector<std::size_t> halting;
    std::vector<Rule>        rules;

    bool                 is_halting(std::size_t state) const;
    std::optional<Rule>  rule(std::size_t state, std::size_t symbol) const;
    // Throws InvalidSpec: indices out of range, two rules for one
    // (state, symbol), or a rule leaving a halting state.
    void validate() const;
  };

  // How a run leaves the tape.  `side` is 0 for the left end, 1 for the
  // right end.
  struct Outcome {
    std::vector<std::size_t> tape;
    std::size_t              state;
    std::size_t              side;
    bool operator==(Outcome const&) const = default;
  };

  // Starts at cell 0.  A halting state walks the head off the left end; a
  // non-halting state off either end throws ima::Error.  Returns nullopt if
  // no rule applies or the run exceeds `max_steps`.
  std::optional<Outcome> run(TMSpec const&            spec,
                             std::vector<std::size_t> tape,
                             std::size_t              start,
                             std::size_t              max_steps = 100000);

  // Cells are symbol "c" with ports left, right; the left end is interface
  // 1 and the right end interface 2.  Throws InvalidSpec.
  dflow::GraphMachine encode(TMSpec const& spec, std::size_t tape_len);
  // The same machine with every cell automaton reversed.
  dflow::GraphMachine encode_reversed(TMSpec const& spec, std::size_t tape_len);

  // The cell automaton alone.
  dflow::DFlowAutomaton cell_automaton(TMSpec const& spec);

  // States {scan, halt}, symbols {_, 1}: moves right over 1s and writes a 1
  // on the first blank.
  TMSpec unary_increment();

}  // namespace ima::tm

#endif  // IMA_TM_HPP_
