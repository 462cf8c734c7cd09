#include "ima/tm.hpp"

#include <algorithm>
#include <set>

#include "ima/error.hpp"

namespace ima::tm {

  bool TMSpec::is_halting(std::size_t state) const {
    return std::find(halting.begin(), halting.end(), state) != halting.end();
  }

  std::optional<Rule> TMSpec::rule(std::size_t state, std::size_t symbol) const {
    for (auto const& r : rules) {
      if (r.state == state && r.symbol == symbol) {
        return r;
      }
    }
    return std::nullopt;
  }

  void TMSpec::validate() const {
    if (states.empty() || symbols.empty()) {
      throw InvalidSpec("a machine needs states and symbols");
    }
    for (auto h : halting) {
      if (h >= states.size()) {
        throw InvalidSpec("halting state out of range");
      }
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto const& r : rules) {
      if (r.state >= states.size() || r.next_state >= states.size()
          || r.symbol >= symbols.size() || r.write >= symbols.size()) {
        throw InvalidSpec("rule mentions an unknown state or symbol");
      }
      if (is_halting(r.state)) {
        throw InvalidSpec("halting state " + states[r.state] + " has a rule");
      }
      if (!seen.emplace(r.state, r.symbol).second) {
        throw InvalidSpec("two rules for state " + states[r.state]
                          + " reading " + symbols[r.symbol]);
      }
    }
  }

  std::optional<Outcome> run(TMSpec const&            spec,
                             std::vector<std::size_t> tape,
                             std::size_t              start,
                             std::size_t              max_steps) {
    spec.validate();
    if (tape.empty()) {
      throw InvalidSpec("the tape needs at least one cell");
    }
    std::size_t head  = 0;
    std::size_t state = start;
    for (std::size_t steps = 0; steps <= max_steps; ++steps) {
      if (spec.is_halting(state)) {
        return Outcome{std::move(tape), state, 0};
      }
      auto r = spec.rule(state, tape[head]);
      if (!r) {
        return std::nullopt;
      }
      tape[head] = r->write;
      state      = r->next_state;
      if (r->move == Move::left && head == 0) {
        if (!spec.is_halting(state)) {
          throw Error("head left the tape on the left");
        }
        return Outcome{std::move(tape), state, 0};
      }
      if (r->move == Move::right && head + 1 == tape.size()) {
        if (!spec.is_halting(state)) {
          throw Error("head left the tape on the right");
        }
        return Outcome{std::move(tape), state, 1};
      }
      head = r->move == Move::left ? head - 1 : head + 1;
    }
    return std::nullopt;
  }

  dflow::DFlowAutomaton cell_automaton(TMSpec const& spec) {
    spec.validate();
    using PD                  = std::pair<std::size_t, std::size_t>;
    std::size_t const left    = 0;
    std::size_t const right   = 1;
    std::vector<dflow::DTransition> delta;
    for (std::size_t port : {left, right}) {
      for (auto const& r : spec.rules) {
        auto const exit = r.move == Move::left ? left : right;
        delta.push_back(
            {r.symbol, PD{port, r.state}, r.write, PD{exit, r.next_state}});
      }
      for (auto h : spec.halting) {
        for (std::size_t g = 0; g < spec.symbols.size(); ++g) {
          delta.push_back({g, PD{port, h}, g, PD{left, h}});
        }
      }
    }
    return dflow::make_dflow(spec.states.size(),
                             dflow::machine_word(2),
                             spec.symbols.size(),
                             delta);
  }

  namespace {

    dflow::GraphMachine build(TMSpec const&         spec,
                              std::size_t           tape_len,
                              dflow::DFlowAutomaton cell) {
      if (tape_len == 0) {
        throw InvalidSpec("the tape needs at least one cell");
      }
      auto const&       sort = dflow::machine_sort();
      graph::SigmaGraph g;
      auto const        first = g.add_interface(sort);
      std::vector<std::size_t> cells;
      for (std::size_t i = 0; i < tape_len; ++i) {
        cells.push_back(g.add_symbol_vertex("c", dflow::machine_word(2)));
      }
      auto const last = g.add_interface(sort);
      g.connect({first, 0}, {cells.front(), 0});
      for (std::size_t i = 0; i + 1 < tape_len; ++i) {
        g.connect({cells[i], 1}, {cells[i + 1], 0});
      }
      g.connect({cells.back(), 1}, {last, 0});
      return dflow::GraphMachine(
          std::move(g), spec.states.size(), {{"c", std::move(cell)}});
    }

  }  // namespace

  dflow::GraphMachine encode(TMSpec const& spec, std::size_t tape_len) {
    return build(spec, tape_len, cell_automaton(spec));
  }

  dflow::GraphMachine encode_reversed(TMSpec const& spec,
                                      std::size_t   tape_len) {
    auto cell = cell_automaton(spec);
    return build(
        spec,
        tape_len,
        dflow::DFlowAutomaton(
            cell.data(), cell.iface(), automata::reverse(cell.base())));
  }

  TMSpec unary_increment() {
    TMSpec spec;
    spec.states  = {"scan", "halt"};
    spec.symbols = {"_", "1"};
    spec.halting = {1};
    spec.rules   = {{0, 1, 0, 1, Move::right}, {0, 0, 1, 1, Move::left}};
    return spec;
  }

}  // namespace ima::tm
