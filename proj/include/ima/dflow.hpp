// D-flow Turing automata, Turing graph machines, and the operational walk
// semantics used to check the evaluation homomorphism.
//
// A D-flow automaton of sort A is a Turing automaton over D x A.  Position
// (port p, datum d) of D x A is numbered p * |D| + d, so that D x (A + B) is
// literally D x A followed by D x B.  The anchor carries no datum.

#ifndef IMA_DFLOW_HPP_
#define IMA_DFLOW_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ima/automata.hpp"
#include "ima/graph.hpp"

namespace ima::dflow {

  using automata::kAnchor;
  using automata::Point;
  using automata::State;
  using automata::Transition;
  using automata::TuringAutomaton;

  // p * data + d.
  inline Point position(std::size_t port, std::size_t datum, std::size_t data) {
    return port * data + datum;
  }

  // The permutation symbol acting on D x (dom rho) as rho acts on ports.
  PermSymbol expand(PermSymbol const& rho, std::size_t data);

  class DFlowAutomaton {
   public:
    // Throws InvalidSpec unless base.iface() is iface repeated letterwise
    // `data` times.
    DFlowAutomaton(std::size_t data, Obj iface, TuringAutomaton base);

    std::size_t data() const noexcept {
      return _data;
    }
    Obj const& iface() const noexcept {
      return _iface;
    }
    TuringAutomaton const& base() const noexcept {
      return _base;
    }
    std::size_t num_states() const noexcept {
      return _base.num_states();
    }

    bool operator==(DFlowAutomaton const&) const = default;

   private:
    std::size_t     _data;
    Obj             _iface;
    TuringAutomaton _base;
  };

  // Builds the base automaton from (state, port, datum) quadruples; a
  // nullopt port/datum pair is the anchor.
  struct DTransition {
    State                                            from;
    std::optional<std::pair<std::size_t, std::size_t>> in;  // (port, datum)
    State                                            to;
    std::optional<std::pair<std::size_t, std::size_t>> out;
  };
  DFlowAutomaton make_dflow(std::size_t                     data,
                            Obj const&                      iface,
                            std::size_t                     states,
                            std::vector<DTransition> const& delta);

  class DFlowAlgebra {
   public:
    using Element = DFlowAutomaton;

    explicit DFlowAlgebra(std::size_t data) : _data(data) {}

    std::size_t data() const noexcept {
      return _data;
    }

    Obj rank(DFlowAutomaton const& t) const {
      return t.iface();
    }
    DFlowAutomaton identity(Obj const& w) const;
    DFlowAutomaton sum(DFlowAutomaton const& t, DFlowAutomaton const& u) const;
    DFlowAutomaton reindex(DFlowAutomaton const& t, PermSymbol const& rho) const;
    DFlowAutomaton trace(DFlowAutomaton const& t, Obj const& w) const;
    bool equivalent(DFlowAutomaton const& t, DFlowAutomaton const& u) const;

   private:
    std::size_t _data;

    void check(DFlowAutomaton const& t) const;
  };

  // The single sort of machine graphs.
  Sort const& machine_sort();
  // The word of n machine sorts.
  Obj machine_word(std::size_t n);

  // Data {0, 1}: a negative port takes 0 and emits 1 elsewhere, a positive
  // port takes 1 and emits 0.  State i means port i is positive.  Throws
  // InvalidArity for n < 1.
  DFlowAutomaton alternating_switch(std::size_t n);
  // The atomic switch with a single datum.
  DFlowAutomaton atomic_switch(std::size_t n);

  ////////////////////////////////////////////////////////////////////////
  // Turing graph machines
  ////////////////////////////////////////////////////////////////////////

  class GraphMachine {
   public:
    // Throws MissingSymbol when a symbol vertex has no automaton and
    // RankMismatch when an automaton's sort or data set is wrong.
    GraphMachine(graph::SigmaGraph                      g,
                 std::size_t                            data,
                 std::map<std::string, DFlowAutomaton> omega);

    graph::SigmaGraph const& graph() const noexcept {
      return _graph;
    }
    std::size_t data() const noexcept {
      return _data;
    }
    std::map<std::string, DFlowAutomaton> const& omega() const noexcept {
      return _omega;
    }
    DFlowAutomaton const& local(std::size_t vertex) const;

    // Symbol vertices in vertex order: the components of a global state.
    std::vector<std::size_t> const& components() const noexcept {
      return _components;
    }
    std::size_t num_global_states() const noexcept {
      return _num_global;
    }
    // Mixed radix, first component most significant.
    State encode(std::vector<State> const& local) const;
    std::vector<State> decode(State global) const;

   private:
    graph::SigmaGraph                     _graph;
    std::size_t                           _data;
    std::map<std::string, DFlowAutomaton> _omega;
    std::vector<std::size_t>              _components;
    std::size_t                           _num_global = 1;
  };

  // The homomorphic image of the graph's decomposition.
  DFlowAutomaton evaluate(GraphMachine const& m);

  // Where control is.  `Port` means about to enter a symbol vertex there.
  struct AtAnchor {
    auto operator<=>(AtAnchor const&) const = default;
  };
  struct AtInterface {
    std::size_t serial;
    auto        operator<=>(AtInterface const&) const = default;
  };
  struct AtPort {
    graph::PortRef port;
    auto           operator<=>(AtPort const&) const = default;
  };
  using Locus = std::variant<AtAnchor, AtInterface, AtPort>;

  struct Config {
    std::vector<State>         local;  // indexed like components()
    Locus                      locus;
    std::optional<std::size_t> datum;
    auto operator<=>(Config const&) const = default;
  };

  std::string to_string(GraphMachine const& m, Config const& c);

  // One move of control.  From an interface, control follows the edge
  // there.  Throws IllFormedConfig.
  std::vector<Config> step(GraphMachine const& m, Config const& c);

  // Configurations at an external locus (an interface or the anchor)
  // reachable from `start` in at least one step, without passing through an
  // external locus on the way.
  std::set<Config> reach(GraphMachine const& m, Config const& start);

  // The transition relation found by exploring `reach` from every global
  // state and every external entry point; comparable with
  // evaluate(m).base() on the nose.
  TuringAutomaton walks(GraphMachine const& m);
  // The part of `walks` from point x to point y (base positions or anchor).
  automata::Rel walks(GraphMachine const& m, Point x, Point y);

  // A machine over the atomic switch (data 1) or the alternating switch
  // (data 2): symbol "c<n>" for a vertex of n ports.
  enum class SwitchKind { atomic, alternating };
  std::string switch_symbol(std::size_t n);
  GraphMachine switch_machine(graph::SigmaGraph g, SwitchKind kind);

}  // namespace ima::dflow

#endif  // IMA_DFLOW_HPP_
