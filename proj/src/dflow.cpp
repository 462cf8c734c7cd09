#include "ima/dflow.hpp"

#include <deque>
#include <sstream>

#include "ima/decompose.hpp"
#include "ima/error.hpp"
#include "ima/term.hpp"

namespace ima::dflow {

  PermSymbol expand(PermSymbol const& rho, std::size_t data) {
    std::vector<Obj> blocks;
    blocks.reserve(rho.blocks().size());
    for (auto const& b : rho.blocks()) {
      blocks.push_back(b.repeat_letters(data));
    }
    return PermSymbol(std::move(blocks), rho.pi());
  }

  DFlowAutomaton::DFlowAutomaton(std::size_t     data,
                                 Obj             iface,
                                 TuringAutomaton base)
      : _data(data), _iface(std::move(iface)), _base(std::move(base)) {
    if (_data == 0) {
      throw InvalidSpec("the data set must be nonempty");
    }
    if (_base.iface() != _iface.repeat_letters(_data)) {
      throw InvalidSpec("base automaton interface " + _base.iface().to_string()
                        + " is not D x " + _iface.to_string());
    }
  }

  DFlowAutomaton make_dflow(std::size_t                     data,
                            Obj const&                      iface,
                            std::size_t                     states,
                            std::vector<DTransition> const& delta) {
    auto point = [&](auto const& pd) -> Point {
      if (!pd) {
        return kAnchor;
      }
      if (pd->first >= iface.size() || pd->second >= data) {
        throw InvalidSpec("transition mentions an unknown port or datum");
      }
      return position(pd->first, pd->second, data);
    };
    std::vector<Transition> base;
    base.reserve(delta.size());
    for (auto const& t : delta) {
      base.push_back({t.from, point(t.in), t.to, point(t.out)});
    }
    return DFlowAutomaton(
        data,
        iface,
        TuringAutomaton(iface.repeat_letters(data), states, std::move(base)));
  }

  ////////////////////////////////////////////////////////////////////////
  // DFlowAlgebra
  ////////////////////////////////////////////////////////////////////////

  void DFlowAlgebra::check(DFlowAutomaton const& t) const {
    if (t.data() != _data) {
      throw RankMismatch("automaton has " + std::to_string(t.data())
                         + " data values, expected "
                         + std::to_string(_data));
    }
  }

  DFlowAutomaton DFlowAlgebra::identity(Obj const& w) const {
    return DFlowAutomaton(
        _data, w + w, automata::identity_automaton(w.repeat_letters(_data)));
  }

  DFlowAutomaton DFlowAlgebra::sum(DFlowAutomaton const& t,
                                   DFlowAutomaton const& u) const {
    check(t);
    check(u);
    return DFlowAutomaton(
        _data, t.iface() + u.iface(), automata::sum(t.base(), u.base()));
  }

  DFlowAutomaton DFlowAlgebra::reindex(DFlowAutomaton const& t,
                                       PermSymbol const&     rho) const {
    check(t);
    if (rho.dom() != t.iface()) {
      throw RankMismatch("reindexing " + t.iface().to_string()
                         + " by a symbol with domain "
                         + rho.dom().to_string());
    }
    return DFlowAutomaton(
        _data, rho.cod(), automata::reindex(t.base(), expand(rho, _data)));
  }

  DFlowAutomaton DFlowAlgebra::trace(DFlowAutomaton const& t,
                                     Obj const&            w) const {
    check(t);
    if (!t.iface().starts_with(w + w)) {
      throw RankMismatch("cannot trace " + w.to_string() + " out of "
                         + t.iface().to_string());
    }
    auto const n = 2 * w.size();
    return DFlowAutomaton(
        _data,
        t.iface().slice(n, t.iface().size() - n),
        automata::trace(t.base(), w.repeat_letters(_data)));
  }

  bool DFlowAlgebra::equivalent(DFlowAutomaton const& t,
                                DFlowAutomaton const& u) const {
    return t.data() == u.data() && t.iface() == u.iface()
           && automata::equivalent(t.base(), u.base());
  }

  ////////////////////////////////////////////////////////////////////////
  // Switches
  ////////////////////////////////////////////////////////////////////////

  Sort const& machine_sort() {
    static Sort const sort("1");
    return sort;
  }

  Obj machine_word(std::size_t n) {
    return Obj(std::vector<Sort>(n, machine_sort()));
  }

  DFlowAutomaton alternating_switch(std::size_t n) {
    if (n < 1) {
      throw InvalidArity("a switch needs at least one port");
    }
    using PD = std::pair<std::size_t, std::size_t>;
    std::vector<DTransition> delta;
    for (State i = 0; i < n; ++i) {
      for (State j = 0; j < n; ++j) {
        if (j != i) {
          delta.push_back({i, PD{j, 0}, j, PD{i, 1}});
          delta.push_back({i, PD{i, 1}, j, PD{j, 0}});
        }
        for (std::size_t d = 0; d < 2; ++d) {
          delta.push_back({i, std::nullopt, i, PD{j, d}});
          delta.push_back({i, PD{j, d}, i, std::nullopt});
        }
      }
      delta.push_back({i, std::nullopt, i, std::nullopt});
    }
    if (n == 1) {
      delta.push_back({0, PD{0, 1}, 0, PD{0, 0}});
    }
    return make_dflow(2, machine_word(n), n, delta);
  }

  DFlowAutomaton atomic_switch(std::size_t n) {
    return DFlowAutomaton(
        1, machine_word(n), automata::atomic_switch(n, machine_sort()));
  }

  std::string switch_symbol(std::size_t n) {
    return "c" + std::to_string(n);
  }

  GraphMachine switch_machine(graph::SigmaGraph g, SwitchKind kind) {
    std::map<std::string, DFlowAutomaton> omega;
    for (auto const& v : g.vertices()) {
      if (v.kind != graph::VertexKind::symbol) {
        continue;
      }
      auto const n = v.ports.size();
      if (v.symbol != switch_symbol(n) || v.ports != machine_word(n)) {
        throw BadLabel("vertex labelled " + v.symbol + " with "
                       + std::to_string(n) + " ports is not a switch");
      }
      if (omega.count(v.symbol) == 0) {
        omega.emplace(v.symbol,
                      kind == SwitchKind::atomic ? atomic_switch(n)
                                                 : alternating_switch(n));
      }
    }
    return GraphMachine(
        std::move(g), kind == SwitchKind::atomic ? 1 : 2, std::move(omega));
  }

  ////////////////////////////////////////////////////////////////////////
  // GraphMachine
  ////////////////////////////////////////////////////////////////////////

  GraphMachine::GraphMachine(graph::SigmaGraph                     g,
                             std::size_t                           data,
                             std::map<std::string, DFlowAutomaton> omega)
      : _graph(std::move(g)), _data(data), _omega(std::move(omega)) {
    if (_data == 0) {
      throw InvalidSpec("the data set must be nonempty");
    }
    for (std::size_t v = 0; v < _graph.num_vertices(); ++v) {
      auto const& vx = _graph.vertex(v);
      if (vx.kind != graph::VertexKind::symbol) {
        continue;
      }
      auto it = _omega.find(vx.symbol);
      if (it == _omega.end()) {
        throw MissingSymbol("no automaton for symbol " + vx.symbol);
      }
      if (it->second.iface() != vx.ports || it->second.data() != _data) {
        throw RankMismatch("automaton for " + vx.symbol
                           + " does not fit its vertex");
      }
      _components.push_back(v);
      _num_global *= it->second.num_states();
    }
  }

  DFlowAutomaton const& GraphMachine::local(std::size_t vertex) const {
    return _omega.at(_graph.vertex(vertex).symbol);
  }

  State GraphMachine::encode(std::vector<State> const& local) const {
    if (local.size() != _components.size()) {
      throw IllFormedConfig("wrong number of local states");
    }
    State g = 0;
    for (std::size_t k = 0; k < _components.size(); ++k) {
      auto const n = this->local(_components[k]).num_states();
      if (local[k] >= n) {
        throw IllFormedConfig("local state out of range");
      }
      g = g * n + local[k];
    }
    return g;
  }

  std::vector<State> GraphMachine::decode(State global) const {
    if (global >= _num_global) {
      throw IllFormedConfig("global state out of range");
    }
    std::vector<State> local(_components.size());
    for (std::size_t k = _components.size(); k-- > 0;) {
      auto const n = this->local(_components[k]).num_states();
      local[k] = global % n;
      global /= n;
    }
    return local;
  }

  DFlowAutomaton evaluate(GraphMachine const& m) {
    DFlowAlgebra alg(m.data());
    term::Interpretation<DFlowAlgebra> omega(m.omega().begin(),
                                             m.omega().end());
    return term::eval(graph::decompose(m.graph()), alg, omega);
  }

  ////////////////////////////////////////////////////////////////////////
  // Operational semantics
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::size_t component_of(GraphMachine const& m, std::size_t vertex) {
      auto const& comps = m.components();
      for (std::size_t k = 0; k < comps.size(); ++k) {
        if (comps[k] == vertex) {
          return k;
        }
      }
      throw IllFormedConfig("vertex " + std::to_string(vertex)
                            + " is not a symbol vertex");
    }

    // Control leaves symbol vertex `vertex` at base position `out`.
    Config emit(GraphMachine const& m,
                std::vector<State>  local,
                std::size_t         vertex,
                Point               out) {
      if (out == kAnchor) {
        return {std::move(local), AtAnchor{}, std::nullopt};
      }
      auto const port  = out / m.data();
      auto const datum = out % m.data();
      auto const mate  = m.graph().mate({vertex, port});
      if (m.graph().vertex(mate.vertex).kind == graph::VertexKind::interface) {
        return {std::move(local),
                AtInterface{m.graph().serial_of(mate.vertex)},
                datum};
      }
      return {std::move(local), AtPort{mate}, datum};
    }

    bool external(Config const& c) {
      return !std::holds_alternative<AtPort>(c.locus);
    }

  }  // namespace

  std::string to_string(GraphMachine const& m, Config const& c) {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < c.local.size(); ++k) {
      os << (k ? " " : "") << c.local[k] + 1;
    }
    os << "] ";
    std::visit(
        [&](auto const& l) {
          using L = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<L, AtAnchor>) {
            os << "anchor";
          } else if constexpr (std::is_same_v<L, AtInterface>) {
            os << "interface " << l.serial + 1;
          } else {
            os << "vertex " << l.port.vertex + 1 << " ("
               << m.graph().vertex(l.port.vertex).symbol << ") port "
               << l.port.port + 1;
          }
        },
        c.locus);
    if (c.datum) {
      os << " datum " << *c.datum;
    }
    return os.str();
  }

  std::vector<Config> step(GraphMachine const& m, Config const& c) {
    if (c.local.size() != m.components().size()) {
      throw IllFormedConfig("wrong number of local states");
    }
    auto const& g = m.graph();
    std::vector<Config> out;

    if (std::holds_alternative<AtAnchor>(c.locus)) {
      if (c.datum) {
        throw IllFormedConfig("the anchor carries no datum");
      }
      for (std::size_t k = 0; k < m.components().size(); ++k) {
        auto const v = m.components()[k];
        for (auto const& t : m.local(v).base().transitions()) {
          if (t.from == c.local[k] && t.in == kAnchor) {
            auto local = c.local;
            local[k]   = t.to;
            out.push_back(emit(m, std::move(local), v, t.out));
          }
        }
      }
      return out;
    }

    if (!c.datum || *c.datum >= m.data()) {
      throw IllFormedConfig("control at a port needs a datum");
    }
    if (auto const* at = std::get_if<AtInterface>(&c.locus)) {
      if (at->serial >= g.num_interfaces()) {
        throw IllFormedConfig("no interface " + std::to_string(at->serial + 1));
      }
      auto const mate = g.mate({g.interface_vertex(at->serial), 0});
      if (g.vertex(mate.vertex).kind == graph::VertexKind::interface) {
        out.push_back(
            {c.local, AtInterface{g.serial_of(mate.vertex)}, c.datum});
      } else {
        out.push_back({c.local, AtPort{mate}, c.datum});
      }
      return out;
    }

    auto const port = std::get<AtPort>(c.locus).port;
    auto const k    = component_of(m, port.vertex);
    auto const in   = position(port.port, *c.datum, m.data());
    for (auto const& t : m.local(port.vertex).base().transitions()) {
      if (t.from == c.local[k] && t.in == in) {
        auto local = c.local;
        local[k]   = t.to;
        out.push_back(emit(m, std::move(local), port.vertex, t.out));
      }
    }
    return out;
  }

  std::set<Config> reach(GraphMachine const& m, Config const& start) {
    std::set<Config>   seen;
    std::set<Config>   found;
    std::deque<Config> frontier;
    auto visit = [&](Config c) {
      if (external(c)) {
        found.insert(std::move(c));
      } else if (seen.insert(c).second) {
        frontier.push_back(std::move(c));
      }
    };
    for (auto& c : step(m, start)) {
      visit(std::move(c));
    }
    while (!frontier.empty()) {
      Config c = std::move(frontier.front());
      frontier.pop_front();
      for (auto& next : step(m, c)) {
        visit(std::move(next));
      }
    }
    return found;
  }

  TuringAutomaton walks(GraphMachine const& m) {
    auto const d = m.data();
    auto const n = m.graph().num_interfaces();

    auto point_of = [d](Config const& c) -> Point {
      if (auto const* at = std::get_if<AtInterface>(&c.locus)) {
        return position(at->serial, *c.datum, d);
      }
      return kAnchor;
    };

    std::vector<Transition> delta;
    for (State q = 0; q < m.num_global_states(); ++q) {
      auto const local = m.decode(q);
      std::vector<Config> starts{{local, AtAnchor{}, std::nullopt}};
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t x = 0; x < d; ++x) {
          starts.push_back({local, AtInterface{k}, x});
        }
      }
      for (auto const& s : starts) {
        for (auto const& c : reach(m, s)) {
          delta.push_back({q, point_of(s), m.encode(c.local), point_of(c)});
        }
      }
    }
    return TuringAutomaton(m.graph().rank().repeat_letters(d),
                           m.num_global_states(),
                           std::move(delta));
  }

  automata::Rel walks(GraphMachine const& m, Point x, Point y) {
    return walks(m).relation(x, y);
  }

}  // namespace ima::dflow
