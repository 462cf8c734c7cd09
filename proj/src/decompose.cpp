#include "ima/decompose.hpp"

#include <map>
#include <optional>

namespace ima::graph {

  term::Term decompose(SigmaGraph const& g) {
    auto const edges = g.edges();

    auto is_symbol_port = [&g](PortRef p) {
      return g.vertex(p.vertex).kind == VertexKind::symbol;
    };

    // Internal edges are numbered 0..m-1; their endpoints go to positions k
    // and m + k of the summed term, the rest go to 2m + serial.
    std::size_t m = 0;
    for (auto const& e : edges) {
      m += is_symbol_port(e.a) && is_symbol_port(e.b);
    }

    std::optional<term::Term> summed;
    auto                      add = [&summed](term::Term t) {
      summed = summed ? term::sum(*summed, std::move(t)) : std::move(t);
    };

    Obj         dom;
    Positions   image;
    std::size_t next_internal = 0;
    std::map<PortRef, std::size_t> internal_slot;
    Obj                            traced;
    for (auto const& e : edges) {
      if (is_symbol_port(e.a) && is_symbol_port(e.b)) {
        traced += g.vertex(e.a.vertex).ports.slice(e.a.port, 1);
        internal_slot[e.a] = next_internal;
        internal_slot[e.b] = m + next_internal;
        ++next_internal;
      }
    }
    auto slot_of = [&](PortRef p) {
      auto it = internal_slot.find(p);
      if (it != internal_slot.end()) {
        return it->second;
      }
      return 2 * m + g.serial_of(g.mate(p).vertex);
    };

    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      auto const& vx = g.vertex(v);
      if (vx.kind != VertexKind::symbol) {
        continue;
      }
      add(term::atom(vx.symbol));
      dom += vx.ports;
      for (std::size_t i = 0; i < vx.ports.size(); ++i) {
        image.push_back(slot_of({v, i}));
      }
    }
    for (auto const& e : edges) {
      if (is_symbol_port(e.a) || is_symbol_port(e.b)) {
        continue;
      }
      auto const& sort = g.vertex(e.a.vertex).ports;
      add(term::id(sort));
      dom += sort + sort;
      image.push_back(2 * m + g.serial_of(e.a.vertex));
      image.push_back(2 * m + g.serial_of(e.b.vertex));
    }
    for (auto const& vx : g.vertices()) {
      if (vx.kind == VertexKind::loop) {
        add(term::trace(vx.loop, term::id(vx.loop)));
      }
    }

    if (!summed) {
      return term::id(Obj());
    }
    term::Term out = *summed;
    if (image != identity_positions(image.size())) {
      out = term::index(std::move(out), PermSymbol::from_positions(dom, image));
    }
    if (m > 0) {
      out = term::trace(std::move(traced), std::move(out));
    }
    return out;
  }

}  // namespace ima::graph
