// Sigma-graphs: finite undirected labelled multigraphs with ordered interface
// vertices, loop vertices, and sorted ports; and the indexed monoidal algebra
// they form.

#ifndef IMA_GRAPH_HPP_
#define IMA_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <initializer_list>
#include <string>
#include <vector>

#include "ima/perm.hpp"

namespace ima::graph {

  // Symbol name -> rank word.  Each symbol has exactly one rank.
  class RankedAlphabet {
   public:
    RankedAlphabet() = default;
    RankedAlphabet(std::initializer_list<std::pair<std::string, Obj>> symbols);

    // Throws if `name` is already declared with a different rank.
    void declare(std::string const& name, Obj const& rank);

    bool contains(std::string const& name) const {
      return _symbols.count(name) != 0;
    }
    // Throws UnknownSymbol.
    Obj const& rank(std::string const& name) const;

    std::map<std::string, Obj> const& symbols() const noexcept {
      return _symbols;
    }

   private:
    std::map<std::string, Obj> _symbols;
  };

  enum class VertexKind { symbol, interface, loop };

  struct Vertex {
    VertexKind  kind;
    std::string symbol;  // symbol vertices only
    Obj         ports;   // sorts of the ports, in port order
    Obj         loop;    // loop vertices: their single sort

    // Sort of an interface or loop vertex.
    Sort const& sort() const;
    bool        operator==(Vertex const&) const = default;
  };

  struct PortRef {
    std::size_t vertex;
    std::size_t port;
    auto        operator<=>(PortRef const&) const = default;
  };

  struct Edge {
    PortRef a;
    PortRef b;
  };

  class SigmaGraph {
   public:
    SigmaGraph() = default;

    // Construction.  A graph is only valid once every port is connected.
    std::size_t add_symbol_vertex(std::string name, Obj const& ports);
    // Appends an interface vertex with the next serial number.
    std::size_t add_interface(Sort const& sort);
    std::size_t add_loop(Sort const& sort);
    // Throws if a port is already connected or the sorts differ.
    void connect(PortRef a, PortRef b);
    // Throws ima::Error when a structural invariant is violated.
    void validate() const;

    std::size_t num_vertices() const noexcept {
      return _vertices.size();
    }
    Vertex const& vertex(std::size_t v) const {
      return _vertices.at(v);
    }
    std::vector<Vertex> const& vertices() const noexcept {
      return _vertices;
    }
    PortRef mate(PortRef p) const;
    bool    is_connected(PortRef p) const;

    // The vertex holding interface `serial` (0-based).
    std::size_t interface_vertex(std::size_t serial) const {
      return _interfaces.at(serial);
    }
    std::vector<std::size_t> const& interface_vertices() const noexcept {
      return _interfaces;
    }
    std::size_t num_interfaces() const noexcept {
      return _interfaces.size();
    }
    // 0-based serial of an interface vertex, or npos.
    std::size_t serial_of(std::size_t v) const;

    // G : w, the sorts of the interfaces in serial order.
    Obj rank() const;

    // Each edge once, ordered by its smaller endpoint.
    std::vector<Edge> edges() const;

    std::size_t count(VertexKind kind) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

   private:
    friend SigmaGraph reindex(SigmaGraph const&, PermSymbol const&);
    friend SigmaGraph sum(SigmaGraph const&, SigmaGraph const&);
    friend SigmaGraph trace(SigmaGraph const&, Obj const&);

    static constexpr PortRef unconnected{npos, npos};

    std::vector<Vertex>               _vertices;
    std::vector<std::vector<PortRef>> _mates;
    std::vector<std::size_t>          _interfaces;
  };

  // The star graph of one symbol.  Throws UnknownSymbol.
  SigmaGraph atom(RankedAlphabet const& alphabet, std::string const& symbol);
  // 1_w : ww.
  SigmaGraph identity_graph(Obj const& w);
  // Relabels the interfaces by the flattening of rho.  Throws RankMismatch.
  SigmaGraph reindex(SigmaGraph const& g, PermSymbol const& rho);
  // Disjoint union; interfaces of `h` come after those of `g`.
  SigmaGraph sum(SigmaGraph const& g, SigmaGraph const& h);
  // Glues interfaces i and |w|+i for every i < |w|.  Throws RankMismatch.
  SigmaGraph trace(SigmaGraph const& g, Obj const& w);

  // Label-, port-, sort- and serial-preserving isomorphism.
  bool isomorphic(SigmaGraph const& g, SigmaGraph const& h);

  // The algebra of Sigma-graphs over the free monoid on the sorts.
  class GraphAlgebra {
   public:
    using Element = SigmaGraph;

    explicit GraphAlgebra(RankedAlphabet alphabet)
        : _alphabet(std::move(alphabet)) {}

    RankedAlphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    Obj rank(SigmaGraph const& g) const {
      return g.rank();
    }
    SigmaGraph identity(Obj const& w) const {
      return identity_graph(w);
    }
    SigmaGraph sum(SigmaGraph const& g, SigmaGraph const& h) const {
      return graph::sum(g, h);
    }
    SigmaGraph reindex(SigmaGraph const& g, PermSymbol const& rho) const {
      return graph::reindex(g, rho);
    }
    SigmaGraph trace(SigmaGraph const& g, Obj const& w) const {
      return graph::trace(g, w);
    }
    bool equivalent(SigmaGraph const& g, SigmaGraph const& h) const {
      return isomorphic(g, h);
    }
    SigmaGraph atom(std::string const& symbol) const {
      return graph::atom(_alphabet, symbol);
    }

   private:
    RankedAlphabet _alphabet;
  };

}  // namespace ima::graph

#endif  // IMA_GRAPH_HPP_
