#include "ima/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "ima/error.hpp"

namespace ima::graph {

  namespace {
    void debug_validate([[maybe_unused]] SigmaGraph const& g) {
#ifndef NDEBUG
      g.validate();
#endif
    }

    // Union-find over port indices.
    class DisjointSets {
     public:
      explicit DisjointSets(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }
      void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
          _parent[std::max(a, b)] = std::min(a, b);
        }
      }

     private:
      std::vector<std::size_t> _parent;
    };
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // RankedAlphabet
  ////////////////////////////////////////////////////////////////////////

  RankedAlphabet::RankedAlphabet(
      std::initializer_list<std::pair<std::string, Obj>> symbols) {
    for (auto const& [name, rank] : symbols) {
      declare(name, rank);
    }
  }

  void RankedAlphabet::declare(std::string const& name, Obj const& rank) {
    auto it = _symbols.find(name);
    if (it != _symbols.end() && it->second != rank) {
      throw Error("symbol " + name + " declared with two ranks: "
                  + it->second.to_string() + " and " + rank.to_string());
    }
    _symbols.emplace(name, rank);
  }

  Obj const& RankedAlphabet::rank(std::string const& name) const {
    auto it = _symbols.find(name);
    if (it == _symbols.end()) {
      throw UnknownSymbol("unknown symbol " + name);
    }
    return it->second;
  }

  Sort const& Vertex::sort() const {
    switch (kind) {
      case VertexKind::interface:
        return ports[0];
      case VertexKind::loop:
        return loop[0];
      default:
        throw Error("symbol vertices have no single sort");
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // SigmaGraph
  ////////////////////////////////////////////////////////////////////////

  std::size_t SigmaGraph::add_symbol_vertex(std::string name,
                                            Obj const&  ports) {
    _vertices.push_back({VertexKind::symbol, std::move(name), ports, Obj()});
    _mates.emplace_back(ports.size(), unconnected);
    return _vertices.size() - 1;
  }

  std::size_t SigmaGraph::add_interface(Sort const& sort) {
    _vertices.push_back(
        {VertexKind::interface, std::string(), Obj({sort}), Obj()});
    _mates.emplace_back(1, unconnected);
    _interfaces.push_back(_vertices.size() - 1);
    return _vertices.size() - 1;
  }

  std::size_t SigmaGraph::add_loop(Sort const& sort) {
    _vertices.push_back({VertexKind::loop, std::string(), Obj(), Obj({sort})});
    _mates.emplace_back();
    return _vertices.size() - 1;
  }

  void SigmaGraph::connect(PortRef a, PortRef b) {
    if (a.vertex >= _vertices.size() || b.vertex >= _vertices.size()
        || a.port >= _mates[a.vertex].size()
        || b.port >= _mates[b.vertex].size()) {
      throw Error("edge endpoint does not exist");
    }
    if (a == b) {
      throw Error("an edge joins two distinct ports");
    }
    if (_mates[a.vertex][a.port] != unconnected
        || _mates[b.vertex][b.port] != unconnected) {
      throw Error("port is already the endpoint of an edge");
    }
    if (_vertices[a.vertex].ports[a.port] != _vertices[b.vertex].ports[b.port]) {
      throw Error("edge joins ports of different sorts");
    }
    _mates[a.vertex][a.port] = b;
    _mates[b.vertex][b.port] = a;
  }

  void SigmaGraph::validate() const {
    for (std::size_t v = 0; v < _vertices.size(); ++v) {
      auto const& vx = _vertices[v];
      if (_mates[v].size() != vx.ports.size()) {
        throw Error("vertex port count does not match its label");
      }
      if (vx.kind == VertexKind::interface && vx.ports.size() != 1) {
        throw Error("interface vertices have exactly one port");
      }
      if (vx.kind == VertexKind::loop
          && (!vx.ports.empty() || vx.loop.size() != 1)) {
        throw Error("loop vertices have no ports and one sort");
      }
      for (std::size_t i = 0; i < _mates[v].size(); ++i) {
        auto m = _mates[v][i];
        if (m == unconnected) {
          throw Error("every port is the endpoint of exactly one edge");
        }
        if (_mates.at(m.vertex).at(m.port) != PortRef{v, i}) {
          throw Error("edge table is not symmetric");
        }
        if (_vertices[m.vertex].ports[m.port] != vx.ports[i]) {
          throw Error("edge joins ports of different sorts");
        }
      }
    }
    std::size_t interfaces = 0;
    for (auto const& vx : _vertices) {
      interfaces += vx.kind == VertexKind::interface;
    }
    if (interfaces != _interfaces.size()) {
      throw Error("interface serials are not 1..n without gaps");
    }
    for (auto v : _interfaces) {
      if (_vertices.at(v).kind != VertexKind::interface) {
        throw Error("interface list refers to a non-interface vertex");
      }
    }
  }

  PortRef SigmaGraph::mate(PortRef p) const {
    return _mates.at(p.vertex).at(p.port);
  }

  bool SigmaGraph::is_connected(PortRef p) const {
    return _mates.at(p.vertex).at(p.port) != unconnected;
  }

  std::size_t SigmaGraph::serial_of(std::size_t v) const {
    auto it = std::find(_interfaces.begin(), _interfaces.end(), v);
    return it == _interfaces.end() ? npos : it - _interfaces.begin();
  }

  Obj SigmaGraph::rank() const {
    std::vector<Sort> out;
    for (auto v : _interfaces) {
      out.push_back(_vertices[v].ports[0]);
    }
    return Obj(std::move(out));
  }

  std::vector<Edge> SigmaGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t v = 0; v < _vertices.size(); ++v) {
      for (std::size_t i = 0; i < _mates[v].size(); ++i) {
        PortRef p{v, i};
        if (p < _mates[v][i]) {
          out.push_back({p, _mates[v][i]});
        }
      }
    }
    return out;
  }

  std::size_t SigmaGraph::count(VertexKind kind) const {
    return std::count_if(_vertices.begin(),
                         _vertices.end(),
                         [kind](Vertex const& v) { return v.kind == kind; });
  }

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  SigmaGraph atom(RankedAlphabet const& alphabet, std::string const& symbol) {
    auto const& rank = alphabet.rank(symbol);
    SigmaGraph  g;
    auto        u = g.add_symbol_vertex(symbol, rank);
    for (std::size_t i = 0; i < rank.size(); ++i) {
      auto in = g.add_interface(rank[i]);
      g.connect({u, i}, {in, 0});
    }
    debug_validate(g);
    return g;
  }

  SigmaGraph identity_graph(Obj const& w) {
    SigmaGraph g;
    for (auto const& s : w) {
      g.add_interface(s);
    }
    for (auto const& s : w) {
      g.add_interface(s);
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      g.connect({g.interface_vertex(i), 0},
                {g.interface_vertex(w.size() + i), 0});
    }
    return g;
  }

  SigmaGraph reindex(SigmaGraph const& g, PermSymbol const& rho) {
    if (rho.dom() != g.rank()) {
      throw RankMismatch("reindex: symbol domain " + rho.dom().to_string()
                         + " differs from graph rank "
                         + g.rank().to_string());
    }
    auto       image = rho.flatten();
    SigmaGraph out   = g;
    for (std::size_t i = 0; i < image.size(); ++i) {
      out._interfaces[image[i]] = g._interfaces[i];
    }
    debug_validate(out);
    return out;
  }

  SigmaGraph sum(SigmaGraph const& g, SigmaGraph const& h) {
    SigmaGraph out = g;
    auto const shift = g._vertices.size();
    out._vertices.insert(
        out._vertices.end(), h._vertices.begin(), h._vertices.end());
    for (auto const& ports : h._mates) {
      auto moved = ports;
      for (auto& p : moved) {
        p.vertex += shift;
      }
      out._mates.push_back(std::move(moved));
    }
    for (auto v : h._interfaces) {
      out._interfaces.push_back(v + shift);
    }
    debug_validate(out);
    return out;
  }

  SigmaGraph trace(SigmaGraph const& g, Obj const& w) {
    auto const rank = g.rank();
    auto const n    = w.size();
    if (!rank.starts_with(w + w)) {
      throw RankMismatch("trace over " + w.to_string()
                         + " needs a rank word starting with "
                         + (w + w).to_string() + ", got " + rank.to_string());
    }
    if (n == 0) {
      return g;
    }

    // Global port numbering.
    std::vector<std::size_t> base(g._vertices.size() + 1, 0);
    for (std::size_t v = 0; v < g._vertices.size(); ++v) {
      base[v + 1] = base[v] + g._mates[v].size();
    }
    auto index = [&base](PortRef p) { return base[p.vertex] + p.port; };

    std::vector<bool> removed(g._vertices.size(), false);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      removed[g._interfaces[i]] = true;
    }

    DisjointSets ds(base.back());
    for (std::size_t v = 0; v < g._vertices.size(); ++v) {
      for (std::size_t i = 0; i < g._mates[v].size(); ++i) {
        ds.unite(index({v, i}), index(g._mates[v][i]));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      ds.unite(index({g._interfaces[i], 0}), index({g._interfaces[n + i], 0}));
    }

    SigmaGraph               out;
    std::vector<std::size_t> renumber(g._vertices.size(), SigmaGraph::npos);
    for (std::size_t v = 0; v < g._vertices.size(); ++v) {
      if (removed[v] || g._vertices[v].kind == VertexKind::interface) {
        continue;
      }
      renumber[v] = out._vertices.size();
      out._vertices.push_back(g._vertices[v]);
      out._mates.emplace_back(g._mates[v].size(), SigmaGraph::unconnected);
    }
    for (std::size_t i = 2 * n; i < g._interfaces.size(); ++i) {
      auto v      = g._interfaces[i];
      renumber[v] = out._vertices.size();
      out._vertices.push_back(g._vertices[v]);
      out._mates.emplace_back(1, SigmaGraph::unconnected);
      out._interfaces.push_back(renumber[v]);
    }

    // Each class holds either two surviving ports (a spliced edge) or none
    // (a closed cycle of glued edges, recorded as a loop vertex).
    std::map<std::size_t, std::vector<PortRef>> survivors;
    std::map<std::size_t, std::vector<PortRef>> members;
    for (std::size_t v = 0; v < g._vertices.size(); ++v) {
      for (std::size_t i = 0; i < g._mates[v].size(); ++i) {
        auto root = ds.find(index({v, i}));
        members[root].push_back({v, i});
        if (!removed[v]) {
          survivors[root].push_back({renumber[v], i});
        }
      }
    }
    for (auto const& [root, ports] : members) {
      auto it = survivors.find(root);
      if (it == survivors.end()) {
        auto const& sort = g._vertices[ports.front().vertex].ports[0];
        for (auto p : ports) {
          if (g._vertices[p.vertex].ports[p.port] != sort) {
            throw Error("closed cycle mixes sorts");
          }
        }
        out.add_loop(sort);
        continue;
      }
      if (it->second.size() != 2) {
        throw Error("trace produced a dangling port");
      }
      auto a = it->second[0];
      auto b = it->second[1];
      out._mates[a.vertex][a.port] = b;
      out._mates[b.vertex][b.port] = a;
    }
    debug_validate(out);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Isomorphism
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool same_label(Vertex const& a, Vertex const& b) {
      return a.kind == b.kind && a.symbol == b.symbol && a.ports == b.ports
             && a.loop == b.loop;
    }

    // Extends `map` from the seed pair (u -> v) along edges.  Port numbers
    // are preserved, so every further pair is forced.  On failure the
    // partial extension is rolled back.
    bool propagate(SigmaGraph const&         g,
                   SigmaGraph const&         h,
                   std::size_t               u,
                   std::size_t               v,
                   std::vector<std::size_t>& map,
                   std::vector<std::size_t>& inverse) {
      std::vector<std::size_t> added;
      std::deque<std::size_t>  queue;
      auto                     fail = [&] {
        for (auto x : added) {
          inverse[map[x]] = SigmaGraph::npos;
          map[x]          = SigmaGraph::npos;
        }
        return false;
      };
      auto assign = [&](std::size_t x, std::size_t y) {
        if (map[x] != SigmaGraph::npos) {
          return map[x] == y;
        }
        if (inverse[y] != SigmaGraph::npos
            || !same_label(g.vertex(x), h.vertex(y))) {
          return false;
        }
        map[x]     = y;
        inverse[y] = x;
        added.push_back(x);
        queue.push_back(x);
        return true;
      };
      if (!assign(u, v)) {
        return fail();
      }
      while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        auto y = map[x];
        for (std::size_t i = 0; i < g.vertex(x).ports.size(); ++i) {
          auto mx = g.mate({x, i});
          auto my = h.mate({y, i});
          if (mx.port != my.port || !assign(mx.vertex, my.vertex)) {
            return fail();
          }
        }
      }
      return true;
    }
  }  // namespace

  bool isomorphic(SigmaGraph const& g, SigmaGraph const& h) {
    if (g.rank() != h.rank() || g.num_vertices() != h.num_vertices()) {
      return false;
    }
    auto loop_sorts = [](SigmaGraph const& x) {
      std::vector<Obj> out;
      for (auto const& v : x.vertices()) {
        if (v.kind == VertexKind::loop) {
          out.push_back(v.loop);
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    if (loop_sorts(g) != loop_sorts(h)) {
      return false;
    }
    std::vector<std::size_t> map(g.num_vertices(), SigmaGraph::npos);
    std::vector<std::size_t> inverse(h.num_vertices(), SigmaGraph::npos);
    for (std::size_t s = 0; s < g.num_interfaces(); ++s) {
      if (!propagate(
              g, h, g.interface_vertex(s), h.interface_vertex(s), map, inverse)) {
        return false;
      }
    }
    // Components without interfaces: isomorphism of components is an
    // equivalence, so the first matching candidate can be committed.
    for (std::size_t u = 0; u < g.num_vertices(); ++u) {
      if (map[u] != SigmaGraph::npos || g.vertex(u).kind != VertexKind::symbol) {
        continue;
      }
      bool found = false;
      for (std::size_t v = 0; v < h.num_vertices() && !found; ++v) {
        if (inverse[v] == SigmaGraph::npos
            && h.vertex(v).kind == VertexKind::symbol) {
          found = propagate(g, h, u, v, map, inverse);
        }
      }
      if (!found) {
        return false;
      }
    }
    return true;
  }

}  // namespace ima::graph
