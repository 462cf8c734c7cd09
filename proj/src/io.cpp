#include "ima/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "ima/error.hpp"

namespace ima::io {

  namespace {

    struct Line {
      std::size_t              number;
      std::vector<std::string> words;
    };

    std::vector<Line> tokenize(std::string_view text) {
      std::vector<Line> out;
      std::istringstream in{std::string(text)};
      std::string        raw;
      std::size_t        number = 0;
      while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
          raw.erase(hash);
        }
        std::istringstream words(raw);
        Line               line{number, {}};
        for (std::string w; words >> w;) {
          line.words.push_back(w);
        }
        if (!line.words.empty()) {
          out.push_back(std::move(line));
        }
      }
      return out;
    }

    [[noreturn]] void fail(Line const& line, std::string const& msg) {
      throw SyntaxError(msg, line.number, 1);
    }

    std::size_t number(Line const& line, std::string const& s) {
      std::size_t pos   = 0;
      std::size_t value = 0;
      try {
        value = std::stoul(s, &pos);
      } catch (std::exception const&) {
        fail(line, "expected a number, got '" + s + "'");
      }
      if (pos != s.size()) {
        fail(line, "expected a number, got '" + s + "'");
      }
      return value;
    }

    std::size_t positive(Line const& line, std::string const& s) {
      auto n = number(line, s);
      if (n == 0) {
        fail(line, "numbers start at 1");
      }
      return n;
    }

    Obj word(std::string const& s) {
      return Obj::from_letters(s);
    }

    struct VertexDecl {
      Line                       line;
      graph::VertexKind          kind;
      std::string                symbol;
      std::size_t                serial = 0;
      std::optional<Sort>        sort;
      std::vector<std::optional<Sort>> ports;
    };

    struct End {
      std::string id;
      std::size_t port;  // 0-based
    };

  }  // namespace

  graph::SigmaGraph read_graph(std::string_view text) {
    auto const lines = tokenize(text);
    if (lines.empty() || lines.front().words[0] != "graph") {
      throw FormatError("a graph file starts with 'graph <rank word>'");
    }
    auto const& head = lines.front();
    if (head.words.size() > 2) {
      fail(head, "'graph' takes one rank word");
    }
    Obj const rank = word(head.words.size() == 2 ? head.words[1] : "()");

    std::map<std::string, Obj>        symbols;
    std::map<std::string, VertexDecl> vertices;
    std::vector<std::string>          order;
    std::vector<std::pair<End, End>>  edges;
    std::vector<Line>                 edge_lines;

    auto parse_end = [](Line const& line, std::string const& s) {
      auto dot = s.rfind('.');
      if (dot == std::string::npos || dot == 0) {
        fail(line, "expected <vertex>.<port>, got '" + s + "'");
      }
      return End{s.substr(0, dot), positive(line, s.substr(dot + 1)) - 1};
    };

    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto const& line = lines[i];
      auto const& w    = line.words;
      if (w[0] == "symbol") {
        if (w.size() != 3) {
          fail(line, "expected 'symbol <name> <word>'");
        }
        symbols[w[1]] = word(w[2]);
      } else if (w[0] == "vertex") {
        if (w.size() != 3) {
          fail(line, "expected 'vertex <id> <label>'");
        }
        if (vertices.count(w[1])) {
          fail(line, "vertex " + w[1] + " declared twice");
        }
        VertexDecl  d{line, graph::VertexKind::symbol, "", 0, std::nullopt, {}};
        auto const& label = w[2];
        if (label.rfind("sym:", 0) == 0) {
          d.symbol = label.substr(4);
          if (d.symbol.empty()) {
            fail(line, "empty symbol name");
          }
        } else if (label.rfind("in:", 0) == 0) {
          auto colon = label.find(':', 3);
          if (colon == std::string::npos || colon + 1 >= label.size()) {
            fail(line, "expected in:<serial>:<sort>");
          }
          d.kind   = graph::VertexKind::interface;
          d.serial = positive(line, label.substr(3, colon - 3));
          d.sort   = Sort(label.substr(colon + 1));
        } else if (label.rfind("loop:", 0) == 0 && label.size() > 5) {
          d.kind = graph::VertexKind::loop;
          d.sort = Sort(label.substr(5));
        } else {
          fail(line, "unknown vertex label '" + label + "'");
        }
        vertices.emplace(w[1], std::move(d));
        order.push_back(w[1]);
      } else if (w[0] == "edge") {
        if (w.size() != 3) {
          fail(line, "expected 'edge <id>.<port> <id>.<port>'");
        }
        edges.emplace_back(parse_end(line, w[1]), parse_end(line, w[2]));
        edge_lines.push_back(line);
      } else {
        fail(line, "unknown directive '" + w[0] + "'");
      }
    }

    // Port counts and declared sorts.
    for (auto& [id, d] : vertices) {
      if (d.kind != graph::VertexKind::symbol) {
        continue;
      }
      if (auto it = symbols.find(d.symbol); it != symbols.end()) {
        for (auto const& s : it->second) {
          d.ports.emplace_back(s);
        }
      }
    }
    auto vertex_of = [&](std::size_t k, End const& e) -> VertexDecl& {
      auto it = vertices.find(e.id);
      if (it == vertices.end()) {
        fail(edge_lines[k], "unknown vertex " + e.id);
      }
      return it->second;
    };
    for (std::size_t k = 0; k < edges.size(); ++k) {
      for (auto const* e : {&edges[k].first, &edges[k].second}) {
        auto& d = vertex_of(k, *e);
        if (d.kind == graph::VertexKind::symbol
            && symbols.count(d.symbol) == 0 && e->port >= d.ports.size()) {
          d.ports.resize(e->port + 1);
        }
      }
    }
    auto sort_at = [&](VertexDecl const& d, std::size_t port)
        -> std::optional<Sort> {
      if (d.kind == graph::VertexKind::interface) {
        return d.sort;
      }
      if (d.kind == graph::VertexKind::symbol && port < d.ports.size()) {
        return d.ports[port];
      }
      return std::nullopt;
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = 0; k < edges.size(); ++k) {
        auto& a  = vertex_of(k, edges[k].first);
        auto& b  = vertex_of(k, edges[k].second);
        auto  sa = sort_at(a, edges[k].first.port);
        auto  sb = sort_at(b, edges[k].second.port);
        if (sa && !sb && b.kind == graph::VertexKind::symbol
            && edges[k].second.port < b.ports.size()) {
          b.ports[edges[k].second.port] = sa;
          changed                       = true;
        } else if (sb && !sa && a.kind == graph::VertexKind::symbol
                   && edges[k].first.port < a.ports.size()) {
          a.ports[edges[k].first.port] = sb;
          changed                      = true;
        }
      }
    }

    // Interfaces first, in serial order; other vertices in file order.
    graph::SigmaGraph             g;
    std::map<std::string, std::size_t> index;
    std::vector<std::string>           ifaces;
    for (auto const& id : order) {
      if (vertices.at(id).kind == graph::VertexKind::interface) {
        ifaces.push_back(id);
      }
    }
    std::sort(ifaces.begin(), ifaces.end(), [&](auto const& x, auto const& y) {
      return vertices.at(x).serial < vertices.at(y).serial;
    });
    for (std::size_t k = 0; k < ifaces.size(); ++k) {
      auto const& d = vertices.at(ifaces[k]);
      if (d.serial != k + 1) {
        fail(d.line, "interface serials must be 1.." +
                         std::to_string(ifaces.size()));
      }
      index[ifaces[k]] = g.add_interface(*d.sort);
    }
    for (auto const& id : order) {
      auto const& d = vertices.at(id);
      if (d.kind == graph::VertexKind::loop) {
        index[id] = g.add_loop(*d.sort);
      } else if (d.kind == graph::VertexKind::symbol) {
        std::vector<Sort> ports;
        for (std::size_t p = 0; p < d.ports.size(); ++p) {
          if (!d.ports[p]) {
            fail(d.line,
                 "cannot tell the sort of port " + std::to_string(p + 1)
                     + " of vertex " + id + "; declare symbol "
                     + d.symbol);
          }
          ports.push_back(*d.ports[p]);
        }
        index[id] = g.add_symbol_vertex(d.symbol, Obj(std::move(ports)));
      }
    }
    for (std::size_t k = 0; k < edges.size(); ++k) {
      try {
        g.connect({index.at(edges[k].first.id), edges[k].first.port},
                  {index.at(edges[k].second.id), edges[k].second.port});
      } catch (Error const& e) {
        fail(edge_lines[k], e.what());
      }
    }
    try {
      g.validate();
    } catch (Error const& e) {
      throw FormatError(std::string("graph is incomplete: ") + e.what());
    }
    if (g.rank() != rank) {
      fail(head,
           "declared rank " + rank.to_string() + " but the interfaces spell "
               + g.rank().to_string());
    }
    return g;
  }

  std::string write_graph(graph::SigmaGraph const& g) {
    std::ostringstream os;
    os << "graph " << g.rank().to_string() << "\n";
    std::map<std::string, Obj> symbols;
    for (auto const& v : g.vertices()) {
      if (v.kind == graph::VertexKind::symbol) {
        symbols.emplace(v.symbol, v.ports);
      }
    }
    for (auto const& [name, ports] : symbols) {
      os << "symbol " << name << " " << ports.to_string() << "\n";
    }
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      auto const& vx = g.vertex(v);
      os << "vertex " << v + 1 << " ";
      switch (vx.kind) {
        case graph::VertexKind::symbol:
          os << "sym:" << vx.symbol;
          break;
        case graph::VertexKind::interface:
          os << "in:" << g.serial_of(v) + 1 << ":" << vx.sort().name();
          break;
        case graph::VertexKind::loop:
          os << "loop:" << vx.sort().name();
          break;
      }
      os << "\n";
    }
    for (auto const& e : g.edges()) {
      os << "edge " << e.a.vertex + 1 << "." << e.a.port + 1 << " "
         << e.b.vertex + 1 << "." << e.b.port + 1 << "\n";
    }
    return os.str();
  }

  std::string to_dot(graph::SigmaGraph const& g) {
    std::ostringstream os;
    os << "graph G {\n";
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      auto const& vx = g.vertex(v);
      os << "  v" << v + 1 << " [";
      switch (vx.kind) {
        case graph::VertexKind::symbol:
          os << "shape=circle, label=\"" << vx.symbol << "\"";
          break;
        case graph::VertexKind::interface:
          os << "shape=box, label=\"" << g.serial_of(v) + 1 << ":"
             << vx.sort().name() << "\"";
          break;
        case graph::VertexKind::loop:
          os << "shape=diamond, label=\"loop " << vx.sort().name() << "\"";
          break;
      }
      os << "];\n";
    }
    for (auto const& e : g.edges()) {
      auto const& sort = g.vertex(e.a.vertex).kind == graph::VertexKind::symbol
                             ? g.vertex(e.a.vertex).ports[e.a.port]
                             : g.vertex(e.a.vertex).sort();
      os << "  v" << e.a.vertex + 1 << " -- v" << e.b.vertex + 1
         << " [label=\"" << sort.name() << "\", taillabel=\"" << e.a.port + 1
         << "\", headlabel=\"" << e.b.port + 1 << "\"];\n";
    }
    os << "}\n";
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Automata
  ////////////////////////////////////////////////////////////////////////

  namespace {

    Json point_json(automata::Point p) {
      return p == automata::kAnchor ? Json("*") : Json(p + 1);
    }

    std::size_t json_index(Json const& j, std::string const& what) {
      if (!j.is_number_unsigned() || j.get<std::size_t>() == 0) {
        throw FormatError(what + " must be a positive integer, got "
                          + j.dump());
      }
      return j.get<std::size_t>() - 1;
    }

    automata::Point point_from(Json const& j) {
      if (j.is_string() && j.get<std::string>() == "*") {
        return automata::kAnchor;
      }
      return json_index(j, "an interface position");
    }

    Json const& field(Json const& j, char const* name) {
      if (!j.is_object() || !j.contains(name)) {
        throw FormatError(std::string("missing field '") + name + "'");
      }
      return j.at(name);
    }

    Obj iface_from(Json const& j) {
      auto const& f = field(j, "iface");
      if (!f.is_string()) {
        throw FormatError("'iface' must be a word");
      }
      return Obj::from_letters(f.get<std::string>());
    }

    std::size_t count_from(Json const& j, char const* name) {
      auto const& f = field(j, name);
      if (!f.is_number_unsigned()) {
        throw FormatError(std::string("'") + name
                          + "' must be a nonnegative integer");
      }
      return f.get<std::size_t>();
    }

    Json const& quadruple(Json const& t) {
      if (!t.is_array() || t.size() != 4) {
        throw FormatError("a transition is [q, x, q', y], got " + t.dump());
      }
      return t;
    }

  }  // namespace

  Json automaton_to_json(automata::TuringAutomaton const& t) {
    Json out;
    out["iface"]  = t.iface().empty() ? "" : t.iface().to_string();
    out["states"] = t.num_states();
    Json delta    = Json::array();
    for (auto const& tr : t.transitions()) {
      delta.push_back(
          {tr.from + 1, point_json(tr.in), tr.to + 1, point_json(tr.out)});
    }
    out["transitions"] = std::move(delta);
    return out;
  }

  automata::TuringAutomaton automaton_from_json(Json const& j) {
    auto const iface  = iface_from(j);
    auto const states = count_from(j, "states");
    std::vector<automata::Transition> delta;
    for (auto const& t : field(j, "transitions")) {
      quadruple(t);
      delta.push_back({json_index(t[0], "a state"),
                       point_from(t[1]),
                       json_index(t[2], "a state"),
                       point_from(t[3])});
    }
    try {
      return automata::TuringAutomaton(iface, states, std::move(delta));
    } catch (InvalidSpec const& e) {
      throw FormatError(e.what());
    }
  }

  namespace {

    Json port_datum_json(automata::Point p, std::size_t data) {
      if (p == automata::kAnchor) {
        return "*";
      }
      return Json::array({p / data + 1, p % data});
    }

    std::optional<std::pair<std::size_t, std::size_t>> port_datum(
        Json const& j) {
      if (j.is_string() && j.get<std::string>() == "*") {
        return std::nullopt;
      }
      if (!j.is_array() || j.size() != 2 || !j[1].is_number_unsigned()) {
        throw FormatError("expected [port, datum] or \"*\", got " + j.dump());
      }
      return std::pair{json_index(j[0], "a port"), j[1].get<std::size_t>()};
    }

  }  // namespace

  Json dflow_to_json(dflow::DFlowAutomaton const& t) {
    Json out;
    out["data"]   = t.data();
    out["iface"]  = t.iface().empty() ? "" : t.iface().to_string();
    out["states"] = t.num_states();
    Json delta    = Json::array();
    for (auto const& tr : t.base().transitions()) {
      delta.push_back({tr.from + 1,
                       port_datum_json(tr.in, t.data()),
                       tr.to + 1,
                       port_datum_json(tr.out, t.data())});
    }
    out["transitions"] = std::move(delta);
    return out;
  }

  dflow::DFlowAutomaton dflow_from_json(Json const& j) {
    auto const data   = count_from(j, "data");
    auto const iface  = iface_from(j);
    auto const states = count_from(j, "states");
    std::vector<dflow::DTransition> delta;
    for (auto const& t : field(j, "transitions")) {
      quadruple(t);
      delta.push_back({json_index(t[0], "a state"),
                       port_datum(t[1]),
                       json_index(t[2], "a state"),
                       port_datum(t[3])});
    }
    try {
      return dflow::make_dflow(data, iface, states, delta);
    } catch (InvalidSpec const& e) {
      throw FormatError(e.what());
    }
  }

  std::string dump(Json const& j) {
    if (!j.is_object()) {
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto const& [key, value] : j.items()) {
      os << (first ? "\n" : ",\n") << "  " << Json(key).dump() << ": ";
      first = false;
      if (value.is_array() && !value.empty()) {
        os << "[";
        for (std::size_t i = 0; i < value.size(); ++i) {
          os << (i == 0 ? "\n" : ",\n") << "    " << value[i].dump();
        }
        os << "\n  ]";
      } else {
        os << value.dump();
      }
    }
    os << "\n}\n";
    return os.str();
  }

  std::string slurp(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("cannot read " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  dflow::GraphMachine machine_from_json(Json const&                  j,
                                        std::filesystem::path const& base) {
    auto const& gj = field(j, "graph");
    std::string text;
    if (gj.is_string()) {
      text = slurp(base / gj.get<std::string>());
    } else {
      auto const& t = field(gj, "text");
      if (!t.is_string()) {
        throw FormatError("'graph.text' must be a string");
      }
      text = t.get<std::string>();
    }
    auto       g    = read_graph(text);
    auto const data = count_from(j, "data");

    std::map<std::string, dflow::DFlowAutomaton> omega;
    auto const& symbols = field(j, "symbols");
    if (!symbols.is_object()) {
      throw FormatError("'symbols' must map names to automata");
    }
    for (auto const& [name, spec] : symbols.items()) {
      if (spec.is_string()) {
        omega.emplace(name,
                      dflow_from_json(Json::parse(
                          slurp(base / spec.get<std::string>()))));
      } else if (spec.is_object() && spec.contains("builtin")) {
        auto const kind = spec.at("builtin").get<std::string>();
        auto const n    = count_from(spec, "n");
        if (kind == "alternating_switch") {
          omega.emplace(name, dflow::alternating_switch(n));
        } else if (kind == "atomic_switch") {
          omega.emplace(name, dflow::atomic_switch(n));
        } else {
          throw FormatError("unknown builtin automaton " + kind);
        }
      } else {
        omega.emplace(name, dflow_from_json(spec));
      }
    }
    return dflow::GraphMachine(std::move(g), data, std::move(omega));
  }

  ////////////////////////////////////////////////////////////////////////
  // Soliton graphs and states
  ////////////////////////////////////////////////////////////////////////

  soliton::UndirectedGraph read_soliton_graph(std::string_view text) {
    soliton::UndirectedGraph          g;
    std::optional<std::size_t>        declared;
    std::map<std::size_t, std::size_t> ifaces;
    std::size_t                       largest = 0;
    for (auto const& line : tokenize(text)) {
      auto const& w = line.words;
      if (w[0] == "vertices" && w.size() == 2) {
        declared = number(line, w[1]);
      } else if (w[0] == "edge" && w.size() == 3) {
        auto u = positive(line, w[1]);
        auto v = positive(line, w[2]);
        largest = std::max({largest, u, v});
        g.edges.emplace_back(u - 1, v - 1);
      } else if (w[0] == "interface" && w.size() == 3) {
        auto k = positive(line, w[1]);
        auto u = positive(line, w[2]);
        largest = std::max(largest, u);
        if (!ifaces.emplace(k, u - 1).second) {
          fail(line, "interface " + w[1] + " given twice");
        }
      } else {
        fail(line, "expected 'vertices N', 'edge U V' or 'interface K U'");
      }
    }
    g.internal = declared.value_or(largest);
    if (g.internal < largest) {
      throw FormatError("vertex id exceeds the declared vertex count");
    }
    std::size_t k = 1;
    for (auto const& [serial, u] : ifaces) {
      if (serial != k++) {
        throw FormatError("interfaces must be numbered 1.."
                          + std::to_string(ifaces.size()));
      }
      g.interfaces.push_back(u);
    }
    return g;
  }

  std::string write_soliton_graph(soliton::UndirectedGraph const& g) {
    std::ostringstream os;
    os << "vertices " << g.internal << "\n";
    for (auto const& [u, v] : g.edges) {
      os << "edge " << u + 1 << " " << v + 1 << "\n";
    }
    for (std::size_t k = 0; k < g.interfaces.size(); ++k) {
      os << "interface " << k + 1 << " " << g.interfaces[k] + 1 << "\n";
    }
    return os.str();
  }

  std::vector<std::size_t> read_state(std::string_view text) {
    std::vector<std::size_t> out;
    for (auto const& line : tokenize(text)) {
      for (auto const& w : line.words) {
        out.push_back(positive(line, w) - 1);
      }
    }
    return out;
  }

  std::string write_state(std::vector<std::size_t> const& s) {
    std::ostringstream os;
    for (std::size_t k = 0; k < s.size(); ++k) {
      os << (k ? " " : "") << s[k] + 1;
    }
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Descriptions
  ////////////////////////////////////////////////////////////////////////

  std::string describe(automata::TuringAutomaton const& t) {
    std::ostringstream os;
    os << "iface " << t.iface().to_string() << ", " << t.num_states()
       << " states, delta {";
    auto point = [](automata::Point p) {
      return p == automata::kAnchor ? std::string("*")
                                    : std::to_string(p + 1);
    };
    bool first = true;
    for (auto const& tr : t.transitions()) {
      os << (first ? "" : " ") << "(" << tr.from + 1 << "," << point(tr.in)
         << ")->(" << tr.to + 1 << "," << point(tr.out) << ")";
      first = false;
    }
    os << "}";
    return os.str();
  }

  std::string describe(dflow::DFlowAutomaton const& t) {
    return "D=" + std::to_string(t.data()) + " over "
           + t.iface().to_string() + ": " + describe(t.base());
  }

  std::string describe(graph::SigmaGraph const& g) {
    auto text = write_graph(g);
    std::replace(text.begin(), text.end(), '\n', ';');
    return text;
  }

}  // namespace ima::io
