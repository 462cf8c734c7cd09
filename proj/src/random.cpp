#include "ima/random.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ima/error.hpp"
#include "ima/soliton.hpp"

namespace ima::random {

  std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  bool coin(Rng& rng, double p) {
    return std::bernoulli_distribution(p)(rng);
  }

  graph::RankedAlphabet const& test_alphabet() {
    static graph::RankedAlphabet const alphabet{
        {"f", Obj::from_letters("BA")},
        {"g", Obj::from_letters("ABA")},
        {"u", Obj::from_letters("A")},
        {"v", Obj::from_letters("B")},
        {"k", Obj()},
        {"p", Obj::from_letters("AABB")},
    };
    return alphabet;
  }

  Obj random_obj(Rng& rng, std::size_t max_len, Obj const& sorts) {
    Obj const letters = sorts.empty() ? Obj::from_letters("AB") : sorts;
    std::vector<Sort> out;
    auto const        n = uniform(rng, 0, max_len);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(letters[uniform(rng, 0, letters.size() - 1)]);
    }
    return Obj(std::move(out));
  }

  namespace {

    std::vector<Obj> random_cut(Rng& rng, Obj const& w) {
      std::vector<Obj> blocks;
      std::size_t      start = 0;
      for (std::size_t i = 1; i <= w.size(); ++i) {
        if (i == w.size() || coin(rng)) {
          blocks.push_back(w.slice(start, i - start));
          start = i;
        }
      }
      return blocks;
    }

    std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
      std::vector<std::size_t> p(n);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      return p;
    }

  }  // namespace

  PermSymbol random_perm(Rng& rng, Obj const& dom) {
    return random_perm_over(rng, random_cut(rng, dom));
  }

  PermSymbol random_perm_over(Rng& rng, std::vector<Obj> const& blocks) {
    return PermSymbol(blocks, random_permutation(rng, blocks.size()));
  }

  NestedPermSymbol random_nested(Rng& rng, Obj const& dom) {
    NestedPermSymbol out;
    auto const       blocks = random_cut(rng, dom);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i == 0 || coin(rng)) {
        out.groups.emplace_back();
      }
      out.groups.back().push_back(blocks[i]);
    }
    out.alpha = random_permutation(rng, out.groups.size());
    return out;
  }

  graph::SigmaGraph random_graph(Rng&                         rng,
                                 graph::RankedAlphabet const& alphabet,
                                 Obj const&                   rank,
                                 std::size_t                  max_vertices) {
    graph::SigmaGraph g;
    std::map<Sort, std::vector<graph::PortRef>> open;
    for (auto const& s : rank) {
      open[s].push_back({g.add_interface(s), 0});
    }

    std::vector<std::string> names;
    for (auto const& [name, r] : alphabet.symbols()) {
      names.push_back(name);
    }
    auto add_vertex = [&](std::string const& name) {
      auto const& ports = alphabet.rank(name);
      auto const  v     = g.add_symbol_vertex(name, ports);
      for (std::size_t i = 0; i < ports.size(); ++i) {
        open[ports[i]].push_back({v, i});
      }
    };
    if (!names.empty()) {
      auto const n = uniform(rng, 0, max_vertices);
      for (std::size_t i = 0; i < n; ++i) {
        add_vertex(names[uniform(rng, 0, names.size() - 1)]);
      }
    }

    for (auto& [sort, ports] : open) {
      if (ports.size() % 2 == 1) {
        auto it = std::find_if(
            alphabet.symbols().begin(),
            alphabet.symbols().end(),
            [&sort](auto const& kv) {
              return kv.second.size() == 1 && kv.second[0] == sort;
            });
        if (it == alphabet.symbols().end()) {
          throw Error("no unary symbol of sort " + sort.name()
                      + " to balance a random graph");
        }
        add_vertex(it->first);
      }
    }
    for (auto& [sort, ports] : open) {
      std::shuffle(ports.begin(), ports.end(), rng);
      for (std::size_t i = 0; i + 1 < ports.size(); i += 2) {
        g.connect(ports[i], ports[i + 1]);
      }
    }
    if (coin(rng, 0.2)) {
      g.add_loop(coin(rng) ? Sort("A") : Sort("B"));
    }
    g.validate();
    return g;
  }

  automata::TuringAutomaton random_automaton(Rng&        rng,
                                             Obj const&  iface,
                                             std::size_t max_states,
                                             double      density) {
    auto const states = uniform(rng, 1, std::max<std::size_t>(max_states, 1));
    std::vector<automata::Point> points;
    for (std::size_t i = 0; i < iface.size(); ++i) {
      points.push_back(i);
    }
    points.push_back(automata::kAnchor);
    std::vector<automata::Transition> delta;
    for (automata::State q = 0; q < states; ++q) {
      for (auto x : points) {
        for (automata::State r = 0; r < states; ++r) {
          for (auto y : points) {
            if (coin(rng, density)) {
              delta.push_back({q, x, r, y});
            }
          }
        }
      }
    }
    return automata::TuringAutomaton(iface, states, std::move(delta));
  }

  dflow::DFlowAutomaton random_dflow(Rng&        rng,
                                     std::size_t data,
                                     Obj const&  iface,
                                     std::size_t max_states,
                                     double      density) {
    return dflow::DFlowAutomaton(
        data,
        iface,
        random_automaton(
            rng, iface.repeat_letters(data), max_states, density));
  }

  namespace {

    Obj alphabet_sorts(graph::RankedAlphabet const& alphabet) {
      std::set<Sort> sorts;
      for (auto const& [name, r] : alphabet.symbols()) {
        sorts.insert(r.begin(), r.end());
      }
      if (sorts.empty()) {
        sorts.insert(Sort("A"));
      }
      return Obj(std::vector<Sort>(sorts.begin(), sorts.end()));
    }

    struct Ranked {
      term::Term t;
      Obj        rank;
    };

    Split random_split(Rng& rng, Obj const& w) {
      auto const k = uniform(rng, 0, w.size());
      return {w.slice(0, k), w.slice(k, w.size() - k)};
    }

    Ranked gen_term(Rng&                         rng,
                    graph::RankedAlphabet const& alphabet,
                    Obj const&                   sorts,
                    std::size_t                  depth) {
      if (depth == 0 || coin(rng, 0.25)) {
        if (alphabet.symbols().empty() || coin(rng, 0.2)) {
          auto w = random_obj(rng, 2, sorts);
          return {term::id(w), w + w};
        }
        auto it = alphabet.symbols().begin();
        std::advance(it, uniform(rng, 0, alphabet.symbols().size() - 1));
        return {term::atom(it->first), it->second};
      }
      switch (uniform(rng, 0, 5)) {
        case 0:
        case 1: {
          auto a = gen_term(rng, alphabet, sorts, depth - 1);
          auto b = gen_term(rng, alphabet, sorts, depth - 1);
          return {term::sum(a.t, b.t), a.rank + b.rank};
        }
        case 2: {
          auto a   = gen_term(rng, alphabet, sorts, depth - 1);
          auto rho = random_perm(rng, a.rank);
          return {term::index(a.t, rho), rho.cod()};
        }
        case 3: {
          auto a = gen_term(rng, alphabet, sorts, depth - 1);
          std::vector<std::pair<std::size_t, std::size_t>> pairs;
          for (std::size_t i = 0; i < a.rank.size(); ++i) {
            for (std::size_t j = i + 1; j < a.rank.size(); ++j) {
              if (a.rank[i] == a.rank[j]) {
                pairs.emplace_back(i, j);
              }
            }
          }
          if (pairs.empty()) {
            return a;
          }
          auto const [i, j] = pairs[uniform(rng, 0, pairs.size() - 1)];
          Positions  image(a.rank.size());
          std::size_t next = 2;
          for (std::size_t x = 0; x < a.rank.size(); ++x) {
            image[x] = x == i ? 0 : x == j ? 1 : next++;
          }
          auto rho  = PermSymbol::from_positions(a.rank, image);
          auto body = rho == PermSymbol::identity(a.rank)
                          ? a.t
                          : term::index(a.t, rho);
          auto w = a.rank.slice(i, 1);
          return {term::trace(w, body), rho.cod().slice(2, a.rank.size() - 2)};
        }
        case 4: {
          auto a  = gen_term(rng, alphabet, sorts, depth - 1);
          auto b  = gen_term(rng, alphabet, sorts, depth - 1);
          auto sa = random_split(rng, a.rank);
          auto sb = random_split(rng, b.rank);
          return {term::tensor(sa, a.t, sb, b.t),
                  sa.dom + sb.dom + sa.cod + sb.cod};
        }
        default: {
          auto a  = gen_term(rng, alphabet, sorts, depth - 1);
          auto sa = random_split(rng, a.rank);
          if (coin(rng)) {
            return {term::comp(sa, a.t, {sa.cod, sa.cod}, term::id(sa.cod)),
                    a.rank};
          }
          return {term::comp({sa.dom, sa.dom}, term::id(sa.dom), sa, a.t),
                  a.rank};
        }
      }
    }

  }  // namespace

  term::Term random_term(Rng&                         rng,
                         graph::RankedAlphabet const& alphabet,
                         std::size_t                  depth) {
    return gen_term(rng, alphabet, alphabet_sorts(alphabet), depth).t;
  }

  graph::SigmaGraph random_switch_graph(Rng&        rng,
                                        std::size_t max_vertices,
                                        std::size_t interfaces) {
    soliton::UndirectedGraph g;
    g.internal = uniform(rng, 1, std::max<std::size_t>(max_vertices, 1));
    for (std::size_t v = 1; v < g.internal; ++v) {
      g.edges.emplace_back(uniform(rng, 0, v - 1), v);
    }
    auto const extra = uniform(rng, 0, g.internal);
    for (std::size_t e = 0; e < extra; ++e) {
      g.edges.emplace_back(uniform(rng, 0, g.internal - 1),
                           uniform(rng, 0, g.internal - 1));
    }
    for (std::size_t k = 0; k < interfaces; ++k) {
      g.interfaces.push_back(uniform(rng, 0, g.internal - 1));
    }
    if (g.degree(0) == 0) {
      g.edges.emplace_back(0, 0);
    }
    return soliton::to_sigma_graph(g);
  }

}  // namespace ima::random
