#include "ima/automata.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <set>
#include <tuple>

#include "ima/error.hpp"

namespace ima::automata {

  ////////////////////////////////////////////////////////////////////////
  // Rel
  ////////////////////////////////////////////////////////////////////////

  Rel Rel::identity(std::size_t n) {
    Rel r(n);
    for (State i = 0; i < n; ++i) {
      r.insert(i, i);
    }
    return r;
  }

  bool Rel::contains(State i, State j) const {
    if (_bits.empty()) {
      return false;
    }
    return (row(i)[j / 64] >> (j % 64)) & 1U;
  }

  void Rel::insert(State i, State j) {
    if (i >= _n || j >= _n) {
      throw Error("relation entry out of range");
    }
    if (_bits.empty()) {
      _bits.assign(_n * _words, 0);
    }
    _bits[i * _words + j / 64] |= std::uint64_t(1) << (j % 64);
  }

  bool Rel::empty() const noexcept {
    return std::all_of(
        _bits.begin(), _bits.end(), [](std::uint64_t w) { return w == 0; });
  }

  std::size_t Rel::count() const {
    std::size_t c = 0;
    for (auto w : _bits) {
      c += std::popcount(w);
    }
    return c;
  }

  Rel& Rel::operator|=(Rel const& other) {
    if (other._n != _n) {
      throw Error("relations over different state sets");
    }
    if (other._bits.empty()) {
      return *this;
    }
    if (_bits.empty()) {
      _bits = other._bits;
      return *this;
    }
    for (std::size_t k = 0; k < _bits.size(); ++k) {
      _bits[k] |= other._bits[k];
    }
    return *this;
  }

  Rel operator*(Rel const& lhs, Rel const& rhs) {
    if (lhs._n != rhs._n) {
      throw Error("relations over different state sets");
    }
    Rel out(lhs._n);
    if (lhs._bits.empty() || rhs._bits.empty()) {
      return out;
    }
    std::size_t const w = lhs._words;
    for (State i = 0; i < lhs._n; ++i) {
      std::uint64_t const* src = lhs.row(i);
      for (std::size_t k = 0; k < w; ++k) {
        std::uint64_t bits = src[k];
        while (bits != 0) {
          State const j = k * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          std::uint64_t const* mid = rhs.row(j);
          if (out._bits.empty()) {
            out._bits.assign(out._n * w, 0);
          }
          std::uint64_t* dst = out._bits.data() + i * w;
          for (std::size_t t = 0; t < w; ++t) {
            dst[t] |= mid[t];
          }
        }
      }
    }
    return out;
  }

  Rel Rel::converse() const {
    Rel out(_n);
    for (auto const& [i, j] : pairs()) {
      out.insert(j, i);
    }
    return out;
  }

  std::vector<std::pair<State, State>> Rel::pairs() const {
    std::vector<std::pair<State, State>> out;
    if (_bits.empty()) {
      return out;
    }
    for (State i = 0; i < _n; ++i) {
      for (std::size_t k = 0; k < _words; ++k) {
        std::uint64_t bits = row(i)[k];
        while (bits != 0) {
          out.emplace_back(i, k * 64 + std::countr_zero(bits));
          bits &= bits - 1;
        }
      }
    }
    return out;
  }

  bool operator==(Rel const& a, Rel const& b) {
    if (a._n != b._n) {
      return false;
    }
    if (a._bits.empty() || b._bits.empty()) {
      return a.empty() && b.empty();
    }
    return a._bits == b._bits;
  }

  ////////////////////////////////////////////////////////////////////////
  // RelMatrix
  ////////////////////////////////////////////////////////////////////////

  RelMatrix::RelMatrix(std::size_t rows, std::size_t cols, std::size_t states)
      : _rows(rows),
        _cols(cols),
        _states(states),
        _entries(rows * cols, Rel(states)) {}

  RelMatrix::RelMatrix(std::size_t      rows,
                       std::size_t      cols,
                       std::vector<Rel> entries)
      : _rows(rows), _cols(cols), _states(0), _entries(std::move(entries)) {
    if (_entries.size() != rows * cols || _entries.empty()) {
      throw Error("matrix entries do not match its shape");
    }
    _states = _entries.front().size();
    for (auto const& e : _entries) {
      if (e.size() != _states) {
        throw Error("matrix entries over different state sets");
      }
    }
  }

  RelMatrix RelMatrix::identity(std::size_t dim, std::size_t states) {
    RelMatrix m(dim, dim, states);
    for (std::size_t i = 0; i < dim; ++i) {
      m(i, i) = Rel::identity(states);
    }
    return m;
  }

  RelMatrix& RelMatrix::operator|=(RelMatrix const& other) {
    if (other._rows != _rows || other._cols != _cols) {
      throw Error("union of matrices of different shapes");
    }
    for (std::size_t k = 0; k < _entries.size(); ++k) {
      _entries[k] |= other._entries[k];
    }
    return *this;
  }

  RelMatrix operator*(RelMatrix const& a, RelMatrix const& b) {
    if (a._cols != b._rows || a._states != b._states) {
      throw Error("matrix shapes are not conformable");
    }
    RelMatrix out(a._rows, b._cols, a._states);
    for (std::size_t i = 0; i < a._rows; ++i) {
      for (std::size_t k = 0; k < a._cols; ++k) {
        if (a(i, k).empty()) {
          continue;
        }
        for (std::size_t j = 0; j < b._cols; ++j) {
          out(i, j) |= a(i, k) * b(k, j);
        }
      }
    }
    return out;
  }

  RelMatrix RelMatrix::swap_rows() const {
    if (_rows != 2) {
      throw Error("row exchange needs exactly two rows");
    }
    RelMatrix out(*this);
    for (std::size_t j = 0; j < _cols; ++j) {
      std::swap(out(0, j), out(1, j));
    }
    return out;
  }

  RelMatrix alt_product(RelMatrix const& u, RelMatrix const& v) {
    return u * v.swap_rows();
  }

  RelMatrix alt_identity(std::size_t states) {
    auto const i2 = RelMatrix::identity(2, states);
    return alt_product(i2, i2);
  }

  namespace {
    RelMatrix product(RelMatrix const& u, RelMatrix const& v, ProductMode mode) {
      return mode == ProductMode::plain ? u * v : alt_product(u, v);
    }

    RelMatrix star(RelMatrix const& u, ProductMode mode) {
      RelMatrix p = mode == ProductMode::plain
                        ? RelMatrix::identity(2, u.states())
                        : alt_identity(u.states());
      if (mode == ProductMode::truncated) {
        p |= product(p, u, mode);
        return p;
      }
      while (true) {
        RelMatrix next = p;
        next |= product(p, u, mode);
        if (next == p) {
          return p;
        }
        p = std::move(next);
      }
    }
  }  // namespace

  RelMatrix alt_star(RelMatrix const& u) {
    if (u.rows() != 2 || u.cols() != 2) {
      throw Error("star needs a 2x2 matrix");
    }
    return star(u, ProductMode::alternating);
  }

  ////////////////////////////////////////////////////////////////////////
  // TuringAutomaton
  ////////////////////////////////////////////////////////////////////////

  TuringAutomaton::TuringAutomaton(Obj                     iface,
                                   std::size_t             states,
                                   std::vector<Transition> delta)
      : _iface(std::move(iface)), _states(states), _delta(std::move(delta)) {
    if (_states == 0) {
      throw InvalidSpec("an automaton needs at least one state");
    }
    auto bad_point = [this](Point p) {
      return p != kAnchor && p >= _iface.size();
    };
    for (auto const& t : _delta) {
      if (t.from >= _states || t.to >= _states) {
        throw InvalidSpec("transition mentions an unknown state");
      }
      if (bad_point(t.in) || bad_point(t.out)) {
        throw InvalidSpec("transition mentions an unknown interface");
      }
    }
    std::sort(_delta.begin(), _delta.end());
    _delta.erase(std::unique(_delta.begin(), _delta.end()), _delta.end());
  }

  bool TuringAutomaton::has(Transition const& t) const {
    return std::binary_search(_delta.begin(), _delta.end(), t);
  }

  Rel TuringAutomaton::relation(Point x, Point y) const {
    Rel r(_states);
    for (auto const& t : _delta) {
      if (t.in == x && t.out == y) {
        r.insert(t.from, t.to);
      }
    }
    return r;
  }

  TuringAutomaton reindex(TuringAutomaton const& t, PermSymbol const& rho) {
    if (rho.dom() != t.iface()) {
      throw RankMismatch("reindexing " + t.iface().to_string() + " by a "
                         + "symbol with domain " + rho.dom().to_string());
    }
    auto const image = rho.flatten();
    auto       move  = [&image](Point p) {
      return p == kAnchor ? kAnchor : image[p];
    };
    std::vector<Transition> delta;
    delta.reserve(t.transitions().size());
    for (auto const& tr : t.transitions()) {
      delta.push_back({tr.from, move(tr.in), tr.to, move(tr.out)});
    }
    return TuringAutomaton(rho.cod(), t.num_states(), std::move(delta));
  }

  TuringAutomaton sum(TuringAutomaton const& t, TuringAutomaton const& u) {
    std::size_t const nq = t.num_states();
    std::size_t const nr = u.num_states();
    std::size_t const shift = t.num_points();
    auto lift = [shift](Point p) {
      return p == kAnchor ? kAnchor : p + shift;
    };
    std::vector<Transition> delta;
    delta.reserve(t.transitions().size() * nr + u.transitions().size() * nq);
    for (auto const& tr : t.transitions()) {
      for (State r = 0; r < nr; ++r) {
        delta.push_back(
            {tr.from * nr + r, tr.in, tr.to * nr + r, tr.out});
      }
    }
    for (auto const& tr : u.transitions()) {
      for (State q = 0; q < nq; ++q) {
        delta.push_back(
            {q * nr + tr.from, lift(tr.in), q * nr + tr.to, lift(tr.out)});
      }
    }
    return TuringAutomaton(t.iface() + u.iface(), nq * nr, std::move(delta));
  }

  TuringAutomaton identity_automaton(Obj const& a) {
    std::vector<Transition> delta;
    for (std::size_t i = 0; i < a.size(); ++i) {
      delta.push_back({0, i, 0, a.size() + i});
      delta.push_back({0, a.size() + i, 0, i});
    }
    return TuringAutomaton(a + a, 1, std::move(delta));
  }

  TuringAutomaton trace(TuringAutomaton const&       t,
                        Obj const&                   a,
                        std::span<std::size_t const> order,
                        ProductMode                  mode) {
    if (!t.iface().starts_with(a + a)) {
      throw RankMismatch("cannot trace " + a.to_string() + " out of "
                         + t.iface().to_string());
    }
    std::size_t const na = a.size();
    std::size_t const n  = t.num_points();
    std::size_t const nq = t.num_states();

    std::vector<std::size_t> elim;
    if (order.empty()) {
      for (std::size_t z = 0; z < na; ++z) {
        elim.push_back(z);
      }
    } else {
      elim.assign(order.begin(), order.end());
      auto sorted = elim;
      std::sort(sorted.begin(), sorted.end());
      if (sorted.size() != na
          || std::adjacent_find(sorted.begin(), sorted.end())
                 != sorted.end()
          || (!sorted.empty() && sorted.back() >= na)) {
        throw Error("elimination order is not a permutation of the traced "
                    "positions");
      }
    }

    // Index n stands for the anchor.
    std::size_t const dim = n + 1;
    auto idx = [n](Point p) {
      return p == kAnchor ? n : p;
    };
    std::vector<Rel> lambda(dim * dim, Rel(nq));
    for (auto const& tr : t.transitions()) {
      lambda[idx(tr.in) * dim + idx(tr.out)].insert(tr.from, tr.to);
    }
    auto at = [&](std::size_t x, std::size_t y) -> Rel& {
      return lambda[x * dim + y];
    };

    std::vector<bool> live(dim, true);
    for (std::size_t z : elim) {
      std::size_t const z1 = z;
      std::size_t const z2 = na + z;
      live[z1] = live[z2] = false;

      RelMatrix block(2, 2, {at(z1, z1), at(z1, z2), at(z2, z1), at(z2, z2)});
      RelMatrix s = star(block, mode);

      for (std::size_t x = 0; x < dim; ++x) {
        if (!live[x] || (at(x, z1).empty() && at(x, z2).empty())) {
          continue;
        }
        RelMatrix r = product(RelMatrix(1, 2, {at(x, z1), at(x, z2)}), s, mode);
        for (std::size_t y = 0; y < dim; ++y) {
          if (!live[y]) {
            continue;
          }
          RelMatrix col(2, 1, {at(z1, y), at(z2, y)});
          at(x, y) |= product(r, col, mode)(0, 0);
        }
      }
    }

    auto const offset = 2 * na;
    auto out_point = [&](std::size_t p) {
      return p == n ? kAnchor : p - offset;
    };
    std::vector<Transition> delta;
    for (std::size_t x = 0; x < dim; ++x) {
      if (x < offset) {
        continue;
      }
      for (std::size_t y = offset; y < dim; ++y) {
        for (auto const& [q, r] : at(x, y).pairs()) {
          delta.push_back({q, out_point(x), r, out_point(y)});
        }
      }
    }
    return TuringAutomaton(
        t.iface().slice(offset, n - offset), nq, std::move(delta));
  }

  TuringAutomaton reverse(TuringAutomaton const& t) {
    std::vector<Transition> delta;
    delta.reserve(t.transitions().size());
    for (auto const& tr : t.transitions()) {
      delta.push_back({tr.to, tr.out, tr.from, tr.in});
    }
    return TuringAutomaton(t.iface(), t.num_states(), std::move(delta));
  }

  bool is_deterministic(TuringAutomaton const& t) {
    std::set<std::tuple<State, Point, Point>> seen;
    for (auto const& tr : t.transitions()) {
      if (!seen.emplace(tr.from, tr.in, tr.out).second) {
        return false;
      }
    }
    return true;
  }

  bool equal_under(TuringAutomaton const&    t,
                   TuringAutomaton const&    u,
                   std::vector<State> const& bijection) {
    if (t.iface() != u.iface() || t.num_states() != u.num_states()
        || bijection.size() != t.num_states()
        || t.transitions().size() != u.transitions().size()) {
      return false;
    }
    for (auto const& tr : t.transitions()) {
      if (!u.has({bijection[tr.from], tr.in, bijection[tr.to], tr.out})) {
        return false;
      }
    }
    return true;
  }

  namespace {

    // Colour refinement over the disjoint union of two automata; state q of
    // the second automaton is numbered offset + q.
    class Refiner {
     public:
      Refiner(TuringAutomaton const& t, TuringAutomaton const& u)
          : _offset(t.num_states()),
            _out(t.num_states() + u.num_states()),
            _in(t.num_states() + u.num_states()) {
        add(t, 0);
        add(u, _offset);
      }

      std::size_t size() const {
        return _out.size();
      }

      // Refines until stable; returns the number of classes.
      std::size_t refine(std::vector<std::size_t>& colour) const {
        std::size_t classes = count(colour);
        while (true) {
          using Sig = std::tuple<std::size_t,
                                 std::vector<std::array<std::size_t, 3>>,
                                 std::vector<std::array<std::size_t, 3>>>;
          std::map<Sig, std::size_t> ids;
          std::vector<std::size_t>   next(size());
          for (std::size_t s = 0; s < size(); ++s) {
            Sig sig{colour[s], {}, {}};
            for (auto const& [x, y, r] : _out[s]) {
              std::get<1>(sig).push_back({x, y, colour[r]});
            }
            for (auto const& [x, y, r] : _in[s]) {
              std::get<2>(sig).push_back({x, y, colour[r]});
            }
            std::sort(std::get<1>(sig).begin(), std::get<1>(sig).end());
            std::sort(std::get<2>(sig).begin(), std::get<2>(sig).end());
            next[s] = ids.emplace(std::move(sig), ids.size()).first->second;
          }
          colour = std::move(next);
          if (ids.size() == classes) {
            return classes;
          }
          classes = ids.size();
        }
      }

      bool search(std::vector<std::size_t> colour) const {
        refine(colour);
        // Every class must be split evenly between the two sides.
        std::map<std::size_t, std::pair<std::size_t, std::size_t>> census;
        for (std::size_t s = 0; s < size(); ++s) {
          auto& c = census[colour[s]];
          (s < _offset ? c.first : c.second)++;
        }
        std::size_t pick      = size();
        std::size_t pick_size = size() + 1;
        for (auto const& [c, n] : census) {
          if (n.first != n.second) {
            return false;
          }
          if (n.first > 1 && n.first < pick_size) {
            pick_size = n.first;
            pick      = c;
          }
        }
        if (pick == size()) {
          return verify(colour);
        }
        std::size_t left = 0;
        while (colour[left] != pick) {
          ++left;
        }
        std::size_t const fresh = size();
        for (std::size_t right = _offset; right < size(); ++right) {
          if (colour[right] != pick) {
            continue;
          }
          auto trial   = colour;
          trial[left]  = fresh;
          trial[right] = fresh;
          if (search(std::move(trial))) {
            return true;
          }
        }
        return false;
      }

     private:
      using Edge = std::tuple<Point, Point, std::size_t>;

      std::size_t                    _offset;
      std::vector<std::vector<Edge>> _out;
      std::vector<std::vector<Edge>> _in;
      TuringAutomaton const*         _t = nullptr;
      TuringAutomaton const*         _u = nullptr;

      void add(TuringAutomaton const& a, std::size_t offset) {
        (offset == 0 ? _t : _u) = &a;
        for (auto const& tr : a.transitions()) {
          _out[offset + tr.from].emplace_back(tr.in, tr.out, offset + tr.to);
          _in[offset + tr.to].emplace_back(tr.in, tr.out, offset + tr.from);
        }
      }

      static std::size_t count(std::vector<std::size_t> const& colour) {
        std::set<std::size_t> seen(colour.begin(), colour.end());
        return seen.size();
      }

      bool verify(std::vector<std::size_t> const& colour) const {
        std::map<std::size_t, State> right_of;
        for (std::size_t s = _offset; s < size(); ++s) {
          right_of[colour[s]] = s - _offset;
        }
        std::vector<State> bijection(_offset);
        for (std::size_t s = 0; s < _offset; ++s) {
          bijection[s] = right_of.at(colour[s]);
        }
        return equal_under(*_t, *_u, bijection);
      }
    };

  }  // namespace

  bool equivalent(TuringAutomaton const& t, TuringAutomaton const& u) {
    if (t.iface() != u.iface() || t.num_states() != u.num_states()
        || t.transitions().size() != u.transitions().size()) {
      return false;
    }
    Refiner refiner(t, u);
    return refiner.search(std::vector<std::size_t>(refiner.size(), 0));
  }

  TuringAutomaton atomic_switch(std::size_t n, Sort const& sort) {
    if (n < 1) {
      throw InvalidArity("a switch needs at least one port");
    }
    std::vector<Transition> delta;
    for (State i = 0; i < n; ++i) {
      for (State j = 0; j < n; ++j) {
        if (i != j) {
          delta.push_back({i, j, j, i});
          delta.push_back({i, i, j, j});
        }
        delta.push_back({i, kAnchor, i, j});
        delta.push_back({i, j, i, kAnchor});
      }
      delta.push_back({i, kAnchor, i, kAnchor});
    }
    if (n == 1) {
      delta.push_back({0, 0, 0, 0});
    }
    return TuringAutomaton(
        Obj(std::vector<Sort>(n, sort)), n, std::move(delta));
  }

}  // namespace ima::automata
