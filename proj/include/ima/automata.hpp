// Turing automata and the indexed monoidal algebra they form.
//
// A Turing automaton T : A is an interface word A, a finite nonempty state
// set Q = {0, ..., |Q|-1}, and a transition relation over (Q x A_*)^2, where
// A_* is the set of interface positions plus the anchor.  The anchor is
// never renamed or glued by any operation.  Trace is computed with the
// Kleene elimination formula over the semiring of binary relations on Q,
// using the alternating matrix product and its star.

#ifndef IMA_AUTOMATA_HPP_
#define IMA_AUTOMATA_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ima/perm.hpp"

namespace ima::automata {

  using State = std::size_t;
  // An interface position 0..n-1, or kAnchor.
  using Point = std::size_t;

  inline constexpr Point kAnchor = std::numeric_limits<Point>::max();

  ////////////////////////////////////////////////////////////////////////
  // The relation semiring
  ////////////////////////////////////////////////////////////////////////

  // A binary relation over {0, ..., n-1}, stored as a dense bit matrix.  The
  // empty relation allocates nothing.
  class Rel {
   public:
    Rel() = default;
    explicit Rel(std::size_t n) : _n(n), _words((n + 63) / 64) {}

    static Rel identity(std::size_t n);

    std::size_t size() const noexcept {
      return _n;
    }
    bool contains(State i, State j) const;
    void insert(State i, State j);
    bool empty() const noexcept;
    std::size_t count() const;

    // Union.
    Rel& operator|=(Rel const& other);
    friend Rel operator|(Rel lhs, Rel const& rhs) {
      lhs |= rhs;
      return lhs;
    }
    // Relational product: (i,k) iff (i,j) in lhs and (j,k) in rhs.
    friend Rel operator*(Rel const& lhs, Rel const& rhs);

    Rel converse() const;

    std::vector<std::pair<State, State>> pairs() const;

    friend bool operator==(Rel const& a, Rel const& b);

   private:
    std::size_t                _n     = 0;
    std::size_t                _words = 0;
    std::vector<std::uint64_t> _bits;  // empty or _n * _words

    std::uint64_t const* row(State i) const {
      return _bits.data() + i * _words;
    }
  };

  // A small matrix of relations over a common state set.
  class RelMatrix {
   public:
    RelMatrix(std::size_t rows, std::size_t cols, std::size_t states);
    RelMatrix(std::size_t rows, std::size_t cols, std::vector<Rel> entries);

    static RelMatrix identity(std::size_t dim, std::size_t states);

    std::size_t rows() const noexcept {
      return _rows;
    }
    std::size_t cols() const noexcept {
      return _cols;
    }
    std::size_t states() const noexcept {
      return _states;
    }
    Rel const& operator()(std::size_t i, std::size_t j) const {
      return _entries[i * _cols + j];
    }
    Rel& operator()(std::size_t i, std::size_t j) {
      return _entries[i * _cols + j];
    }

    RelMatrix& operator|=(RelMatrix const& other);
    friend RelMatrix operator*(RelMatrix const& a, RelMatrix const& b);
    friend bool operator==(RelMatrix const& a, RelMatrix const& b) = default;

    // The two rows exchanged (requires exactly two rows).
    RelMatrix swap_rows() const;

   private:
    std::size_t      _rows;
    std::size_t      _cols;
    std::size_t      _states;
    std::vector<Rel> _entries;
  };

  // U (.) V = U . (V with its two rows exchanged).  V has two rows.
  RelMatrix alt_product(RelMatrix const& u, RelMatrix const& v);
  // The unit of the alternating product: I2 (.) I2.
  RelMatrix alt_identity(std::size_t states);
  // The union of all alternating powers of a 2x2 matrix, as a least fixpoint.
  RelMatrix alt_star(RelMatrix const& u);

  // Which product the trace uses.  The other two modes are deliberately
  // broken and exist to check that the axiom suite notices: `plain` skips the
  // row exchange, `truncated` stops the star after a single power.
  enum class ProductMode { alternating, plain, truncated };

  ////////////////////////////////////////////////////////////////////////
  // Turing automata
  ////////////////////////////////////////////////////////////////////////

  struct Transition {
    State from;
    Point in;
    State to;
    Point out;
    auto  operator<=>(Transition const&) const = default;
  };

  class TuringAutomaton {
   public:
    // Throws if `states` is zero or a transition mentions an unknown state or
    // position.  Transitions are sorted and deduplicated.
    TuringAutomaton(Obj iface, std::size_t states, std::vector<Transition> delta);

    Obj const& iface() const noexcept {
      return _iface;
    }
    std::size_t num_points() const noexcept {
      return _iface.size();
    }
    std::size_t num_states() const noexcept {
      return _states;
    }
    std::vector<Transition> const& transitions() const noexcept {
      return _delta;
    }
    bool has(Transition const& t) const;

    // lambda_{x,y} = {(q,q') | ((q,x),(q',y)) in delta}.
    Rel relation(Point x, Point y) const;

    bool operator==(TuringAutomaton const&) const = default;

   private:
    Obj                     _iface;
    std::size_t             _states;
    std::vector<Transition> _delta;
  };

  // Position x renamed to flatten(rho)[x]; the anchor stays.  Throws
  // RankMismatch.
  TuringAutomaton reindex(TuringAutomaton const& t, PermSymbol const& rho);
  // States Q x Q' (pair (q,q') is q * |Q'| + q'); either component moves
  // while the other stays.
  TuringAutomaton sum(TuringAutomaton const& t, TuringAutomaton const& u);
  // One state, <a,1> <-> <a,2> for every letter a.
  TuringAutomaton identity_automaton(Obj const& a);
  // Eliminates the pairs <z,1>/<z,2>, z in a, in the order given (default
  // 0, 1, ...).  Throws RankMismatch.
  TuringAutomaton trace(TuringAutomaton const&         t,
                        Obj const&                     a,
                        std::span<std::size_t const>   order = {},
                        ProductMode                    mode
                        = ProductMode::alternating);
  // T^R: the converse transition relation.
  TuringAutomaton reverse(TuringAutomaton const& t);
  // At most one successor state for each (q, x, y).
  bool is_deterministic(TuringAutomaton const& t);
  // Some bijection of states carries one transition relation onto the other.
  bool equivalent(TuringAutomaton const& t, TuringAutomaton const& u);
  // Checks a given bijection (states of t -> states of u).
  bool equal_under(TuringAutomaton const&     t,
                   TuringAutomaton const&     u,
                   std::vector<State> const& bijection);

  // The n-ary atomic switch over the single sort `sort`.  Throws
  // InvalidArity for n < 1.
  TuringAutomaton atomic_switch(std::size_t n, Sort const& sort = Sort("1"));

  class AutomatonAlgebra {
   public:
    using Element = TuringAutomaton;

    explicit AutomatonAlgebra(ProductMode mode = ProductMode::alternating)
        : _mode(mode) {}

    Obj rank(TuringAutomaton const& t) const {
      return t.iface();
    }
    TuringAutomaton identity(Obj const& w) const {
      return identity_automaton(w);
    }
    TuringAutomaton sum(TuringAutomaton const& t,
                        TuringAutomaton const& u) const {
      return automata::sum(t, u);
    }
    TuringAutomaton reindex(TuringAutomaton const& t,
                            PermSymbol const&      rho) const {
      return automata::reindex(t, rho);
    }
    TuringAutomaton trace(TuringAutomaton const& t, Obj const& w) const {
      return automata::trace(t, w, {}, _mode);
    }
    bool equivalent(TuringAutomaton const& t, TuringAutomaton const& u) const {
      return automata::equivalent(t, u);
    }

   private:
    ProductMode _mode;
  };

}  // namespace ima::automata

#endif  // IMA_AUTOMATA_HPP_
