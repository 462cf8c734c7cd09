// Terms over a ranked alphabet: the syntax of indexed monoidal expressions,
// their parser and printer, rank checking, and evaluation in any algebra.
//
// Grammar (`+` left-associative, `.` binds tightest):
//
//   term ::= "atom" NAME | "id(" word ")" | term "+" term
//          | "tr(" word "," term ")" | term "." perm
//          | "comp[" word ";" word ";" word "]" "(" term "," term ")"
//          | "ten[" word ";" word ";" word ";" word "]" "(" term "," term ")"
//          | "(" term ")"
//   perm ::= "id(" word ")" | "c(" word "," word ")" | perm "." perm
//          | perm "#" perm | "(" perm ")"
//
// In `perm`, `#` (tensor) binds tighter than `.` (composition).  A word is a
// string of single-letter sorts; "()" or nothing is the unit.

#ifndef IMA_TERM_HPP_
#define IMA_TERM_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "ima/algebra.hpp"
#include "ima/error.hpp"
#include "ima/graph.hpp"
#include "ima/perm.hpp"

namespace ima::term {

  struct TermNode;

  class Term {
   public:
    Term() = delete;
    explicit Term(std::shared_ptr<TermNode const> node)
        : _node(std::move(node)) {}

    TermNode const& node() const noexcept {
      return *_node;
    }

    friend bool operator==(Term const& a, Term const& b);

   private:
    std::shared_ptr<TermNode const> _node;
  };

  struct Atom {
    std::string name;
  };
  struct Id {
    Obj word;
  };
  struct Sum {
    Term left;
    Term right;
  };
  struct Trace {
    Obj  word;
    Term body;
  };
  struct Index {
    Term       body;
    PermSymbol symbol;
  };
  // f : a -> b composed with g : b -> c.
  struct Comp {
    Obj  a, b, c;
    Term left;
    Term right;
  };
  // f : a -> b tensored with g : c -> d.
  struct Tensor {
    Obj  a, b, c, d;
    Term left;
    Term right;
  };

  struct TermNode {
    std::variant<Atom, Id, Sum, Trace, Index, Comp, Tensor> value;
  };

  Term atom(std::string name);
  Term id(Obj w);
  Term sum(Term left, Term right);
  Term trace(Obj w, Term body);
  Term index(Term body, PermSymbol symbol);
  Term comp(Split const& f, Term left, Split const& g, Term right);
  Term tensor(Split const& f, Term left, Split const& g, Term right);

  // Symbol name -> rank word.
  using Signature = graph::RankedAlphabet;

  // Throws SyntaxError with the line and column of the failure.
  Term       parse(std::string_view text);
  PermSymbol parse_perm(std::string_view text);

  // Inverse of parse: parse(print(t)) == t.
  std::string print(Term const& t);
  // A perm expression denoting exactly `r` (same blocks and permutation).
  std::string print_perm(PermSymbol const& r);

  // Throws RankError naming the offending subterm.
  Obj rank(Term const& t, Signature const& sig);

  // Rewrites Comp and Tensor into Sum/Index/Trace.  Needs no signature
  // because the sugar carries its own splits.
  Term desugar(Term const& t);

  // Symbols occurring in `t`, sorted, without repetition.
  std::vector<std::string> atoms(Term const& t);

  // Symbol -> element of an algebra; the rank of each image is the rank of
  // its symbol.
  template <IndexedMonoidalAlgebra Alg>
  using Interpretation = std::map<std::string, typename Alg::Element>;

  template <IndexedMonoidalAlgebra Alg>
  Signature signature_of(Alg const& alg, Interpretation<Alg> const& omega) {
    Signature sig;
    for (auto const& [name, element] : omega) {
      sig.declare(name, alg.rank(element));
    }
    return sig;
  }

  namespace detail {
    template <IndexedMonoidalAlgebra Alg>
    typename Alg::Element fold(Term const&                t,
                               Alg const&                 alg,
                               Interpretation<Alg> const& omega) {
      return std::visit(
          [&](auto const& n) -> typename Alg::Element {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Atom>) {
              auto it = omega.find(n.name);
              if (it == omega.end()) {
                throw MissingSymbol("interpretation has no image for "
                                    + n.name);
              }
              return it->second;
            } else if constexpr (std::is_same_v<N, Id>) {
              return alg.identity(n.word);
            } else if constexpr (std::is_same_v<N, Sum>) {
              return alg.sum(fold(n.left, alg, omega),
                             fold(n.right, alg, omega));
            } else if constexpr (std::is_same_v<N, Trace>) {
              return alg.trace(fold(n.body, alg, omega), n.word);
            } else if constexpr (std::is_same_v<N, Index>) {
              return alg.reindex(fold(n.body, alg, omega), n.symbol);
            } else {
              throw Error("sugar must be eliminated before evaluation");
            }
          },
          t.node().value);
    }
  }  // namespace detail

  // The unique homomorphism extending `omega`: a structural fold.
  template <IndexedMonoidalAlgebra Alg>
  typename Alg::Element eval(Term const&                t,
                             Alg const&                 alg,
                             Interpretation<Alg> const& omega) {
    for (auto const& name : atoms(t)) {
      if (omega.find(name) == omega.end()) {
        throw MissingSymbol("interpretation has no image for " + name);
      }
    }
    rank(t, signature_of(alg, omega));
    return detail::fold(desugar(t), alg, omega);
  }

  // Each symbol to its own star graph.
  Interpretation<graph::GraphAlgebra>
  graph_self_interpretation(graph::GraphAlgebra const& alg);

  // The graph denoted by `t` (its normal form).
  graph::SigmaGraph normalize(Term const& t, Signature const& sig);

  // Equal in every algebra iff the normal forms are isomorphic.  Throws
  // RankError when the ranks differ.
  bool term_equal(Term const& t1, Term const& t2, Signature const& sig);

  // A term file: optional `sym NAME WORD` declarations, then one term.
  // `//` starts a comment.
  struct TermFile {
    Signature signature;
    Term      term;
  };
  TermFile parse_term_file(std::string_view text);

}  // namespace ima::term

#endif  // IMA_TERM_HPP_
