// The operations shared by every indexed monoidal algebra in the library
// (graphs, Turing automata, D-flow automata), and the operations derived from
// them: composition, tensor, and the symmetry/unit/counit morphisms.
//
// An algebra type exposes its element type and five operations.  Elements
// are values; every operation returns a fresh element.

#ifndef IMA_ALGEBRA_HPP_
#define IMA_ALGEBRA_HPP_

#include <concepts>

#include "ima/error.hpp"
#include "ima/perm.hpp"

namespace ima {

  template <typename A>
  concept IndexedMonoidalAlgebra = requires(A const&                    alg,
                                            typename A::Element const& e,
                                            PermSymbol const&          rho,
                                            Obj const&                 w) {
    { alg.rank(e) } -> std::convertible_to<Obj>;
    { alg.identity(w) } -> std::same_as<typename A::Element>;
    { alg.sum(e, e) } -> std::same_as<typename A::Element>;
    { alg.reindex(e, rho) } -> std::same_as<typename A::Element>;
    { alg.trace(e, w) } -> std::same_as<typename A::Element>;
    { alg.equivalent(e, e) } -> std::convertible_to<bool>;
  };

  // Domain/codomain reading of a rank word for f : A -> B.
  struct Split {
    Obj dom;
    Obj cod;
  };

  // f o g = tr_B((f + g) . (c_{A,BB} # 1_C)) for f : A -> B, g : B -> C.
  template <IndexedMonoidalAlgebra Alg>
  typename Alg::Element compose(Alg const&                   alg,
                                typename Alg::Element const& f,
                                Split const&                 fs,
                                typename Alg::Element const& g,
                                Split const&                 gs) {
    if (fs.cod != gs.dom) {
      throw SplitMismatch("composition: codomain " + fs.cod.to_string()
                          + " of the first factor differs from domain "
                          + gs.dom.to_string() + " of the second");
    }
    if (alg.rank(f) != fs.dom + fs.cod || alg.rank(g) != gs.dom + gs.cod) {
      throw SplitMismatch("composition: split does not match the rank word");
    }
    auto const& a   = fs.dom;
    auto const& b   = fs.cod;
    auto const& c   = gs.cod;
    auto        rho = tensor(PermSymbol::block_transposition(a, b + b),
                      PermSymbol::identity(c));
    return alg.trace(alg.reindex(alg.sum(f, g), rho), b);
  }

  // f (x) g = (f + g) . (1_A # c_{B,C} # 1_D) for f : A -> B, g : C -> D.
  // The result reads (A C) -> (B D).
  template <IndexedMonoidalAlgebra Alg>
  typename Alg::Element tensor(Alg const&                   alg,
                               typename Alg::Element const& f,
                               Split const&                 fs,
                               typename Alg::Element const& g,
                               Split const&                 gs) {
    if (alg.rank(f) != fs.dom + fs.cod || alg.rank(g) != gs.dom + gs.cod) {
      throw SplitMismatch("tensor: split does not match the rank word");
    }
    auto rho = tensor(tensor(PermSymbol::identity(fs.dom),
                             PermSymbol::block_transposition(fs.cod, gs.dom)),
                      PermSymbol::identity(gs.cod));
    return alg.reindex(alg.sum(f, g), rho);
  }

  // The symmetry A B -> B A of the associated compact closed category.
  template <IndexedMonoidalAlgebra Alg>
  typename Alg::Element symmetry(Alg const& alg, Obj const& a, Obj const& b) {
    auto ab = a + b;
    return alg.reindex(alg.identity(ab),
                       tensor(PermSymbol::identity(ab),
                              PermSymbol::block_transposition(a, b)));
  }

}  // namespace ima

#endif  // IMA_ALGEBRA_HPP_
