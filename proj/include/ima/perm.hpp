// Sorts, objects of the strictified index monoid, and permutation symbols.
//
// An object is a finite sequence of sorts; the empty sequence is the unit.
// A permutation symbol is a sequence of blocks (objects) together with a
// permutation of the blocks.  Algebras only ever consume the induced
// permutation of letter positions, see PermSymbol::flatten.

#ifndef IMA_PERM_HPP_
#define IMA_PERM_HPP_

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ima {

  class Sort {
   public:
    explicit Sort(std::string name);

    std::string const& name() const noexcept {
      return _name;
    }

    auto operator<=>(Sort const&) const = default;

   private:
    std::string _name;
  };

  // A word over sorts.  Concatenation is the monoid operation.
  class Obj {
   public:
    Obj() = default;
    explicit Obj(std::vector<Sort> letters) : _letters(std::move(letters)) {}

    // Every character of `word` is one single-letter sort.  "()" and the
    // empty string both denote the unit.
    static Obj from_letters(std::string_view word);

    std::size_t size() const noexcept {
      return _letters.size();
    }
    bool empty() const noexcept {
      return _letters.empty();
    }
    Sort const& operator[](std::size_t i) const {
      return _letters[i];
    }
    std::vector<Sort> const& letters() const noexcept {
      return _letters;
    }
    auto begin() const noexcept {
      return _letters.begin();
    }
    auto end() const noexcept {
      return _letters.end();
    }

    // Subword [first, first + count).
    Obj slice(std::size_t first, std::size_t count) const;
    bool starts_with(Obj const& prefix) const;

    Obj& operator+=(Obj const& other);
    friend Obj operator+(Obj lhs, Obj const& rhs) {
      lhs += rhs;
      return lhs;
    }

    // Each letter repeated `times` times in place (used for D x A).
    Obj repeat_letters(std::size_t times) const;

    // Letters concatenated; "()" for the unit.
    std::string to_string() const;

    auto operator<=>(Obj const&) const = default;

   private:
    std::vector<Sort> _letters;
  };

  std::ostream& operator<<(std::ostream& os, Obj const& w);

  // A bijection on {0, ..., n-1}; image[i] is where position i is sent.
  using Positions = std::vector<std::size_t>;

  Positions identity_positions(std::size_t n);
  Positions compose_positions(Positions const& first, Positions const& second);
  Positions invert_positions(Positions const& p);
  bool is_bijection(Positions const& p);

  // The symbol w#pi.  Codomain block j is block pi[j] of the domain.  Empty
  // blocks are dropped on construction (the unit object equals the empty
  // block string).
  class PermSymbol {
   public:
    PermSymbol() = default;
    PermSymbol(std::vector<Obj> blocks, std::vector<std::size_t> pi);

    // 1_w: one block per letter of w, identity permutation.
    static PermSymbol identity(Obj const& w);
    // c_{v,w}: blocks (v)(w), swapped.
    static PermSymbol block_transposition(Obj const& v, Obj const& w);
    // Letter-block symbol whose flattening is exactly `image`.
    static PermSymbol from_positions(Obj const& dom, Positions const& image);

    std::vector<Obj> const& blocks() const noexcept {
      return _blocks;
    }
    std::vector<std::size_t> const& pi() const noexcept {
      return _pi;
    }
    std::vector<Obj> cod_blocks() const;

    Obj dom() const;
    Obj cod() const;

    // Position i of dom() is sent to position flatten()[i] of cod().
    Positions flatten() const;

    bool operator==(PermSymbol const&) const = default;

   private:
    std::vector<Obj>         _blocks;
    std::vector<std::size_t> _pi;
  };

  // Sequential composition: first r1, then r2.  Throws NotComposable unless
  // the codomain block string of r1 is the domain block string of r2.
  PermSymbol compose(PermSymbol const& r1, PermSymbol const& r2);
  // Blockwise juxtaposition.
  PermSymbol tensor(PermSymbol const& r1, PermSymbol const& r2);
  // Same domain, same codomain, same flattening.
  bool equivalent(PermSymbol const& r1, PermSymbol const& r2);

  // A symbol over words of objects: group i holds the blocks A_{i,1} ...
  // A_{i,m_i}, and alpha permutes the groups.  These give the two readings
  // of a nested symbol that are identified by equivalence.
  struct NestedPermSymbol {
    std::vector<std::vector<Obj>> groups;
    std::vector<std::size_t>      alpha;

    // Every A_{i,j} is its own block; groups move as units.
    PermSymbol counit_image() const;
    // Group i collapses to the single block A_{i,1}...A_{i,m_i}.
    PermSymbol collapse() const;
  };

  std::ostream& operator<<(std::ostream& os, PermSymbol const& r);

}  // namespace ima

#endif  // IMA_PERM_HPP_
