#include "ima/perm.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "ima/error.hpp"

namespace ima {

  Sort::Sort(std::string name) : _name(std::move(name)) {
    if (_name.empty()) {
      throw Error("sort names must be nonempty");
    }
  }

  Obj Obj::from_letters(std::string_view word) {
    if (word == "()") {
      return Obj();
    }
    std::vector<Sort> letters;
    letters.reserve(word.size());
    for (char c : word) {
      letters.emplace_back(std::string(1, c));
    }
    return Obj(std::move(letters));
  }

  Obj Obj::slice(std::size_t first, std::size_t count) const {
    if (first + count > _letters.size()) {
      throw Error("word slice out of range");
    }
    return Obj(std::vector<Sort>(_letters.begin() + first,
                                 _letters.begin() + first + count));
  }

  bool Obj::starts_with(Obj const& prefix) const {
    return prefix.size() <= size()
           && std::equal(prefix.begin(), prefix.end(), begin());
  }

  Obj& Obj::operator+=(Obj const& other) {
    _letters.insert(_letters.end(), other.begin(), other.end());
    return *this;
  }

  Obj Obj::repeat_letters(std::size_t times) const {
    std::vector<Sort> out;
    out.reserve(_letters.size() * times);
    for (auto const& s : _letters) {
      for (std::size_t k = 0; k < times; ++k) {
        out.push_back(s);
      }
    }
    return Obj(std::move(out));
  }

  std::string Obj::to_string() const {
    if (_letters.empty()) {
      return "()";
    }
    std::string out;
    for (auto const& s : _letters) {
      out += s.name();
    }
    return out;
  }

  std::ostream& operator<<(std::ostream& os, Obj const& w) {
    return os << w.to_string();
  }

  ////////////////////////////////////////////////////////////////////////
  // Position permutations
  ////////////////////////////////////////////////////////////////////////

  Positions identity_positions(std::size_t n) {
    Positions p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
  }

  Positions compose_positions(Positions const& first, Positions const& second) {
    if (first.size() != second.size()) {
      throw Error("position permutations of different degree");
    }
    Positions out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      out[i] = second[first[i]];
    }
    return out;
  }

  Positions invert_positions(Positions const& p) {
    Positions inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      inv[p[i]] = i;
    }
    return inv;
  }

  bool is_bijection(Positions const& p) {
    std::vector<bool> seen(p.size(), false);
    for (auto x : p) {
      if (x >= p.size() || seen[x]) {
        return false;
      }
      seen[x] = true;
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // PermSymbol
  ////////////////////////////////////////////////////////////////////////

  PermSymbol::PermSymbol(std::vector<Obj> blocks, std::vector<std::size_t> pi) {
    if (blocks.size() != pi.size() || !is_bijection(pi)) {
      throw Error("block permutation is not a bijection on the blocks");
    }
    constexpr std::size_t    dropped = static_cast<std::size_t>(-1);
    std::vector<std::size_t> renumber(blocks.size(), dropped);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (!blocks[i].empty()) {
        renumber[i] = _blocks.size();
        _blocks.push_back(std::move(blocks[i]));
      }
    }
    _pi.reserve(_blocks.size());
    for (auto j : pi) {
      if (renumber[j] != dropped) {
        _pi.push_back(renumber[j]);
      }
    }
  }

  PermSymbol PermSymbol::identity(Obj const& w) {
    std::vector<Obj> blocks;
    for (std::size_t i = 0; i < w.size(); ++i) {
      blocks.push_back(w.slice(i, 1));
    }
    return PermSymbol(std::move(blocks), identity_positions(w.size()));
  }

  PermSymbol PermSymbol::block_transposition(Obj const& v, Obj const& w) {
    return PermSymbol({v, w}, {1, 0});
  }

  PermSymbol PermSymbol::from_positions(Obj const& dom, Positions const& image) {
    if (image.size() != dom.size() || !is_bijection(image)) {
      throw Error("position map is not a bijection on the domain letters");
    }
    std::vector<Obj> blocks;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      blocks.push_back(dom.slice(i, 1));
    }
    return PermSymbol(std::move(blocks), invert_positions(image));
  }

  std::vector<Obj> PermSymbol::cod_blocks() const {
    std::vector<Obj> out;
    out.reserve(_pi.size());
    for (auto j : _pi) {
      out.push_back(_blocks[j]);
    }
    return out;
  }

  Obj PermSymbol::dom() const {
    Obj w;
    for (auto const& b : _blocks) {
      w += b;
    }
    return w;
  }

  Obj PermSymbol::cod() const {
    Obj w;
    for (auto j : _pi) {
      w += _blocks[j];
    }
    return w;
  }

  Positions PermSymbol::flatten() const {
    std::vector<std::size_t> offset(_blocks.size() + 1, 0);
    for (std::size_t i = 0; i < _blocks.size(); ++i) {
      offset[i + 1] = offset[i] + _blocks[i].size();
    }
    Positions   image(offset.back());
    std::size_t target = 0;
    for (auto j : _pi) {
      for (std::size_t k = 0; k < _blocks[j].size(); ++k) {
        image[offset[j] + k] = target++;
      }
    }
    return image;
  }

  PermSymbol compose(PermSymbol const& r1, PermSymbol const& r2) {
    if (r1.cod_blocks() != r2.blocks()) {
      throw NotComposable("cannot compose permutation symbols: codomain blocks "
                          "of the first do not match domain blocks of the "
                          "second");
    }
    std::vector<std::size_t> pi(r2.pi().size());
    for (std::size_t j = 0; j < pi.size(); ++j) {
      pi[j] = r1.pi()[r2.pi()[j]];
    }
    return PermSymbol(r1.blocks(), std::move(pi));
  }

  PermSymbol tensor(PermSymbol const& r1, PermSymbol const& r2) {
    std::vector<Obj> blocks = r1.blocks();
    blocks.insert(blocks.end(), r2.blocks().begin(), r2.blocks().end());
    std::vector<std::size_t> pi = r1.pi();
    for (auto j : r2.pi()) {
      pi.push_back(j + r1.blocks().size());
    }
    return PermSymbol(std::move(blocks), std::move(pi));
  }

  bool equivalent(PermSymbol const& r1, PermSymbol const& r2) {
    return r1.dom() == r2.dom() && r1.cod() == r2.cod()
           && r1.flatten() == r2.flatten();
  }

  PermSymbol NestedPermSymbol::counit_image() const {
    std::vector<Obj>                      blocks;
    std::vector<std::vector<std::size_t>> members(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (auto const& b : groups[i]) {
        members[i].push_back(blocks.size());
        blocks.push_back(b);
      }
    }
    std::vector<std::size_t> pi;
    for (auto g : alpha) {
      pi.insert(pi.end(), members.at(g).begin(), members.at(g).end());
    }
    return PermSymbol(std::move(blocks), std::move(pi));
  }

  PermSymbol NestedPermSymbol::collapse() const {
    std::vector<Obj> blocks;
    for (auto const& g : groups) {
      Obj merged;
      for (auto const& b : g) {
        merged += b;
      }
      blocks.push_back(std::move(merged));
    }
    return PermSymbol(std::move(blocks), alpha);
  }

  std::ostream& operator<<(std::ostream& os, PermSymbol const& r) {
    for (auto const& b : r.blocks()) {
      os << '(' << b.to_string() << ')';
    }
    os << '#' << '[';
    for (std::size_t j = 0; j < r.pi().size(); ++j) {
      os << (j == 0 ? "" : ",") << r.pi()[j] + 1;
    }
    return os << ']';
  }

}  // namespace ima
