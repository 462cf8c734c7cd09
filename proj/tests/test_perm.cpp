#include <algorithm>
#include <string>

#include "doctest.h"

#include "ima/error.hpp"
#include "ima/perm.hpp"
#include "ima/random.hpp"

using namespace ima;

namespace {

  Obj w(char const* s) {
    return Obj::from_letters(s);
  }

  // Tags every domain letter, lays the blocks out in codomain order, and
  // reads off where each tag landed.
  Positions brute_flatten(std::vector<Obj> const&         blocks,
                          std::vector<std::size_t> const& pi) {
    std::vector<std::vector<std::size_t>> tags;
    std::size_t                           next = 0;
    for (auto const& b : blocks) {
      tags.emplace_back();
      for (std::size_t i = 0; i < b.size(); ++i) {
        tags.back().push_back(next++);
      }
    }
    std::vector<std::size_t> cod;
    for (auto j : pi) {
      cod.insert(cod.end(), tags[j].begin(), tags[j].end());
    }
    Positions image(next);
    for (std::size_t k = 0; k < cod.size(); ++k) {
      image[cod[k]] = k;
    }
    return image;
  }

  Positions brute_flatten(PermSymbol const& r) {
    return brute_flatten(r.blocks(), r.pi());
  }

}  // namespace

TEST_CASE("identity symbols") {
  CHECK(PermSymbol::identity(w("AB")).flatten() == Positions{0, 1});
  CHECK(PermSymbol::identity(w("AB")).blocks().size() == 2);
  CHECK(PermSymbol::identity(Obj()).flatten().empty());
  CHECK(PermSymbol::identity(w("A")).cod() == w("A"));
}

TEST_CASE("block transpositions") {
  auto c = PermSymbol::block_transposition(w("A"), w("BC"));
  CHECK(c.flatten() == Positions{2, 0, 1});
  CHECK(c.cod() == w("BCA"));
  CHECK(equivalent(PermSymbol::block_transposition(Obj(), w("AB")),
                   PermSymbol::identity(w("AB"))));
  auto ab = PermSymbol::block_transposition(w("A"), w("B"));
  CHECK(ab.flatten() == Positions{1, 0});
  CHECK(ab.cod() == w("BA"));
}

TEST_CASE("composition") {
  auto ab = PermSymbol::block_transposition(w("A"), w("B"));
  auto ba = PermSymbol::block_transposition(w("B"), w("A"));
  CHECK(equivalent(compose(ab, ba), PermSymbol::identity(w("AB"))));
  CHECK(compose(PermSymbol::identity(w("AB")), ab) == ab);

  // Composite flattening against a position-by-position oracle.
  auto c = PermSymbol::block_transposition(w("A"), w("BC"));
  auto d = PermSymbol({w("BC"), w("A")}, {1, 0});
  auto cd = compose(c, d);
  auto f1 = c.flatten();
  auto f2 = d.flatten();
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(cd.flatten()[i] == f2[f1[i]]);
  }

  CHECK_THROWS_AS(compose(ab, ab), NotComposable);
}

TEST_CASE("tensor") {
  auto t = tensor(PermSymbol::identity(w("A")), PermSymbol::identity(w("B")));
  CHECK(t.blocks().size() == 2);
  CHECK(t.flatten() == Positions{0, 1});
  CHECK(tensor(PermSymbol(), PermSymbol::identity(w("AB")))
        == PermSymbol::identity(w("AB")));
  auto s = tensor(PermSymbol::block_transposition(w("A"), w("B")),
                  PermSymbol::identity(w("C")));
  CHECK(s.flatten() == Positions{1, 0, 2});
}

TEST_CASE("flattening") {
  CHECK(PermSymbol::block_transposition(w("A"), w("B")).flatten()
        == Positions{1, 0});
  // Codomain C A B.
  auto r = PermSymbol({w("AB"), w("C")}, {1, 0});
  CHECK(r.flatten() == brute_flatten(r));
  CHECK(r.flatten() == Positions{1, 2, 0});
  CHECK(invert_positions(r.flatten()) == Positions{2, 0, 1});
  CHECK(PermSymbol::identity(w("ABA")).flatten() == identity_positions(3));
}

TEST_CASE("equivalence") {
  CHECK(equivalent(
      tensor(PermSymbol::identity(w("A")), PermSymbol::identity(w("B"))),
      PermSymbol({w("AB")}, {0})));
  CHECK_FALSE(equivalent(PermSymbol::block_transposition(w("A"), w("B")),
                         PermSymbol::identity(w("AB"))));
  // Same flattening, different codomain.
  CHECK_FALSE(equivalent(PermSymbol::block_transposition(w("A"), w("A")),
                         PermSymbol::identity(w("AA"))));
}

TEST_CASE("from_positions") {
  random::Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    auto dom = random::random_obj(rng, 5);
    auto r   = random::random_perm(rng, dom);
    auto p   = PermSymbol::from_positions(dom, r.flatten());
    CHECK(equivalent(p, r));
  }
}

TEST_CASE("random symbols agree with the brute-force flattening") {
  random::Rng rng(11);
  for (int k = 0; k < 300; ++k) {
    auto dom = random::random_obj(rng, 6);
    auto r   = random::random_perm(rng, dom);
    REQUIRE(r.dom() == dom);
    CHECK(is_bijection(r.flatten()));
    CHECK(r.flatten() == brute_flatten(r));
    // Codomain letters are the domain letters moved by the flattening.
    auto f = r.flatten();
    for (std::size_t i = 0; i < dom.size(); ++i) {
      CHECK(r.cod()[f[i]] == dom[i]);
    }
  }
}

TEST_CASE("composition is flattening composition") {
  random::Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    auto dom = random::random_obj(rng, 5);
    auto r1  = random::random_perm(rng, dom);
    auto r2  = random::random_perm_over(rng, r1.cod_blocks());
    auto r   = compose(r1, r2);
    CHECK(r.flatten() == compose_positions(r1.flatten(), r2.flatten()));
    auto f1 = r1.flatten();
    auto f2 = r2.flatten();
    for (std::size_t i = 0; i < f1.size(); ++i) {
      CHECK(r.flatten()[i] == f2[f1[i]]);
    }
  }
}

TEST_CASE("nested symbols: both readings are equivalent") {
  random::Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    auto n = random::random_nested(rng, random::random_obj(rng, 6));
    CHECK(equivalent(n.counit_image(), n.collapse()));
  }
  NestedPermSymbol fixed{{{w("A"), w("B")}, {w("C")}}, {1, 0}};
  CHECK(fixed.collapse().flatten() == Positions{1, 2, 0});
}

TEST_CASE("malformed symbols") {
  CHECK_THROWS(PermSymbol({w("A"), w("B")}, {0, 0}));
  CHECK_THROWS(PermSymbol({w("A")}, {0, 1}));
}
