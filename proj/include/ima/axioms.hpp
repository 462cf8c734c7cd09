// Randomized checks of the indexed monoidal algebra laws I1-I9 and of the
// derived compact closed structure, for any algebra with a generator of
// random elements.  A run is a pure function of its seed.

#ifndef IMA_AXIOMS_HPP_
#define IMA_AXIOMS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ima/algebra.hpp"
#include "ima/random.hpp"

namespace ima::axioms {

  using random::Rng;

  struct LawResult {
    std::string name;
    std::string family;  // "I1" ... "I9", or "derived"
    std::size_t cases    = 0;
    std::size_t failures = 0;
    // Smallest failing instance found, if any.
    std::string counterexample;
  };

  struct RunReport {
    std::vector<LawResult> laws;

    bool ok() const {
      for (auto const& l : laws) {
        if (l.failures != 0) {
          return false;
        }
      }
      return true;
    }
    bool family_ok(std::string const& family) const {
      for (auto const& l : laws) {
        if (l.family == family && l.failures != 0) {
          return false;
        }
      }
      return true;
    }
    std::string summary() const;
  };

  template <IndexedMonoidalAlgebra Alg>
  struct Subject {
    Alg alg;
    // A random element of the given rank; `size` bounds states or vertices.
    std::function<typename Alg::Element(Rng&, Obj const&, std::size_t)> gen;
    std::function<std::string(typename Alg::Element const&)>            show;
    Obj         sorts    = Obj::from_letters("AB");
    std::size_t max_len  = 2;  // letters per object
    std::size_t max_size = 3;
  };

  namespace detail {

    // A law instance: nullopt when it holds, a description otherwise.
    using Instance =
        std::function<std::optional<std::string>(Rng&, std::size_t, std::size_t)>;

    struct Law {
      std::string name;
      std::string family;
      Instance    check;
    };

    template <IndexedMonoidalAlgebra Alg>
    class Builder {
     public:
      using E = typename Alg::Element;

      explicit Builder(Subject<Alg> const& s) : _s(s) {}

      std::vector<Law> laws() const;

     private:
      Subject<Alg> const& _s;

      Obj obj(Rng& rng, std::size_t len) const {
        return random::random_obj(rng, len, _s.sorts);
      }
      E gen(Rng& rng, Obj const& w, std::size_t size) const {
        return _s.gen(rng, w, size);
      }
      std::optional<std::string> compare(E const&           lhs,
                                         E const&           rhs,
                                         std::string const& context) const {
        if (_s.alg.equivalent(lhs, rhs)) {
          return std::nullopt;
        }
        return context + "\n  lhs: " + _s.show(lhs) + "\n  rhs: "
               + _s.show(rhs);
      }
    };

    inline std::string objs(std::initializer_list<std::pair<char const*, Obj>> l) {
      std::ostringstream os;
      bool               first = true;
      for (auto const& [name, w] : l) {
        os << (first ? "" : ", ") << name << "=" << w.to_string();
        first = false;
      }
      return os.str();
    }

    template <IndexedMonoidalAlgebra Alg>
    std::vector<Law> Builder<Alg>::laws() const {
      auto const& alg = _s.alg;
      std::vector<Law> out;

      out.push_back({"I1 functoriality", "I1",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a  = obj(rng, len + 1);
                       auto f  = gen(rng, a, size);
                       auto r1 = random::random_perm(rng, a);
                       auto r2 = random::random_perm_over(rng, r1.cod_blocks());
                       std::ostringstream os;
                       os << "A=" << a.to_string() << ", rho1=" << r1
                          << ", rho2=" << r2 << ", f=" << _s.show(f);
                       return compare(alg.reindex(f, compose(r1, r2)),
                                      alg.reindex(alg.reindex(f, r1), r2),
                                      os.str());
                     }});
      out.push_back({"I1 identity index", "I1",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len + 1);
                       auto f = gen(rng, a, size);
                       return compare(alg.reindex(f, PermSymbol::identity(a)),
                                      f,
                                      objs({{"A", a}}));
                     }});
      out.push_back({"I2 naturality of sum", "I2",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a  = obj(rng, len);
                       auto b  = obj(rng, len);
                       auto f  = gen(rng, a, size);
                       auto g  = gen(rng, b, size);
                       auto r1 = random::random_perm(rng, a);
                       auto r2 = random::random_perm(rng, b);
                       std::ostringstream os;
                       os << objs({{"A", a}, {"B", b}}) << ", rho1=" << r1
                          << ", rho2=" << r2;
                       return compare(
                           alg.reindex(alg.sum(f, g), tensor(r1, r2)),
                           alg.sum(alg.reindex(f, r1), alg.reindex(g, r2)),
                           os.str());
                     }});
      out.push_back({"I2 naturality of trace", "I2",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a   = obj(rng, len);
                       auto b   = obj(rng, len);
                       auto f   = gen(rng, a + a + b, size);
                       auto rho = random::random_perm(rng, b);
                       std::ostringstream os;
                       os << objs({{"A", a}, {"B", b}}) << ", rho=" << rho;
                       return compare(
                           alg.reindex(alg.trace(f, a), rho),
                           alg.trace(
                               alg.reindex(
                                   f,
                                   tensor(PermSymbol::identity(a + a), rho)),
                               a),
                           os.str());
                     }});
      out.push_back({"I3 coherence", "I3",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a      = obj(rng, len + 2);
                       auto f      = gen(rng, a, size);
                       auto nested = random::random_nested(rng, a);
                       auto r1     = nested.counit_image();
                       auto r2     = nested.collapse();
                       std::ostringstream os;
                       os << "A=" << a.to_string() << ", rho1=" << r1
                          << ", rho2=" << r2;
                       return compare(
                           alg.reindex(f, r1), alg.reindex(f, r2), os.str());
                     }});
      out.push_back({"I4 associativity of sum", "I4",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len);
                       auto b = obj(rng, len);
                       auto c = obj(rng, len);
                       auto f = gen(rng, a, size);
                       auto g = gen(rng, b, size);
                       auto h = gen(rng, c, size);
                       return compare(alg.sum(alg.sum(f, g), h),
                                      alg.sum(f, alg.sum(g, h)),
                                      objs({{"A", a}, {"B", b}, {"C", c}}));
                     }});
      out.push_back({"I4 commutativity of sum", "I4",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len);
                       auto b = obj(rng, len);
                       auto f = gen(rng, a, size);
                       auto g = gen(rng, b, size);
                       return compare(
                           alg.sum(f, g),
                           alg.reindex(alg.sum(g, f),
                                       PermSymbol::block_transposition(b, a)),
                           objs({{"A", a}, {"B", b}}));
                     }});
      out.push_back({"I5 right identity of composition", "I5",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len);
                       auto b = obj(rng, len);
                       auto f = gen(rng, a + b, size);
                       return compare(compose(alg,
                                              f,
                                              Split{a, b},
                                              alg.identity(b),
                                              Split{b, b}),
                                      f,
                                      objs({{"A", a}, {"B", b}}));
                     }});
      out.push_back({"I5 unit of sum", "I5",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len + 1);
                       auto f = gen(rng, a, size);
                       return compare(alg.sum(f, alg.identity(Obj())),
                                      f,
                                      objs({{"A", a}}));
                     }});
      out.push_back({"I6 symmetry of identity", "I6",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len + 1);
                       return compare(
                           alg.reindex(alg.identity(a),
                                       PermSymbol::block_transposition(a, a)),
                           alg.identity(a),
                           objs({{"A", a}}));
                     }});
      out.push_back({"I7 vanishing of the unit", "I7",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len + 1);
                       auto f = gen(rng, a, size);
                       return compare(
                           alg.trace(f, Obj()), f, objs({{"A", a}}));
                     }});
      out.push_back({"I7 vanishing of a tensor", "I7",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a   = obj(rng, len);
                       auto b   = obj(rng, len);
                       auto c   = obj(rng, len);
                       auto f   = gen(rng, a + b + a + b + c, size);
                       auto rho = tensor(
                           tensor(PermSymbol::identity(a),
                                  PermSymbol::block_transposition(b, a)),
                           PermSymbol::identity(b + c));
                       return compare(
                           alg.trace(f, a + b),
                           alg.trace(alg.trace(alg.reindex(f, rho), a), b),
                           objs({{"A", a}, {"B", b}, {"C", c}}));
                     }});
      out.push_back({"I8 superposing", "I8",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len);
                       auto b = obj(rng, len);
                       auto c = obj(rng, len);
                       auto f = gen(rng, a + a + b, size);
                       auto g = gen(rng, c, size);
                       return compare(alg.trace(alg.sum(f, g), a),
                                      alg.sum(alg.trace(f, a), g),
                                      objs({{"A", a}, {"B", b}, {"C", c}}));
                     }});
      out.push_back({"I9 trace swapping", "I9",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a   = obj(rng, len);
                       auto b   = obj(rng, len);
                       auto c   = obj(rng, len);
                       auto f   = gen(rng, a + a + b + b + c, size);
                       auto rho = tensor(
                           PermSymbol::block_transposition(a + a, b + b),
                           PermSymbol::identity(c));
                       return compare(
                           alg.trace(alg.trace(f, a), b),
                           alg.trace(alg.trace(alg.reindex(f, rho), b), a),
                           objs({{"A", a}, {"B", b}, {"C", c}}));
                     }});
      out.push_back({"left identity of composition", "derived",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len);
                       auto b = obj(rng, len);
                       auto f = gen(rng, a + b, size);
                       return compare(compose(alg,
                                              alg.identity(a),
                                              Split{a, a},
                                              f,
                                              Split{a, b}),
                                      f,
                                      objs({{"A", a}, {"B", b}}));
                     }});
      out.push_back({"tensor of identities", "derived",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t)
                         -> std::optional<std::string> {
                       auto a = obj(rng, len);
                       auto b = obj(rng, len);
                       return compare(tensor(alg,
                                             alg.identity(a),
                                             Split{a, a},
                                             alg.identity(b),
                                             Split{b, b}),
                                      alg.identity(a + b),
                                      objs({{"A", a}, {"B", b}}));
                     }});
      out.push_back({"zig-zag", "derived",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t)
                         -> std::optional<std::string> {
                       auto       a   = obj(rng, len + 1);
                       auto const one = alg.identity(a);
                       Obj const  i;
                       // d_A = e_A = 1_A.
                       auto left = compose(
                           alg,
                           tensor(alg, one, Split{a, a}, one, Split{i, a + a}),
                           Split{a, a + a + a},
                           tensor(alg, one, Split{a + a, i}, one, Split{a, a}),
                           Split{a + a + a, a});
                       auto right = compose(
                           alg,
                           tensor(alg, one, Split{i, a + a}, one, Split{a, a}),
                           Split{a, a + a + a},
                           tensor(alg, one, Split{a, a}, one, Split{a + a, i}),
                           Split{a + a + a, a});
                       if (auto bad = compare(left, one, objs({{"A", a}}))) {
                         return bad;
                       }
                       return compare(right, one, objs({{"A", a}}));
                     }});
      out.push_back({"symmetry of trace", "derived",
                     [this, &alg](Rng& rng, std::size_t len, std::size_t size)
                         -> std::optional<std::string> {
                       auto a   = obj(rng, len);
                       auto b   = obj(rng, len);
                       auto f   = gen(rng, a + a + b, size);
                       auto rho = tensor(PermSymbol::block_transposition(a, a),
                                         PermSymbol::identity(b));
                       return compare(alg.trace(f, a),
                                      alg.trace(alg.reindex(f, rho), a),
                                      objs({{"A", a}, {"B", b}}));
                     }});
      return out;
    }

  }  // namespace detail

  // Runs every law `cases` times.  A failing law is re-tried at smaller
  // sizes to report a small counterexample.
  template <IndexedMonoidalAlgebra Alg>
  RunReport run(Subject<Alg> const& subject,
                std::size_t         cases,
                std::uint64_t       seed) {
    RunReport report;
    // The laws refer back to the builder, so it must outlive them.
    detail::Builder<Alg> const builder(subject);
    auto const                 laws = builder.laws();
    for (std::size_t k = 0; k < laws.size(); ++k) {
      auto const& law = laws[k];
      LawResult   result{law.name, law.family, 0, 0, {}};
      Rng         rng(seed * 1000003 + k);
      std::optional<std::string> first;
      for (std::size_t c = 0; c < cases; ++c) {
        ++result.cases;
        if (auto bad = law.check(rng, subject.max_len, subject.max_size)) {
          ++result.failures;
          if (!first) {
            first = std::move(bad);
          }
        }
      }
      if (first) {
        result.counterexample = *first;
        // Shrink: the first failure at the smallest (len, size).
        Rng  shrink(seed ^ 0x5eed);
        bool done = false;
        for (std::size_t len = 0; len <= subject.max_len && !done; ++len) {
          for (std::size_t size = 1; size <= subject.max_size && !done;
               ++size) {
            for (std::size_t attempt = 0; attempt < 50 && !done; ++attempt) {
              if (auto bad = law.check(shrink, len, size)) {
                result.counterexample = *bad;
                done                  = true;
              }
            }
          }
        }
      }
      report.laws.push_back(std::move(result));
    }
    return report;
  }

  inline std::string RunReport::summary() const {
    std::ostringstream os;
    for (auto const& l : laws) {
      os << (l.failures == 0 ? "ok   " : "FAIL ") << l.family << "  "
         << l.name << "  (" << l.cases - l.failures << "/" << l.cases
         << ")\n";
      if (l.failures != 0) {
        os << "  counterexample: " << l.counterexample << "\n";
      }
    }
    return os.str();
  }

}  // namespace ima::axioms

#endif  // IMA_AXIOMS_HPP_
