#include "ima/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ima::term {

  namespace {
    Term make(auto value) {
      return Term(std::make_shared<TermNode const>(TermNode{std::move(value)}));
    }
  }  // namespace

  Term atom(std::string name) {
    return make(Atom{std::move(name)});
  }
  Term id(Obj w) {
    return make(Id{std::move(w)});
  }
  Term sum(Term left, Term right) {
    return make(Sum{std::move(left), std::move(right)});
  }
  Term trace(Obj w, Term body) {
    return make(Trace{std::move(w), std::move(body)});
  }
  Term index(Term body, PermSymbol symbol) {
    return make(Index{std::move(body), std::move(symbol)});
  }
  Term comp(Split const& f, Term left, Split const& g, Term right) {
    if (f.cod != g.dom) {
      throw SplitMismatch("comp: middle objects differ");
    }
    return make(Comp{f.dom, f.cod, g.cod, std::move(left), std::move(right)});
  }
  Term tensor(Split const& f, Term left, Split const& g, Term right) {
    return make(
        Tensor{f.dom, f.cod, g.dom, g.cod, std::move(left), std::move(right)});
  }

  bool operator==(Term const& a, Term const& b) {
    if (a._node == b._node) {
      return true;
    }
    auto const& x = a.node().value;
    auto const& y = b.node().value;
    if (x.index() != y.index()) {
      return false;
    }
    return std::visit(
        [&](auto const& n) -> bool {
          using N      = std::decay_t<decltype(n)>;
          auto const& m = std::get<N>(y);
          if constexpr (std::is_same_v<N, Atom>) {
            return n.name == m.name;
          } else if constexpr (std::is_same_v<N, Id>) {
            return n.word == m.word;
          } else if constexpr (std::is_same_v<N, Sum>) {
            return n.left == m.left && n.right == m.right;
          } else if constexpr (std::is_same_v<N, Trace>) {
            return n.word == m.word && n.body == m.body;
          } else if constexpr (std::is_same_v<N, Index>) {
            return n.symbol == m.symbol && n.body == m.body;
          } else if constexpr (std::is_same_v<N, Comp>) {
            return n.a == m.a && n.b == m.b && n.c == m.c && n.left == m.left
                   && n.right == m.right;
          } else {
            return n.a == m.a && n.b == m.b && n.c == m.c && n.d == m.d
                   && n.left == m.left && n.right == m.right;
          }
        },
        x);
  }

  ////////////////////////////////////////////////////////////////////////
  // Parser
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class Parser {
     public:
      explicit Parser(std::string_view text) : _text(text) {}

      Term parse_term_to_end() {
        auto t = parse_sum();
        expect_end();
        return t;
      }

      PermSymbol parse_perm_to_end() {
        auto r = parse_perm();
        expect_end();
        return r;
      }

     private:
      std::string_view _text;
      std::size_t      _pos = 0;

      [[noreturn]] void fail(std::string const& msg) const {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < _pos && i < _text.size(); ++i) {
          if (_text[i] == '\n') {
            ++line;
            column = 1;
          } else {
            ++column;
          }
        }
        throw SyntaxError(msg, line, column);
      }

      void skip_space() {
        while (_pos < _text.size()) {
          if (std::isspace(static_cast<unsigned char>(_text[_pos]))) {
            ++_pos;
          } else if (_text.substr(_pos, 2) == "//") {
            while (_pos < _text.size() && _text[_pos] != '\n') {
              ++_pos;
            }
          } else {
            break;
          }
        }
      }

      char peek() {
        skip_space();
        return _pos < _text.size() ? _text[_pos] : '\0';
      }

      bool accept(char c) {
        if (peek() == c) {
          ++_pos;
          return true;
        }
        return false;
      }

      void expect(char c) {
        if (!accept(c)) {
          fail(std::string("expected '") + c + "'");
        }
      }

      void expect_end() {
        if (peek() != '\0') {
          fail("unexpected trailing input");
        }
      }

      static bool is_name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
      }
      static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      }

      std::string name() {
        if (!is_name_start(peek())) {
          fail("expected a name");
        }
        auto start = _pos;
        while (_pos < _text.size() && is_name_char(_text[_pos])) {
          ++_pos;
        }
        return std::string(_text.substr(start, _pos - start));
      }

      // Keyword directly followed by `open`, e.g. "id(".
      bool keyword(std::string_view kw, char open) {
        skip_space();
        auto save = _pos;
        if (_text.substr(_pos, kw.size()) == kw) {
          _pos += kw.size();
          if (peek() == open) {
            ++_pos;
            return true;
          }
        }
        _pos = save;
        return false;
      }

      Obj word() {
        skip_space();
        if (_text.substr(_pos, 2) == "()") {
          _pos += 2;
          return Obj();
        }
        auto start = _pos;
        while (_pos < _text.size()
               && std::isalnum(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
        return Obj::from_letters(_text.substr(start, _pos - start));
      }

      Term parse_sum() {
        auto t = parse_postfix();
        while (accept('+')) {
          t = sum(std::move(t), parse_postfix());
        }
        return t;
      }

      Term parse_postfix() {
        auto t = parse_primary();
        if (accept('.')) {
          return index(std::move(t), parse_perm());
        }
        return t;
      }

      Term parse_primary() {
        if (accept('(')) {
          auto t = parse_sum();
          expect(')');
          return t;
        }
        if (keyword("id", '(')) {
          auto w = word();
          expect(')');
          return id(std::move(w));
        }
        if (keyword("tr", '(')) {
          auto w = word();
          expect(',');
          auto body = parse_sum();
          expect(')');
          return trace(std::move(w), std::move(body));
        }
        if (keyword("comp", '[')) {
          auto a = word();
          expect(';');
          auto b = word();
          expect(';');
          auto c = word();
          expect(']');
          expect('(');
          auto f = parse_sum();
          expect(',');
          auto g = parse_sum();
          expect(')');
          return comp({a, b}, std::move(f), {b, c}, std::move(g));
        }
        if (keyword("ten", '[')) {
          auto a = word();
          expect(';');
          auto b = word();
          expect(';');
          auto c = word();
          expect(';');
          auto d = word();
          expect(']');
          expect('(');
          auto f = parse_sum();
          expect(',');
          auto g = parse_sum();
          expect(')');
          return tensor({a, b}, std::move(f), {c, d}, std::move(g));
        }
        auto start = _pos;
        if (is_name_start(peek())) {
          auto kw = name();
          if (kw == "atom") {
            return atom(name());
          }
        }
        _pos = start;
        fail("expected a term");
      }

      PermSymbol parse_perm() {
        auto r = parse_perm_tensor();
        while (true) {
          auto save = _pos;
          if (!accept('.')) {
            break;
          }
          auto rhs = parse_perm_tensor();
          try {
            r = compose(r, rhs);
          } catch (NotComposable const& e) {
            _pos = save;
            fail(e.what());
          }
        }
        return r;
      }

      PermSymbol parse_perm_tensor() {
        auto r = parse_perm_atom();
        while (accept('#')) {
          r = ima::tensor(r, parse_perm_atom());
        }
        return r;
      }

      PermSymbol parse_perm_atom() {
        if (accept('(')) {
          auto r = parse_perm();
          expect(')');
          return r;
        }
        if (keyword("id", '(')) {
          auto w = word();
          expect(')');
          return PermSymbol::identity(w);
        }
        if (keyword("c", '(')) {
          auto v = word();
          expect(',');
          auto w = word();
          expect(')');
          return PermSymbol::block_transposition(v, w);
        }
        fail("expected a permutation symbol");
      }
    };
  }  // namespace

  Term parse(std::string_view text) {
    return Parser(text).parse_term_to_end();
  }

  PermSymbol parse_perm(std::string_view text) {
    return Parser(text).parse_perm_to_end();
  }

  ////////////////////////////////////////////////////////////////////////
  // Printer
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::string block_literal(Obj const& b) {
      return b.size() == 1 ? "id(" + b.to_string() + ")"
                           : "c(" + b.to_string() + ",)";
    }

    std::string blocks_literal(std::vector<Obj> const& blocks) {
      if (blocks.empty()) {
        return "id()";
      }
      std::string out;
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        out += (i == 0 ? "" : "#") + block_literal(blocks[i]);
      }
      return out;
    }

    // Adjacent transposition of blocks k, k+1 in `current`.
    std::string swap_literal(std::vector<Obj> const& current, std::size_t k) {
      std::string out;
      for (std::size_t i = 0; i < current.size(); ++i) {
        if (i == k + 1) {
          continue;
        }
        out += out.empty() ? "" : "#";
        out += i == k ? "c(" + current[k].to_string() + ","
                            + current[k + 1].to_string() + ")"
                      : block_literal(current[i]);
      }
      return out;
    }

    void print_into(std::ostringstream& os, Term const& t);

    void print_operand(std::ostringstream& os, Term const& t, bool wrap) {
      if (wrap) {
        os << '(';
      }
      print_into(os, t);
      if (wrap) {
        os << ')';
      }
    }

    void print_into(std::ostringstream& os, Term const& t) {
      std::visit(
          [&](auto const& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Atom>) {
              os << "atom " << n.name;
            } else if constexpr (std::is_same_v<N, Id>) {
              os << "id(" << n.word.to_string() << ')';
            } else if constexpr (std::is_same_v<N, Sum>) {
              print_into(os, n.left);
              os << " + ";
              print_operand(os,
                            n.right,
                            std::holds_alternative<Sum>(n.right.node().value));
            } else if constexpr (std::is_same_v<N, Trace>) {
              os << "tr(" << n.word.to_string() << ", ";
              print_into(os, n.body);
              os << ')';
            } else if constexpr (std::is_same_v<N, Index>) {
              auto const& b = n.body.node().value;
              print_operand(os,
                            n.body,
                            std::holds_alternative<Sum>(b)
                                || std::holds_alternative<Index>(b));
              os << " . " << print_perm(n.symbol);
            } else if constexpr (std::is_same_v<N, Comp>) {
              os << "comp[" << n.a.to_string() << ';' << n.b.to_string() << ';'
                 << n.c.to_string() << "](";
              print_into(os, n.left);
              os << ", ";
              print_into(os, n.right);
              os << ')';
            } else {
              os << "ten[" << n.a.to_string() << ';' << n.b.to_string() << ';'
                 << n.c.to_string() << ';' << n.d.to_string() << "](";
              print_into(os, n.left);
              os << ", ";
              print_into(os, n.right);
              os << ')';
            }
          },
          t.node().value);
    }
  }  // namespace

  std::string print_perm(PermSymbol const& r) {
    std::vector<Obj> current = r.blocks();
    std::string      out     = blocks_literal(current);
    // Bubble each target block into place with adjacent transpositions.
    std::vector<std::size_t> order(current.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    std::size_t swaps = 0;
    for (std::size_t j = 0; j < r.pi().size(); ++j) {
      auto k = std::find(order.begin(), order.end(), r.pi()[j]) - order.begin();
      for (auto i = static_cast<std::size_t>(k); i > j; --i) {
        out += " . " + swap_literal(current, i - 1);
        std::swap(current[i - 1], current[i]);
        std::swap(order[i - 1], order[i]);
        ++swaps;
      }
    }
    if (swaps > 0 && r.blocks().size() > 1) {
      out = "(" + out + ")";
    }
    return out;
  }

  std::string print(Term const& t) {
    std::ostringstream os;
    print_into(os, t);
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Ranks, desugaring
  ////////////////////////////////////////////////////////////////////////

  Obj rank(Term const& t, Signature const& sig) {
    auto fail = [&t](std::string const& why) -> RankError {
      return RankError(why + " in subterm: " + print(t));
    };
    return std::visit(
        [&](auto const& n) -> Obj {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Atom>) {
            if (!sig.contains(n.name)) {
              throw fail("undeclared symbol " + n.name);
            }
            return sig.rank(n.name);
          } else if constexpr (std::is_same_v<N, Id>) {
            return n.word + n.word;
          } else if constexpr (std::is_same_v<N, Sum>) {
            return rank(n.left, sig) + rank(n.right, sig);
          } else if constexpr (std::is_same_v<N, Trace>) {
            auto r = rank(n.body, sig);
            if (!r.starts_with(n.word + n.word)) {
              throw fail("trace over " + n.word.to_string() + " of rank "
                         + r.to_string());
            }
            return r.slice(2 * n.word.size(), r.size() - 2 * n.word.size());
          } else if constexpr (std::is_same_v<N, Index>) {
            auto r = rank(n.body, sig);
            if (r != n.symbol.dom()) {
              throw fail("indexing rank " + r.to_string()
                         + " by a symbol with domain "
                         + n.symbol.dom().to_string());
            }
            return n.symbol.cod();
          } else if constexpr (std::is_same_v<N, Comp>) {
            if (rank(n.left, sig) != n.a + n.b
                || rank(n.right, sig) != n.b + n.c) {
              throw fail("composition split mismatch");
            }
            return n.a + n.c;
          } else {
            if (rank(n.left, sig) != n.a + n.b
                || rank(n.right, sig) != n.c + n.d) {
              throw fail("tensor split mismatch");
            }
            return n.a + n.c + n.b + n.d;
          }
        },
        t.node().value);
  }

  Term desugar(Term const& t) {
    return std::visit(
        [&](auto const& n) -> Term {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Atom> || std::is_same_v<N, Id>) {
            return t;
          } else if constexpr (std::is_same_v<N, Sum>) {
            return sum(desugar(n.left), desugar(n.right));
          } else if constexpr (std::is_same_v<N, Trace>) {
            return trace(n.word, desugar(n.body));
          } else if constexpr (std::is_same_v<N, Index>) {
            return index(desugar(n.body), n.symbol);
          } else if constexpr (std::is_same_v<N, Comp>) {
            auto rho = ima::tensor(
                PermSymbol::block_transposition(n.a, n.b + n.b),
                PermSymbol::identity(n.c));
            return trace(
                n.b, index(sum(desugar(n.left), desugar(n.right)), rho));
          } else {
            auto rho = ima::tensor(
                ima::tensor(PermSymbol::identity(n.a),
                            PermSymbol::block_transposition(n.b, n.c)),
                PermSymbol::identity(n.d));
            return index(sum(desugar(n.left), desugar(n.right)), rho);
          }
        },
        t.node().value);
  }

  namespace {
    void collect_atoms(Term const& t, std::set<std::string>& out) {
      std::visit(
          [&](auto const& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Atom>) {
              out.insert(n.name);
            } else if constexpr (std::is_same_v<N, Sum>
                                 || std::is_same_v<N, Comp>
                                 || std::is_same_v<N, Tensor>) {
              collect_atoms(n.left, out);
              collect_atoms(n.right, out);
            } else if constexpr (std::is_same_v<N, Trace>
                                 || std::is_same_v<N, Index>) {
              collect_atoms(n.body, out);
            }
          },
          t.node().value);
    }
  }  // namespace

  std::vector<std::string> atoms(Term const& t) {
    std::set<std::string> out;
    collect_atoms(t, out);
    return {out.begin(), out.end()};
  }

  ////////////////////////////////////////////////////////////////////////
  // Normal forms
  ////////////////////////////////////////////////////////////////////////

  Interpretation<graph::GraphAlgebra>
  graph_self_interpretation(graph::GraphAlgebra const& alg) {
    Interpretation<graph::GraphAlgebra> omega;
    for (auto const& [name, rank] : alg.alphabet().symbols()) {
      omega.emplace(name, alg.atom(name));
    }
    return omega;
  }

  graph::SigmaGraph normalize(Term const& t, Signature const& sig) {
    graph::GraphAlgebra alg(sig);
    return eval(t, alg, graph_self_interpretation(alg));
  }

  bool term_equal(Term const& t1, Term const& t2, Signature const& sig) {
    auto r1 = rank(t1, sig);
    auto r2 = rank(t2, sig);
    if (r1 != r2) {
      throw RankError("terms have different ranks " + r1.to_string() + " and "
                      + r2.to_string());
    }
    return graph::isomorphic(normalize(t1, sig), normalize(t2, sig));
  }

  TermFile parse_term_file(std::string_view text) {
    Signature   sig;
    std::string body;
    std::size_t line_no = 0;
    std::size_t start   = 0;
    while (start <= text.size()) {
      auto end  = text.find('\n', start);
      auto line = text.substr(start,
                              end == std::string_view::npos ? text.size() - start
                                                            : end - start);
      ++line_no;
      std::istringstream is{std::string(line)};
      std::string        head;
      is >> head;
      if (head == "sym") {
        std::string name, word;
        is >> name >> word;
        if (name.empty() || word.empty()) {
          throw SyntaxError("expected: sym NAME WORD", line_no, 1);
        }
        sig.declare(name, Obj::from_letters(word));
      } else {
        body += line;
      }
      if (end == std::string_view::npos) {
        break;
      }
      body += '\n';
      start = end + 1;
    }
    return {sig, parse(body)};
  }

}  // namespace ima::term
