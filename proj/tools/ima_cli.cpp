// ima: command-line front end.
//
// Exit codes: 0 success / equal, 1 unequal / property failure, 2 usage or
// input error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ima/automata.hpp"
#include "ima/axioms.hpp"
#include "ima/decompose.hpp"
#include "ima/dflow.hpp"
#include "ima/error.hpp"
#include "ima/io.hpp"
#include "ima/soliton.hpp"
#include "ima/subjects.hpp"
#include "ima/term.hpp"

namespace {

  using namespace ima;
  using io::Json;

  struct Options {
    std::uint64_t seed   = 1;
    std::size_t   cases  = 200;
    bool          dot    = false;
    bool          trace  = false;
    std::string   format = "text";

    bool json() const {
      return format == "json";
    }
  };

  // Thrown for conditions that are the user's fault; exit 2.
  struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  term::TermFile load_term(std::string const& path) {
    return term::parse_term_file(io::slurp(path));
  }

  graph::SigmaGraph normal_form(term::TermFile const& f) {
    return term::normalize(f.term, f.signature);
  }

  // "*" is the anchor; otherwise a 1-based interface number.
  soliton::Endpoint endpoint(std::string const& s) {
    if (s == "*") {
      return std::nullopt;
    }
    std::size_t pos = 0;
    std::size_t k   = 0;
    try {
      k = std::stoul(s, &pos);
    } catch (std::exception const&) {
      pos = 0;
    }
    if (pos != s.size() || k == 0) {
      throw UsageError("expected an interface number or '*', got '" + s + "'");
    }
    return k - 1;
  }

  std::string endpoint_name(soliton::Endpoint e) {
    return e ? std::to_string(*e + 1) : "*";
  }

  //////////////////////////////////////////////////////////////////////////
  // Commands
  //////////////////////////////////////////////////////////////////////////

  int cmd_parse(Options const& o, std::string const& path) {
    auto f    = load_term(path);
    auto rank = term::rank(f.term, f.signature);
    if (o.json()) {
      std::cout << Json{{"term", term::print(f.term)},
                        {"rank", rank.to_string()}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << term::print(f.term) << "\n: " << rank.to_string() << "\n";
    }
    return 0;
  }

  int cmd_normalize(Options const& o, std::string const& path) {
    auto g = normal_form(load_term(path));
    if (o.dot) {
      std::cout << io::to_dot(g);
    } else if (o.json()) {
      std::cout << Json{{"graph", io::write_graph(g)}}.dump(2) << "\n";
    } else {
      std::cout << io::write_graph(g);
    }
    return 0;
  }

  int cmd_eq(Options const& o, std::string const& a, std::string const& b) {
    auto fa  = load_term(a);
    auto fb  = load_term(b);
    auto sig = fa.signature;
    for (auto const& [name, rank] : fb.signature.symbols()) {
      sig.declare(name, rank);
    }
    bool const equal = term::term_equal(fa.term, fb.term, sig);
    if (o.json()) {
      std::cout << Json{{"equal", equal}}.dump() << "\n";
    } else {
      std::cout << (equal ? "equal" : "not equal") << "\n";
    }
    return equal ? 0 : 1;
  }

  dflow::GraphMachine load_machine(std::string const& path) {
    auto const p = std::filesystem::path(path);
    return io::machine_from_json(Json::parse(io::slurp(p)), p.parent_path());
  }

  int cmd_eval(Options const&                  o,
               std::string const&              machine,
               std::string const&              term_file,
               std::vector<std::string> const& automata) {
    if (!machine.empty()) {
      auto m = load_machine(machine);
      if (o.dot) {
        std::cout << io::to_dot(m.graph());
        return 0;
      }
      std::cout << io::dump(io::dflow_to_json(dflow::evaluate(m)));
      return 0;
    }
    if (term_file.empty()) {
      if (automata.size() != 1) {
        throw UsageError("give --machine, --term, or one --automaton file");
      }
      auto t = io::automaton_from_json(Json::parse(io::slurp(automata[0])));
      if (o.json()) {
        std::cout << io::dump(io::automaton_to_json(t));
      } else {
        std::cout << io::describe(t) << "\ndeterministic: "
                  << (automata::is_deterministic(t) ? "yes" : "no") << "\n";
      }
      return 0;
    }
    automata::AutomatonAlgebra                 alg;
    term::Interpretation<automata::AutomatonAlgebra> omega;
    for (auto const& spec : automata) {
      auto eq = spec.find('=');
      if (eq == std::string::npos) {
        throw UsageError("with --term, give --automaton NAME=FILE");
      }
      omega.emplace(spec.substr(0, eq),
                    io::automaton_from_json(
                        Json::parse(io::slurp(spec.substr(eq + 1)))));
    }
    auto f = load_term(term_file);
    std::cout << io::dump(io::automaton_to_json(term::eval(f.term, alg, omega)));
    return 0;
  }

  // Breadth-first search that remembers how each configuration was reached.
  struct Found {
    dflow::Config              end;
    std::vector<dflow::Config> path;
  };

  std::vector<Found> search(dflow::GraphMachine const& m,
                            dflow::Config const&       start) {
    std::map<dflow::Config, std::optional<dflow::Config>> parent;
    std::vector<dflow::Config>                            frontier{start};
    std::vector<Found>                                    found;
    std::set<dflow::Config>                               ends;
    auto path_to = [&](dflow::Config c, dflow::Config const& last) {
      std::vector<dflow::Config> p{last};
      for (std::optional<dflow::Config> cur = c; cur; cur = parent.at(*cur)) {
        p.push_back(*cur);
      }
      std::reverse(p.begin(), p.end());
      return p;
    };
    parent.emplace(start, std::nullopt);
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      auto const c = frontier[i];
      for (auto const& next : dflow::step(m, c)) {
        if (!std::holds_alternative<dflow::AtPort>(next.locus)) {
          if (ends.insert(next).second) {
            found.push_back({next, path_to(c, next)});
          }
        } else if (parent.emplace(next, c).second) {
          frontier.push_back(next);
        }
      }
    }
    return found;
  }

  bool at(dflow::Config const& c, soliton::Endpoint e) {
    if (!e) {
      return std::holds_alternative<dflow::AtAnchor>(c.locus);
    }
    auto const* i = std::get_if<dflow::AtInterface>(&c.locus);
    return i && i->serial == *e;
  }

  int cmd_simulate(Options const&     o,
                   std::string const& machine,
                   std::string const& state,
                   std::string const& from_s,
                   std::string const& to_s) {
    auto       m    = load_machine(machine);
    auto const from = endpoint(from_s);
    auto const to   = endpoint(to_s);
    if (o.dot) {
      std::cout << io::to_dot(m.graph());
      return 0;
    }
    auto local = state.empty() ? std::vector<std::size_t>(
                                     m.components().size(), 0)
                               : io::read_state(io::slurp(state));
    m.encode(local);

    std::vector<dflow::Config> starts;
    if (!from) {
      starts.push_back({local, dflow::AtAnchor{}, std::nullopt});
    } else {
      if (*from >= m.graph().num_interfaces()) {
        throw UsageError("no interface " + from_s);
      }
      for (std::size_t d = 0; d < m.data(); ++d) {
        starts.push_back({local, dflow::AtInterface{*from}, d});
      }
    }
    Json        out = Json::array();
    std::size_t hits = 0;
    for (auto const& s : starts) {
      for (auto const& f : search(m, s)) {
        if (!at(f.end, to)) {
          continue;
        }
        ++hits;
        if (o.json()) {
          Json j{{"entry_datum", s.datum ? Json(*s.datum) : Json()},
                 {"exit_datum", f.end.datum ? Json(*f.end.datum) : Json()},
                 {"final_state", io::write_state(f.end.local)}};
          if (o.trace) {
            Json steps = Json::array();
            for (auto const& c : f.path) {
              steps.push_back(dflow::to_string(m, c));
            }
            j["trace"] = std::move(steps);
          }
          out.push_back(std::move(j));
          continue;
        }
        std::cout << endpoint_name(from) << " -> " << endpoint_name(to);
        if (s.datum) {
          std::cout << "  in " << *s.datum;
        }
        if (f.end.datum) {
          std::cout << "  out " << *f.end.datum;
        }
        std::cout << "  final state " << io::write_state(f.end.local) << "\n";
        if (o.trace) {
          for (std::size_t k = 0; k < f.path.size(); ++k) {
            std::cout << "  " << k << ": " << dflow::to_string(m, f.path[k])
                      << "\n";
          }
        }
      }
    }
    if (o.json()) {
      std::cout << out.dump(2) << "\n";
    } else if (hits == 0) {
      std::cout << "no transition from " << endpoint_name(from) << " to "
                << endpoint_name(to) << "\n";
    }
    return 0;
  }

  int cmd_soliton(Options const&     o,
                  std::string const& graph_path,
                  std::string const& state,
                  std::string const& walk,
                  bool               enumerate,
                  std::size_t        max_steps) {
    auto const ug = io::read_soliton_graph(io::slurp(graph_path));
    auto       p  = soliton::make_presoliton(soliton::to_sigma_graph(ug));
    if (o.dot) {
      std::cout << io::to_dot(p.graph());
      return 0;
    }
    if (enumerate) {
      auto pims = soliton::enumerate_pims(p);
      if (o.json()) {
        Json out = Json::array();
        for (auto const& q : pims) {
          out.push_back(io::write_state(q));
        }
        std::cout << out.dump(2) << "\n";
      } else {
        for (auto const& q : pims) {
          std::cout << io::write_state(q) << "\n";
        }
      }
      return 0;
    }
    if (walk.empty() || state.empty()) {
      throw UsageError("give --enumerate-pims, or --state and --walk I,J");
    }
    auto comma = walk.find(',');
    if (comma == std::string::npos) {
      throw UsageError("--walk takes I,J");
    }
    auto const from = endpoint(walk.substr(0, comma));
    auto const to   = endpoint(walk.substr(comma + 1));
    auto const q    = io::read_state(io::slurp(state));
    auto walks      = soliton::soliton_walks(p, q, from, to, max_steps);
    Json out        = Json::array();
    for (auto const& w : walks) {
      bool const pim = soliton::is_pim(p, w.final);
      if (o.json()) {
        Json j{{"steps", w.configs.size() - 1},
               {"final_state", io::write_state(w.final)},
               {"pim", pim}};
        if (o.trace) {
          Json steps = Json::array();
          for (auto const& c : w.configs) {
            steps.push_back(dflow::to_string(p.machine(), c));
          }
          j["trace"] = std::move(steps);
        }
        out.push_back(std::move(j));
        continue;
      }
      std::cout << "walk of " << w.configs.size() - 1
                << " steps, final state " << io::write_state(w.final)
                << (pim ? " (perfect internal matching)" : "") << "\n";
      if (o.trace) {
        for (std::size_t k = 0; k < w.configs.size(); ++k) {
          std::cout << "  " << k << ": "
                    << dflow::to_string(p.machine(), w.configs[k]) << "\n";
        }
      }
    }
    if (o.json()) {
      std::cout << out.dump(2) << "\n";
    } else if (walks.empty()) {
      std::cout << "no walk within " << max_steps << " steps\n";
    }
    return 0;
  }

  Json report_json(axioms::RunReport const& r,
                   std::string const&       algebra,
                   Options const&           o) {
    Json laws = Json::array();
    for (auto const& l : r.laws) {
      laws.push_back({{"law", l.name},
                      {"family", l.family},
                      {"cases", l.cases},
                      {"failures", l.failures},
                      {"counterexample", l.counterexample}});
    }
    return {{"command", "axioms " + algebra},
            {"seed", o.seed},
            {"cases", o.cases},
            {"ok", r.ok()},
            {"laws", laws}};
  }

  int cmd_axioms(Options const& o, std::string const& algebra, bool mutate) {
    axioms::RunReport r;
    if (algebra == "graphs") {
      r = axioms::run(axioms::graph_subject(), o.cases, o.seed);
    } else if (algebra == "automata") {
      r = axioms::run(axioms::automata_subject(
                          mutate ? automata::ProductMode::truncated
                                 : automata::ProductMode::alternating),
                      o.cases,
                      o.seed);
    } else if (algebra == "dflow") {
      r = axioms::run(axioms::dflow_subject(), o.cases, o.seed);
    } else {
      throw UsageError("algebra must be graphs, automata or dflow");
    }
    if (o.json()) {
      std::cout << report_json(r, algebra, o).dump(2) << "\n";
    } else {
      std::cout << "axioms " << algebra << "  seed " << o.seed << "  cases "
                << o.cases << "\n"
                << r.summary();
    }
    return r.ok() ? 0 : 1;
  }

  int cmd_export_dot(std::string const& path) {
    auto const text = io::slurp(path);
    std::istringstream lines(text);
    std::string        head;
    // The first word outside comments tells graph files from term files.
    for (std::string line; head.empty() && std::getline(lines, line);) {
      std::istringstream words(line);
      words >> head;
      if (head.starts_with("#") || head.starts_with("//")) {
        head.clear();
      }
    }
    if (head == "graph") {
      std::cout << io::to_dot(io::read_graph(text));
    } else {
      std::cout << io::to_dot(normal_form(term::parse_term_file(text)));
    }
    return 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indexed monoidal algebras: graphs, Turing automata, machines"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--cases", o.cases, "Random cases per law")
      ->capture_default_str();
  app.add_flag("--dot", o.dot, "Print graphs in DOT");
  app.add_flag("--trace", o.trace, "Print every configuration");
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string file1;
  std::string file2;

  auto* parse = app.add_subcommand("parse", "Parse a term file and print it");
  parse->add_option("file", file1)->required();

  auto* normalize
      = app.add_subcommand("normalize", "Print the graph a term denotes");
  normalize->add_option("file", file1)->required();

  auto* eq = app.add_subcommand("eq", "Decide whether two terms are equal");
  eq->add_option("file1", file1)->required();
  eq->add_option("file2", file2)->required();

  std::string              machine;
  std::string              term_file;
  std::vector<std::string> automata_files;
  auto* eval = app.add_subcommand("eval", "Evaluate a machine or a term");
  eval->add_option("--machine", machine, "Machine JSON file");
  eval->add_option("--term", term_file, "Term file");
  eval->add_option("--automaton",
                   automata_files,
                   "Automaton JSON file, or NAME=FILE with --term");

  std::string state;
  std::string from = "1";
  std::string to   = "2";
  auto* simulate = app.add_subcommand("simulate", "Follow control through a machine");
  simulate->add_option("--machine", machine)->required();
  simulate->add_option("--state", state, "1-based local states");
  simulate->add_option("--from", from, "Interface number or *")
      ->capture_default_str();
  simulate->add_option("--to", to, "Interface number or *")
      ->capture_default_str();

  std::string graph_file;
  std::string walk;
  std::string pims_file;
  std::size_t max_steps = 64;
  auto* sol = app.add_subcommand("soliton", "Soliton walks and matchings");
  sol->add_option("--graph", graph_file, "Undirected graph file");
  sol->add_option("--state", state, "1-based positive ports");
  sol->add_option("--walk", walk, "I,J with * for the anchor");
  sol->add_option("--enumerate-pims", pims_file, "List perfect internal matchings");
  sol->add_option("--max-steps", max_steps)->capture_default_str();

  std::string algebra;
  bool        mutate = false;
  auto* ax = app.add_subcommand("axioms", "Check the algebra laws on random instances");
  ax->add_option("algebra", algebra, "graphs, automata or dflow")->required();
  ax->add_flag("--mutate", mutate, "Cut the trace star short (automata)");

  auto* dot = app.add_subcommand("export-dot", "DOT for a graph or term file");
  dot->add_option("file", file1)->required();

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*parse) {
      return cmd_parse(o, file1);
    }
    if (*normalize) {
      return cmd_normalize(o, file1);
    }
    if (*eq) {
      return cmd_eq(o, file1, file2);
    }
    if (*eval) {
      return cmd_eval(o, machine, term_file, automata_files);
    }
    if (*simulate) {
      return cmd_simulate(o, machine, state, from, to);
    }
    if (*sol) {
      bool const enumerate = !pims_file.empty();
      return cmd_soliton(o,
                         enumerate ? pims_file : graph_file,
                         state,
                         walk,
                         enumerate,
                         max_steps);
    }
    if (*ax) {
      return cmd_axioms(o, algebra, mutate);
    }
    if (*dot) {
      return cmd_export_dot(file1);
    }
  } catch (ima::Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (nlohmann::json::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
