#include "transiso/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "transiso/error.hpp"
#include "transiso/io.hpp"

namespace transiso {

namespace {

struct RunConfig {
  std::string group;
  std::string order;
  std::uint64_t budget = kDefaultBudget;
  std::string strategy = "auto";
  std::string format = "text";
  std::string out;
  unsigned workers = 1;
  std::string subgroup;
  std::string graph;
  std::uint64_t prime = 0;
};

Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::Auto;
  if (s == "exhaustive") return Strategy::Exhaustive;
  if (s == "structural") return Strategy::Structural;
  throw InvalidArgument("unknown strategy \"" + s + "\"");
}

GraphOptions graph_options(const RunConfig& c) {
  GraphOptions o;
  o.budget = c.budget;
  o.strategy = parse_strategy(c.strategy);
  o.workers = c.workers;
  return o;
}

std::size_t parse_divisor(const std::string& text, const Group& g) {
  std::size_t pos = 0;
  unsigned long long d = 0;
  try {
    d = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) throw InvalidArgument("--order must be a positive integer or \"all\"");
  if (d == 0 || g.order() % d != 0) {
    std::ostringstream os;
    os << "d = " << d << " does not divide |G| = " << g.order();
    throw InvalidArgument(os.str());
  }
  return static_cast<std::size_t>(d);
}

std::vector<std::size_t> divisor_selection(const RunConfig& c, const Group& g) {
  if (c.order.empty() || c.order == "all") return divisors(g.order());
  return {parse_divisor(c.order, g)};
}

// Writes either to --out or to the given stream.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InvalidArgument("cannot write " + c.out);
  f << text;
  if (!f) throw InvalidArgument("write failed: " + c.out);
}

std::uint64_t infer_prime(const RunConfig& c, const Group& g) {
  if (c.prime) return c.prime;
  const std::uint64_t p = prime_power_base(g.order());
  if (p == 0) {
    std::ostringstream os;
    os << "criterion requires a p-group; |G| = " << g.order();
    throw InvalidArgument(os.str());
  }
  return p;
}

int cmd_graph(const RunConfig& c, std::ostream& out) {
  const Group g = io::load_group(c.group, io::build_options_from_env());
  if (c.order.empty() || c.order == "all") throw InvalidArgument("graph needs a single divisor in --order");
  const std::size_t d = parse_divisor(c.order, g);
  const TransisoGraph graph = build_graph(g, d, graph_options(c));
  std::string text;
  if (c.format == "dot")
    text = io::graph_to_dot(graph);
  else if (c.format == "json")
    text = io::graph_to_json(graph).dump(2) + "\n";
  else
    text = io::graph_to_text(graph);
  emit(c, out, text);
  return graph.has_unknown() ? kExitUndecided : kExitOk;
}

int cmd_complete(const RunConfig& c, std::ostream& out) {
  const Group g = io::load_group(c.group, io::build_options_from_env());
  Analysis an(g, graph_options(c));
  bool undecided = false;
  io::json reports = io::json::array();
  std::ostringstream text;
  for (std::size_t d : divisor_selection(c, g)) {
    const CompletenessReport r = is_complete(an, d);
    if (!r.unknown.empty()) undecided = true;
    reports.push_back(io::report_to_json(r));
    text << "d=" << d << " " << to_string(r.verdict) << " (" << r.vertices << " vertices, " << r.non_edges.size()
         << " non-edges, " << r.unknown.size() << " unknown)\n";
  }
  if (c.format == "json")
    emit(c, out, io::json{{"group_label", g.label()}, {"group_order", g.order()}, {"divisors", reports}}.dump(2) + "\n");
  else
    emit(c, out, text.str());
  return undecided ? kExitUndecided : kExitOk;
}

int cmd_criterion(const RunConfig& c, std::ostream& out) {
  const Group g = io::load_group(c.group, io::build_options_from_env());
  const CriterionReport r = pgroup_gamma_p_criterion(g, infer_prime(c, g));
  if (c.format == "json") {
    emit(c, out, io::criterion_to_json(r).dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << to_string(r.verdict) << ": " << r.reason << "\n";
    if (r.failing_h) os << "failing H: " << io::json(r.failing_h->generators()).dump() << "\n";
    if (r.failing_l) os << "failing L: " << io::json(r.failing_l->generators()).dump() << "\n";
    emit(c, out, os.str());
  }
  return kExitOk;
}

int cmd_subgroups(const RunConfig& c, std::ostream& out) {
  const Group g = io::load_group(c.group, io::build_options_from_env());
  io::json list = io::json::array();
  std::ostringstream text;
  for (std::size_t d : divisor_selection(c, g)) {
    for (const auto& h : subgroups_of_order(g, d)) {
      list.push_back(io::subgroup_to_json(h));
      text << "order " << h.order() << " " << io::json(h.elements().elements()).dump()
           << (h.is_normal() ? " normal" : "") << "\n";
    }
  }
  emit(c, out, c.format == "json" ? list.dump(2) + "\n" : text.str());
  return kExitOk;
}

int cmd_lattice(const RunConfig& c, std::ostream& out) {
  const Group g = io::load_group(c.group, io::build_options_from_env());
  const SubgroupLattice lat = all_subgroups(g);
  io::json list = io::json::array();
  std::ostringstream text;
  for (const auto& h : lat.all) {
    list.push_back(io::subgroup_to_json(h));
    text << "order " << h.order() << " " << io::json(h.elements().elements()).dump()
         << (h.is_normal() ? " normal" : "") << "\n";
  }
  emit(c, out, c.format == "json" ? list.dump(2) + "\n" : text.str());
  return kExitOk;
}

int cmd_loops(const RunConfig& c, std::ostream& out) {
  const Group g = io::load_group(c.group, io::build_options_from_env());
  if (c.subgroup.empty()) throw InvalidArgument("loops needs --subgroup");
  const Subgroup h = io::parse_subgroup(g, c.subgroup);
  const LoopClassSet set = loop_class_set(h, c.budget);
  if (c.format == "json") {
    emit(c, out, io::class_set_to_json(set).dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "subgroup " << io::json(h.elements().elements()).dump() << " index " << h.index() << ", "
       << nrt_count(h).str() << " NRTs, " << set.nrts_examined << " examined, "
       << (set.exhaustive ? "exhaustive=true" : "exhaustive=false") << " (" << to_string(set.source) << ")\n";
    for (std::size_t i = 0; i < set.representatives.size(); ++i) {
      const auto& cl = set.representatives[i];
      os << "class " << i << ": " << cl.members << " NRTs, " << (is_group_loop(cl.loop) ? "group" : "non-group")
         << ", witness " << io::json(cl.witness).dump() << "\n";
    }
    emit(c, out, os.str());
  }
  return set.exhaustive ? kExitOk : kExitUndecided;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Group g = io::load_group(c.group, io::build_options_from_env());
  if (c.graph.empty()) throw InvalidArgument("verify needs --graph");
  std::ifstream in(c.graph);
  if (!in) throw InvalidArgument("cannot read " + c.graph);
  io::json j;
  try {
    j = io::json::parse(in);
  } catch (const io::json::exception& e) {
    throw InvalidArgument(c.graph + ": " + e.what());
  }
  const TransisoGraph graph = io::graph_from_json(g, j);
  const auto expected = subgroups_of_order(g, graph.d);
  std::vector<std::string> problems = verify_graph(graph);
  if (expected.size() != graph.vertices.size()) problems.push_back("vertex count differs from subgroups_of_order");
  std::ostringstream os;
  for (const auto& p : problems) os << p << "\n";
  os << (problems.empty() ? "OK" : "FAILED") << ": " << graph.decisions.size() << " pairs checked\n";
  emit(c, out, os.str());
  return problems.empty() ? kExitOk : kExitError;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transiso graphs of finite groups", "transiso"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group", c.group, "shortcut name, inline JSON spec, or spec file")->required();
  };
  auto add_graph_flags = [&](CLI::App* sub) {
    sub->add_option("--budget", c.budget, "NRTs enumerated per subgroup before falling back")
        ->check(CLI::PositiveNumber);
    sub->add_option("--strategy", c.strategy)->check(CLI::IsMember({"auto", "exhaustive", "structural"}));
    sub->add_option("--workers", c.workers)->check(CLI::PositiveNumber);
  };
  auto add_output = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--format", c.format)->check(CLI::IsMember(formats));
    sub->add_option("--out", c.out, "output file (default stdout)");
  };

  auto* graph = app.add_subcommand("graph", "build the transiso graph for one divisor");
  add_group(graph);
  graph->add_option("--order", c.order, "divisor d")->required();
  add_graph_flags(graph);
  add_output(graph, {"text", "dot", "json"});

  auto* complete = app.add_subcommand("complete", "completeness verdict per divisor");
  add_group(complete);
  complete->add_option("--order", c.order, "divisor d or \"all\"");
  add_graph_flags(complete);
  add_output(complete, {"text", "json"});

  auto* criterion = app.add_subcommand("criterion", "p-group criterion for the order-p graph");
  add_group(criterion);
  criterion->add_option("--prime", c.prime, "defaults to the prime dividing |G|");
  add_output(criterion, {"text", "json"});

  auto* subgroups = app.add_subcommand("subgroups", "list subgroups of a given order");
  add_group(subgroups);
  subgroups->add_option("--order", c.order, "divisor d or \"all\"");
  add_output(subgroups, {"text", "json"});

  auto* lattice = app.add_subcommand("lattice", "dump the full subgroup lattice");
  add_group(lattice);
  add_output(lattice, {"text", "json"});

  auto* loops = app.add_subcommand("loops", "loop classes induced by the NRTs of a subgroup");
  add_group(loops);
  loops->add_option("--subgroup", c.subgroup, "JSON array of generators")->required();
  loops->add_option("--budget", c.budget)->check(CLI::PositiveNumber);
  add_output(loops, {"text", "json"});

  auto* verify = app.add_subcommand("verify", "re-check every witness of a JSON graph");
  add_group(verify);
  verify->add_option("--graph", c.graph, "graph JSON written by `graph --format json`")->required();
  add_output(verify, {"text"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (graph->parsed()) return cmd_graph(c, out);
    if (complete->parsed()) return cmd_complete(c, out);
    if (criterion->parsed()) return cmd_criterion(c, out);
    if (subgroups->parsed()) return cmd_subgroups(c, out);
    if (lattice->parsed()) return cmd_lattice(c, out);
    if (loops->parsed()) return cmd_loops(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace transiso
