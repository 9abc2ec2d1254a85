// ahn: command-line front end.
//
//   ahn check --protocol P --target Q [--method forward|backward|exact-diam-deg] ...
//   ahn clique-graph --graph G [--format text|dot] [--bpc N]
//   ahn compile-minsky --machine M [--variant list|butterfly] [--lengths N1,N2]
//   ahn enumerate (--max-nodes N | --diameter K --degree D) --labels a,b [--count]
//   ahn simulate --protocol P --initial G --trace T
//
// Every command prints one JSON report on stdout. Exit codes: 0 success or
// yes, 1 no / no-within-bounds, 2 usage or input error, 3 budget or cap
// exhausted.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ahn/ahn.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct UsageError : ahn::Error {
  using ahn::Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Parse>
auto parse_file(const std::string& path, Parse&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ahn::ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

// --out-dir, else the AHN_OUTPUT_DIR override, else nothing.
std::optional<fs::path> output_dir(const std::string& flag) {
  if (!flag.empty()) return fs::path(flag);
  if (const char* env = std::getenv("AHN_OUTPUT_DIR"); env && *env) return fs::path(env);
  return std::nullopt;
}

int exit_code(ahn::Answer a) {
  switch (a) {
    case ahn::Answer::yes: return kExitYes;
    case ahn::Answer::no:
    case ahn::Answer::no_within_bounds: return kExitNo;
    case ahn::Answer::budget_exhausted: return kExitBudget;
  }
  return kExitUsage;
}

Json graph_json(const ahn::LabeledGraph& g) {
  Json vertices = Json::array();
  for (ahn::Vertex v = 0; v < g.size(); ++v) vertices.push_back({{"id", g.id(v)}, {"label", g.label(v)}});
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.id(u), g.id(v)});
  return {{"vertices", vertices}, {"edges", edges}};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string protocol;
  std::string target;
  std::string method = "forward";
  std::string cls = "unrestricted";
  std::size_t max_nodes = 3;
  std::optional<std::size_t> budget;
  std::size_t diameter = 0;
  std::size_t degree = 0;
  unsigned parallel = 1;
  std::string initial;
  std::string out_dir;
  bool basis_trace = false;
};

int run_check(const CheckArgs& a, Json& report) {
  const auto process = parse_file(a.protocol, ahn::parse_protocol);
  if (!process.has_state(a.target)) throw UsageError("target " + a.target + " is not a state of " + a.protocol);
  ahn::TopologyClass cls = ahn::TopologyClass::unrestricted();
  try {
    cls = ahn::TopologyClass::parse(a.cls);
  } catch (const ahn::Error& e) {
    throw UsageError(e.what());
  }
  const auto dir = output_dir(a.out_dir);
  report["method"] = a.method;
  report["target"] = a.target;

  auto emit_witness = [&](const ahn::CoverWitness& w) {
    Json j = {{"initial", graph_json(w.initial)},
              {"trace", ahn::format_trace(w.initial, w.trace)},
              {"final", graph_json(w.final_config)}};
    if (dir) {
      write_file(*dir / "witness_initial.graph", ahn::format_graph(w.initial));
      write_file(*dir / "witness.trace", ahn::format_trace(w.initial, w.trace));
      j["files"] = {(*dir / "witness_initial.graph").string(), (*dir / "witness.trace").string()};
    }
    report["witness"] = j;
  };

  if (!a.initial.empty()) {
    if (a.method != "forward") throw UsageError("--initial is only valid with --method forward");
    const auto initial = parse_file(a.initial, ahn::parse_graph);
    const auto r = ahn::cover_from(process, initial, a.target, a.budget);
    report["class"] = "fixed";
    report["answer"] = ahn::to_string(r.answer);
    report["statistics"] = {{"topologies_explored", r.topologies_explored}, {"states_visited", r.states_visited}};
    if (r.witness) emit_witness(*r.witness);
    return exit_code(r.answer);
  }

  if (a.method == "forward") {
    if (a.max_nodes == 0) throw UsageError("--max-nodes must be positive");
    report["class"] = cls.to_string();
    report["max_nodes"] = a.max_nodes;
    const auto r = ahn::forward_cover({process, a.target, cls, a.max_nodes, a.budget, a.parallel});
    report["answer"] = ahn::to_string(r.answer);
    report["statistics"] = {{"topologies_explored", r.topologies_explored}, {"states_visited", r.states_visited}};
    if (r.witness) emit_witness(*r.witness);
    return exit_code(r.answer);
  }

  if (a.method == "exact-diam-deg") {
    if (a.diameter == 0 || a.degree == 0) throw UsageError("exact-diam-deg needs positive --diameter and --degree");
    report["diameter"] = a.diameter;
    report["degree"] = a.degree;
    const auto r = ahn::bounded_diameter_degree_cover(process, a.target, a.diameter, a.degree,
                                                      ahn::kDiameterDegreeNodeCap, a.parallel);
    report["answer"] = ahn::to_string(r.answer);
    report["statistics"] = {{"topologies_explored", r.topologies_explored}, {"states_visited", r.states_visited}};
    if (r.witness) emit_witness(*r.witness);
    return exit_code(r.answer);
  }

  if (a.method == "backward") {
    if (!cls.hereditary()) throw UsageError("backward analysis needs a hereditary class, got " + cls.to_string());
    if (!cls.well_quasi_ordered() && !a.budget)
      throw UsageError("class " + cls.to_string() + " needs --budget for backward analysis");
    ahn::BackwardOptions opts;
    opts.iteration_budget = a.budget;
    opts.threads = a.parallel;
    opts.record_trace = a.basis_trace && dir.has_value();
    const auto r = ahn::backward_cover(process, a.target, cls, opts);
    report["class"] = cls.to_string();
    report["answer"] = ahn::to_string(r.answer);
    report["statistics"] = {{"iterations", r.iterations},
                            {"final_basis_size", r.basis.size()},
                            {"basis_size_history", r.basis_size_history}};
    if (r.certificate) {
      Json cert = graph_json(*r.certificate);
      if (dir) {
        write_file(*dir / "certificate.graph", ahn::format_graph(*r.certificate));
        report["certificate_file"] = (*dir / "certificate.graph").string();
      }
      report["certificate"] = cert;
    }
    if (dir) {
      Json files = Json::array();
      for (std::size_t i = 0; i < r.basis.size(); ++i) {
        const auto path = *dir / "basis" / ("element_" + std::to_string(i + 1) + ".graph");
        write_file(path, ahn::format_graph(r.basis.elements()[i]));
        files.push_back(path.string());
      }
      report["basis_files"] = files;
      for (std::size_t k = 0; k < r.trace.size(); ++k)
        for (std::size_t i = 0; i < r.trace[k].size(); ++i)
          write_file(*dir / "trace" / ("iteration_" + std::to_string(k)) / ("element_" + std::to_string(i + 1) + ".graph"),
                     ahn::format_graph(r.trace[k].elements()[i]));
    }
    return exit_code(r.answer);
  }
  throw UsageError("unknown method " + a.method);
}

// ---------------------------------------------------------------- clique-graph

struct CliqueArgs {
  std::string graph;
  std::string format = "text";
  std::optional<std::size_t> bpc;
  std::string out;
};

int run_clique_graph(const CliqueArgs& a, Json& report) {
  const auto g = parse_file(a.graph, ahn::parse_graph);
  if (!ahn::is_connected(g)) throw UsageError(a.graph + ": the graph is not connected");
  const auto k = ahn::build_clique_graph(g);
  const std::string text = a.format == "dot" ? ahn::clique_graph_to_dot(k) : ahn::format_graph(k.as_graph());
  report["vertices"] = k.vertex_count();
  report["cliques"] = k.clique_count();
  report["longest_path"] = ahn::clique_graph_longest_path(k);
  if (a.bpc) {
    report["bpc_bound"] = *a.bpc;
    report["bpc"] = ahn::is_bpc(g, *a.bpc);
  }
  report["format"] = a.format;
  if (!a.out.empty()) {
    write_file(a.out, text);
    report["file"] = a.out;
  } else {
    report["output"] = text;
  }
  return kExitYes;
}

// ---------------------------------------------------------------- compile-minsky

struct MinskyArgs {
  std::string machine;
  std::string variant = "list";
  std::string lengths = "1,1";
  std::string out_dir;
  std::size_t simulate_budget = 10000;
};

int run_compile_minsky(const MinskyArgs& a, Json& report) {
  const auto m = parse_file(a.machine, ahn::parse_machine);
  const auto parts = split_list(a.lengths);
  if (parts.size() != 2) throw UsageError("--lengths expects N1,N2");
  std::size_t n1 = 0, n2 = 0;
  try {
    n1 = std::stoul(parts[0]);
    n2 = std::stoul(parts[1]);
  } catch (const std::exception&) {
    throw UsageError("--lengths expects two positive integers");
  }
  if (n1 == 0 || n2 == 0) throw UsageError("--lengths expects two positive integers");
  const auto variant = a.variant == "butterfly" ? ahn::ReductionVariant::butterfly : ahn::ReductionVariant::list;
  const auto compiled = ahn::compile_machine(m, variant);
  const auto topology = compiled.topology(n1, n2);
  const auto stem = fs::path(a.machine).stem().string();

  report["variant"] = std::string(ahn::to_string(variant));
  report["lengths"] = {n1, n2};
  report["halt_state"] = compiled.halt_state;
  report["states"] = compiled.protocol.states().size();
  report["rules"] = compiled.protocol.rules().size();
  report["topology_vertices"] = topology.size();
  report["topology_diameter"] = ahn::diameter(topology);
  const auto sim = ahn::simulate_machine(m, a.simulate_budget);
  report["simulation"] = {{"halted", sim.halted},
                          {"steps", sim.steps},
                          {"budget", a.simulate_budget},
                          {"max_counters", {sim.max_counters[0], sim.max_counters[1]}}};
  const auto dir = output_dir(a.out_dir).value_or(fs::path("."));
  const auto protocol_path = dir / (stem + "_" + a.variant + ".ahn");
  const auto graph_path = dir / (stem + "_" + a.variant + ".graph");
  write_file(protocol_path, ahn::format_protocol(compiled.protocol));
  write_file(graph_path, ahn::format_graph(topology));
  report["files"] = {{"protocol", protocol_path.string()}, {"topology", graph_path.string()}};
  return kExitYes;
}

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
  std::size_t max_nodes = 0;
  std::size_t diameter = 0;
  std::size_t degree = 0;
  std::string labels = "q";
  std::string cls = "unrestricted";
  bool count = false;
  std::size_t cap = ahn::kDefaultEnumerationCap;
  std::string out_dir;
  bool max_nodes_given = false;
};

int run_enumerate(const EnumerateArgs& a, Json& report) {
  ahn::TopologyClass cls = ahn::TopologyClass::unrestricted();
  try {
    cls = ahn::TopologyClass::parse(a.cls);
  } catch (const ahn::Error& e) {
    throw UsageError(e.what());
  }
  std::size_t max_nodes = a.max_nodes;
  if (a.diameter || a.degree) {
    if (!a.diameter || !a.degree) throw UsageError("--diameter and --degree go together");
    cls = ahn::TopologyClass::intersection(
        {cls, ahn::TopologyClass::bounded_diameter(a.diameter), ahn::TopologyClass::bounded_degree(a.degree)});
    const std::size_t order = ahn::max_order_for_diameter_degree(a.diameter, a.degree);
    if (!a.max_nodes_given) max_nodes = order;
    if (max_nodes > ahn::kDiameterDegreeNodeCap)
      throw ahn::CapacityError("diameter/degree class admits graphs with " + std::to_string(order) + " vertices");
  } else if (!a.max_nodes_given) {
    throw UsageError("give --max-nodes or --diameter with --degree");
  }
  if (max_nodes == 0) throw UsageError("--max-nodes must be positive");
  const auto labels = split_list(a.labels);
  if (labels.empty()) throw UsageError("--labels needs at least one label");

  report["max_nodes"] = max_nodes;
  report["labels"] = labels;
  report["class"] = cls.to_string();
  const auto dir = output_dir(a.out_dir);
  std::size_t count = 0;
  Json graphs = Json::array();
  ahn::for_each_connected_graph(
      max_nodes, labels, cls,
      [&](const ahn::LabeledGraph& g) {
        ++count;
        if (a.count) return true;
        if (dir) {
          std::ostringstream name;
          name << "graph_" << std::setw(6) << std::setfill('0') << count << ".graph";
          write_file(*dir / name.str(), ahn::format_graph(g));
          graphs.push_back((*dir / name.str()).string());
        } else {
          graphs.push_back(ahn::format_graph(g));
        }
        return true;
      },
      a.cap);
  report["count"] = count;
  if (!a.count) report[dir ? "files" : "graphs"] = graphs;
  return kExitYes;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string protocol;
  std::string initial;
  std::string trace;
  std::string target;
};

int run_simulate(const SimulateArgs& a, Json& report) {
  const auto process = parse_file(a.protocol, ahn::parse_protocol);
  const auto initial = parse_file(a.initial, ahn::parse_graph);
  const auto trace = parse_file(a.trace, [&](const std::string& t) { return ahn::parse_trace(t, initial); });
  for (const auto& l : initial.labels())
    if (!process.has_state(l)) throw UsageError("label " + l + " is not a state of " + a.protocol);
  ahn::LabeledGraph current = initial;
  Json steps = Json::array();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    try {
      current = ahn::apply_action(process, current, trace[i]);
    } catch (const ahn::ActionError& e) {
      throw UsageError("step " + std::to_string(i + 1) + ": " + e.what());
    }
    steps.push_back(current.labels());
  }
  report["steps"] = trace.size();
  report["labels_after_each_step"] = steps;
  report["final"] = graph_json(current);
  if (!a.target.empty()) {
    const bool covered = std::find(current.labels().begin(), current.labels().end(), a.target) != current.labels().end();
    report["target"] = a.target;
    report["answer"] = covered ? "yes" : "no";
    return covered ? kExitYes : kExitNo;
  }
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ad hoc network protocol verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ahn 1.0");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Decide whether a control state can be covered");
  c->add_option("--protocol", check.protocol, "Protocol file")->required();
  c->add_option("--target", check.target, "Target state")->required();
  c->add_option("--method", check.method, "forward, backward or exact-diam-deg")
      ->check(CLI::IsMember({"forward", "backward", "exact-diam-deg"}));
  c->add_option("--class", check.cls, "Topology class, e.g. bounded-path:2, bpc:3, diameter:2+degree:3");
  c->add_option("--max-nodes", check.max_nodes, "Largest initial topology for forward search");
  c->add_option("--budget", check.budget, "Forward: configurations to visit; backward: saturation rounds");
  c->add_option("--diameter", check.diameter, "Diameter bound for exact-diam-deg");
  c->add_option("--degree", check.degree, "Degree bound for exact-diam-deg");
  c->add_option("--parallel", check.parallel, "Worker threads")->check(CLI::Range(1u, 256u));
  c->add_option("--initial", check.initial, "Explore from this fixed configuration only");
  c->add_option("--out-dir", check.out_dir, "Write witness, certificate and basis files here");
  c->add_flag("--basis-trace", check.basis_trace, "With --out-dir, also write the basis after every round");

  CliqueArgs clique;
  auto* k = app.add_subcommand("clique-graph", "Build the maximal clique graph");
  k->add_option("--graph", clique.graph, "Graph file")->required();
  k->add_option("--format", clique.format, "text or dot")->check(CLI::IsMember({"text", "dot"}));
  k->add_option("--bpc", clique.bpc, "Report membership in BPC_n")->check(CLI::PositiveNumber);
  k->add_option("--out", clique.out, "Write the clique graph to this file");

  MinskyArgs minsky;
  auto* m = app.add_subcommand("compile-minsky", "Compile a two-counter machine into a protocol");
  m->add_option("--machine", minsky.machine, "Machine file")->required();
  m->add_option("--variant", minsky.variant, "list or butterfly")->check(CLI::IsMember({"list", "butterfly"}));
  m->add_option("--lengths", minsky.lengths, "Cells per counter list, N1,N2");
  m->add_option("--out-dir", minsky.out_dir, "Output directory (default: current directory)");
  m->add_option("--simulate-budget", minsky.simulate_budget, "Steps for the direct simulation");

  EnumerateArgs enumerate;
  auto* e = app.add_subcommand("enumerate", "Enumerate connected topologies up to isomorphism");
  auto* max_nodes_opt = e->add_option("--max-nodes", enumerate.max_nodes, "Largest vertex count");
  e->add_option("--diameter", enumerate.diameter, "Diameter bound");
  e->add_option("--degree", enumerate.degree, "Degree bound");
  e->add_option("--labels", enumerate.labels, "Comma-separated labels");
  e->add_option("--class", enumerate.cls, "Topology class");
  e->add_flag("--count", enumerate.count, "Print only the count");
  e->add_option("--cap", enumerate.cap, "Largest number of graphs held per size");
  e->add_option("--out-dir", enumerate.out_dir, "Write one graph file per topology");

  SimulateArgs simulate;
  auto* s = app.add_subcommand("simulate", "Replay a witness trace");
  s->add_option("--protocol", simulate.protocol, "Protocol file")->required();
  s->add_option("--initial", simulate.initial, "Initial configuration")->required();
  s->add_option("--trace", simulate.trace, "Trace file")->required();
  s->add_option("--target", simulate.target, "Report whether this state is present at the end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForVersion& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsage;
  }
  enumerate.max_nodes_given = max_nodes_opt->count() > 0;

  const auto start = std::chrono::steady_clock::now();
  Json report;
  report["schema"] = 1;
  Json echo = Json::array();
  for (int i = 1; i < argc; ++i) echo.push_back(argv[i]);
  int code = kExitUsage;
  try {
    if (c->parsed()) {
      report["command"] = "check";
      report["argv"] = echo;
      code = run_check(check, report);
    } else if (k->parsed()) {
      report["command"] = "clique-graph";
      report["argv"] = echo;
      code = run_clique_graph(clique, report);
    } else if (m->parsed()) {
      report["command"] = "compile-minsky";
      report["argv"] = echo;
      code = run_compile_minsky(minsky, report);
    } else if (e->parsed()) {
      report["command"] = "enumerate";
      report["argv"] = echo;
      code = run_enumerate(enumerate, report);
    } else if (s->parsed()) {
      report["command"] = "simulate";
      report["argv"] = echo;
      code = run_simulate(simulate, report);
    }
  } catch (const ahn::CapacityError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report["duration_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  std::cout << report.dump(2) << '\n';
  return code;
}
