#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sdsk/analysis.hpp"
#include "sdsk/builtin.hpp"
#include "sdsk/report.hpp"

namespace {

using namespace sdsk;

constexpr int exit_input = 2;
constexpr int exit_budget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// An edge list starts with "vertices N"; anything else is read as a model.
bool looks_like_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    if (!(ls >> word) || word[0] == '#') continue;
    return word == "vertices";
  }
  return false;
}

Builtin load(const std::string& target) {
  if (is_builtin(target)) return builtin(target);
  std::string text = read_file(target);
  if (looks_like_edge_list(text)) return parse_edge_list(text);
  return parse_model(text);
}

NetworkModel load_model(const std::string& target) {
  auto b = load(target);
  if (auto* m = std::get_if<NetworkModel>(&b)) return std::move(*m);
  throw InputError("'" + target + "' is a graph; this command needs a model");
}

SimpleGraph load_graph(const std::string& target, bool extended) {
  auto b = load(target);
  if (auto* g = std::get_if<SimpleGraph>(&b)) {
    if (extended) throw InputError("--extended applies to models only");
    return *g;
  }
  const auto& m = std::get<NetworkModel>(b);
  return extended ? extended_graph(m) : dependency_graph(m);
}

std::vector<ParameterAssignment> parse_params(const NetworkModel& m, const std::vector<std::string>& specs) {
  std::vector<ParameterAssignment> out;
  for (const auto& s : specs) out.push_back(parse_assignment(m, s));
  return out;
}

UpdateScheme parse_update(const NetworkModel& m, const std::string& text) {
  if (text == "parallel") return ParallelUpdate{};
  UpdateOrder pi;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      pi.sequence.push_back(static_cast<Vertex>(v));
    } catch (const std::logic_error&) {
      throw InputError("bad update order entry '" + item + "'");
    }
  }
  if (!pi.is_permutation_of(m.size()))
    throw InputError("update order must be a permutation of 1.." + std::to_string(m.size()));
  return pi;
}

std::string state_string(const StateSpace& space, StateIndex code) {
  auto x = space.decode(code);
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acyclic orientations, kappa-classes and attractor structure of sequential dynamical systems"};
  app.require_subcommand(1);
  std::string builtins;
  for (const auto& n : builtin_names()) builtins += (builtins.empty() ? "" : ", ") + n;
  app.footer("Built-in targets: " + builtins + ". Otherwise pass a .gdsm model file or an edge-list file.");

  std::string target, out_path, format = "json", update_text;
  std::vector<std::string> param_specs;
  bool extended = false, dump = false, no_mass = false;
  unsigned workers = 1;
  std::size_t max_vertices = 7;
  std::uint64_t state_budget = default_state_budget, enum_budget = AnalysisOptions{}.enumeration_budget;

  auto add_budget = [&](CLI::App* c) {
    c->add_option("--state-budget", state_budget, "Largest state space to tabulate");
  };

  auto* cmd_alpha = app.add_subcommand("alpha", "Number of acyclic orientations");
  auto* cmd_kappa = app.add_subcommand("kappa", "Number of kappa-classes");
  for (auto* c : {cmd_alpha, cmd_kappa}) {
    c->add_option("target", target, "Model or graph")->required();
    c->add_flag("--extended", extended, "Include parameters as vertices");
  }

  auto* cmd_reps = app.add_subcommand("reps", "List one update order per kappa-class");
  cmd_reps->add_option("target", target, "Model or graph")->required();
  cmd_reps->add_flag("--extended", extended, "Include parameters as vertices");
  cmd_reps->add_option("--out", out_path, "Write to file instead of stdout");

  auto* cmd_analyze = app.add_subcommand("analyze", "Cycle-equivalence classes over kappa-representatives");
  cmd_analyze->add_option("target", target, "Model")->required();
  cmd_analyze->add_option("--params", param_specs, "Parameter assignment k=v,...; repeatable")
      ->delimiter(';');
  cmd_analyze->add_flag("--extended", extended, "Report on the graph with parameters as vertices");
  cmd_analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd_analyze->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd_analyze->add_flag("--no-mass", no_mass, "Skip orientation-mass accounting");
  cmd_analyze->add_option("--enumeration-budget", enum_budget, "Largest alpha(G) to enumerate");
  cmd_analyze->add_option("--out", out_path, "Write to file instead of stdout");
  add_budget(cmd_analyze);

  auto* cmd_phase = app.add_subcommand("phase-space", "Cycle structure of one update scheme");
  cmd_phase->add_option("target", target, "Model")->required();
  cmd_phase->add_option("--update", update_text, "Comma-separated order or 'parallel'")->required();
  cmd_phase->add_option("--params", param_specs, "Parameter assignment k=v,...")->expected(0, 1);
  cmd_phase->add_flag("--dump", dump, "Print the successor table as CSV");
  add_budget(cmd_phase);

  auto* cmd_dist = app.add_subcommand("distribution", "Share of acyclic orientations per class");
  cmd_dist->add_option("target", target, "Model")->required();
  cmd_dist->add_flag("--extended", extended, "Report on the graph with parameters as vertices");
  cmd_dist->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd_dist->add_option("--enumeration-budget", enum_budget, "Largest alpha(G) to enumerate");
  add_budget(cmd_dist);

  auto* cmd_bist = app.add_subcommand("bistability", "kappa_F and bistable class counts per assignment");
  cmd_bist->add_option("target", target, "Model")->required();
  cmd_bist->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  add_budget(cmd_bist);

  auto* cmd_brute = app.add_subcommand("brute", "Distinct cycle structures over all n! update orders");
  cmd_brute->add_option("target", target, "Model")->required();
  cmd_brute->add_option("--params", param_specs, "Parameter assignment k=v,...; repeatable")
      ->delimiter(';');
  cmd_brute->add_option("--max-vertices", max_vertices, "Refuse models larger than this");
  add_budget(cmd_brute);

  auto* cmd_list = app.add_subcommand("list", "Print the built-in targets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }

  try {
    AnalysisOptions options;
    options.workers = workers;
    options.state_budget = state_budget;
    options.enumeration_budget = enum_budget;
    options.orientation_mass = !no_mass;
    const GraphChoice graph = extended ? GraphChoice::extended : GraphChoice::base;

    if (cmd_alpha->parsed() || cmd_kappa->parsed()) {
      SimpleGraph g = load_graph(target, extended);
      auto t0 = std::chrono::steady_clock::now();
      CountResult r = cmd_alpha->parsed() ? alpha(g) : kappa(g);
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      std::cout << r.value << "\n";
      std::cerr << std::fixed << std::setprecision(2) << ms << " ms\n";
    } else if (cmd_reps->parsed()) {
      SimpleGraph g = load_graph(target, extended);
      std::string text;
      for (const auto& pi : kappa_class_representatives(g)) {
        for (std::size_t i = 0; i < pi.sequence.size(); ++i)
          text += (i ? " " : "") + std::to_string(pi.sequence[i]);
        text += "\n";
      }
      write_output(out_path, text);
    } else if (cmd_analyze->parsed()) {
      NetworkModel m = load_model(target);
      auto report = classify(m, graph, parse_params(m, param_specs), options);
      write_output(out_path, format == "json" ? to_json(report).dump(2) + "\n" : to_csv(report));
    } else if (cmd_phase->parsed()) {
      NetworkModel m = load_model(target);
      ParameterAssignment params;
      if (!param_specs.empty()) params = parse_assignment(m, param_specs.front());
      else if (!m.parameters.empty()) throw InputError("model has parameters; pass --params");
      PhaseSpace ps = phase_space(m, params, parse_update(m, update_text), state_budget);
      if (dump) {
        std::cout << ps.to_csv();
      } else {
        CycleStructure cs = cycle_structure(ps);
        std::cout << "update " << to_string(ps.update) << "\n"
                  << "states " << ps.size() << "\n"
                  << "cycles " << cs.to_string() << "\n";
        for (const auto& w : cs.witnesses)
          std::cout << "  length " << w.length << " through " << state_string(ps.space, w.state) << "\n";
      }
    } else if (cmd_dist->parsed()) {
      NetworkModel m = load_model(target);
      std::cout << "rank,multiset,mass,percentage\n";
      for (const auto& e : orientation_distribution(m, graph, options))
        std::cout << e.rank << ",\"" << e.multiset << "\"," << e.mass << "," << std::setprecision(10)
                  << e.percentage << "\n";
    } else if (cmd_bist->parsed()) {
      NetworkModel m = load_model(target);
      std::cout << "parameters,kappa_F,bistable\n";
      for (const auto& row : bistability(m, {}, options).rows)
        std::cout << '"' << row.parameters << "\"," << row.kappa_f << "," << row.bistable << "\n";
    } else if (cmd_brute->parsed()) {
      NetworkModel m = load_model(target);
      for (const auto& cs : bruteforce_classify(m, parse_params(m, param_specs), max_vertices, state_budget))
        std::cout << cs.to_string() << "\n";
    } else if (cmd_list->parsed()) {
      for (const auto& n : builtin_names()) std::cout << n << "\n";
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_budget;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
