// entdist command-line front end.
//
//   entdist run <scenario.json> [--seed N] [--greedy] [--format report|csv] [--output PATH]
//   entdist sweep <scenario.json> --param NAME --values V1,V2,... [...]
//   entdist generate --kind line|grid|random_geometric [--nodes N] [--rows R --cols C] [--radius X]
//   entdist probe-complexity --sizes N1,N2,... [--kind line|random_geometric|grid]
//
// Exit codes: 0 ok (unreachable demands included), 1 usage, 2 scenario
// validation, 3 internal invariant violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entdist/entdist.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitScenario = 2;
constexpr int kExitInternal = 3;

constexpr const char* kOutputDirEnv = "ENTDIST_OUTPUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) {
    if (item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("--sizes: '" + item + "' is not a non-negative integer");
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw UsageError("--sizes: empty list");
  return out;
}

/// Writes to stdout, or to `path` (relative paths resolve against
/// $ENTDIST_OUTPUT_DIR when it is set).
void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::filesystem::path target(path);
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0' && target.is_relative()) {
    target = std::filesystem::path(dir) / target;
  }
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + target.string() + "'");
  out << text;
}

std::string run_csv(const entdist::Report& rep) {
  std::string out = "demand,user,source,target,dt,source_cost,path_usability,unreachable,path\n";
  for (const auto& d : rep.demands) {
    std::string path;
    for (std::size_t k = 0; k < d.path.nodes.size(); ++k) {
      if (k) path += '-';
      path += std::to_string(d.path.nodes[k]);
    }
    out += std::to_string(d.index) + "," + std::to_string(d.demand.user) + "," + std::to_string(d.demand.source) + "," +
           std::to_string(d.demand.target) + "," + entdist::format_number(d.demand.dt) + "," +
           entdist::format_number(d.source_cost) + "," +
           entdist::format_number(d.path.nodes.empty() ? 0.0 : d.path.usability()) + "," +
           (d.unreachable ? "1" : "0") + "," + path + "\n";
  }
  return out;
}

std::string sweep_json(const std::string& param, const std::vector<entdist::SweepRow>& rows) {
  entdist::Json j;
  j["schema_version"] = entdist::kReportSchemaVersion;
  j["parameter"] = param;
  j["rows"] = entdist::Json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"value", entdist::report_number(r.value)},
                         {"demand", r.demand},
                         {"source_cost", entdist::report_number(r.source_cost)},
                         {"path_usability", entdist::report_number(r.path_usability)},
                         {"unreachable", r.unreachable}});
  }
  return j.dump(2) + "\n";
}

std::string probe_json(const std::vector<entdist::ComplexityRow>& rows) {
  entdist::Json j;
  j["schema_version"] = entdist::kReportSchemaVersion;
  j["constant"] = entdist::kComparisonConstant;
  j["rows"] = entdist::Json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"kind", std::string(entdist::to_string(r.kind))},
                         {"nodes", r.nodes},
                         {"edges", r.edges},
                         {"extractions", r.extractions},
                         {"comparisons", r.comparisons},
                         {"ratio", entdist::report_number(r.ratio())},
                         {"within_bound", r.within_bound()}});
  }
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opportunistic entanglement distribution simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(entdist::kVersion));

  std::string scenario_path;
  std::string output;
  std::string format;
  std::uint64_t seed = 0;
  bool greedy = false;
  bool timing = false;
  unsigned jobs = 1;

  auto* run_cmd = app.add_subcommand("run", "Run every demand of a scenario");
  run_cmd->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
  auto* run_seed = run_cmd->add_option("--seed", seed, "Override the scenario's master seed");
  run_cmd->add_flag("--greedy", greedy, "Use the local greedy walk instead of minimal-cost distribution");
  run_cmd->add_option("--format", format, "report (JSON) or csv")->check(CLI::IsMember({"report", "csv"}));
  run_cmd->add_option("--output", output, "Output file (default stdout)");
  run_cmd->add_option("--jobs", jobs, "Demands evaluated in parallel")->check(CLI::Range(1u, 256u));
  run_cmd->add_flag("--timing", timing, "Append wall-clock timing to the report");

  std::string param;
  std::string values_text;
  auto* sweep_cmd = app.add_subcommand("sweep", "Re-run a scenario over a list of parameter values");
  sweep_cmd->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
  sweep_cmd->add_option("--param", param, "d_max, eps_crit, f_crit, f_delta, p_max or dt")->required();
  sweep_cmd->add_option("--values", values_text, "Comma-separated values")->required();
  auto* sweep_seed = sweep_cmd->add_option("--seed", seed, "Override the scenario's master seed");
  sweep_cmd->add_flag("--greedy", greedy, "Use the local greedy walk");
  sweep_cmd->add_option("--format", format, "csv or report (JSON)")->check(CLI::IsMember({"report", "csv"}));
  sweep_cmd->add_option("--output", output, "Output file (default stdout)");

  std::string kind_name = "line";
  entdist::GeneratorParams gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a network description");
  gen_cmd->add_option("--kind", kind_name, "line, grid or random_geometric")
      ->check(CLI::IsMember({"line", "grid", "random_geometric"}));
  gen_cmd->add_option("--nodes", gen.nodes, "Node count (line, random_geometric)");
  gen_cmd->add_option("--rows", gen.rows, "Grid rows");
  gen_cmd->add_option("--cols", gen.cols, "Grid columns");
  gen_cmd->add_option("--radius", gen.radius, "Connection radius in the unit square");
  gen_cmd->add_option("--upgrade-fraction", gen.upgrade_fraction, "Probability of promoting an edge to level 2 or 3");
  gen_cmd->add_option("--seed", seed, "Generator seed");
  gen_cmd->add_option("--format", format, "report (JSON) or csv")->check(CLI::IsMember({"report", "csv"}));
  gen_cmd->add_option("--output", output, "Output file (default stdout)");

  std::string sizes_text;
  std::string probe_kind = "line";
  auto* probe_cmd = app.add_subcommand("probe-complexity", "Measure operation counts of the distribution engine");
  probe_cmd->add_option("--sizes", sizes_text, "Comma-separated node counts")->required();
  probe_cmd->add_option("--kind", probe_kind, "line, grid or random_geometric")
      ->check(CLI::IsMember({"line", "grid", "random_geometric"}));
  probe_cmd->add_option("--seed", seed, "Seed");
  probe_cmd->add_option("--format", format, "csv or report (JSON)")->check(CLI::IsMember({"report", "csv"}));
  probe_cmd->add_option("--output", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const entdist::RunOptions opts{greedy ? entdist::Method::kGreedy : entdist::Method::kOpportunistic, jobs, timing};

    if (*run_cmd) {
      auto scenario = entdist::parse_scenario(read_file(scenario_path));
      if (*run_seed) scenario.seed = seed;
      const auto report = entdist::run(scenario, opts);
      emit(format == "csv" ? run_csv(report) : entdist::report_to_string(report), output);
    } else if (*sweep_cmd) {
      auto scenario = entdist::parse_scenario(read_file(scenario_path));
      if (*sweep_seed) scenario.seed = seed;
      const auto values = parse_doubles(values_text, "--values");
      const auto rows = entdist::sweep(scenario, param, values, opts);
      emit(format == "report" ? sweep_json(param, rows) : entdist::sweep_to_csv(param, rows), output);
    } else if (*gen_cmd) {
      const auto net = entdist::generate_network(entdist::parse_topology_kind(kind_name), gen, seed);
      emit(format == "csv" ? entdist::network_to_csv(net) : entdist::network_to_json(net), output);
    } else if (*probe_cmd) {
      const auto sizes = parse_sizes(sizes_text);
      const auto rows = entdist::complexity_probe(sizes, entdist::parse_topology_kind(probe_kind), seed);
      emit(format == "report" ? probe_json(rows) : entdist::complexity_to_csv(rows), output);
      for (const auto& r : rows) {
        if (!r.within_bound()) {
          std::cerr << "entdist: complexity bound exceeded at |V|=" << r.nodes << "\n";
          return kExitInternal;
        }
      }
    }
  } catch (const entdist::ScenarioError& e) {
    std::cerr << "entdist: scenario error: " << e.what() << "\n";
    return kExitScenario;
  } catch (const UsageError& e) {
    std::cerr << "entdist: " << e.what() << "\n";
    return kExitUsage;
  } catch (const entdist::InvalidInput& e) {
    std::cerr << "entdist: " << e.what() << "\n";
    return kExitUsage;
  } catch (const entdist::DomainError& e) {
    std::cerr << "entdist: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "entdist: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
