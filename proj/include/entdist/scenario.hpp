#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "entdist/engine.hpp"
#include "entdist/error.hpp"
#include "entdist/memory.hpp"
#include "entdist/network.hpp"
#include "entdist/random.hpp"
#include "entdist/version.hpp"

// Scenario files (JSON in, JSON report out) and the run/sweep drivers.
//
// Scenario layout:
//
//   {
//     "network":    {"nodes": 3, "edges": [[0, 1], [1, 2, 2]]}
//               or  {"generator": {"kind": "grid", "rows": 3, "cols": 3, "seed": 7}},
//     "memory":     {"default": {...}, "nodes": [{"id": 2, "zeta0": 0.05}]},   optional
//     "thresholds": {"d_max": 0.1, "eps_crit": 1, "f_crit": 0.98, "f_delta": 0, "p_max": 1},
//     "demands":    [{"source": 0, "target": 2, "dt": 5, "user": 0}],
//     "seed":       42                                                          optional
//   }
//
// A memory entry accepts zeta0, f0, t0, model ("linear" | "exponential"),
// error_rate, decay_time and fidelity_floor. Unknown keys are rejected.

namespace entdist {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// Scenario failed to parse or validate. `path` names the offending field.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct NetworkSpec {
  bool generated = false;
  // explicit
  std::size_t nodes = 0;
  std::vector<EntangledEdge> edges;
  // generated
  TopologyKind kind = TopologyKind::kLine;
  GeneratorParams params;
  std::uint64_t seed = 0;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

struct Scenario {
  NetworkSpec network_spec;
  EntangledNetwork network;
  std::vector<NodeMemoryState> memory;  // one per node
  Thresholds thresholds;
  std::vector<Demand> demands;
  std::uint64_t seed = 0;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

namespace detail {

inline std::string join_path(const std::string& base, std::string_view key) {
  return base.empty() ? std::string(key) : base + "." + std::string(key);
}

/// Typed, key-checked view of one JSON object.
class FieldReader {
 public:
  FieldReader(const Json& j, std::string path, std::initializer_list<std::string_view> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ScenarioError(path_, "expected an object");
    for (const auto& item : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
        throw ScenarioError(join_path(path_, item.key()), "unknown field");
      }
    }
  }

  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  const Json& at(std::string_view key) const {
    if (!has(key)) throw ScenarioError(join_path(path_, key), "missing required field");
    return j_.at(std::string(key));
  }

  std::string path(std::string_view key) const { return join_path(path_, key); }

  double number(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_number()) throw ScenarioError(path(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ScenarioError(path(key), "expected a finite number");
    return x;
  }

  double number(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::uint64_t unsigned_int(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_number_unsigned()) throw ScenarioError(path(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::uint64_t unsigned_int(std::string_view key, std::uint64_t fallback) const {
    return has(key) ? unsigned_int(key) : fallback;
  }

  std::string string(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_string()) throw ScenarioError(path(key), "expected a string");
    return v.get<std::string>();
  }

 private:
  const Json& j_;
  std::string path_;
};

inline void require(bool ok, const std::string& path, const std::string& message) {
  if (!ok) throw ScenarioError(path, message);
}

inline NetworkSpec read_network(const Json& j) {
  NetworkSpec spec;
  const FieldReader top(j, "network", {"nodes", "edges", "generator"});
  if (top.has("generator")) {
    require(!top.has("nodes") && !top.has("edges"), "network", "give either a generator or explicit nodes/edges");
    const FieldReader g(top.at("generator"), "network.generator",
                        {"kind", "nodes", "rows", "cols", "radius", "upgrade_fraction", "seed"});
    spec.generated = true;
    try {
      spec.kind = parse_topology_kind(g.string("kind"));
    } catch (const InvalidInput& e) {
      throw ScenarioError(g.path("kind"), e.what());
    }
    spec.params.nodes = g.unsigned_int("nodes", 0);
    spec.params.rows = g.unsigned_int("rows", 0);
    spec.params.cols = g.unsigned_int("cols", 0);
    spec.params.radius = g.number("radius", 0.0);
    spec.params.upgrade_fraction = g.number("upgrade_fraction", 0.0);
    spec.seed = g.unsigned_int("seed", 0);
    return spec;
  }

  spec.nodes = top.unsigned_int("nodes");
  const Json& edges = top.at("edges");
  require(edges.is_array(), "network.edges", "expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string path = "network.edges[" + std::to_string(k) + "]";
    const Json& e = edges[k];
    require(e.is_array() && (e.size() == 2 || e.size() == 3), path, "expected [u, v] or [u, v, level]");
    for (const auto& x : e) require(x.is_number_unsigned(), path, "expected non-negative integers");
    EntangledEdge edge{e[0].get<NodeId>(), e[1].get<NodeId>(), 1};
    if (e.size() == 3) edge.level = static_cast<int>(e[2].get<std::uint64_t>());
    spec.edges.push_back(edge);
  }
  return spec;
}

inline EntangledNetwork realize_network(const NetworkSpec& spec) {
  try {
    if (spec.generated) return generate_network(spec.kind, spec.params, spec.seed);
    return build_network(spec.nodes, spec.edges);
  } catch (const InvalidInput& e) {
    throw ScenarioError("network", e.what());
  }
}

inline NodeMemoryState read_memory_entry(const FieldReader& r, NodeMemoryState base) {
  base.zeta0 = r.number("zeta0", base.zeta0);
  base.f0 = r.number("f0", base.f0);
  base.t0 = r.number("t0", base.t0);
  if (r.has("model")) {
    try {
      base.model.kind = parse_drift_kind(r.string("model"));
    } catch (const InvalidInput& e) {
      throw ScenarioError(r.path("model"), e.what());
    }
  }
  base.model.error_rate = r.number("error_rate", base.model.error_rate);
  base.model.decay_time = r.number("decay_time", base.model.decay_time);
  base.model.fidelity_floor = r.number("fidelity_floor", base.model.fidelity_floor);

  require(base.zeta0 >= 0.0 && base.zeta0 <= 1.0, r.path("zeta0"), "must lie in [0,1]");
  require(base.f0 >= 0.0 && base.f0 <= 1.0, r.path("f0"), "must lie in [0,1]");
  require(base.model.error_rate >= 0.0, r.path("error_rate"), "must be >= 0");
  require(base.model.decay_time > 0.0, r.path("decay_time"), "must be > 0");
  require(base.model.fidelity_floor >= 0.0 && base.model.fidelity_floor <= 1.0, r.path("fidelity_floor"),
          "must lie in [0,1]");
  return base;
}

#define ENTDIST_MEMORY_FIELDS "zeta0", "f0", "t0", "model", "error_rate", "decay_time", "fidelity_floor"

inline std::vector<NodeMemoryState> read_memory(const Json* j, std::size_t node_count) {
  NodeMemoryState base;
  std::vector<NodeMemoryState> out(node_count, base);
  if (j == nullptr) return out;

  const FieldReader top(*j, "memory", {"default", "nodes"});
  if (top.has("default")) {
    base = read_memory_entry(FieldReader(top.at("default"), "memory.default", {ENTDIST_MEMORY_FIELDS}), base);
    std::fill(out.begin(), out.end(), base);
  }
  if (top.has("nodes")) {
    const Json& nodes = top.at("nodes");
    require(nodes.is_array(), "memory.nodes", "expected an array");
    std::set<NodeId> seen;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const std::string path = "memory.nodes[" + std::to_string(k) + "]";
      const FieldReader r(nodes[k], path, {"id", ENTDIST_MEMORY_FIELDS});
      const NodeId id = r.unsigned_int("id");
      require(id < node_count, r.path("id"), "node " + std::to_string(id) + " out of range");
      require(seen.insert(id).second, r.path("id"), "node " + std::to_string(id) + " listed twice");
      out[id] = read_memory_entry(r, base);
    }
  }
  return out;
}

#undef ENTDIST_MEMORY_FIELDS

inline void validate_thresholds(const Thresholds& th) {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  require(th.d_max > 0.0, "thresholds.d_max", "must be > 0");
  require(unit(th.eps_crit), "thresholds.eps_crit", "must lie in [0,1]");
  require(unit(th.f_crit), "thresholds.f_crit", "must lie in [0,1]");
  require(unit(th.f_delta), "thresholds.f_delta", "must lie in [0,1]");
  require(th.p_max > 0.0 && th.p_max <= 1.0, "thresholds.p_max", "must lie in (0,1]");
}

inline Thresholds read_thresholds(const Json& j) {
  const FieldReader r(j, "thresholds", {"d_max", "eps_crit", "f_crit", "f_delta", "p_max"});
  Thresholds th;
  th.d_max = r.number("d_max");
  th.eps_crit = r.number("eps_crit", th.eps_crit);
  th.f_crit = r.number("f_crit", th.f_crit);
  th.f_delta = r.number("f_delta", th.f_delta);
  th.p_max = r.number("p_max", th.p_max);
  validate_thresholds(th);
  return th;
}

inline void validate_demand(const Demand& d, std::size_t node_count, const std::string& path) {
  require(d.source < node_count, path + ".source", "node " + std::to_string(d.source) + " out of range");
  require(d.target < node_count, path + ".target", "node " + std::to_string(d.target) + " out of range");
  require(d.dt >= 0.0, path + ".dt", "must be >= 0");
}

inline std::vector<Demand> read_demands(const Json& j, std::size_t node_count) {
  require(j.is_array(), "demands", "expected an array");
  std::vector<Demand> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string path = "demands[" + std::to_string(k) + "]";
    const FieldReader r(j[k], path, {"source", "target", "dt", "user"});
    Demand d;
    d.source = r.unsigned_int("source");
    d.target = r.unsigned_int("target");
    d.dt = r.number("dt", 0.0);
    d.user = r.unsigned_int("user", k);
    validate_demand(d, node_count, path);
    out.push_back(d);
  }
  return out;
}

}  // namespace detail

inline Scenario parse_scenario(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError("", std::string("parse error: ") + e.what());
  }
  const detail::FieldReader top(j, "", {"network", "memory", "thresholds", "demands", "seed"});

  Scenario s;
  s.network_spec = detail::read_network(top.at("network"));
  s.network = detail::realize_network(s.network_spec);
  s.memory = detail::read_memory(top.has("memory") ? &top.at("memory") : nullptr, s.network.node_count());
  s.thresholds = detail::read_thresholds(top.at("thresholds"));
  s.demands = detail::read_demands(top.at("demands"), s.network.node_count());
  s.seed = top.unsigned_int("seed", 0);
  return s;
}

namespace detail {

inline Json memory_json(const NodeMemoryState& m) {
  Json j;
  j["zeta0"] = m.zeta0;
  j["f0"] = m.f0;
  j["t0"] = m.t0;
  j["model"] = std::string(to_string(m.model.kind));
  j["error_rate"] = m.model.error_rate;
  j["decay_time"] = m.model.decay_time;
  j["fidelity_floor"] = m.model.fidelity_floor;
  return j;
}

}  // namespace detail

/// Serializes a scenario so that parse_scenario() reproduces it. Memory is
/// written out per node.
inline std::string emit_scenario(const Scenario& s) {
  Json j;
  Json net;
  if (s.network_spec.generated) {
    const auto& p = s.network_spec.params;
    Json g;
    g["kind"] = std::string(to_string(s.network_spec.kind));
    g["nodes"] = p.nodes;
    g["rows"] = p.rows;
    g["cols"] = p.cols;
    g["radius"] = p.radius;
    g["upgrade_fraction"] = p.upgrade_fraction;
    g["seed"] = s.network_spec.seed;
    net["generator"] = g;
  } else {
    net["nodes"] = s.network_spec.nodes;
    net["edges"] = Json::array();
    for (const auto& e : s.network_spec.edges) net["edges"].push_back({e.u, e.v, e.level});
  }
  j["network"] = net;

  Json nodes = Json::array();
  for (std::size_t i = 0; i < s.memory.size(); ++i) {
    Json m = detail::memory_json(s.memory[i]);
    Json entry;
    entry["id"] = i;
    entry.update(m);
    nodes.push_back(entry);
  }
  j["memory"] = {{"nodes", nodes}};

  const auto& th = s.thresholds;
  j["thresholds"] = {{"d_max", th.d_max},
                     {"eps_crit", th.eps_crit},
                     {"f_crit", th.f_crit},
                     {"f_delta", th.f_delta},
                     {"p_max", th.p_max}};
  j["demands"] = Json::array();
  for (const auto& d : s.demands) {
    j["demands"].push_back({{"source", d.source}, {"target", d.target}, {"dt", d.dt}, {"user", d.user}});
  }
  j["seed"] = s.seed;
  return j.dump(2) + "\n";
}

// --- running ----------------------------------------------------------------

enum class Method { kOpportunistic, kGreedy };

inline std::string_view to_string(Method m) { return m == Method::kGreedy ? "greedy" : "opportunistic"; }

struct RunOptions {
  Method method = Method::kOpportunistic;
  unsigned jobs = 1;
  bool timing = false;
};

struct DemandReport {
  std::size_t index = 0;
  Demand demand;
  bool unreachable = false;
  double source_cost = kInfinity;
  double primary_route_usability = 0.0;
  std::vector<double> node_cost;                 // opportunistic only
  std::vector<std::vector<Candidate>> sets;      // opportunistic only
  RealizedPath path;
  std::optional<NodeId> stuck_node;              // greedy only
  DistributionStats stats;
};

struct Report {
  std::uint64_t seed = 0;
  Method method = Method::kOpportunistic;
  std::vector<DemandReport> demands;
  std::optional<double> elapsed_ms;
};

/// Seed of the sampling stream of demand `index`.
inline std::uint64_t demand_seed(std::uint64_t master, std::size_t index) { return derive_seed(master, index); }

inline DemandReport run_demand(const Scenario& s, std::size_t index, Method method) {
  const Demand& d = s.demands.at(index);
  DemandReport out;
  out.index = index;
  out.demand = d;
  const auto quality = edge_qualities(s.network, s.memory, s.thresholds, d.dt);

  if (method == Method::kGreedy) {
    try {
      out.path = greedy_walk(s.network, quality, d);
      out.source_cost = out.path.pair_cost_sum();
      out.primary_route_usability = out.path.usability();
    } catch (const NoPathError& e) {
      out.unreachable = true;
      out.stuck_node = e.stuck_node();
    }
    return out;
  }

  const DistributionResult r = distribute(s.network, quality, d);
  check_result(r);
  out.unreachable = r.unreachable;
  out.source_cost = r.source_cost();
  out.primary_route_usability = r.path_usability;
  out.node_cost = r.cost;
  out.sets = r.sets;
  out.stats = r.stats;
  if (!r.unreachable) out.path = realize_path(r, demand_seed(s.seed, index));
  return out;
}

inline Report run(const Scenario& s, const RunOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.seed = s.seed;
  rep.method = opts.method;
  rep.demands.resize(s.demands.size());

  const unsigned workers = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(s.demands.size())));
  if (workers <= 1) {
    for (std::size_t k = 0; k < s.demands.size(); ++k) rep.demands[k] = run_demand(s, k, opts.method);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < s.demands.size(); k = next++) {
          try {
            rep.demands[k] = run_demand(s, k, opts.method);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  if (opts.timing) {
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rep;
}

// --- report output ----------------------------------------------------------

/// Rounds to 12 significant digits; non-finite values become null.
inline Json report_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Json to_json(const DistributionStats& st) {
  return {{"extractions", st.extractions},
          {"comparisons", st.comparisons()},
          {"heap_comparisons", st.heap_comparisons},
          {"cost_comparisons", st.cost_comparisons},
          {"relaxations", st.relaxations},
          {"improvements", st.improvements}};
}

inline Json to_json(const DemandReport& d) {
  Json j;
  j["index"] = d.index;
  j["user"] = d.demand.user;
  j["source"] = d.demand.source;
  j["target"] = d.demand.target;
  j["dt"] = report_number(d.demand.dt);
  j["unreachable"] = d.unreachable;
  j["source_cost"] = report_number(d.source_cost);

  Json sets = Json::array();
  for (std::size_t i = 0; i < d.sets.size(); ++i) {
    if (d.sets[i].empty()) continue;
    const auto phi = weighted_selection_probabilities(std::span<const Candidate>(d.sets[i]));
    Json cands = Json::array();
    for (std::size_t k = 0; k < d.sets[i].size(); ++k) {
      const auto& c = d.sets[i][k];
      cands.push_back({{"node", c.node},
                       {"p", report_number(c.quality.p)},
                       {"omega", report_number(c.quality.omega)},
                       {"phi", report_number(phi[k])},
                       {"downstream_cost", report_number(c.downstream_cost)}});
    }
    sets.push_back({{"node", i}, {"cost", report_number(d.node_cost[i])}, {"candidates", cands}});
  }
  j["distributing_sets"] = sets;

  Json hop_w = Json::array();
  for (double w : d.path.hop_usability()) hop_w.push_back(report_number(w));
  j["realized_path"] = {{"nodes", d.path.nodes}, {"hop_usability", hop_w}};
  j["path_usability"] = d.path.nodes.empty() ? Json(nullptr) : report_number(d.path.usability());
  j["primary_route_usability"] = report_number(d.primary_route_usability);
  j["stuck_node"] = d.stuck_node ? Json(*d.stuck_node) : Json(nullptr);
  j["stats"] = to_json(d.stats);
  return j;
}

/// Report document. Without timing the output is a pure function of the
/// scenario and seed.
inline std::string report_to_string(const Report& rep) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["generator"] = {{"name", "entdist"}, {"version", std::string(kVersion)}};
  j["seed"] = rep.seed;
  j["method"] = std::string(to_string(rep.method));
  j["demands"] = Json::array();
  for (const auto& d : rep.demands) j["demands"].push_back(to_json(d));
  if (rep.elapsed_ms) j["timing"] = {{"elapsed_ms", *rep.elapsed_ms}};
  return j.dump(2) + "\n";
}

// --- sweeps -----------------------------------------------------------------

inline constexpr std::string_view kSweepParameters[] = {"d_max", "eps_crit", "f_crit", "f_delta", "p_max", "dt"};

inline std::string sweep_parameter_list() {
  std::string out;
  for (auto name : kSweepParameters) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

/// Copy of `s` with one parameter replaced. `dt` applies to every demand.
inline Scenario with_parameter(const Scenario& s, std::string_view name, double value) {
  Scenario out = s;
  auto& th = out.thresholds;
  if (name == "d_max") th.d_max = value;
  else if (name == "eps_crit") th.eps_crit = value;
  else if (name == "f_crit") th.f_crit = value;
  else if (name == "f_delta") th.f_delta = value;
  else if (name == "p_max") th.p_max = value;
  else if (name == "dt") {
    for (std::size_t k = 0; k < out.demands.size(); ++k) {
      out.demands[k].dt = value;
      detail::validate_demand(out.demands[k], out.network.node_count(), "demands[" + std::to_string(k) + "]");
    }
  } else {
    throw InvalidInput("unknown sweep parameter '" + std::string(name) + "' (valid: " + sweep_parameter_list() + ")");
  }
  detail::validate_thresholds(th);
  return out;
}

struct SweepRow {
  double value = 0.0;
  std::size_t demand = 0;
  double source_cost = kInfinity;
  double path_usability = 0.0;
  bool unreachable = false;
};

inline std::vector<SweepRow> sweep(const Scenario& s, std::string_view parameter, std::span<const double> values,
                                   const RunOptions& opts = {}) {
  if (std::find(std::begin(kSweepParameters), std::end(kSweepParameters), parameter) == std::end(kSweepParameters)) {
    throw InvalidInput("unknown sweep parameter '" + std::string(parameter) + "' (valid: " + sweep_parameter_list() +
                       ")");
  }
  if (values.empty()) throw InvalidInput("sweep: empty value list");

  std::vector<SweepRow> rows;
  for (double v : values) {
    const Report rep = run(with_parameter(s, parameter, v), opts);
    for (const auto& d : rep.demands) {
      rows.push_back({v, d.index, d.source_cost, d.path.nodes.empty() ? 0.0 : d.path.usability(), d.unreachable});
    }
  }
  return rows;
}

inline std::string sweep_to_csv(std::string_view parameter, std::span<const SweepRow> rows) {
  std::string out = "parameter,value,demand,source_cost,path_usability,unreachable\n";
  for (const auto& r : rows) {
    out += std::string(parameter) + "," + format_number(r.value) + "," + std::to_string(r.demand) + "," +
           format_number(r.source_cost) + "," + format_number(r.path_usability) + "," +
           (r.unreachable ? "1" : "0") + "\n";
  }
  return out;
}

// --- generated networks -----------------------------------------------------

inline std::string network_to_json(const EntangledNetwork& net) {
  Json j;
  j["nodes"] = net.node_count();
  j["edges"] = Json::array();
  for (const auto& e : net.edges()) j["edges"].push_back({e.u, e.v, e.level});
  return j.dump(2) + "\n";
}

inline std::string network_to_csv(const EntangledNetwork& net) {
  std::string out = "u,v,level\n";
  for (const auto& e : net.edges()) {
    out += std::to_string(e.u) + "," + std::to_string(e.v) + "," + std::to_string(e.level) + "\n";
  }
  return out;
}

inline std::string complexity_to_csv(std::span<const ComplexityRow> rows) {
  std::string out = "kind,nodes,edges,extractions,comparisons,reference,ratio,within_bound\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.kind)) + "," + std::to_string(r.nodes) + "," + std::to_string(r.edges) + "," +
           std::to_string(r.extractions) + "," + std::to_string(r.comparisons) + "," + format_number(r.reference()) +
           "," + format_number(r.ratio()) + "," + (r.within_bound() ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace entdist
