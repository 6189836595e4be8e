// Command-line front end: spectrum | forest | bounds | cycles | dynamics |
// oracle | corpus. Exit codes: 0 all assertions hold, 1 soundness violation,
// 2 usage or I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "graphdim/bounds.hpp"
#include "graphdim/cycles.hpp"
#include "graphdim/dynamics.hpp"
#include "graphdim/forest_search.hpp"
#include "graphdim/io.hpp"
#include "graphdim/relation.hpp"
#include "graphdim/spectral.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace graphdim;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    io::write_file(out_path, j.dump(2) + "\n");
  }
}

std::vector<MatrixKind> kinds_from_flag(const std::string& kind) {
  if (kind == "all")
    return {MatrixKind::laplacian, MatrixKind::normalized_laplacian, MatrixKind::adjacency};
  const auto k = matrix_kind_from_string(kind);
  if (!k) throw CLI::ValidationError("--kind", "unknown matrix kind '" + kind + "'");
  return {*k};
}

Coupling parse_coupling(const std::string& spec) {
  if (spec.rfind("sin", 0) == 0) {
    double gain = 1.0;
    if (auto pos = spec.find("K="); pos != std::string::npos)
      gain = std::stod(spec.substr(pos + 2));
    return Coupling::sin(gain);
  }
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<double> coeffs;
    std::stringstream ss(spec.substr(5));
    std::string tok;
    while (std::getline(ss, tok, ',')) coeffs.push_back(std::stod(tok));
    return Coupling::poly(std::move(coeffs));
  }
  throw CLI::ValidationError("--coupling", "expected sin[:K=..] or poly:a1,a3,...");
}

int cmd_spectrum(const std::string& graph_arg, const std::string& kind_flag, double tau,
                 const std::string& exact_lambda, const std::string& out_path) {
  const Graph g = io::parse_graph_argument(graph_arg);
  json result;
  result["graph"] = graph_arg;
  for (MatrixKind kind : kinds_from_flag(kind_flag)) {
    const DenseMatrix m = build_matrix(g, kind);
    const double t = tau > 0 ? tau : default_tau(m);
    json entry = io::to_json(spectrum_with_exact(g, kind, t));
    if (!exact_lambda.empty()) {
      exactq::Rat lambda(exact_lambda);
      lambda.canonicalize();
      entry["requested_exact"] = {{"lambda", lambda.get_str()},
                                  {"multiplicity", exact_multiplicity(g, kind, lambda)}};
    }
    result[to_string(kind)] = std::move(entry);
  }
  emit(result, out_path);
  return 0;
}

int cmd_forest(const std::string& graph_arg, const std::string& mode_flag, bool heuristic,
               double time_limit, long node_limit, const std::string& out_path) {
  const Graph g = io::parse_graph_argument(graph_arg);
  const BoundMode mode = mode_flag == "strong" ? BoundMode::strong : BoundMode::weak;
  SearchBudget budget;
  budget.exact = !heuristic;
  budget.time_limit_seconds = time_limit;
  budget.node_limit = node_limit;
  const ForestCertificate cert = best_forest(g, mode, budget);
  validate_certificate(g, cert);
  emit(io::to_json(cert), out_path);
  return 0;
}

void print_bound_table(const BoundReport& report) {
  std::printf("%-18s %-20s %10s %5s %6s %7s %6s %6s\n", report.graph_name.c_str(),
              to_string(report.kind).c_str(), "lambda", "mult", "weak", "strong", "tight",
              "sound");
  for (const auto& row : report.rows) {
    std::printf("%-18s %-20s %10.6g %5ld %6ld %7s %6s %6s\n", "", "", row.lambda,
                row.multiplicity, row.weak_bound,
                row.strong_bound ? std::to_string(*row.strong_bound).c_str() : "-",
                row.tight ? "yes" : "no", row.sound ? "yes" : "NO");
  }
}

int run_bounds_on_graph(const Graph& g, const std::string& name,
                        const std::string& kind_flag, double tau,
                        const SearchBudget& budget, bool table, json& out,
                        std::string& csv) {
  bool sound = true;
  json reports = json::array();
  for (MatrixKind kind : kinds_from_flag(kind_flag)) {
    if (kind == MatrixKind::normalized_laplacian) {
      bool isolated = false;
      for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0) isolated = true;
      if (isolated) {
        reports.push_back({{"kind", to_string(kind)}, {"skipped", "isolated vertices"}});
        continue;
      }
    }
    const BoundReport report = multiplicity_bounds(g, kind, budget, tau, name);
    sound = sound && report.sound;
    csv += io::bound_report_csv_rows(report);
    if (table) print_bound_table(report);
    reports.push_back(io::to_json(report));
  }
  out = json{{"graph", name},
             {"reports", reports},
             {"structural", io::to_json(structural_bounds(g, budget, tau))}};
  return sound ? 0 : 1;
}

int cmd_bounds(const std::string& graph_arg, const std::string& corpus_dir,
               const std::string& kind_flag, double tau, const SearchBudget& budget,
               bool table, const std::string& csv_path, const std::string& out_path) {
  std::string csv = io::bound_report_csv_header();
  if (corpus_dir.empty()) {
    const Graph g = io::parse_graph_argument(graph_arg);
    json out;
    const int rc = run_bounds_on_graph(g, graph_arg, kind_flag, tau, budget, table, out, csv);
    if (!csv_path.empty()) io::write_file(csv_path, csv);
    emit(out, out_path);
    return rc;
  }

  // Corpus mode: graph files plus an optional families.txt manifest,
  // processed in sorted order; per-file errors are collected.
  std::vector<std::pair<std::string, Graph>> graphs;
  std::vector<std::string> errors;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "corpus directory is empty\n";
    return 2;
  }
  for (const auto& path : files) {
    try {
      if (path.filename() == "families.txt") {
        std::stringstream ss(io::read_file(path.string()));
        std::string line;
        while (std::getline(ss, line)) {
          if (line.empty() || line[0] == '#') continue;
          graphs.emplace_back(line, io::parse_family_spec(line));
        }
      } else {
        graphs.emplace_back(path.filename().string(), io::parse_graph_file(path.string()));
      }
    } catch (const std::exception& e) {
      errors.push_back(path.filename().string() + ": " + e.what());
    }
  }

  bool violation = false;
  json all = json::array();
  for (const auto& [name, g] : graphs) {
    try {
      json out;
      if (run_bounds_on_graph(g, name, kind_flag, tau, budget, table, out, csv) != 0)
        violation = true;
      all.push_back(std::move(out));
    } catch (const std::exception& e) {
      errors.push_back(name + ": " + e.what());
    }
  }
  if (!csv_path.empty()) io::write_file(csv_path, csv);
  emit(json{{"corpus", corpus_dir}, {"graphs", all}, {"errors", errors}}, out_path);
  for (const std::string& e : errors) std::cerr << "error: " << e << "\n";
  if (violation) return 1;
  return errors.empty() ? 0 : 2;
}

int cmd_cycles(const std::string& graph_arg, bool list_basis, const std::string& cert_path,
               bool do_search, const SearchBudget& budget, const std::string& out_path) {
  const Graph g = io::parse_graph_argument(graph_arg);
  json out;
  const HomologyDims dims = homology_dims(g);
  out["dim_h0"] = dims.h0;
  out["dim_h1"] = dims.h1;
  if (list_basis) {
    json basis = json::array();
    for (const OrientedCycle& c : fundamental_cycle_basis(g)) basis.push_back(io::to_json(c));
    out["basis"] = std::move(basis);
  }
  if (!cert_path.empty()) {
    // The file holds an array of index sets into the fundamental basis; each
    // set is summed into one candidate cycle.
    const json sets = json::parse(io::read_file(cert_path));
    const auto basis = fundamental_cycle_basis(g);
    std::vector<OrientedCycle> cycles;
    for (const auto& set : sets) {
      const auto indices = set.get<std::vector<int>>();
      for (int idx : indices)
        if (idx < 0 || idx >= static_cast<int>(basis.size()))
          throw std::invalid_argument("cycle index out of range: " + std::to_string(idx));
      if (indices.empty()) throw std::invalid_argument("empty cycle index set");
      if (indices.size() > 16)
        throw std::invalid_argument("cycle index set too large (max 16)");
      // The combination that forms a single cycle depends on the relative
      // orientations; try every sign pattern (first index fixed positive).
      std::optional<OrientedCycle> combined;
      for (std::uint32_t signs = 0; signs < (1u << (indices.size() - 1)) && !combined;
           ++signs) {
        std::vector<int> coeff(g.edge_count(), 0);
        for (std::size_t k = 0; k < indices.size(); ++k) {
          const int sign = (k > 0 && (signs >> (k - 1)) & 1) ? -1 : +1;
          for (int e = 0; e < g.edge_count(); ++e)
            coeff[e] += sign * basis[indices[k]].coeff[e];
        }
        if (std::any_of(coeff.begin(), coeff.end(), [](int v) { return v < -1 || v > 1; }))
          continue;
        combined = cycle_from_coefficients(g, std::move(coeff));
      }
      if (!combined)
        throw std::invalid_argument("index set does not combine into an oriented cycle");
      cycles.push_back(std::move(*combined));
    }
    out["certificate"] = io::to_json(cycle_forest_bound(g, cycles));
  }
  if (do_search) {
    const CycleSearchResult result = search_cycle_forest(g, budget);
    out["search_exhaustive"] = result.exhaustive;
    if (result.best)
      out["best_certificate"] = io::to_json(*result.best);
    else
      out["best_certificate"] = nullptr;
  }
  emit(out, out_path);
  return 0;
}

int cmd_dynamics(const std::string& graph_arg, const std::string& coupling_spec,
                 const std::string& omega_spec, int starts, std::uint64_t seed, double box,
                 const SearchBudget& budget, const std::string& out_path) {
  const Graph g = io::parse_graph_argument(graph_arg);
  const Coupling coupling = parse_coupling(coupling_spec);
  const SpaceKind space =
      coupling.kind == Coupling::Kind::sin_gain ? SpaceKind::circle : SpaceKind::line;
  std::vector<double> omega(g.vertex_count(), 0.0);
  if (omega_spec != "zero") {
    std::stringstream ss(io::read_file(omega_spec));
    for (double& w : omega)
      if (!(ss >> w)) throw std::invalid_argument("omega file: expected one value per vertex");
  }
  const NetworkSystem sys(g, space, coupling, std::move(omega));
  DynamicsReport report = validate_dynamics_bounds(sys, budget, starts, seed, box);
  json j = io::to_json(report);
  j["fiber_bound"] = sys.fiber_bound();
  j["space"] = space == SpaceKind::circle ? "circle" : "line";
  emit(j, out_path);
  return 0;
}

int cmd_oracle(const std::string& relation_path, const std::string& graph_arg,
               const std::string& check, int samples, std::uint64_t seed,
               const std::string& out_path) {
  const FiniteRelationSet x = io::load_relation(relation_path);
  const Graph g = io::parse_graph_argument(graph_arg);
  json out;
  bool violation = false;
  if (check == "compat" || check == "all")
    out["compatibility"] = io::to_json(certify_compatibility(x, g));
  if (check == "algebra" || check == "all") {
    const AlgebraReport report = algebra_suite(x, samples, seed);
    json v = json::array();
    for (const auto& viol : report.violations)
      v.push_back({{"property", viol.property},
                   {"a", viol.a.members()},
                   {"b", viol.b.members()},
                   {"c", viol.c.members()},
                   {"d", viol.d.members()},
                   {"lhs", viol.lhs},
                   {"rhs", viol.rhs}});
    out["algebra"] = {{"checks", report.checks}, {"violations", v}};
    violation = violation || !report.violations.empty();
  }
  if (check == "forest" || check == "all") {
    // Every induced forest in weak mode with the canonical leaf selection.
    if (g.vertex_count() > 12)
      throw std::invalid_argument("oracle forest check: graph too large (max 12 vertices)");
    json checks = json::array();
    const int n = g.vertex_count();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> verts;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) verts.push_back(v);
      const InducedSubgraph h = induced(g, VertexSet(verts));
      const ForestSummary summary = forest_summary(h);
      if (!summary.is_forest || !summary.isolated.empty()) continue;
      const VertexSet l = leaf_selection(h);
      const ForestCheckResult r = forest_determinacy_check(x, g, h, l);
      if (!r.pass) {
        violation = true;
        checks.push_back({{"forest", verts},
                          {"leaf_selection", l.members()},
                          {"measured", r.measured},
                          {"limit", r.limit}});
      }
    }
    out["forest_violations"] = std::move(checks);
  }
  emit(out, out_path);
  return violation ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial dimension bounds for graph-structured equation systems"};
  app.require_subcommand(1);

  std::string graph_arg, out_path, kind_flag = "all", mode_flag = "weak";
  std::string exact_lambda, corpus_dir, csv_path, cert_path;
  std::string coupling_spec = "sin:K=1", omega_spec = "zero";
  std::string relation_path, check = "all";
  double tau = 0.0, time_limit = 60.0, box = 2.0;
  long node_limit = 50'000'000;
  bool heuristic = false, exact = false, table = false, list_basis = false, do_search = false;
  int starts = 64, samples = 20;
  std::uint64_t seed = 1;

  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--time-limit", time_limit, "search time limit in seconds");
    cmd->add_option("--node-limit", node_limit, "search node limit");
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues and multiplicities");
  spectrum_cmd->add_option("graph", graph_arg, "graph file or family spec")->required();
  spectrum_cmd->add_option("--kind", kind_flag, "laplacian|normalized|adjacency|all");
  spectrum_cmd->add_option("--tau", tau, "clustering tolerance");
  spectrum_cmd->add_option("--exact", exact_lambda, "rational eigenvalue p/q to verify exactly");
  spectrum_cmd->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* forest_cmd = app.add_subcommand("forest", "best induced-forest certificate");
  forest_cmd->add_option("graph", graph_arg)->required();
  forest_cmd->add_option("--mode", mode_flag, "weak|strong");
  forest_cmd->add_flag("--exact", exact, "exact branch and bound (the default)");
  forest_cmd->add_flag("--heuristic", heuristic, "greedy + local search instead of exact");
  forest_cmd->add_option("--emit-certificate", out_path, "write the JSON certificate here");
  add_budget(forest_cmd);

  auto* bounds_cmd = app.add_subcommand("bounds", "multiplicity bound reports");
  bounds_cmd->add_option("graph", graph_arg);
  bounds_cmd->add_option("--corpus", corpus_dir, "directory of graph files");
  bounds_cmd->add_option("--kind", kind_flag);
  bounds_cmd->add_option("--tau", tau);
  bounds_cmd->add_option("--csv", csv_path, "aggregate CSV path");
  bounds_cmd->add_flag("--table", table, "also print a human-readable table");
  bounds_cmd->add_option("--out", out_path);
  add_budget(bounds_cmd);

  auto* cycles_cmd = app.add_subcommand("cycles", "homology and cycle-forest bounds");
  cycles_cmd->add_option("graph", graph_arg)->required();
  cycles_cmd->add_flag("--list-basis", list_basis, "emit the fundamental cycle basis");
  cycles_cmd->add_option("--certificate", cert_path,
                         "JSON array of fundamental-cycle index sets to combine");
  cycles_cmd->add_flag("--search", do_search, "search for the best certificate");
  cycles_cmd->add_option("--out", out_path);
  add_budget(cycles_cmd);

  auto* dynamics_cmd = app.add_subcommand("dynamics", "oscillator equilibria and bounds");
  dynamics_cmd->add_option("graph", graph_arg)->required();
  dynamics_cmd->add_option("--coupling", coupling_spec, "sin[:K=..] or poly:a1,a3,...");
  dynamics_cmd->add_option("--omega", omega_spec, "'zero' or a file of per-vertex values");
  dynamics_cmd->add_option("--starts", starts, "Newton multistart count");
  dynamics_cmd->add_option("--seed", seed);
  dynamics_cmd->add_option("--box", box, "start box half-width on the line");
  dynamics_cmd->add_option("--out", out_path);
  add_budget(dynamics_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "finite-determinacy oracle checks");
  oracle_cmd->add_option("--relation", relation_path, "relation-set JSON file")->required();
  oracle_cmd->add_option("--graph", graph_arg)->required();
  oracle_cmd->add_option("--check", check, "compat|algebra|forest|all");
  oracle_cmd->add_option("--samples", samples, "algebra sample count");
  oracle_cmd->add_option("--seed", seed);
  oracle_cmd->add_option("--out", out_path);

  auto* corpus_cmd = app.add_subcommand("corpus", "run bounds over a directory");
  corpus_cmd->add_option("dir", corpus_dir)->required();
  corpus_cmd->add_option("--kind", kind_flag);
  corpus_cmd->add_option("--tau", tau);
  corpus_cmd->add_option("--csv", csv_path);
  corpus_cmd->add_option("--out", out_path);
  add_budget(corpus_cmd);

  CLI11_PARSE(app, argc, argv);

  SearchBudget budget;
  budget.time_limit_seconds = time_limit;
  budget.node_limit = node_limit;

  try {
    if (spectrum_cmd->parsed())
      return cmd_spectrum(graph_arg, kind_flag, tau, exact_lambda, out_path);
    if (forest_cmd->parsed()) {
      if (exact && heuristic) {
        std::cerr << "forest: --exact and --heuristic are mutually exclusive\n";
        return 2;
      }
      return cmd_forest(graph_arg, mode_flag, heuristic, time_limit, node_limit, out_path);
    }
    if (bounds_cmd->parsed()) {
      if (graph_arg.empty() && corpus_dir.empty()) {
        std::cerr << "bounds: give a graph or --corpus\n";
        return 2;
      }
      return cmd_bounds(graph_arg, corpus_dir, kind_flag, tau, budget, table, csv_path,
                        out_path);
    }
    if (cycles_cmd->parsed())
      return cmd_cycles(graph_arg, list_basis, cert_path, do_search, budget, out_path);
    if (dynamics_cmd->parsed())
      return cmd_dynamics(graph_arg, coupling_spec, omega_spec, starts, seed, box, budget,
                          out_path);
    if (oracle_cmd->parsed())
      return cmd_oracle(relation_path, graph_arg, check, samples, seed, out_path);
    if (corpus_cmd->parsed())
      return cmd_bounds("", corpus_dir, kind_flag, tau, budget, table, csv_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
