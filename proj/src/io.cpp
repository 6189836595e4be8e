#include "graphdim/io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace graphdim::io {

using nlohmann::json;

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void line_error(int line_no, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int declared_n = -1;
  std::vector<std::pair<int, int>> edges;
  int max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line.rfind("n=", 0) == 0) {
      try {
        declared_n = std::stoi(line.substr(2));
      } catch (const std::exception&) {
        line_error(line_no, "bad vertex count header");
      }
      continue;
    }
    std::istringstream fields(line);
    long u, v;
    if (!(fields >> u >> v)) line_error(line_no, "expected 'u v'");
    std::string extra;
    if (fields >> extra) line_error(line_no, "trailing tokens after edge");
    if (u < 0 || v < 0) line_error(line_no, "negative vertex id");
    if (u == v) line_error(line_no, "self-loop");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  int n = declared_n >= 0 ? declared_n : max_id + 1;
  if (n < 1) throw std::invalid_argument("edge list describes no vertices");
  if (max_id >= n) throw std::invalid_argument("edge endpoint exceeds declared vertex count");
  return Graph(n, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n=" << g.vertex_count() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

Graph parse_adjacency_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    rows.push_back(line);
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::invalid_argument("adjacency matrix: empty input");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("adjacency matrix: row " + std::to_string(i) +
                                  " has wrong length");
    for (int j = 0; j < n; ++j) {
      const char c = rows[i][j];
      if (c != '0' && c != '1')
        throw std::invalid_argument("adjacency matrix: entries must be 0 or 1");
      if (c == '1' && rows[j][i] != '1')
        throw std::invalid_argument("adjacency matrix: not symmetric");
      if (c == '1' && i == j) throw std::invalid_argument("adjacency matrix: nonzero diagonal");
      if (c == '1' && i < j) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + ": '" + s + "'");
  }
}

}  // namespace

bool looks_like_family_spec(const std::string& spec) {
  static const char* names[] = {"path",     "cycle",    "star",
                                "complete", "complete-bipartite", "complete-binary-tree",
                                "grid",     "petersen", "er"};
  const std::string head = split(spec, ':')[0];
  return std::any_of(std::begin(names), std::end(names),
                     [&](const char* n) { return head == n; });
}

Graph parse_family_spec(const std::string& spec) {
  const auto head_tail = split(spec, ':');
  const std::string& name = head_tail[0];
  const std::string args = head_tail.size() > 1 ? head_tail[1] : "";
  if (name == "petersen") {
    if (!args.empty()) throw std::invalid_argument("petersen takes no parameters");
    return petersen_graph();
  }
  if (name == "path") return path_graph(parse_int(args, "path size"));
  if (name == "cycle") return cycle_graph(parse_int(args, "cycle size"));
  if (name == "star") return star_graph(parse_int(args, "star size"));
  if (name == "complete") return complete_graph(parse_int(args, "complete size"));
  if (name == "complete-bipartite") {
    const auto parts = split(args, ',');
    if (parts.size() != 2) throw std::invalid_argument("complete-bipartite:a,b expected");
    return complete_bipartite_graph(parse_int(parts[0], "side"), parse_int(parts[1], "side"));
  }
  if (name == "complete-binary-tree")
    return complete_binary_tree(parse_int(args, "tree depth"));
  if (name == "grid") {
    const auto parts = split(args, 'x');
    if (parts.size() != 2 || parse_int(parts[0], "grid rows") != 2)
      throw std::invalid_argument("grid:2xM expected");
    return grid2_graph(parse_int(parts[1], "grid columns"));
  }
  if (name == "er") {
    const auto parts = split(args, ',');
    if (parts.size() != 3 || parts[2].rfind("seed=", 0) != 0)
      throw std::invalid_argument("er:n,p,seed=S expected");
    const int n = parse_int(parts[0], "er size");
    const double p = std::stod(parts[1]);
    const auto seed = static_cast<std::uint64_t>(std::stoull(parts[2].substr(5)));
    return erdos_renyi(n, p, seed);
  }
  throw std::invalid_argument("unknown graph family: '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

Graph parse_graph_file(const std::string& path) {
  const std::string text = read_file(path);
  // Pure 0/1 rows mean an adjacency matrix; anything else is an edge list.
  bool matrix_like = false;
  for (const std::string& raw : split(text, '\n')) {
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    matrix_like = !line.empty() &&
                  std::all_of(line.begin(), line.end(), [](char c) { return c == '0' || c == '1'; }) &&
                  line.size() > 1;
    break;
  }
  return matrix_like ? parse_adjacency_matrix(text) : parse_edge_list(text);
}

Graph parse_graph_argument(const std::string& arg) {
  if (std::filesystem::exists(arg)) return parse_graph_file(arg);
  if (looks_like_family_spec(arg)) return parse_family_spec(arg);
  throw std::invalid_argument("'" + arg + "' is neither a file nor a family spec");
}

FiniteRelationSet parse_relation_json(const json& j, RelationLimits limits) {
  if (!j.contains("domains") || !j.contains("points"))
    throw std::invalid_argument("relation JSON needs 'domains' and 'points'");
  std::vector<std::vector<int>> domains = j.at("domains").get<std::vector<std::vector<int>>>();
  std::vector<std::vector<int>> points = j.at("points").get<std::vector<std::vector<int>>>();
  return FiniteRelationSet(std::move(domains), std::move(points), limits);
}

FiniteRelationSet load_relation(const std::string& path, RelationLimits limits) {
  return parse_relation_json(json::parse(read_file(path)), limits);
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return json{{"n", g.vertex_count()}, {"edges", edges}};
}

json to_json(const ForestCertificate& cert) {
  return json{{"forest", cert.forest.members()},
              {"leaf_selection", cert.leaf_selection.members()},
              {"isolated", cert.isolated.members()},
              {"weak_bound", cert.weak_bound},
              {"strong_bound", cert.strong_bound},
              {"mode", cert.mode == BoundMode::weak ? "weak" : "strong"},
              {"optimal", cert.optimal}};
}

json to_json(const SpectrumReport& report) {
  json clusters = json::array();
  for (const Cluster& c : report.clusters)
    clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  json exact = json::array();
  for (const ExactEntry& e : report.exact_entries)
    exact.push_back({{"value", e.value.get_str()}, {"multiplicity", e.multiplicity}});
  return json{{"eigenvalues", report.eigenvalues},
              {"clusters", clusters},
              {"tau", report.tau},
              {"exact", exact}};
}

json to_json(const EigenvalueRow& row) {
  json j{{"lambda", row.lambda},
         {"multiplicity", row.multiplicity},
         {"exact", row.exact_multiplicity},
         {"weak_bound", row.weak_bound},
         {"eligible_strong", row.eligible_strong},
         {"tight", row.tight},
         {"sound", row.sound}};
  if (row.exact_lambda) j["exact_lambda"] = row.exact_lambda->get_str();
  if (row.strong_bound) j["strong_bound"] = *row.strong_bound;
  return j;
}

json to_json(const BoundReport& report) {
  json rows = json::array();
  for (const EigenvalueRow& r : report.rows) rows.push_back(to_json(r));
  return json{{"graph", report.graph_name},
              {"kind", to_string(report.kind)},
              {"tau", report.tau},
              {"rows", rows},
              {"weak_certificate", to_json(report.weak_certificate)},
              {"strong_certificate", to_json(report.strong_certificate)},
              {"distinct",
               {{"vacuous", report.distinct.vacuous},
                {"lower_bound", report.distinct.lower_bound},
                {"actual", report.distinct.actual_distinct},
                {"holds", report.distinct.holds}}},
              {"sound", report.sound}};
}

json to_json(const StructuralReport& report) {
  json alpha{{"alpha", report.alpha},
             {"vacuous", report.alpha_vacuous},
             {"holds", report.alpha_holds}};
  if (report.max_multiplicity_eligible)
    alpha["max_multiplicity_eligible"] = *report.max_multiplicity_eligible;
  return json{{"max_multiplicity", report.max_multiplicity},
              {"normalized_skipped", report.normalized_skipped},
              {"path",
               {{"length", report.path_length},
                {"holds", report.path_holds},
                {"tight", report.path_tight}}},
              {"binary_tree",
               {{"depth", report.btree_depth},
                {"vacuous", report.btree_vacuous},
                {"holds", report.btree_holds},
                {"tight", report.btree_tight}}},
              {"independent_set", alpha}};
}

json to_json(const OrientedCycle& cycle) {
  return json{{"coefficients", cycle.coeff}, {"walk", cycle.walk}};
}

json to_json(const CycleForestCertificate& cert) {
  json cycles = json::array();
  for (const OrientedCycle& c : cert.cycles) cycles.push_back(to_json(c));
  return json{{"cycles", cycles},
              {"intersection_graph", to_json(cert.intersection_graph)},
              {"leaf_selection", cert.leaf_selection.members()},
              {"dim_h0", cert.dim_h0},
              {"dim_h1", cert.dim_h1},
              {"bound", cert.bound}};
}

json to_json(const EquilibriumPoint& point) {
  return json{{"state", point.state},
              {"residual", point.residual},
              {"kernel_dim", point.kernel_dim},
              {"gap_ratio", point.gap_ratio},
              {"clean_gap", point.clean_gap}};
}

json to_json(const DynamicsReport& report) {
  json eq = json::array();
  for (const EquilibriumPoint& p : report.equilibria) eq.push_back(to_json(p));
  json j{{"weak_forest_bound", report.weak_forest_bound},
         {"equilibria", eq},
         {"findings", report.findings}};
  if (report.cycle_forest_bound) j["cycle_forest_bound"] = *report.cycle_forest_bound;
  return j;
}

json to_json(const CompatibilityCertificate& cert) {
  json pairs = json::array();
  for (const PairDegree& p : cert.pair_degrees)
    pairs.push_back({{"v", p.v}, {"w", p.w}, {"degree", p.degree}});
  return json{{"pair_degrees", pairs},
              {"strong_degrees", cert.strong_degrees},
              {"d", cert.d},
              {"strong_d", cert.strong_d}};
}

std::string bound_report_csv_header() { return "graph,kind,lambda,mult,bound,tight\n"; }

std::string bound_report_csv_rows(const BoundReport& report) {
  std::ostringstream out;
  for (const EigenvalueRow& row : report.rows) {
    const long bound = row.strong_bound ? std::min(row.weak_bound, *row.strong_bound)
                                        : row.weak_bound;
    out << report.graph_name << "," << to_string(report.kind) << ",";
    if (row.exact_lambda)
      out << row.exact_lambda->get_str();
    else
      out << row.lambda;
    out << "," << row.multiplicity << "," << bound << "," << (row.tight ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace graphdim::io
