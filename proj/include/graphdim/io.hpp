#pragma once

#include <json.hpp>

#include <string>

#include "graphdim/bounds.hpp"
#include "graphdim/cycles.hpp"
#include "graphdim/dynamics.hpp"
#include "graphdim/forest_search.hpp"
#include "graphdim/graph.hpp"
#include "graphdim/relation.hpp"
#include "graphdim/spectral.hpp"

namespace graphdim::io {

// Edge-list text: one "u v" pair per line, '#' comments, optional header
// line "n=<count>" for isolated vertices. Errors carry the line number.
Graph parse_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);

// n lines of n 0/1 characters; must be symmetric with zero diagonal.
Graph parse_adjacency_matrix(const std::string& text);

// "star:10", "grid:2x4", "er:12,0.3,seed=7", "petersen", ...
Graph parse_family_spec(const std::string& spec);
bool looks_like_family_spec(const std::string& spec);

// File contents (auto-detected edge list vs adjacency matrix) or family spec.
Graph parse_graph_argument(const std::string& arg);
Graph parse_graph_file(const std::string& path);

// {"domains": [[...], ...], "points": [[...], ...]}
FiniteRelationSet parse_relation_json(const nlohmann::json& j, RelationLimits limits = {});
FiniteRelationSet load_relation(const std::string& path, RelationLimits limits = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

nlohmann::json to_json(const Graph& g);
nlohmann::json to_json(const ForestCertificate& cert);
nlohmann::json to_json(const SpectrumReport& report);
nlohmann::json to_json(const EigenvalueRow& row);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const StructuralReport& report);
nlohmann::json to_json(const OrientedCycle& cycle);
nlohmann::json to_json(const CycleForestCertificate& cert);
nlohmann::json to_json(const EquilibriumPoint& point);
nlohmann::json to_json(const DynamicsReport& report);
nlohmann::json to_json(const CompatibilityCertificate& cert);

// Aggregate CSV row block: graph, kind, lambda, mult, bound, tight.
std::string bound_report_csv_rows(const BoundReport& report);
std::string bound_report_csv_header();

}  // namespace graphdim::io
