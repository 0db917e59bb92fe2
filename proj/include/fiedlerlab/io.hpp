// Text surfaces: edge-list parsing/printing, the B-matrix reproduction,
// DOT export, JSON report documents, and the scan CSV.
#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "fiedlerlab/conjecture.hpp"
#include "fiedlerlab/graph.hpp"
#include "fiedlerlab/heat.hpp"
#include "fiedlerlab/spectral.hpp"

namespace fiedlerlab {

using json = nlohmann::ordered_json;

// Every JSON document this library emits carries this schema tag.
inline constexpr const char* kJsonSchemaId = "fiedler-lab/1";

// Edge-list text: one "u v" per line, 0-based, '#' comments and blank lines
// ignored, optional "n <count>" header fixing the vertex count (otherwise
// max id + 1). Malformed lines raise with their line number.
Graph parse_edge_list(const std::string& text);
Graph read_edge_list_file(const std::string& path);

// Includes the "n <count>" header so isolated vertices round-trip.
std::string to_edge_list(const Graph& g);

// The 2 x (4+s) rose display grid: row 1 holds the Fiedler values along
// path vertices 0..3+s, row 2 is zero except the petal value in column 2
// and the hub value in column 3 (0-based).
struct BMatrix {
    std::vector<std::vector<double>> rows;
};

// result must come from build_rose(params); the vector is reoriented
// hub-positive if needed. Throws on dimension mismatch.
BMatrix build_b_matrix(const RoseParams& params, const FiedlerResult& result);

// Two whitespace-separated lines, 4 decimal places, exact zeros as "0".
std::string format_b_matrix(const BMatrix& b);
std::string emit_b_matrix(const RoseParams& params, const FiedlerResult& result);

// Undirected DOT with one filled node per vertex: red positive, blue
// negative, gray zero. Node and edge order are deterministic.
std::string export_dot(const Graph& g, const std::vector<Sign>& labels);

// Top-level summary document for single-graph runs.
struct RunReport {
    std::string graph;  // e.g. "rose(11,5)" or an input filename
    int vertices = 0;
    int edges = 0;
    bool tree = false;
    int diameter = -1;  // -1 when disconnected
    FiedlerResult fiedler;
    std::optional<ConjectureReport> conjecture;
    std::optional<BMatrix> b_matrix;
};

// Complete documents (schema + kind + payload), ready to dump.
json to_json(const RunReport& report);
json to_json(const ConjectureReport& report);
json to_json(const std::vector<ScanCell>& cells);
json to_json(const SearchReport& report);
json to_json(const HeatState& state);
json to_json(const TransientReport& report);
json spectrum_to_json(const Spectrum& spectrum, bool include_vectors = false);

// CSV with the pinned header p,s,leaf_tip,lambda2,gap,verdict,
// min_extremal_distance,diameter. Failed cells carry verdict ERROR.
std::string scan_csv(const std::vector<ScanCell>& cells);

}  // namespace fiedlerlab
