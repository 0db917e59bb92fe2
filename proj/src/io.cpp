#include "fiedlerlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fiedlerlab {

namespace {

int parse_vertex_id(const std::string& token, int line_no) {
    std::size_t consumed = 0;
    long value = 0;
    try {
        value = std::stol(token, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != token.size() || value < 0) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": '" + token +
                                    "' is not a vertex id");
    }
    return static_cast<int>(value);
}

std::string format_double(double x, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, x);
    return buf;
}

json json_document(const char* kind) {
    json doc;
    doc["schema"] = kJsonSchemaId;
    doc["kind"] = kind;
    return doc;
}

json conjecture_body(const ConjectureReport& report) {
    json body;
    body["verdict"] = to_string(report.verdict);
    body["lambda2"] = report.lambda2;
    body["gap"] = report.gap ? json(*report.gap) : json(nullptr);
    body["diameter"] = report.diameter;
    body["is_tree"] = report.is_tree;
    body["extremal_max_set"] = report.extremal_max_set;
    body["extremal_min_set"] = report.extremal_min_set;
    body["extremal_pair_distances"] = report.extremal_pair_distances;
    if (report.witness) {
        body["witness"] = json{{"v", report.witness->v}, {"w", report.witness->w}};
    } else {
        body["witness"] = nullptr;
    }
    return body;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

}  // namespace

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::optional<int> declared_n;
    std::vector<std::pair<int, int>> edges;
    int max_id = -1;

    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;

        if (first == "n") {
            std::string count_token;
            if (!(fields >> count_token)) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": header needs a count after 'n'");
            }
            const int count = parse_vertex_id(count_token, line_no);
            if (declared_n) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": duplicate 'n' header");
            }
            if (count < 1) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": vertex count must be positive");
            }
            declared_n = count;
        } else {
            std::string second;
            if (!(fields >> second)) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": expected 'u v', got only '" + first + "'");
            }
            edges.emplace_back(parse_vertex_id(first, line_no),
                               parse_vertex_id(second, line_no));
            max_id = std::max({max_id, edges.back().first, edges.back().second});
        }

        std::string extra;
        if (fields >> extra) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": unexpected trailing token '" + extra + "'");
        }
    }

    const int n = declared_n.value_or(max_id + 1);
    if (n < 1) {
        throw std::invalid_argument("edge list declares no vertices");
    }
    return Graph(n, edges);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_edge_list(buffer.str());
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.vertex_count() << '\n';
    for (const auto& [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
    return out.str();
}

BMatrix build_b_matrix(const RoseParams& params, const FiedlerResult& result) {
    const int n = params.total_vertices();
    if (result.vector.size() != n) {
        throw std::invalid_argument("Fiedler vector has length " +
                                    std::to_string(result.vector.size()) + " but rose(" +
                                    std::to_string(params.petals) + "," +
                                    std::to_string(params.stem) + ") has " + std::to_string(n) +
                                    " vertices");
    }
    Eigen::VectorXd v = result.vector;
    if (v(params.hub()) < 0.0) v = -v;

    const int cols = 4 + params.stem;
    BMatrix b;
    b.rows.assign(2, std::vector<double>(static_cast<std::size_t>(cols), 0.0));
    for (int c = 0; c < cols; ++c) {
        b.rows[0][static_cast<std::size_t>(c)] = v(c);
    }
    b.rows[1][2] = v(params.first_petal());
    b.rows[1][3] = v(params.hub());
    return b;
}

std::string format_b_matrix(const BMatrix& b) {
    std::ostringstream out;
    for (const auto& row : b.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ' ';
            if (row[c] == 0.0) {
                out << '0';
            } else {
                out << format_double(row[c], "%.4f");
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string emit_b_matrix(const RoseParams& params, const FiedlerResult& result) {
    return format_b_matrix(build_b_matrix(params, result));
}

std::string export_dot(const Graph& g, const std::vector<Sign>& labels) {
    if (labels.size() != static_cast<std::size_t>(g.vertex_count())) {
        throw std::invalid_argument("label count does not match vertex count");
    }
    std::ostringstream out;
    out << "graph fiedler {\n";
    out << "  node [style=filled];\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        const char* color = "gray";
        if (labels[static_cast<std::size_t>(v)] == Sign::Positive) color = "red";
        if (labels[static_cast<std::size_t>(v)] == Sign::Negative) color = "blue";
        out << "  " << v << " [fillcolor=" << color << "];\n";
    }
    for (const auto& [u, v] : g.edges()) {
        out << "  " << u << " -- " << v << ";\n";
    }
    out << "}\n";
    return out.str();
}

json to_json(const RunReport& report) {
    json doc = json_document("run");
    doc["graph"] = json{{"name", report.graph},
                        {"vertices", report.vertices},
                        {"edges", report.edges},
                        {"tree", report.tree},
                        {"diameter", report.diameter >= 0 ? json(report.diameter) : json(nullptr)}};
    json solver;
    solver["lambda2"] = report.fiedler.lambda2;
    solver["gap"] = report.fiedler.gap ? json(*report.fiedler.gap) : json(nullptr);
    solver["degenerate"] = report.fiedler.degenerate;
    solver["iterations"] = report.fiedler.iterations;
    solver["residual"] = report.fiedler.residual;
    solver["vector"] = vector_to_json(report.fiedler.vector);
    doc["fiedler"] = std::move(solver);
    if (report.conjecture) doc["conjecture"] = conjecture_body(*report.conjecture);
    if (report.b_matrix) doc["b_matrix"] = report.b_matrix->rows;
    return doc;
}

json to_json(const ConjectureReport& report) {
    json doc = json_document("conjecture");
    doc.update(conjecture_body(report));
    return doc;
}

json to_json(const std::vector<ScanCell>& cells) {
    json doc = json_document("scan");
    json rows = json::array();
    for (const ScanCell& cell : cells) {
        json row;
        row["p"] = cell.p;
        row["s"] = cell.s;
        if (cell.error.empty()) {
            row["leaf_tip"] = cell.leaf_tip_value;
            row["lambda2"] = cell.lambda2;
            row["gap"] = cell.gap;
            row["verdict"] = to_string(cell.verdict);
            row["min_extremal_distance"] =
                cell.min_extremal_distance >= 0 ? json(cell.min_extremal_distance) : json(nullptr);
            row["diameter"] = cell.diameter;
        } else {
            row["error"] = cell.error;
        }
        rows.push_back(std::move(row));
    }
    doc["cells"] = std::move(rows);
    return doc;
}

json to_json(const SearchReport& report) {
    json doc = json_document("search");
    doc["instances_checked"] = report.instances_checked;
    doc["degenerate_skipped"] = report.degenerate_skipped;
    json violations = json::array();
    for (const Violation& v : report.violations) {
        json row;
        row["instance"] = v.instance;
        row["seed"] = v.seed;
        row["n"] = v.n;
        row["report"] = conjecture_body(v.report);
        violations.push_back(std::move(row));
    }
    doc["violations"] = std::move(violations);
    return doc;
}

json to_json(const HeatState& state) {
    json doc = json_document("heat");
    doc["t"] = state.t;
    doc["u"] = vector_to_json(state.u);
    doc["mass"] = state.u.sum();
    return doc;
}

json to_json(const TransientReport& report) {
    json doc = json_document("transient");
    doc["t_star"] = report.t_star;
    doc["hot_vertices"] = report.hot_vertices;
    doc["cold_vertices"] = report.cold_vertices;
    doc["fiedler_hot"] = report.fiedler_hot;
    doc["fiedler_cold"] = report.fiedler_cold;
    doc["matched"] = report.matched;
    return doc;
}

json spectrum_to_json(const Spectrum& spectrum, bool include_vectors) {
    json doc = json_document("spectrum");
    doc["n"] = spectrum.eigenvalues.size();
    doc["eigenvalues"] = vector_to_json(spectrum.eigenvalues);
    if (spectrum.eigenvalues.size() >= 2) {
        doc["lambda2"] = spectrum.eigenvalues(1);
    }
    if (spectrum.eigenvalues.size() >= 3) {
        doc["gap"] = spectrum.eigenvalues(2) - spectrum.eigenvalues(1);
    }
    if (include_vectors) {
        json vectors = json::array();
        for (Eigen::Index i = 0; i < spectrum.eigenvectors.cols(); ++i) {
            vectors.push_back(vector_to_json(spectrum.eigenvectors.col(i)));
        }
        doc["eigenvectors"] = std::move(vectors);
    }
    return doc;
}

std::string scan_csv(const std::vector<ScanCell>& cells) {
    std::ostringstream out;
    out << "p,s,leaf_tip,lambda2,gap,verdict,min_extremal_distance,diameter\n";
    for (const ScanCell& cell : cells) {
        out << cell.p << ',' << cell.s << ',';
        if (cell.error.empty()) {
            out << format_double(cell.leaf_tip_value, "%.12g") << ','
                << format_double(cell.lambda2, "%.12g") << ','
                << format_double(cell.gap, "%.12g") << ',' << to_string(cell.verdict) << ','
                << cell.min_extremal_distance << ',' << cell.diameter;
        } else {
            out << "nan,nan,nan,ERROR," << cell.min_extremal_distance << ',' << cell.diameter;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace fiedlerlab
