// fiedler-lab: build rose trees, solve for Fiedler vectors, run heat flow,
// and interrogate the diameter-extremes conjecture from the command line.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "fiedlerlab/conjecture.hpp"
#include "fiedlerlab/graph.hpp"
#include "fiedlerlab/heat.hpp"
#include "fiedlerlab/io.hpp"
#include "fiedlerlab/parallel.hpp"
#include "fiedlerlab/spectral.hpp"

namespace fl = fiedlerlab;

namespace {

// Bad flag values discovered after CLI11 parsing; mapped to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double x, const char* fmt = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, x);
    return buf;
}

fl::RoseParams parse_rose_spec(const std::string& spec) {
    const auto comma = spec.find(',');
    std::size_t used_p = 0;
    std::size_t used_s = 0;
    int p = 0;
    int s = 0;
    try {
        p = std::stoi(spec.substr(0, comma), &used_p);
        s = std::stoi(spec.substr(comma + 1), &used_s);
    } catch (const std::exception&) {
        used_p = 0;
    }
    const bool shape_ok = comma != std::string::npos && used_p == comma &&
                          used_s == spec.size() - comma - 1;
    if (!shape_ok || p < 1 || s < 1) {
        throw UsageError("--rose expects 'p,s' with p,s >= 1, got '" + spec + "'");
    }
    return fl::RoseParams{p, s};
}

fl::IntRange parse_range(const std::string& spec, const char* flag) {
    const auto dots = spec.find("..");
    try {
        if (dots == std::string::npos) {
            std::size_t used = 0;
            const int k = std::stoi(spec, &used);
            if (used == spec.size() && k >= 1) return fl::IntRange{k, k};
        } else {
            std::size_t used_lo = 0;
            std::size_t used_hi = 0;
            const int lo = std::stoi(spec.substr(0, dots), &used_lo);
            const int hi = std::stoi(spec.substr(dots + 2), &used_hi);
            if (used_lo == dots && used_hi == spec.size() - dots - 2 && lo >= 1 && hi >= lo) {
                return fl::IntRange{lo, hi};
            }
        }
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(flag) + " expects 'K' or 'A..B' with 1 <= A <= B, got '" +
                     spec + "'");
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("FIEDLER_THREADS")) {
        int parsed = 0;
        std::size_t used = 0;
        try {
            parsed = std::stoi(env, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != std::string(env).size() || parsed < 1) {
            throw UsageError("FIEDLER_THREADS must be a positive integer, got '" +
                             std::string(env) + "'");
        }
        return parsed;
    }
    return 0;  // parallel_for falls back to hardware concurrency
}

struct GraphSelection {
    std::string input_path;
    std::string rose_spec;
};

// Loads the chosen graph; roses also report their params so rose-aware
// commands can anchor at the hub.
std::pair<fl::Graph, std::string> load_graph(const GraphSelection& sel,
                                             std::optional<fl::RoseParams>* rose_out = nullptr) {
    if (sel.input_path.empty() == sel.rose_spec.empty()) {
        throw UsageError("choose a graph with exactly one of --input FILE or --rose p,s");
    }
    if (!sel.rose_spec.empty()) {
        const fl::RoseParams params = parse_rose_spec(sel.rose_spec);
        if (rose_out) *rose_out = params;
        return {fl::build_rose(params), "rose(" + std::to_string(params.petals) + "," +
                                            std::to_string(params.stem) + ")"};
    }
    if (rose_out) *rose_out = std::nullopt;
    return {fl::read_edge_list_file(sel.input_path), sel.input_path};
}

Eigen::VectorXd parse_u0(const std::string& spec, int n) {
    if (spec == "uniform") return Eigen::VectorXd::Ones(n);
    if (spec.rfind("delta:", 0) == 0) {
        const std::string number = spec.substr(6);
        int v = -1;
        std::size_t used = 0;
        try {
            v = std::stoi(number, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != number.size() || v < 0 || v >= n) {
            throw UsageError("delta vertex '" + number + "' is not a vertex id below " +
                             std::to_string(n));
        }
        Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
        u(v) = 1.0;
        return u;
    }
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open u0 file: " + path);
        std::vector<double> values;
        double x = 0.0;
        while (in >> x) values.push_back(x);
        if (!in.eof()) throw std::invalid_argument("u0 file has non-numeric content: " + path);
        if (static_cast<int>(values.size()) != n) {
            throw std::invalid_argument("u0 file has " + std::to_string(values.size()) +
                                        " values but the graph has " + std::to_string(n) +
                                        " vertices");
        }
        return Eigen::Map<Eigen::VectorXd>(values.data(), n);
    }
    throw UsageError("--u0 must be delta:VERTEX, uniform, or file:PATH, got '" + spec + "'");
}

std::string join(const std::vector<int>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out << ' ';
        out << xs[i];
    }
    return out.str();
}

void print_json(const fl::json& doc) { std::cout << doc.dump(2) << '\n'; }

void print_conjecture_text(const fl::ConjectureReport& report) {
    std::cout << "verdict: " << fl::to_string(report.verdict) << '\n';
    std::cout << "lambda2: " << format_double(report.lambda2) << '\n';
    if (report.gap) std::cout << "gap: " << format_double(*report.gap) << '\n';
    std::cout << "diameter: " << report.diameter << '\n';
    if (report.verdict != fl::Verdict::Degenerate) {
        std::cout << "extremal max set: " << join(report.extremal_max_set) << '\n';
        std::cout << "extremal min set: " << join(report.extremal_min_set) << '\n';
        std::cout << "extremal pair distances: " << join(report.extremal_pair_distances) << '\n';
    }
    if (report.witness) {
        std::cout << "witness: (" << report.witness->v << ", " << report.witness->w << ")\n";
    }
}

struct RoseArgs {
    int petals = 0;
    int stem = 0;
    double tol = 1e-10;
    std::string format = "b-matrix";
};

int run_rose(const RoseArgs& args) {
    const fl::RoseParams params{args.petals, args.stem};
    const fl::Graph g = fl::build_rose(params);
    fl::FiedlerOptions options;
    options.tol = args.tol;
    options.anchor_vertex = params.hub();
    const fl::FiedlerResult result = fl::fiedler(g, options);

    if (args.format == "b-matrix") {
        std::cout << fl::emit_b_matrix(params, result);
        return 0;
    }
    if (args.format == "dot") {
        std::cout << fl::export_dot(g, fl::sign_partition(g, result.vector));
        return 0;
    }

    fl::RunReport report;
    report.graph = "rose(" + std::to_string(params.petals) + "," + std::to_string(params.stem) + ")";
    report.vertices = g.vertex_count();
    report.edges = g.edge_count();
    report.tree = fl::is_tree(g);
    report.diameter = fl::diameter(g).diameter;
    report.fiedler = result;
    report.conjecture = fl::check_conjecture(g, result);
    report.b_matrix = fl::build_b_matrix(params, result);

    if (args.format == "json") {
        print_json(fl::to_json(report));
        return 0;
    }
    std::cout << report.graph << ": " << report.vertices << " vertices, " << report.edges
              << " edges, diameter " << report.diameter << '\n';
    std::cout << "lambda2: " << format_double(result.lambda2)
              << "  gap: " << format_double(result.gap.value_or(0.0))
              << "  residual: " << format_double(result.residual) << '\n';
    std::cout << "leaf tip: " << format_double(result.vector(fl::RoseParams::kLeafTip))
              << "  stem tip: " << format_double(result.vector(params.stem_tip()))
              << "  petal: " << format_double(result.vector(params.first_petal())) << '\n';
    print_conjecture_text(*report.conjecture);
    return 0;
}

struct CheckArgs {
    GraphSelection graph;
    double tie_tol = 1e-9;
    std::string format = "text";
};

int run_check(const CheckArgs& args) {
    const auto [g, name] = load_graph(args.graph);
    const fl::ConjectureReport report = fl::check_conjecture(g, args.tie_tol);
    if (!report.is_tree) {
        std::cerr << "warning: " << name
                  << " is not a tree; the conjecture is stated for trees\n";
    }
    if (args.format == "json") {
        print_json(fl::to_json(report));
    } else {
        print_conjecture_text(report);
    }
    return 0;
}

struct ScanArgs {
    std::string petals = "1..12";
    std::string stem = "1..8";
    double tie_tol = 1e-9;
    int threads = 0;
    std::string format = "csv";
};

int run_scan(const ScanArgs& args) {
    const fl::IntRange petals = parse_range(args.petals, "--petals");
    const fl::IntRange stems = parse_range(args.stem, "--stem");
    const auto cells =
        fl::scan_rose_family(petals, stems, resolve_threads(args.threads), args.tie_tol);
    if (args.format == "json") {
        print_json(fl::to_json(cells));
        return 0;
    }
    if (args.format == "csv") {
        std::cout << fl::scan_csv(cells);
        return 0;
    }
    std::printf("%4s %4s %12s %12s %12s %12s %5s %5s\n", "p", "s", "leaf_tip", "lambda2", "gap",
                "verdict", "dmin", "diam");
    for (const auto& cell : cells) {
        if (!cell.error.empty()) {
            std::printf("%4d %4d %12s %12s %12s %12s %5s %5s  # %s\n", cell.p, cell.s, "-", "-",
                        "-", "ERROR", "-", "-", cell.error.c_str());
            continue;
        }
        std::printf("%4d %4d %12.4f %12.6f %12.6f %12s %5d %5d\n", cell.p, cell.s,
                    cell.leaf_tip_value, cell.lambda2, cell.gap,
                    fl::to_string(cell.verdict).c_str(), cell.min_extremal_distance,
                    cell.diameter);
    }
    return 0;
}

struct SearchArgs {
    int n = 0;
    std::uint64_t instances = 0;
    std::uint64_t seed = 0;
    double tie_tol = 1e-9;
    int threads = 0;
    std::string format = "text";
};

int run_search(const SearchArgs& args) {
    const fl::SearchReport report = fl::search_random_trees(
        args.n, args.instances, args.seed, resolve_threads(args.threads), args.tie_tol);
    if (args.format == "json") {
        print_json(fl::to_json(report));
        return 0;
    }
    std::cout << "checked " << report.instances_checked << " random trees on " << args.n
              << " vertices (seed " << args.seed << ")\n";
    std::cout << "violations: " << report.violations.size() << '\n';
    for (const auto& v : report.violations) {
        std::cout << "  instance " << v.instance << " (seed " << v.seed << "): min distance "
                  << v.report.extremal_pair_distances.front() << " < diameter "
                  << v.report.diameter << '\n';
    }
    std::cout << "degenerate skipped: " << report.degenerate_skipped << '\n';
    return 0;
}

struct HeatArgs {
    GraphSelection graph;
    std::string u0_spec;
    std::optional<double> t;
    std::optional<double> dt;
    std::string format = "text";
};

int run_heat(const HeatArgs& args) {
    const auto [g, name] = load_graph(args.graph);
    const Eigen::VectorXd u0 = parse_u0(args.u0_spec, g.vertex_count());

    if (!args.t) {
        if (args.dt) throw UsageError("--dt only applies with --t (transient mode is spectral)");
        const fl::TransientReport report = fl::transient_extremes(g, u0);
        if (args.format == "json") {
            print_json(fl::to_json(report));
            return 0;
        }
        std::cout << "t_star: " << format_double(report.t_star) << '\n';
        std::cout << "hot: " << join(report.hot_vertices) << '\n';
        std::cout << "cold: " << join(report.cold_vertices) << '\n';
        std::cout << "fiedler hot: " << join(report.fiedler_hot) << '\n';
        std::cout << "fiedler cold: " << join(report.fiedler_cold) << '\n';
        std::cout << "matched: " << (report.matched ? "true" : "false") << '\n';
        return 0;
    }

    const bool use_rk4 = args.dt.has_value();
    const fl::HeatState state = use_rk4 ? fl::heat_solve_rk4(g, u0, *args.t, *args.dt)
                                        : fl::heat_solve_spectral(g, u0, *args.t);
    if (args.format == "json") {
        fl::json doc = fl::to_json(state);
        doc["method"] = use_rk4 ? "rk4" : "spectral";
        print_json(doc);
        return 0;
    }
    std::cout << "t: " << format_double(state.t) << "  method: " << (use_rk4 ? "rk4" : "spectral")
              << "  mass: " << format_double(state.u.sum(), "%.12g") << '\n';
    for (Eigen::Index v = 0; v < state.u.size(); ++v) {
        std::cout << v << ' ' << format_double(state.u(v), "%.12g") << '\n';
    }
    return 0;
}

struct SpectrumArgs {
    GraphSelection graph;
    bool vectors = false;
    std::string format = "text";
};

int run_spectrum(const SpectrumArgs& args) {
    const auto [g, name] = load_graph(args.graph);
    const fl::Spectrum spectrum = fl::full_spectrum(g);
    if (args.format == "json") {
        print_json(fl::spectrum_to_json(spectrum, args.vectors));
        return 0;
    }
    if (args.format == "csv") {
        std::cout << "index,eigenvalue\n";
        for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
            std::cout << i << ',' << format_double(spectrum.eigenvalues(i), "%.12g") << '\n';
        }
        return 0;
    }
    for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
        std::cout << "lambda" << (i + 1) << " = " << format_double(spectrum.eigenvalues(i), "%.12g")
                  << '\n';
    }
    return 0;
}

struct ExportArgs {
    GraphSelection graph;
    std::string format = "edge-list";
};

int run_export(const ExportArgs& args) {
    std::optional<fl::RoseParams> rose;
    const auto [g, name] = load_graph(args.graph, &rose);
    if (args.format == "edge-list") {
        std::cout << fl::to_edge_list(g);
        return 0;
    }
    // DOT: color by the Fiedler sign partition when one exists (hub-positive
    // for roses, for roses), all gray otherwise.
    std::vector<fl::Sign> labels(static_cast<std::size_t>(g.vertex_count()), fl::Sign::Zero);
    if (fl::is_connected(g) && g.vertex_count() >= 2) {
        fl::FiedlerOptions options;
        if (rose) options.anchor_vertex = rose->hub();
        labels = fl::sign_partition(g, fl::fiedler(g, options).vector);
    }
    std::cout << fl::export_dot(g, labels);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fiedler vectors, heat flow, and diameter extremes on trees"};
    app.require_subcommand(1);

    RoseArgs rose_args;
    auto* rose = app.add_subcommand("rose", "Build a rose and reproduce its B-matrix display");
    rose->add_option("-p,--petals", rose_args.petals, "petal count (>= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    rose->add_option("-s,--stem", rose_args.stem, "stem length (>= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    rose->add_option("--tol", rose_args.tol, "Fiedler residual target");
    rose->add_option("--format", rose_args.format, "b-matrix | json | dot | text")
        ->check(CLI::IsMember({"b-matrix", "json", "dot", "text"}));

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Check the diameter-extremes conjecture");
    check->add_option("--input", check_args.graph.input_path, "edge-list file");
    check->add_option("--rose", check_args.graph.rose_spec, "rose spec 'p,s'");
    check->add_option("--tol", check_args.tie_tol, "extremal tie tolerance (relative)");
    check->add_option("--format", check_args.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "Scan the rose family over (p, s) ranges");
    scan->add_option("--petals,-p", scan_args.petals, "petal range 'A..B' or 'K' (default 1..12)");
    scan->add_option("--stem,-s", scan_args.stem, "stem range 'A..B' or 'K' (default 1..8)");
    scan->add_option("--tol", scan_args.tie_tol, "extremal tie tolerance (relative)");
    scan->add_option("--threads", scan_args.threads, "worker threads (default: FIEDLER_THREADS or all cores)");
    scan->add_option("--format", scan_args.format, "csv | json | text")
        ->check(CLI::IsMember({"csv", "json", "text"}));

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "Search uniform random trees for violations");
    search->add_option("--n", search_args.n, "vertices per tree (>= 3)")
        ->required()
        ->check(CLI::Range(3, 1 << 20));
    search->add_option("--instances", search_args.instances, "trees to check")->required();
    search->add_option("--seed", search_args.seed, "base seed (default 0)");
    search->add_option("--tol", search_args.tie_tol, "extremal tie tolerance (relative)");
    search->add_option("--threads", search_args.threads, "worker threads (default: FIEDLER_THREADS or all cores)");
    search->add_option("--format", search_args.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    HeatArgs heat_args;
    auto* heat = app.add_subcommand("heat", "Heat flow: solve at --t, or transient extremes without it");
    heat->add_option("--input", heat_args.graph.input_path, "edge-list file");
    heat->add_option("--rose", heat_args.graph.rose_spec, "rose spec 'p,s'");
    heat->add_option("--u0", heat_args.u0_spec, "delta:VERTEX | uniform | file:PATH")->required();
    heat->add_option("--t", heat_args.t, "solve time (omit for transient analysis)")
        ->check(CLI::NonNegativeNumber);
    heat->add_option("--dt", heat_args.dt, "RK4 step; selects the integrator over the spectral solver")
        ->check(CLI::PositiveNumber);
    heat->add_option("--format", heat_args.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    SpectrumArgs spectrum_args;
    auto* spectrum = app.add_subcommand("spectrum", "Full Laplacian spectrum (dense sizes only)");
    spectrum->add_option("--input", spectrum_args.graph.input_path, "edge-list file");
    spectrum->add_option("--rose", spectrum_args.graph.rose_spec, "rose spec 'p,s'");
    spectrum->add_flag("--vectors", spectrum_args.vectors, "include eigenvectors in JSON output");
    spectrum->add_option("--format", spectrum_args.format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    ExportArgs export_args;
    auto* exporter = app.add_subcommand("export", "Write the graph as edge-list or colored DOT");
    exporter->add_option("--input", export_args.graph.input_path, "edge-list file");
    exporter->add_option("--rose", export_args.graph.rose_spec, "rose spec 'p,s'");
    exporter->add_option("--format", export_args.format, "edge-list | dot")
        ->check(CLI::IsMember({"edge-list", "dot"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rose->parsed()) return run_rose(rose_args);
        if (check->parsed()) return run_check(check_args);
        if (scan->parsed()) return run_scan(scan_args);
        if (search->parsed()) return run_search(search_args);
        if (heat->parsed()) return run_heat(heat_args);
        if (spectrum->parsed()) return run_spectrum(spectrum_args);
        if (exporter->parsed()) return run_export(export_args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
