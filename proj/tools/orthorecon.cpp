// orthorecon: slice synthetic shapes, reconstruct meshes from three orthogonal
// slice sets, compare correspondence criteria and measure the results.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthorecon/correspondence.hpp"
#include "orthorecon/error.hpp"
#include "orthorecon/metrics.hpp"
#include "orthorecon/pipeline.hpp"
#include "orthorecon/slice_io.hpp"
#include "orthorecon/synth_slicer.hpp"

namespace {

using namespace orthorecon;
using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kInput = 1, kData = 2, kManifold = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::TangencyDetected:
        case ErrorCode::OpenChain:
        case ErrorCode::VertexOnPlane:
        case ErrorCode::CornerSingularity:
        case ErrorCode::UnpairedInput:
            return kData;
        case ErrorCode::NonManifoldJunction:
        case ErrorCode::NonOrientable:
            return kManifold;
        default:
            return kInput;
    }
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "axis:start:step:count"
void add_planes(PlaneCoords& planes, const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    const auto bad = [&](const std::string& why) {
        return UsageError("plane spec '" + spec + "': " + why + " (expected axis:start:step:count)");
    };
    if (parts.size() != 4) throw bad("need 4 fields");
    const auto axis = parts[0].size() == 1 ? parse_axis(parts[0][0]) : std::nullopt;
    if (!axis) throw bad("axis must be x, y or z");
    double start = 0.0, step = 0.0;
    long count = 0;
    try {
        std::size_t used = 0;
        start = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw bad("bad start");
        step = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw bad("bad step");
        count = std::stol(parts[3], &used);
        if (used != parts[3].size()) throw bad("bad count");
    } catch (const std::logic_error&) {
        throw bad("not a number");
    }
    if (!(step > 0.0)) throw bad("step must be positive");
    if (count < 1) throw bad("count must be at least 1");
    auto& coords = planes[index(*axis)];
    if (!coords.empty()) throw bad("axis given twice");
    for (long i = 0; i < count; ++i) coords.push_back(start + step * static_cast<double>(i));
}

double relative_eps(double eps) {
    if (!(eps > 0.0)) throw UsageError("--epsilon must be positive");
    return eps;
}

std::string contour_counts(const SliceDocument& doc) {
    std::ostringstream os;
    for (const auto& set : doc.sets)
        for (std::size_t p = 0; p < set.size(); ++p) {
            char line[96];
            std::snprintf(line, sizeof line, "%c[%zu] @ %.9g: %zu contours\n", axis_name(set[p].axis), p,
                          set[p].coord, set[p].contours.size());
            os << line;
        }
    return os.str();
}

json ids_json(const std::vector<ContourId>& ids) {
    json a = json::array();
    for (const auto& id : ids) a.push_back(to_string(id));
    return a;
}

json pairs_json(const std::vector<ContourPair>& pairs) {
    json a = json::array();
    for (const auto& [x, y] : pairs) a.push_back({to_string(x), to_string(y)});
    return a;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface reconstruction from three orthogonal slice sets"};
    app.require_subcommand(1);

    // shared option storage
    std::string input, output, report_path, shape_text, mesh_path, reference_path, method = "orthogonal", axis_text = "z";
    std::vector<std::string> plane_specs;
    double epsilon = kDefaultRelativeEpsilon;
    bool strict = false, dump_nodes = false, dump_polygons = false, cell_comments = false, check_simple = false;
    int samples = -1, workers = 1;

    auto* slice = app.add_subcommand("slice", "Slice an analytic shape or an OBJ mesh into a slice document");
    slice->add_option("--shape", shape_text, "Shape as inline JSON, e.g. {\"type\":\"sphere\",...}");
    slice->add_option("--mesh", mesh_path, "Triangle mesh (OBJ) to slice");
    slice->add_option("--planes", plane_specs, "axis:start:step:count, once per axis")->required();
    slice->add_option("--samples", samples, "Vertices per curved contour (default 64)");
    slice->add_option("--epsilon", epsilon, "Relative epsilon");
    slice->add_option("--output", output, "Slice JSON path (default stdout)");

    auto* recon = app.add_subcommand("reconstruct", "Reconstruct a triangle mesh from a slice document");
    recon->add_option("--input", input, "Slice JSON")->required();
    recon->add_option("--output", output, "OBJ path (default: none)");
    recon->add_option("--report", report_path, "Report JSON path (default stdout)");
    recon->add_option("--epsilon", epsilon, "Relative epsilon");
    recon->add_flag("--strict", strict, "Unpaired registrations and non-manifold cells are fatal");
    recon->add_flag("--dump-nodes", dump_nodes, "Include node points in the report");
    recon->add_flag("--dump-polygons", dump_polygons, "Include spatial polygons in the report");
    recon->add_flag("--cell-comments", cell_comments, "Write '# cell i j k' comments into the OBJ");
    recon->add_flag("--check-simple", check_simple, "Reject self-intersecting contours");
    recon->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    auto* corr = app.add_subcommand("correspond", "Contour correspondence by overlap, MST or orthogonal crossings");
    corr->add_option("--input", input, "Slice JSON")->required();
    corr->add_option("--method", method, "overlap | mst | orthogonal")
        ->check(CLI::IsMember({"overlap", "mst", "orthogonal"}));
    corr->add_option("--axis", axis_text, "Parallel set for overlap and mst")->check(CLI::IsMember({"x", "y", "z"}));
    corr->add_option("--epsilon", epsilon, "Relative epsilon");
    corr->add_option("--output", output, "Report JSON path (default stdout)");
    corr->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    auto* met = app.add_subcommand("metrics", "Topology of a mesh and optional Hausdorff distance");
    met->add_option("--input", input, "OBJ mesh")->required();
    met->add_option("--shape", shape_text, "Analytic reference shape (inline JSON)");
    met->add_option("--reference", reference_path, "Reference OBJ mesh");
    met->add_option("--samples", samples, "Hausdorff samples per side (default 10000)");
    met->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    met->add_option("--output", output, "Report JSON path (default stdout)");

    auto* hist = app.add_subcommand("histogram", "Polygon size histogram of a reconstruction, as CSV");
    hist->add_option("--input", input, "Slice JSON")->required();
    hist->add_option("--epsilon", epsilon, "Relative epsilon");
    hist->add_option("--output", output, "CSV path (default stdout)");
    hist->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (*slice) {
            if (shape_text.empty() == mesh_path.empty()) throw UsageError("give exactly one of --shape and --mesh");
            PlaneCoords planes;
            for (const auto& s : plane_specs) add_planes(planes, s);
            const double eps = relative_eps(epsilon);
            SliceDocument doc;
            if (!shape_text.empty()) {
                if (samples != -1 && samples < 3) throw UsageError("--samples must be at least 3");
                doc = slice_analytic(parse_shape_json(shape_text), planes,
                                     samples == -1 ? kDefaultSamplesPerContour : samples, eps);
            } else {
                doc = slice_mesh(read_obj(mesh_path), planes, eps);
            }
            emit(format_slice_document(doc), output);
            (output.empty() || output == "-" ? std::cerr : std::cout) << contour_counts(doc);
            return kOk;
        }

        if (*recon) {
            ReconstructOptions opts;
            opts.relative_eps = relative_eps(epsilon);
            opts.strict = strict;
            opts.check_simplicity = check_simple;
            opts.workers = workers;
            const auto r = reconstruct(read_slice_document(input), opts);
            if (!output.empty()) emit(format_obj(r.mesh, {cell_comments}), output);
            emit(format_report(r, {dump_nodes, dump_polygons}), report_path);
            return kOk;
        }

        if (*corr) {
            const SliceDocument doc = read_slice_document(input);
            json j;
            j["method"] = method;
            if (method == "orthogonal") {
                const Grid grid = build_grid(doc, relative_eps(epsilon));
                const auto run = clip_document(doc, grid, {}, workers);
                const auto pairing = pair_node_points(run.registry, grid);
                const auto g = build_correspondence_graph(doc, pairing.nodes);
                const auto labels = component_labels(g);
                j["components"] = component_count(g);
                j["edges"] = pairs_json(g.edges);
                json assign = json::object();
                for (std::size_t i = 0; i < g.nodes.size(); ++i) assign[to_string(g.nodes[i])] = labels[i];
                j["assignment"] = assign;
                j["unpaired"] = pairing.unpaired.size();
            } else {
                const Axis a = *parse_axis(axis_text[0]);
                const auto& set = doc.set(a);
                if (set.empty()) throw UsageError(std::string("document has no ") + axis_text + " slice set");
                j["axis"] = axis_text;
                if (method == "overlap") {
                    const auto res = overlap_chains(set);
                    j["components"] = res.components;
                    j["edges"] = pairs_json(res.links);
                    json assign = json::object();
                    for (std::size_t i = 0; i < res.contours.size(); ++i)
                        assign[to_string(res.contours[i])] = res.component[i];
                    j["assignment"] = assign;
                } else {
                    const auto forest = mst_correspondence(set);
                    j["components"] = forest.trees;
                    json edges = json::array();
                    for (const auto& e : forest.edges)
                        edges.push_back({{"a", to_string(e.a)}, {"b", to_string(e.b)}, {"cost", e.cost}});
                    j["edges"] = edges;
                    j["totalCost"] = forest.total_cost;
                }
            }
            emit(j.dump(2) + "\n", output);
            return kOk;
        }

        if (*met) {
            const Mesh m = read_obj(input);
            const auto topo = topology(m);
            json j = json::parse(format_topology(topo));
            if (!shape_text.empty() && !reference_path.empty())
                throw UsageError("give at most one of --shape and --reference");
            if (!shape_text.empty() || !reference_path.empty()) {
                const std::size_t n = samples == -1 ? 10000 : static_cast<std::size_t>(std::max(samples, 0));
                if (n < 100) throw UsageError("--samples must be at least 100");
                j["hausdorff"] = shape_text.empty() ? hausdorff(m, read_obj(reference_path), n, workers)
                                                    : hausdorff(m, parse_shape_json(shape_text), n, workers);
                j["samples"] = n;
                j["sampleSeed"] = kHausdorffSeed;
            }
            emit(j.dump(2) + "\n", output);
            return kOk;
        }

        if (*hist) {
            ReconstructOptions opts;
            opts.relative_eps = relative_eps(epsilon);
            opts.workers = workers;
            const auto r = reconstruct(read_slice_document(input), opts);
            emit(format_histogram_csv(polygon_histogram(r.cycles.polygons)), output);
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "orthorecon: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        std::cerr << "orthorecon: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "orthorecon: bad JSON: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
