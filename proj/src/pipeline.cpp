#include "orthorecon/pipeline.hpp"

#include <sstream>

#include <json.hpp>

#include "orthorecon/error.hpp"

namespace orthorecon {

using json = nlohmann::ordered_json;

Reconstruction reconstruct(const SliceDocument& doc, const ReconstructOptions& opts) {
    Reconstruction r;
    if (doc.contour_count() == 0) throw Error(ErrorCode::InvalidDocument, "document has no contours");
    for (auto& v : validate_document(doc, {opts.relative_eps, opts.check_simplicity})) {
        if (v.is_error())
            throw Error(ErrorCode::InvalidDocument,
                        to_string(v.kind) + (v.id ? " in contour " + to_string(*v.id) : std::string()) + ": " +
                            v.detail);
        r.violations.push_back(std::move(v));
    }

    r.grid = build_grid(doc, opts.relative_eps);
    r.clip = clip_document(doc, r.grid, {opts.snap_corners}, opts.workers);
    r.pairing = pair_node_points(r.clip.registry, r.grid,
                                 opts.pairing_tolerance.value_or(default_pairing_tolerance(r.grid)));
    r.arcs = build_arc_graph(r.clip.clipped, r.pairing, r.grid, {!opts.strict});
    r.cycles = extract_cycles(r.arcs, r.grid, {opts.strict, opts.workers});
    r.assembly = assemble_mesh(r.cycles.polygons, r.grid.eps, opts.workers);
    r.mesh = orient_mesh(r.assembly.mesh, &r.orientation);
    r.topology = topology(r.mesh);
    return r;
}

namespace {

json vec_json(Vec3 p) { return json::array({p.x, p.y, p.z}); }
json cell_json(const CellIndex& c) { return json::array({c[0], c[1], c[2]}); }

json topology_json(const TopologyReport& t) {
    json j;
    j["vertices"] = t.vertices;
    j["edges"] = t.edges;
    j["faces"] = t.faces;
    j["euler"] = t.euler;
    j["components"] = t.components;
    j["boundaryEdges"] = t.boundary_edges;
    j["nonManifoldEdges"] = t.nonmanifold_edges;
    j["watertight"] = t.watertight;
    json comps = json::array();
    for (const auto& c : t.per_component) {
        json jc;
        jc["vertices"] = c.vertices;
        jc["edges"] = c.edges;
        jc["faces"] = c.faces;
        jc["euler"] = c.euler;
        jc["closed"] = c.closed;
        if (c.genus) jc["genus"] = *c.genus;
        else jc["boundaryLoops"] = c.boundary_loops;
        comps.push_back(jc);
    }
    j["perComponent"] = comps;
    return j;
}

} // namespace

std::string format_topology(const TopologyReport& t) { return topology_json(t).dump(2) + "\n"; }

std::string format_report(const Reconstruction& r, const ReportOptions& opts) {
    json j;
    j["nodePoints"] = r.pairing.nodes.size();
    json unpaired = json::array();
    for (const auto& u : r.pairing.unpaired)
        unpaired.push_back({{"edge", to_string(u.edge)}, {"contour", to_string(u.reg.contour)}, {"t", u.reg.t}});
    j["unpaired"] = unpaired;
    json orphans = json::array();
    for (const auto& id : r.arcs.orphans) orphans.push_back(to_string(id));
    j["orphanContours"] = orphans;
    j["arcs"] = r.arcs.arcs.size();
    j["polygons"] = r.cycles.polygons.size();
    json hist = json::object();
    for (const auto& [k, v] : polygon_histogram(r.cycles.polygons)) hist[std::to_string(k)] = v;
    j["histogram"] = hist;
    json nm = json::array();
    for (const auto& c : r.cycles.non_manifold)
        nm.push_back({{"cell", cell_json(c.cell)}, {"node", c.node}, {"degree", c.degree}});
    j["nonManifoldCells"] = nm;
    j["containmentWarnings"] = r.cycles.containment_warnings;
    j["droppedTriangles"] = r.assembly.dropped_triangles;
    j["foldedTriangles"] = r.assembly.folded_triangles;
    j["degeneratePolygons"] = r.assembly.degenerate_polygons;
    json holes = json::array();
    for (const auto& v : r.violations)
        if (v.kind == ViolationKind::HoleContour && v.id) holes.push_back(to_string(*v.id));
    j["holeContours"] = holes;
    j["topology"] = topology_json(r.topology);

    if (opts.dump_nodes) {
        json nodes = json::array();
        for (const auto& np : r.pairing.nodes)
            nodes.push_back({{"id", np.id},
                             {"edge", to_string(np.edge)},
                             {"position", vec_json(np.position)},
                             {"a", to_string(np.a.contour)},
                             {"b", to_string(np.b.contour)}});
        j["nodes"] = nodes;
    }
    if (opts.dump_polygons) {
        json polys = json::array();
        for (const auto& p : r.cycles.polygons) {
            json arcs = json::array(), loop = json::array();
            for (const auto& use : p.arcs) arcs.push_back(use.forward ? use.arc : -1 - use.arc);
            for (const auto& q : p.loop) loop.push_back(vec_json(q));
            polys.push_back({{"cell", cell_json(p.cell)}, {"arcs", arcs}, {"boundary", loop}});
        }
        j["polygonDump"] = polys;
    }
    return j.dump(2) + "\n";
}

std::string format_histogram_csv(const std::map<int, int>& histogram) {
    std::ostringstream os;
    os << "arcs,polygons\n";
    for (const auto& [k, v] : histogram) os << k << ',' << v << '\n';
    return os.str();
}

} // namespace orthorecon
