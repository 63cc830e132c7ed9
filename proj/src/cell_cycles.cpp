#include "orthorecon/cell_cycles.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "orthorecon/error.hpp"
#include "orthorecon/parallel.hpp"

namespace orthorecon {

ArcGraph build_arc_graph(std::span<const ClippedContour> clipped, const PairingResult& pairing, const Grid& /*grid*/,
                         const ArcGraphOptions& opts) {
    if (!pairing.unpaired.empty() && !opts.allow_unpaired) {
        const auto& u = pairing.unpaired.front();
        throw Error(ErrorCode::UnpairedInput, std::to_string(pairing.unpaired.size()) +
                                                  " unpaired registrations, first on " + to_string(u.edge) +
                                                  " from contour " + to_string(u.reg.contour));
    }

    ArcGraph ag;
    std::map<std::pair<ContourId, int>, int> node_at;
    for (const auto& np : pairing.nodes) {
        ag.nodes.push_back(np.position);
        node_at[{np.a.contour, np.a.vertex}] = np.id;
        node_at[{np.b.contour, np.b.vertex}] = np.id;
    }
    ag.paired_nodes = static_cast<int>(ag.nodes.size());

    std::map<ContourId, const ClippedContour*> by_id;
    for (const auto& cc : clipped) by_id[cc.id] = &cc;
    for (const auto& u : pairing.unpaired) {
        const auto it = by_id.find(u.reg.contour);
        if (it == by_id.end()) continue;
        node_at[{u.reg.contour, u.reg.vertex}] = static_cast<int>(ag.nodes.size());
        ag.nodes.push_back(it->second->world(u.reg.vertex));
    }

    for (const auto& cc : clipped) {
        std::vector<std::pair<int, int>> cuts; // (vertex, node)
        for (int i = 0; i < static_cast<int>(cc.vertices.size()); ++i) {
            const auto it = node_at.find({cc.id, i});
            if (it != node_at.end()) cuts.emplace_back(i, it->second);
        }
        if (cuts.empty()) {
            ag.orphans.push_back(cc.id);
            continue;
        }
        const int n = static_cast<int>(cc.vertices.size());
        const int plane = Grid::grid_index(cc.id.plane);
        const Axis a = cc.id.axis;
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            const auto [first, head] = cuts[k];
            const auto [last, tail] = cuts[(k + 1) % cuts.size()];
            Arc arc;
            arc.id = static_cast<int>(ag.arcs.size());
            arc.contour = cc.id;
            arc.first = first;
            arc.last = last;
            arc.head = head;
            arc.tail = tail;
            const auto& lat = cc.vertices[first].lattice;
            CellIndex cell{};
            cell[index(u_axis(a))] = lat[0];
            cell[index(v_axis(a))] = lat[1];
            cell[index(a)] = plane - 1;
            arc.b1 = cell;
            cell[index(a)] = plane;
            arc.b2 = cell;
            arc.points.push_back(ag.nodes[head]);
            for (int i = (first + 1) % n; i != last; i = (i + 1) % n) arc.points.push_back(cc.world(i));
            arc.points.push_back(ag.nodes[tail]);
            ag.cells[arc.b1].push_back(arc.id);
            ag.cells[arc.b2].push_back(arc.id);
            ag.arcs.push_back(std::move(arc));
        }
    }
    return ag;
}

CellClassification classify_cells(const ArcGraph& ag, const Grid& grid) {
    CellClassification out;
    const int nx = grid.cell_count(Axis::X), ny = grid.cell_count(Axis::Y), nz = grid.cell_count(Axis::Z);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k) {
                const CellIndex c{i, j, k};
                const auto it = ag.cells.find(c);
                (it != ag.cells.end() && !it->second.empty() ? out.crossing : out.passing).push_back(c);
            }
    return out;
}

namespace {

struct CellOutput {
    std::vector<SpatialPolygon> polygons;
    std::optional<NonManifoldCell> issue;
    int warnings = 0;
};

bool inside_box(Vec3 p, Vec3 lo, Vec3 hi, double tol) {
    for (int k = 0; k < 3; ++k)
        if (p[k] < lo[k] - tol || p[k] > hi[k] + tol) return false;
    return true;
}

CellOutput cell_cycles(const ArcGraph& ag, const Grid& grid, const CellIndex& cell, const std::vector<int>& arcs) {
    CellOutput out;

    // incidences per node: (arc, end) with end 0 = head, 1 = tail
    std::map<int, std::vector<std::pair<int, int>>> at;
    for (int id : arcs) {
        at[ag.arcs[id].head].emplace_back(id, 0);
        at[ag.arcs[id].tail].emplace_back(id, 1);
    }
    for (const auto& [node, inc] : at)
        if (inc.size() != 2) {
            out.issue = NonManifoldCell{cell, node, static_cast<int>(inc.size())};
            return out;
        }

    std::map<int, bool> visited;
    for (int id : arcs) visited[id] = false;
    const double tol = 10.0 * grid.eps;
    const Vec3 lo = grid.cell_min(cell), hi = grid.cell_max(cell);

    for (int start : arcs) {
        if (visited[start]) continue;
        SpatialPolygon poly;
        poly.cell = cell;
        const Arc& s = ag.arcs[start];
        bool forward = cell == s.b2;
        int id = start;
        while (!visited[id]) {
            visited[id] = true;
            poly.arcs.push_back({id, forward});
            const Arc& arc = ag.arcs[id];
            const int exit_end = forward ? 1 : 0;
            const int node = forward ? arc.tail : arc.head;
            const auto& inc = at[node];
            const auto next = inc[0] == std::pair{id, exit_end} ? inc[1] : inc[0];
            id = next.first;
            forward = next.second == 0;
        }

        for (const auto& use : poly.arcs) {
            const auto& pts = ag.arcs[use.arc].points;
            const std::size_t m = pts.size();
            for (std::size_t k = 0; k + 1 < m; ++k) {
                const Vec3 p = use.forward ? pts[k] : pts[m - 1 - k];
                if (poly.loop.empty() || norm(p - poly.loop.back()) > grid.eps) poly.loop.push_back(p);
            }
        }
        while (poly.loop.size() > 1 && norm(poly.loop.front() - poly.loop.back()) <= grid.eps) poly.loop.pop_back();

        for (const Vec3& p : poly.loop)
            if (!inside_box(p, lo, hi, tol)) {
                ++out.warnings;
                break;
            }
        out.polygons.push_back(std::move(poly));
    }
    return out;
}

} // namespace

CycleResult extract_cycles(const ArcGraph& ag, const Grid& grid, const CycleOptions& opts) {
    std::vector<const std::pair<const CellIndex, std::vector<int>>*> cells;
    for (const auto& entry : ag.cells) cells.push_back(&entry);

    std::vector<CellOutput> outs(cells.size());
    parallel_for(cells.size(), opts.workers,
                 [&](std::size_t i) { outs[i] = cell_cycles(ag, grid, cells[i]->first, cells[i]->second); });

    CycleResult result;
    for (auto& o : outs) {
        if (o.issue) result.non_manifold.push_back(*o.issue);
        result.containment_warnings += o.warnings;
        for (auto& p : o.polygons) result.polygons.push_back(std::move(p));
    }
    if (opts.strict && !result.non_manifold.empty()) {
        const auto& nm = result.non_manifold.front();
        throw Error(ErrorCode::NonManifoldJunction,
                    "cell [" + std::to_string(nm.cell[0]) + "," + std::to_string(nm.cell[1]) + "," +
                        std::to_string(nm.cell[2]) + "] node " + std::to_string(nm.node) + " has " +
                        std::to_string(nm.degree) + " incident arcs");
    }
    return result;
}

} // namespace orthorecon
