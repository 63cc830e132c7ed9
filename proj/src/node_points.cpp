#include "orthorecon/node_points.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "orthorecon/error.hpp"
#include "orthorecon/parallel.hpp"

namespace orthorecon {

std::size_t ClippedContour::insertion_count() const {
    return static_cast<std::size_t>(
        std::count_if(vertices.begin(), vertices.end(), [](const ClippedVertex& v) { return v.inserted(); }));
}

namespace {

struct Crossing {
    double s;     // segment parameter
    int family;   // 0: line of constant u, 1: line of constant v
    int line;     // grid coordinate index of the line
    bool upward;  // crossing towards larger coordinates
    Vec2 point;
};

bool near_line(const std::vector<double>& coords, double x, double eps) {
    for (std::size_t k = 1; k + 1 < coords.size(); ++k)
        if (std::abs(x - coords[k]) <= eps) return true;
    return false;
}

} // namespace

ClippedContour clip_contour(const Contour& c, const Grid& grid, const ClipOptions& opts) {
    const Axis a = c.id.axis, ua = u_axis(a), va = v_axis(a);
    const auto& cu = grid.coords[index(ua)];
    const auto& cv = grid.coords[index(va)];
    const int plane = Grid::grid_index(c.id.plane);
    const double eps = grid.eps;
    const auto& pts = c.vertices;
    const std::size_t n = pts.size();

    ClippedContour out;
    out.id = c.id;
    out.coord = grid.plane_coord(a, c.id.plane);

    // Region codes of the vertices: lattice intervals, with coordinates within
    // eps of a line counted on its positive side.
    std::vector<std::array<int, 2>> cell(n);
    for (std::size_t i = 0; i < n; ++i) {
        cell[i] = {grid.interval_of(ua, pts[i].u), grid.interval_of(va, pts[i].v)};
        if (cell[i][0] < 0 || cell[i][1] < 0)
            throw Error(ErrorCode::OutOfHull, "contour " + to_string(c.id) + " leaves the grid hull");
        if (!opts.snap_corners && near_line(cu, pts[i].u, eps) && near_line(cv, pts[i].v, eps))
            throw Error(ErrorCode::CornerSingularity,
                        "contour " + to_string(c.id) + " vertex " + std::to_string(i) + " sits on a lattice corner");
    }

    std::vector<Crossing> xs;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = pts[i], q = pts[(i + 1) % n];
        const auto& from = cell[i];
        const auto& to = cell[(i + 1) % n];
        out.vertices.push_back({p, static_cast<int>(i), std::nullopt, 0.0, from});
        if (from == to) continue; // both ends in one lattice cell

        xs.clear();
        for (int fam = 0; fam < 2; ++fam) {
            const auto& lines = fam == 0 ? cu : cv;
            const double p0 = fam == 0 ? p.u : p.v, q0 = fam == 0 ? q.u : q.v;
            const int lo = from[fam], hi = to[fam];
            auto add = [&](int k, bool up) {
                const double s = std::clamp((lines[k] - p0) / (q0 - p0), 0.0, 1.0);
                Vec2 x = p + s * (q - p);
                (fam == 0 ? x.u : x.v) = lines[k];
                xs.push_back({s, fam, k, up, x});
            };
            if (lo < hi)
                for (int k = lo + 1; k <= hi; ++k) add(k, true);
            else
                for (int k = lo; k > hi; --k) add(k, false);
        }
        std::sort(xs.begin(), xs.end(), [](const Crossing& x, const Crossing& y) {
            return std::tie(x.s, x.family, x.line) < std::tie(y.s, y.family, y.line);
        });

        // A u-line and a v-line crossed at the same point means the segment
        // passes through a lattice corner. Resolve as if the lattice were
        // shifted by (-d, -d^2) for infinitesimal d: the u-line comes first
        // exactly when the segment moves towards +u.
        for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
            if (xs[k].family == xs[k + 1].family || norm(xs[k].point - xs[k + 1].point) > 2.0 * eps) continue;
            if (!opts.snap_corners)
                throw Error(ErrorCode::CornerSingularity,
                            "contour " + to_string(c.id) + " crosses a lattice corner after vertex " + std::to_string(i));
            const bool u_first = q.u > p.u;
            if ((xs[k].family == 0) != u_first) std::swap(xs[k], xs[k + 1]);
        }

        std::array<int, 2> cur = from;
        for (const Crossing& x : xs) {
            GridEdgeId e;
            e.idx[index(a)] = plane;
            double t;
            if (x.family == 0) {
                e.dir = va;
                e.idx[index(ua)] = x.line;
                e.idx[index(va)] = cur[1];
                t = x.point.v;
                cur[0] = x.upward ? x.line : x.line - 1;
            } else {
                e.dir = ua;
                e.idx[index(va)] = x.line;
                e.idx[index(ua)] = cur[0];
                t = x.point.u;
                cur[1] = x.upward ? x.line : x.line - 1;
            }
            out.vertices.push_back({x.point, -1, e, t, cur});
        }
    }
    return out;
}

std::size_t EdgeRegistry::registration_count() const {
    std::size_t n = 0;
    for (const auto& [edge, regs] : edges) n += regs.size();
    return n;
}

namespace {

bool edge_in_grid(const GridEdgeId& e, const Grid& grid) {
    for (int k = 0; k < 3; ++k) {
        const Axis ax = axis_from_index(k);
        if (ax == e.dir) {
            if (e.idx[k] < 0 || e.idx[k] >= grid.cell_count(ax)) return false;
        } else if (e.idx[k] < 1 || e.idx[k] > grid.plane_count(ax)) {
            return false;
        }
    }
    return true;
}

bool by_t(const Registration& x, const Registration& y) {
    return std::tie(x.t, x.contour, x.vertex) < std::tie(y.t, y.contour, y.vertex);
}

} // namespace

void register_intersections(const ClippedContour& cc, const Grid& grid, EdgeRegistry& registry) {
    std::vector<GridEdgeId> touched;
    for (std::size_t i = 0; i < cc.vertices.size(); ++i) {
        const auto& v = cc.vertices[i];
        if (!v.inserted()) continue;
        if (!edge_in_grid(*v.edge, grid))
            throw Error(ErrorCode::EdgeNotInGrid, to_string(*v.edge) + " from contour " + to_string(cc.id));
        registry.edges[*v.edge].push_back({cc.id.axis, cc.id, static_cast<int>(i), v.t});
        touched.push_back(*v.edge);
    }
    for (const auto& e : touched) {
        auto& regs = registry.edges[e];
        std::sort(regs.begin(), regs.end(), by_t);
    }
}

double default_pairing_tolerance(const Grid& grid) { return 0.5 * grid.min_spacing(); }

std::vector<std::pair<int, int>> pair_edge_registrations(std::span<const Registration> first,
                                                         std::span<const Registration> second, double tolerance) {
    auto order = [](std::span<const Registration> regs) {
        std::vector<int> idx(regs.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return regs[x].t < regs[y].t; });
        return idx;
    };

    std::vector<std::pair<int, int>> pairs;
    if (!first.empty() && first.size() == second.size()) {
        // Crossings of one surface curve interleave, so rank pairing is the
        // expected answer; it is kept only if every pair is close enough.
        const auto oa = order(first), ob = order(second);
        bool ok = true;
        for (std::size_t k = 0; k < oa.size() && ok; ++k)
            ok = std::abs(first[oa[k]].t - second[ob[k]].t) <= tolerance;
        if (ok) {
            for (std::size_t k = 0; k < oa.size(); ++k) pairs.push_back({oa[k], ob[k]});
            std::sort(pairs.begin(), pairs.end());
            return pairs;
        }
    }

    struct Candidate {
        double gap, sum;
        int i, j;
    };
    std::vector<Candidate> cands;
    for (int i = 0; i < static_cast<int>(first.size()); ++i)
        for (int j = 0; j < static_cast<int>(second.size()); ++j) {
            const double gap = std::abs(first[i].t - second[j].t);
            if (gap <= tolerance) cands.push_back({gap, first[i].t + second[j].t, i, j});
        }
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
        return std::tie(x.gap, x.sum, x.i, x.j) < std::tie(y.gap, y.sum, y.i, y.j);
    });
    std::vector<bool> used_a(first.size(), false), used_b(second.size(), false);
    for (const auto& c : cands) {
        if (used_a[c.i] || used_b[c.j]) continue;
        used_a[c.i] = used_b[c.j] = true;
        pairs.push_back({c.i, c.j});
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

PairingResult pair_node_points(const EdgeRegistry& registry, const Grid& grid, double tolerance) {
    PairingResult result;
    result.tolerance = tolerance;
    for (const auto& [edge, regs] : registry.edges) {
        int lo = -1, hi = -1;
        for (int k = 0; k < 3; ++k) {
            if (k == index(edge.dir)) continue;
            (lo < 0 ? lo : hi) = k;
        }
        std::vector<Registration> first, second;
        for (const auto& r : regs) (index(r.source) == lo ? first : second).push_back(r);
        // `first` and `second` inherit the registry's t order
        const auto pairs = pair_edge_registrations(first, second, tolerance);

        std::vector<bool> used_a(first.size(), false), used_b(second.size(), false);
        for (const auto& [i, j] : pairs) {
            used_a[i] = used_b[j] = true;
            NodePoint np;
            np.id = static_cast<int>(result.nodes.size());
            np.edge = edge;
            np.a = {first[i].contour, first[i].vertex, first[i].t};
            np.b = {second[j].contour, second[j].vertex, second[j].t};
            np.position[lo] = grid.coords[lo][edge.idx[lo]];
            np.position[hi] = grid.coords[hi][edge.idx[hi]];
            np.position[index(edge.dir)] = 0.5 * (first[i].t + second[j].t);
            result.nodes.push_back(np);
        }
        for (const auto& r : regs) {
            const bool is_first = index(r.source) == lo;
            const auto& list = is_first ? first : second;
            const auto& used = is_first ? used_a : used_b;
            for (std::size_t k = 0; k < list.size(); ++k)
                if (!used[k] && list[k].contour == r.contour && list[k].vertex == r.vertex) {
                    result.unpaired.push_back({edge, r});
                    break;
                }
        }
    }
    return result;
}

ClipRun clip_document(const SliceDocument& doc, const Grid& grid, const ClipOptions& opts, int workers) {
    std::vector<const Contour*> contours;
    for (const auto& set : doc.sets)
        for (const auto& plane : set)
            for (const auto& c : plane.contours) contours.push_back(&c);

    ClipRun run;
    run.clipped.resize(contours.size());
    parallel_for(contours.size(), workers, [&](std::size_t i) { run.clipped[i] = clip_contour(*contours[i], grid, opts); });
    for (const auto& cc : run.clipped) register_intersections(cc, grid, run.registry);
    return run;
}

} // namespace orthorecon
