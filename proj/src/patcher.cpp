#include "orthorecon/patcher.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <tuple>

#include "orthorecon/error.hpp"
#include "orthorecon/parallel.hpp"

namespace orthorecon {

Vec3 polygon_center(const SpatialPolygon& p) {
    if (p.loop.size() < 3)
        throw Error(ErrorCode::DegenerateLoop, "polygon loop has " + std::to_string(p.loop.size()) + " distinct points");
    Vec3 c;
    for (const Vec3& v : p.loop) c = c + v;
    return (1.0 / static_cast<double>(p.loop.size())) * c;
}

Patch patch_polygon(const SpatialPolygon& p, Vec3 center, double eps) {
    if (p.loop.size() < 3)
        throw Error(ErrorCode::DegenerateLoop, "polygon loop has " + std::to_string(p.loop.size()) + " distinct points");
    const std::size_t n = p.loop.size();

    // Newell normal of the loop stands in for the best-fit plane normal.
    Vec3 normal;
    for (std::size_t i = 0; i < n; ++i) normal = normal + cross(p.loop[i], p.loop[(i + 1) % n]);

    Patch out;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 a = p.loop[i], b = p.loop[(i + 1) % n];
        if (triangle_area(center, a, b) < eps * eps) {
            ++out.dropped;
            continue;
        }
        if (dot(cross(a - center, b - center), normal) < 0.0) ++out.folded;
        out.triangles.push_back({center, a, b});
    }
    return out;
}

Assembly assemble_mesh(std::span<const SpatialPolygon> polygons, double eps, int workers) {
    struct Slot {
        Patch patch;
        bool degenerate = false;
    };
    std::vector<Slot> slots(polygons.size());
    parallel_for(polygons.size(), workers, [&](std::size_t i) {
        try {
            slots[i].patch = patch_polygon(polygons[i], polygon_center(polygons[i]), eps);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateLoop) throw;
            slots[i].degenerate = true;
        }
    });

    Assembly out;
    const double q = eps > 0.0 ? 0.25 * eps : 1e-12;
    using Key = std::tuple<long long, long long, long long>;
    std::map<Key, int> weld;
    std::vector<Vec3> raw;
    auto vertex = [&](Vec3 p) {
        const Key k{std::llround(p.x / q), std::llround(p.y / q), std::llround(p.z / q)};
        const auto [it, fresh] = weld.try_emplace(k, static_cast<int>(raw.size()));
        if (fresh) raw.push_back(p);
        return it->second;
    };

    std::vector<Triangle> tris;
    std::vector<CellIndex> cells;
    std::vector<int> owners;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].degenerate) {
            ++out.degenerate_polygons;
            continue;
        }
        out.dropped_triangles += slots[i].patch.dropped;
        out.folded_triangles += slots[i].patch.folded;
        for (const auto& t : slots[i].patch.triangles) {
            const Triangle tri{vertex(t[0]), vertex(t[1]), vertex(t[2])};
            if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
                ++out.dropped_triangles;
                continue;
            }
            tris.push_back(tri);
            cells.push_back(polygons[i].cell);
            owners.push_back(static_cast<int>(i));
        }
    }

    // Compact so only referenced vertices remain, numbered by first use.
    std::vector<int> remap(raw.size(), -1);
    for (auto& tri : tris)
        for (int& v : tri) {
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(out.mesh.vertices.size());
                out.mesh.vertices.push_back(raw[v]);
            }
            v = remap[v];
        }
    out.mesh.triangles = std::move(tris);
    out.mesh.triangle_cells = std::move(cells);
    out.mesh.triangle_polygons = std::move(owners);
    return out;
}

namespace {

void flip(Triangle& t) { std::swap(t[1], t[2]); }

} // namespace

Mesh orient_mesh(const Mesh& m, OrientReport* report) {
    Mesh out = m;
    auto& tris = out.triangles;
    const int nt = static_cast<int>(tris.size());

    // For each undirected edge: (triangle, +1 if it runs low -> high).
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
    for (int t = 0; t < nt; ++t)
        for (int k = 0; k < 3; ++k) {
            const int a = tris[t][k], b = tris[t][(k + 1) % 3];
            if (a == b) continue;
            edges[{std::min(a, b), std::max(a, b)}].emplace_back(t, a < b ? 1 : -1);
        }

    OrientReport rep;
    std::vector<std::vector<std::pair<int, bool>>> adj(nt); // (neighbor, same direction)
    std::vector<bool> closed_ok(nt, true);
    for (const auto& [key, faces] : edges) {
        if (faces.size() == 2) {
            const bool same = faces[0].second == faces[1].second;
            adj[faces[0].first].emplace_back(faces[1].first, same);
            adj[faces[1].first].emplace_back(faces[0].first, same);
        } else {
            if (faces.size() > 2) ++rep.nonmanifold_edges;
            for (const auto& f : faces) closed_ok[f.first] = false;
        }
    }

    std::vector<int> comp(nt, -1);
    std::vector<bool> flipped(nt, false);
    for (int seed = 0; seed < nt; ++seed) {
        if (comp[seed] >= 0) continue;
        const int c = rep.components++;
        std::vector<int> members;
        std::queue<int> queue;
        comp[seed] = c;
        queue.push(seed);
        bool closed = true;
        while (!queue.empty()) {
            const int t = queue.front();
            queue.pop();
            members.push_back(t);
            closed = closed && closed_ok[t];
            for (const auto& [n, same] : adj[t]) {
                const bool want = flipped[t] != same;
                if (comp[n] < 0) {
                    comp[n] = c;
                    flipped[n] = want;
                    queue.push(n);
                } else if (flipped[n] != want) {
                    throw Error(ErrorCode::NonOrientable,
                                "triangles " + std::to_string(t) + " and " + std::to_string(n) + " cannot agree");
                }
            }
        }
        for (int t : members)
            if (flipped[t]) flip(tris[t]);
        if (!closed) {
            ++rep.open_components;
            continue;
        }
        double vol = 0.0;
        for (int t : members) {
            const Vec3 a = out.vertices[tris[t][0]], b = out.vertices[tris[t][1]], d = out.vertices[tris[t][2]];
            vol += dot(a, cross(b, d));
        }
        if (vol < 0.0) {
            ++rep.flipped_components;
            for (int t : members) flip(tris[t]);
        }
    }
    if (report) *report = rep;
    return out;
}

} // namespace orthorecon
