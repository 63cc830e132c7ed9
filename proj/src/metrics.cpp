#include "orthorecon/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "orthorecon/error.hpp"
#include "orthorecon/parallel.hpp"
#include "orthorecon/union_find.hpp"

namespace orthorecon {

TopologyReport topology(const Mesh& m) {
    TopologyReport r;
    const int nv = static_cast<int>(m.vertices.size());
    std::vector<bool> used(nv, false);
    std::map<std::pair<int, int>, int> edge_faces;
    UnionFind uf(nv);
    for (const auto& t : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            const int a = t[k], b = t[(k + 1) % 3];
            used[a] = true;
            ++edge_faces[{std::min(a, b), std::max(a, b)}];
            uf.unite(a, b);
        }
    }

    std::map<int, int> comp_of_root;
    std::vector<int> comp(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (!used[v]) continue;
        const auto [it, fresh] = comp_of_root.try_emplace(uf.find(v), static_cast<int>(comp_of_root.size()));
        comp[v] = it->second;
    }
    r.components = static_cast<int>(comp_of_root.size());
    r.per_component.resize(r.components);
    for (int v = 0; v < nv; ++v)
        if (used[v]) ++r.per_component[comp[v]].vertices;
    for (const auto& t : m.triangles) ++r.per_component[comp[t[0]]].faces;

    std::vector<bool> defective(r.components, false);
    UnionFind boundary(nv);
    std::vector<bool> on_boundary(nv, false);
    for (const auto& [e, faces] : edge_faces) {
        const int c = comp[e.first];
        ++r.per_component[c].edges;
        if (faces == 1) {
            ++r.boundary_edges;
            boundary.unite(e.first, e.second);
            on_boundary[e.first] = on_boundary[e.second] = true;
        } else if (faces > 2) {
            ++r.nonmanifold_edges;
        }
        if (faces != 2) defective[c] = true;
    }

    std::vector<std::set<int>> loops(r.components);
    for (int v = 0; v < nv; ++v)
        if (on_boundary[v]) loops[comp[v]].insert(boundary.find(v));

    for (int c = 0; c < r.components; ++c) {
        auto& pc = r.per_component[c];
        pc.euler = pc.vertices - pc.edges + pc.faces;
        pc.closed = !defective[c];
        if (pc.closed && pc.euler % 2 == 0 && pc.euler <= 2) pc.genus = (2 - pc.euler) / 2;
        if (!pc.closed) pc.boundary_loops = static_cast<int>(loops[c].size());
    }

    r.vertices = static_cast<int>(std::count(used.begin(), used.end(), true));
    r.edges = static_cast<int>(edge_faces.size());
    r.faces = static_cast<int>(m.triangles.size());
    r.euler = r.vertices - r.edges + r.faces;
    r.watertight = r.faces > 0 && r.boundary_edges == 0 && r.nonmanifold_edges == 0;
    return r;
}

double point_triangle_distance(Vec3 p, Vec3 a, Vec3 b, Vec3 c) {
    // Voronoi-region walk over the triangle's vertices, edges and face.
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return norm(p - a);
    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return norm(p - b);
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return norm(p - (a + (d1 / (d1 - d3)) * ab));
    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return norm(p - c);
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return norm(p - (a + (d2 / (d2 - d6)) * ac));
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
        return norm(p - (b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b)));
    const double denom = 1.0 / (va + vb + vc);
    return norm(p - (a + (vb * denom) * ab + (vc * denom) * ac));
}

struct TriangleDistance::Impl {
    struct Node {
        Vec3 lo, hi;
        int left = -1, right = -1; // children, or -1 for a leaf
        int begin = 0, end = 0;    // range in `order` for leaves
    };
    std::vector<std::array<Vec3, 3>> tris;
    std::vector<int> order;
    std::vector<Node> nodes;

    static constexpr int kLeafSize = 4;

    int build(int begin, int end) {
        Node node;
        node.lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
        node.hi = -1.0 * node.lo;
        for (int i = begin; i < end; ++i)
            for (const Vec3& v : tris[order[i]])
                for (int k = 0; k < 3; ++k) {
                    node.lo[k] = std::min(node.lo[k], v[k]);
                    node.hi[k] = std::max(node.hi[k], v[k]);
                }
        node.begin = begin;
        node.end = end;
        const int id = static_cast<int>(nodes.size());
        nodes.push_back(node);
        if (end - begin <= kLeafSize) return id;

        const Vec3 ext = node.hi - node.lo;
        const int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
        auto centroid = [&](int t) { return tris[t][0][axis] + tris[t][1][axis] + tris[t][2][axis]; };
        const int mid = (begin + end) / 2;
        std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                         [&](int x, int y) { return centroid(x) < centroid(y); });
        const int l = build(begin, mid);
        const int r = build(mid, end);
        nodes[id].left = l;
        nodes[id].right = r;
        return id;
    }

    static double box_distance(const Node& n, Vec3 p) {
        double sq = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double d = std::max({n.lo[k] - p[k], 0.0, p[k] - n.hi[k]});
            sq += d * d;
        }
        return std::sqrt(sq);
    }

    double query(Vec3 p) const {
        double best = std::numeric_limits<double>::infinity();
        std::vector<int> stack{0};
        while (!stack.empty()) {
            const Node& n = nodes[stack.back()];
            stack.pop_back();
            if (box_distance(n, p) >= best) continue;
            if (n.left < 0) {
                for (int i = n.begin; i < n.end; ++i) {
                    const auto& t = tris[order[i]];
                    best = std::min(best, point_triangle_distance(p, t[0], t[1], t[2]));
                }
                continue;
            }
            // visit the nearer child first
            const bool left_first = box_distance(nodes[n.left], p) <= box_distance(nodes[n.right], p);
            stack.push_back(left_first ? n.right : n.left);
            stack.push_back(left_first ? n.left : n.right);
        }
        return best;
    }
};

TriangleDistance::TriangleDistance(const Mesh& m) : impl_(std::make_unique<Impl>()) {
    if (m.triangles.empty()) throw Error(ErrorCode::EmptyMesh, "mesh has no triangles");
    for (const auto& t : m.triangles) impl_->tris.push_back({m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]});
    impl_->order.resize(impl_->tris.size());
    std::iota(impl_->order.begin(), impl_->order.end(), 0);
    impl_->build(0, static_cast<int>(impl_->tris.size()));
}

TriangleDistance::~TriangleDistance() = default;
TriangleDistance::TriangleDistance(TriangleDistance&&) noexcept = default;
TriangleDistance& TriangleDistance::operator=(TriangleDistance&&) noexcept = default;

double TriangleDistance::distance(Vec3 p) const { return impl_->query(p); }

std::vector<Vec3> sample_mesh(const Mesh& m, std::size_t count, std::size_t sequence_offset) {
    if (m.triangles.empty()) throw Error(ErrorCode::EmptyMesh, "mesh has no triangles");
    std::vector<Vec3> out;
    std::vector<bool> used(m.vertices.size(), false);
    for (const auto& t : m.triangles)
        for (int v : t) used[v] = true;
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
        if (used[v]) out.push_back(m.vertices[v]);

    std::vector<double> cdf;
    double total = 0.0;
    for (const auto& t : m.triangles) {
        total += triangle_area(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]);
        cdf.push_back(total);
    }
    if (!(total > 0.0)) return out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = sequence_offset + i;
        const double pick = radical_inverse(2, k) * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), pick);
        const auto& t = m.triangles[std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1)];
        const double r1 = std::sqrt(radical_inverse(3, k)), r2 = radical_inverse(5, k);
        const Vec3 a = m.vertices[t[0]], b = m.vertices[t[1]], c = m.vertices[t[2]];
        out.push_back((1.0 - r1) * a + (r1 * (1.0 - r2)) * b + (r1 * r2) * c);
    }
    return out;
}

namespace {

template <class Dist>
double max_distance(const std::vector<Vec3>& pts, int workers, Dist&& dist) {
    // fixed blocks so the reduction does not depend on scheduling
    constexpr std::size_t kBlock = 256;
    const std::size_t blocks = (pts.size() + kBlock - 1) / kBlock;
    std::vector<double> partial(blocks, 0.0);
    parallel_for(blocks, workers, [&](std::size_t b) {
        const std::size_t end = std::min(pts.size(), (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) partial[b] = std::max(partial[b], dist(pts[i]));
    });
    return partial.empty() ? 0.0 : *std::max_element(partial.begin(), partial.end());
}

void check_samples(std::size_t samples) {
    if (samples < 100) throw std::invalid_argument("hausdorff needs at least 100 samples");
}

} // namespace

double hausdorff(const Mesh& m, const AnalyticShape& reference, std::size_t samples, int workers) {
    check_samples(samples);
    const TriangleDistance tree(m);
    const auto on_mesh = sample_mesh(m, samples);
    const auto on_ref = sample_surface(reference, samples, kHausdorffSeed);
    const double forward = max_distance(on_mesh, workers, [&](Vec3 p) { return surface_distance(reference, p); });
    const double backward = max_distance(on_ref, workers, [&](Vec3 p) { return tree.distance(p); });
    return std::max(forward, backward);
}

double hausdorff(const Mesh& m, const Mesh& reference, std::size_t samples, int workers) {
    check_samples(samples);
    const TriangleDistance to_m(m), to_ref(reference);
    const auto on_m = sample_mesh(m, samples);
    const auto on_ref = sample_mesh(reference, samples);
    const double forward = max_distance(on_m, workers, [&](Vec3 p) { return to_ref.distance(p); });
    const double backward = max_distance(on_ref, workers, [&](Vec3 p) { return to_m.distance(p); });
    return std::max(forward, backward);
}

std::map<int, int> polygon_histogram(std::span<const SpatialPolygon> polygons) {
    std::map<int, int> h;
    for (const auto& p : polygons) ++h[static_cast<int>(p.arcs.size())];
    return h;
}

} // namespace orthorecon
