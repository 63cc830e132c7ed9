#include "orthorecon/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "orthorecon/error.hpp"
#include "orthorecon/union_find.hpp"

namespace orthorecon {

CorrespondenceGraph build_correspondence_graph(const SliceDocument& doc, std::span<const NodePoint> nodes) {
    CorrespondenceGraph g;
    g.nodes = doc.contour_ids();
    std::sort(g.nodes.begin(), g.nodes.end());
    for (const auto& np : nodes) {
        auto e = std::minmax(np.a.contour, np.b.contour);
        g.edges.emplace_back(e.first, e.second);
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

std::vector<int> component_labels(const CorrespondenceGraph& g) {
    std::map<ContourId, int> slot;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) slot[g.nodes[i]] = static_cast<int>(i);
    UnionFind uf(g.nodes.size());
    for (const auto& [a, b] : g.edges) {
        const auto ia = slot.find(a), ib = slot.find(b);
        if (ia != slot.end() && ib != slot.end()) uf.unite(ia->second, ib->second);
    }
    return uf.labels();
}

int component_count(const CorrespondenceGraph& g) {
    const auto labels = component_labels(g);
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

EllipseFit fit_ellipse(const Contour& c, double plane_coord) {
    const auto& v = c.vertices;
    if (v.size() < 3) throw Error(ErrorCode::DegenerateContour, "ellipse fit needs 3 vertices");
    const double n = static_cast<double>(v.size());
    double mu = 0.0, mv = 0.0;
    for (const auto& p : v) {
        mu += p.u;
        mv += p.v;
    }
    mu /= n;
    mv /= n;
    double suu = 0.0, svv = 0.0, suv = 0.0;
    for (const auto& p : v) {
        const double du = p.u - mu, dv = p.v - mv;
        suu += du * du;
        svv += dv * dv;
        suv += du * dv;
    }
    suu /= n;
    svv /= n;
    suv /= n;
    const double mean = 0.5 * (suu + svv);
    const double r = std::hypot(0.5 * (suu - svv), suv);
    const double l1 = mean + r, l2 = mean - r;
    if (!(l1 > 0.0) || l2 <= 1e-12 * l1)
        throw Error(ErrorCode::DegenerateContour, "contour " + to_string(c.id) + " is collinear");

    EllipseFit f;
    f.id = c.id;
    f.x = mu;
    f.y = mv;
    f.z = plane_coord;
    f.a = std::sqrt(2.0 * l1);
    f.b = std::sqrt(2.0 * l2);
    return f;
}

double mst_cost(const EllipseFit& i, const EllipseFit& j) {
    const double dx = i.x - j.x, dy = i.y - j.y, da = i.a - j.a, db = i.b - j.b;
    return dx * dx + dy * dy + da * da + db * db;
}

MstForest mst_correspondence(std::span<const SlicePlane> planes) {
    std::vector<std::vector<EllipseFit>> fits(planes.size());
    std::vector<ContourId> ids;
    for (std::size_t p = 0; p < planes.size(); ++p)
        for (const auto& c : planes[p].contours) {
            fits[p].push_back(fit_ellipse(c, planes[p].coord));
            ids.push_back(c.id);
        }
    std::sort(ids.begin(), ids.end());
    std::map<ContourId, int> slot;
    for (std::size_t i = 0; i < ids.size(); ++i) slot[ids[i]] = static_cast<int>(i);

    std::vector<MstEdge> cands;
    for (std::size_t p = 0; p + 1 < planes.size(); ++p)
        for (const auto& fi : fits[p])
            for (const auto& fj : fits[p + 1]) {
                auto [lo, hi] = std::minmax(fi.id, fj.id);
                cands.push_back({lo, hi, mst_cost(fi, fj)});
            }
    std::sort(cands.begin(), cands.end(), [](const MstEdge& x, const MstEdge& y) {
        return std::tie(x.cost, x.a, x.b) < std::tie(y.cost, y.a, y.b);
    });

    MstForest forest;
    UnionFind uf(ids.size());
    for (const auto& e : cands) {
        if (!uf.unite(slot[e.a], slot[e.b])) continue;
        forest.edges.push_back(e);
        forest.total_cost += e.cost;
    }
    forest.trees = static_cast<int>(ids.size() - forest.edges.size());
    return forest;
}

bool polygons_overlap(std::span<const Vec2> p, std::span<const Vec2> q) {
    if (p.size() < 3 || q.size() < 3) return false;
    for (const auto& x : p)
        if (point_in_polygon(x, q)) return true;
    for (const auto& x : q)
        if (point_in_polygon(x, p)) return true;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            if (segments_intersect(p[i], p[(i + 1) % p.size()], q[j], q[(j + 1) % q.size()])) return true;
    return false;
}

OverlapResult overlap_chains(std::span<const SlicePlane> planes) {
    OverlapResult out;
    std::map<ContourId, int> slot;
    for (const auto& pl : planes)
        for (const auto& c : pl.contours) out.contours.push_back(c.id);
    std::sort(out.contours.begin(), out.contours.end());
    for (std::size_t i = 0; i < out.contours.size(); ++i) slot[out.contours[i]] = static_cast<int>(i);

    UnionFind uf(out.contours.size());
    for (std::size_t p = 0; p + 1 < planes.size(); ++p)
        for (const auto& ci : planes[p].contours)
            for (const auto& cj : planes[p + 1].contours)
                if (polygons_overlap(ci.vertices, cj.vertices)) {
                    auto [lo, hi] = std::minmax(ci.id, cj.id);
                    out.links.emplace_back(lo, hi);
                    uf.unite(slot[lo], slot[hi]);
                }
    std::sort(out.links.begin(), out.links.end());
    out.component = uf.labels();
    out.components = out.component.empty() ? 0 : *std::max_element(out.component.begin(), out.component.end()) + 1;
    return out;
}

} // namespace orthorecon
