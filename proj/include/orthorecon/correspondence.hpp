#pragma once

#include <span>
#include <utility>
#include <vector>

#include "orthorecon/core_types.hpp"
#include "orthorecon/node_points.hpp"

namespace orthorecon {

using ContourPair = std::pair<ContourId, ContourId>;

// Contours as nodes, an edge wherever two contours share a node point.
struct CorrespondenceGraph {
    std::vector<ContourId> nodes; // sorted
    std::vector<ContourPair> edges; // sorted, first < second, no repeats
};

// Every contour of `doc` becomes a node, intersecting or not.
CorrespondenceGraph build_correspondence_graph(const SliceDocument& doc, std::span<const NodePoint> nodes);
int component_count(const CorrespondenceGraph& g);
// Component label per entry of g.nodes.
std::vector<int> component_labels(const CorrespondenceGraph& g);

struct EllipseFit {
    ContourId id;
    double x = 0.0, y = 0.0; // in-plane center
    double z = 0.0;          // plane coordinate
    double a = 0.0, b = 0.0; // semi-axes, a >= b
};

// Vertex centroid and covariance eigenvalues l1 >= l2; a = sqrt(2 l1),
// b = sqrt(2 l2), exact for evenly spaced circle samples.
// Throws Error{DegenerateContour}.
EllipseFit fit_ellipse(const Contour& c, double plane_coord = 0.0);

// (dx)^2 + (dy)^2 + (da)^2 + (db)^2. The plane coordinate is not used.
double mst_cost(const EllipseFit& i, const EllipseFit& j);

struct MstEdge {
    ContourId a, b;
    double cost = 0.0;
};

struct MstForest {
    std::vector<MstEdge> edges; // in acceptance order
    int trees = 0;
    double total_cost = 0.0;
};

// Kruskal over all contour pairs of adjacent planes; equal costs are taken in
// lexicographic contour-id pair order. Planes must be sorted by coordinate.
MstForest mst_correspondence(std::span<const SlicePlane> planes);

struct OverlapResult {
    std::vector<ContourPair> links;
    std::vector<ContourId> contours;
    std::vector<int> component; // parallel to contours
    int components = 0;
};

// Footprint overlap: any vertex of one polygon inside the other, or any pair
// of edges crossing.
bool polygons_overlap(std::span<const Vec2> p, std::span<const Vec2> q);

// Links contours of adjacent planes whose footprints overlap.
OverlapResult overlap_chains(std::span<const SlicePlane> planes);

} // namespace orthorecon
