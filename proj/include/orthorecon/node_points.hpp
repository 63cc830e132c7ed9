#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "orthorecon/core_types.hpp"

namespace orthorecon {

struct ClippedVertex {
    Vec2 p;
    int original = -1;               // index into the source contour, -1 if inserted
    std::optional<GridEdgeId> edge;  // set for inserted grid-line crossings
    double t = 0.0;                  // world coordinate along edge->dir
    std::array<int, 2> lattice{};    // (u, v) interval indices of the segment leaving this vertex

    bool inserted() const { return edge.has_value(); }
};

// A contour with every crossing of its plane's lattice lines inserted in
// traversal order.
struct ClippedContour {
    ContourId id;
    double coord = 0.0;
    std::vector<ClippedVertex> vertices;

    std::size_t insertion_count() const;
    Vec3 world(std::size_t i) const { return lift(id.axis, coord, vertices[i].p); }
};

struct ClipOptions {
    // When false, crossings within epsilon of a lattice corner raise
    // Error{CornerSingularity} instead of being resolved by the tie-break.
    bool snap_corners = true;
};

// Throws Error{CornerSingularity | OutOfHull}.
ClippedContour clip_contour(const Contour& c, const Grid& grid, const ClipOptions& opts = {});

struct Registration {
    Axis source = Axis::X;
    ContourId contour;
    int vertex = 0; // index into the ClippedContour
    double t = 0.0;
};

struct EdgeRegistry {
    // Per edge, registrations sorted by t.
    std::map<GridEdgeId, std::vector<Registration>> edges;

    std::size_t registration_count() const;
};

// Appends one registration per inserted vertex. Throws Error{EdgeNotInGrid}.
void register_intersections(const ClippedContour& cc, const Grid& grid, EdgeRegistry& registry);

struct VertexRef {
    ContourId contour;
    int vertex = 0;
    double t = 0.0;
};

struct NodePoint {
    int id = 0;
    Vec3 position;
    VertexRef a; // from the lower-numbered source axis of the edge
    VertexRef b;
    GridEdgeId edge;
};

struct UnpairedRegistration {
    GridEdgeId edge;
    Registration reg;
};

struct PairingResult {
    std::vector<NodePoint> nodes;
    std::vector<UnpairedRegistration> unpaired;
    double tolerance = 0.0;
};

// Half the smallest grid spacing.
double default_pairing_tolerance(const Grid& grid);

// Pairs registrations of one edge coming from the two source axes. Equal
// counts pair rank-to-rank when every rank pair is within tolerance;
// otherwise mutually nearest pairs are taken greedily. Returns index pairs
// (into first, second) ordered by the first index, and leaves the rest out.
std::vector<std::pair<int, int>> pair_edge_registrations(std::span<const Registration> first,
                                                         std::span<const Registration> second, double tolerance);

PairingResult pair_node_points(const EdgeRegistry& registry, const Grid& grid, double tolerance);
inline PairingResult pair_node_points(const EdgeRegistry& registry, const Grid& grid) {
    return pair_node_points(registry, grid, default_pairing_tolerance(grid));
}

// Clips every contour of the document (concurrently when workers > 1) and
// merges the registrations. Clipped contours come back in document order.
struct ClipRun {
    std::vector<ClippedContour> clipped;
    EdgeRegistry registry;
};
ClipRun clip_document(const SliceDocument& doc, const Grid& grid, const ClipOptions& opts = {}, int workers = 1);

} // namespace orthorecon
