#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "orthorecon/core_types.hpp"
#include "orthorecon/node_points.hpp"

namespace orthorecon {

// Piece of a clipped contour between two consecutive node-point vertices.
struct Arc {
    int id = 0;
    ContourId contour;
    int first = 0; // clipped vertex index of the head
    int last = 0;  // clipped vertex index of the tail (may wrap below `first`)
    int head = 0;  // node ids
    int tail = 0;
    CellIndex b1{}; // cell on the negative side of the contour's plane
    CellIndex b2{}; // positive side
    std::vector<Vec3> points; // head node, interior vertices, tail node
};

struct ArcGraph {
    // Node positions indexed by node id. Ids below `paired_nodes` are the
    // pairing's node points; the rest stand in for unpaired registrations.
    std::vector<Vec3> nodes;
    int paired_nodes = 0;
    std::vector<Arc> arcs;
    std::map<CellIndex, std::vector<int>> cells; // arc ids, ascending
    std::vector<ContourId> orphans;              // contours without node points
};

struct ArcGraphOptions {
    // Unpaired registrations become dangling nodes instead of raising
    // Error{UnpairedInput}. Their cells then fail the degree check.
    bool allow_unpaired = false;
};

ArcGraph build_arc_graph(std::span<const ClippedContour> clipped, const PairingResult& pairing, const Grid& grid,
                         const ArcGraphOptions& opts = {});

struct CellClassification {
    std::vector<CellIndex> crossing; // cells with at least one arc
    std::vector<CellIndex> passing;
};

CellClassification classify_cells(const ArcGraph& ag, const Grid& grid);

struct ArcUse {
    int arc = 0;
    bool forward = true;

    friend bool operator==(const ArcUse&, const ArcUse&) = default;
};

struct SpatialPolygon {
    CellIndex cell{};
    std::vector<ArcUse> arcs;
    std::vector<Vec3> loop; // junction points appear once
};

struct NonManifoldCell {
    CellIndex cell{};
    int node = 0;   // smallest offending node id
    int degree = 0; // its incidence count in the cell
};

struct CycleResult {
    std::vector<SpatialPolygon> polygons; // ordered by (cell, smallest arc id)
    std::vector<NonManifoldCell> non_manifold;
    int containment_warnings = 0; // polygons poking out of their cell box
};

struct CycleOptions {
    bool strict = false; // NonManifoldJunction becomes fatal
    int workers = 1;
};

// Walks each cell's arcs into closed cycles. Arcs are traversed forward in
// their positive-side cell and backward in the negative-side one, which keeps
// material on the same side of every polygon. Throws
// Error{NonManifoldJunction} in strict mode.
CycleResult extract_cycles(const ArcGraph& ag, const Grid& grid, const CycleOptions& opts = {});

} // namespace orthorecon
