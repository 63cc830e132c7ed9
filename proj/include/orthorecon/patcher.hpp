#pragma once

#include <array>
#include <span>
#include <vector>

#include "orthorecon/cell_cycles.hpp"
#include "orthorecon/mesh.hpp"

namespace orthorecon {

// Mean of the boundary loop. Throws Error{DegenerateLoop} below 3 points.
Vec3 polygon_center(const SpatialPolygon& p);

struct Patch {
    std::vector<std::array<Vec3, 3>> triangles;
    int dropped = 0; // fan triangles below eps^2 area
    int folded = 0;  // fan triangles facing away from the loop's mean plane
};

// Fan c, v_i, v_{i+1} over the boundary loop. Throws Error{DegenerateLoop}.
Patch patch_polygon(const SpatialPolygon& p, Vec3 center, double eps);

struct Assembly {
    Mesh mesh; // with per-triangle cell and polygon provenance
    int dropped_triangles = 0;
    int folded_triangles = 0;
    int degenerate_polygons = 0; // skipped, e.g. flat bigons
};

// Patches every polygon and welds vertices on an eps/4 lattice. Triangle
// order follows polygon order.
Assembly assemble_mesh(std::span<const SpatialPolygon> polygons, double eps, int workers = 1);

struct OrientReport {
    int components = 0;
    int open_components = 0;    // left in propagated orientation
    int flipped_components = 0; // closed ones turned outward
    int nonmanifold_edges = 0;  // shared by more than 2 faces, not propagated across
};

// Makes windings consistent per edge-connected component; closed components
// end with positive signed volume. Throws Error{NonOrientable}.
Mesh orient_mesh(const Mesh& m, OrientReport* report = nullptr);

} // namespace orthorecon
