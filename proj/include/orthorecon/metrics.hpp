#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "orthorecon/cell_cycles.hpp"
#include "orthorecon/mesh.hpp"
#include "orthorecon/synth_slicer.hpp"

namespace orthorecon {

struct ComponentTopology {
    int vertices = 0, edges = 0, faces = 0;
    int euler = 0;
    bool closed = false;
    std::optional<int> genus; // closed components only
    int boundary_loops = 0;   // open components only
};

struct TopologyReport {
    int vertices = 0; // referenced by at least one triangle
    int edges = 0;
    int faces = 0;
    int euler = 0;
    int components = 0;
    std::vector<ComponentTopology> per_component; // ordered by smallest vertex
    int boundary_edges = 0;
    int nonmanifold_edges = 0;
    bool watertight = false;
};

TopologyReport topology(const Mesh& m);

// Exact closest distance to a set of triangles through an AABB tree.
class TriangleDistance {
public:
    explicit TriangleDistance(const Mesh& m);
    ~TriangleDistance();
    TriangleDistance(TriangleDistance&&) noexcept;
    TriangleDistance& operator=(TriangleDistance&&) noexcept;

    double distance(Vec3 p) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

double point_triangle_distance(Vec3 p, Vec3 a, Vec3 b, Vec3 c);

// Halton sequence start used for every Hausdorff sample set.
inline constexpr std::size_t kHausdorffSeed = 7919;

// Mesh vertices followed by `count` area-weighted Halton points.
std::vector<Vec3> sample_mesh(const Mesh& m, std::size_t count, std::size_t sequence_offset = kHausdorffSeed);

// Symmetric sampled Hausdorff distance. Throws Error{EmptyMesh}; sample
// counts below 100 are rejected with std::invalid_argument.
double hausdorff(const Mesh& m, const AnalyticShape& reference, std::size_t samples, int workers = 1);
double hausdorff(const Mesh& m, const Mesh& reference, std::size_t samples, int workers = 1);

// Arc count -> number of polygons with that many arcs.
std::map<int, int> polygon_histogram(std::span<const SpatialPolygon> polygons);

} // namespace orthorecon
