#pragma once

#include <array>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orthorecon/core_types.hpp"
#include "orthorecon/mesh.hpp"

namespace orthorecon {

struct Sphere {
    Vec3 center;
    double radius = 1.0;
};

// Ring torus with its symmetry axis parallel to a coordinate axis.
struct Torus {
    Vec3 center;
    double major = 1.0;
    double minor = 0.25;
    Axis axis = Axis::Z;
};

// Solid capped cylinder from `base` along unit `direction`.
struct Cylinder {
    Vec3 base;
    Vec3 direction{0.0, 0.0, 1.0};
    double radius = 1.0;
    double length = 1.0;
};

struct Box {
    Vec3 min;
    Vec3 max;
};

struct AnalyticShape;

// Members must be pairwise disjoint (checked on bounding boxes).
struct Union {
    std::vector<AnalyticShape> members;
};

struct AnalyticShape {
    std::variant<Sphere, Torus, Cylinder, Box, Union> shape;
};

// Throws Error{InvalidShape}.
void validate_shape(const AnalyticShape& s);
std::pair<Vec3, Vec3> bounding_box(const AnalyticShape& s);

// Unsigned distance from p to the boundary surface of the solid.
double surface_distance(const AnalyticShape& s, Vec3 p);
double surface_area(const AnalyticShape& s);
// Area-uniform deterministic points on the surface, drawn from a Halton
// sequence starting at `sequence_offset`.
std::vector<Vec3> sample_surface(const AnalyticShape& s, std::size_t count, std::size_t sequence_offset);

AnalyticShape parse_shape_json(const std::string& text);

using PlaneCoords = std::array<std::vector<double>, 3>;

inline constexpr int kDefaultSamplesPerContour = 64;

// Slices the solid with every plane; material boundaries are counter-clockwise
// in the plane frame, hole boundaries (torus sections) clockwise. Polygonal
// sections (boxes) keep their exact corner vertices. Throws
// Error{TangencyDetected} when a plane touches the surface within epsilon.
SliceDocument slice_analytic(const AnalyticShape& shape, const PlaneCoords& planes,
                             int samples_per_contour = kDefaultSamplesPerContour,
                             double relative_eps = kDefaultRelativeEpsilon);

// Plane/triangle intersection chained into loops oriented by the face normals.
// Collinear chain points are merged and each loop starts at its
// lexicographically smallest vertex. Throws Error{OpenChain | VertexOnPlane}.
SliceDocument slice_mesh(const Mesh& mesh, const PlaneCoords& planes, double relative_eps = kDefaultRelativeEpsilon);

// Throws Error{DegenerateContour} when |area| <= eps^2.
Contour orient_contour(const Contour& c, double eps);

} // namespace orthorecon
