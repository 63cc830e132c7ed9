#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "orthorecon/geometry.hpp"

namespace orthorecon {

enum class Axis : int { X = 0, Y = 1, Z = 2 };

constexpr int index(Axis a) { return static_cast<int>(a); }
constexpr Axis axis_from_index(int i) { return static_cast<Axis>(((i % 3) + 3) % 3); }

// In-plane frame of a slice: Z -> (x, y), X -> (y, z), Y -> (z, x). The cyclic
// order makes "interior on the left seen from the positive axis" equivalent to
// a positive shoelace area for all three slice sets.
constexpr Axis u_axis(Axis a) { return axis_from_index(index(a) + 1); }
constexpr Axis v_axis(Axis a) { return axis_from_index(index(a) + 2); }

char axis_name(Axis a);
std::optional<Axis> parse_axis(char c);

inline Vec3 lift(Axis a, double coord, Vec2 p) {
    Vec3 out;
    out[index(a)] = coord;
    out[index(u_axis(a))] = p.u;
    out[index(v_axis(a))] = p.v;
    return out;
}

inline Vec2 project(Axis a, Vec3 p) { return {p[index(u_axis(a))], p[index(v_axis(a))]}; }

struct ContourId {
    Axis axis = Axis::Z;
    int plane = 0; // position within the slice set
    int index = 0; // position within the plane

    friend auto operator<=>(const ContourId&, const ContourId&) = default;
};

std::string to_string(const ContourId& id);

struct Contour {
    ContourId id;
    std::vector<Vec2> vertices;

    double area() const { return signed_area(vertices); }
};

struct SlicePlane {
    Axis axis = Axis::Z;
    double coord = 0.0;
    std::vector<Contour> contours;
};

struct SliceDocument {
    std::array<std::vector<SlicePlane>, 3> sets;

    std::vector<SlicePlane>& set(Axis a) { return sets[index(a)]; }
    const std::vector<SlicePlane>& set(Axis a) const { return sets[index(a)]; }

    const Contour& contour(const ContourId& id) const {
        return set(id.axis)[id.plane].contours[id.index];
    }
    std::size_t contour_count() const;
    std::vector<ContourId> contour_ids() const;
};

// Rewrites plane axes and contour ids so they match their position in the document.
void renumber(SliceDocument& doc);

using CellIndex = std::array<int, 3>;

// Grid-edge address. idx[dir] is the interval index along the edge direction
// (sentinel intervals allowed); the other two entries are grid coordinate
// indices of the planes whose intersection line carries the edge.
struct GridEdgeId {
    Axis dir = Axis::X;
    std::array<int, 3> idx{};

    friend auto operator<=>(const GridEdgeId&, const GridEdgeId&) = default;
};

std::string to_string(const GridEdgeId& e);

// The spatial grid spanned by the slice planes, extended by one sentinel
// interval on each side of every axis.
struct Grid {
    std::array<std::vector<double>, 3> coords;
    double eps = 0.0;

    int plane_count(Axis a) const { return static_cast<int>(coords[index(a)].size()) - 2; }
    int cell_count(Axis a) const { return static_cast<int>(coords[index(a)].size()) - 1; }
    // Grid coordinate index of the slice plane at position `plane` in its set.
    static int grid_index(int plane) { return plane + 1; }
    double plane_coord(Axis a, int plane) const { return coords[index(a)][grid_index(plane)]; }

    // Interval containing `value`, where values within eps of a plane count as
    // lying on that plane's positive side. -1 outside the sentinel hull.
    int interval_of(Axis a, double value) const;

    Vec3 cell_min(const CellIndex& c) const;
    Vec3 cell_max(const CellIndex& c) const;
    Vec3 cell_center(const CellIndex& c) const;
    double cell_diagonal(const CellIndex& c) const;

    double min_spacing() const;
    double diagonal() const;
    std::size_t total_cells() const;
};

inline constexpr double kDefaultRelativeEpsilon = 1e-9;

// Throws Error{DuplicatePlane | TooFewPlanes}.
Grid build_grid(const SliceDocument& doc, double relative_eps = kDefaultRelativeEpsilon);

// Throws Error{OnPlane | OutOfHull}.
CellIndex locate_cell(const Grid& grid, Vec3 p);

enum class ViolationKind {
    TooFewPlanes,
    PlaneOrder,
    TooFewVertices,
    RepeatedVertex,
    OrientationViolation,
    HoleContour,
    OutOfHull,
    SelfIntersection,
};

struct Violation {
    ViolationKind kind;
    std::optional<ContourId> id;
    std::string detail;

    // Hole contours are flagged for information; everything else blocks reconstruction.
    bool is_error() const { return kind != ViolationKind::HoleContour; }
};

std::string to_string(ViolationKind k);

struct ValidateOptions {
    double relative_eps = kDefaultRelativeEpsilon;
    bool check_simplicity = false; // O(n^2) per contour
};

std::vector<Violation> validate_document(const SliceDocument& doc, const ValidateOptions& opts = {});

} // namespace orthorecon
