#include "orthorecon/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orthorecon/error.hpp"

namespace orthorecon {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicatePlane: return "DuplicatePlane";
        case ErrorCode::TooFewPlanes: return "TooFewPlanes";
        case ErrorCode::UnsortedPlanes: return "UnsortedPlanes";
        case ErrorCode::OnPlane: return "OnPlane";
        case ErrorCode::OutOfHull: return "OutOfHull";
        case ErrorCode::TangencyDetected: return "TangencyDetected";
        case ErrorCode::OpenChain: return "OpenChain";
        case ErrorCode::VertexOnPlane: return "VertexOnPlane";
        case ErrorCode::DegenerateContour: return "DegenerateContour";
        case ErrorCode::InvalidShape: return "InvalidShape";
        case ErrorCode::CornerSingularity: return "CornerSingularity";
        case ErrorCode::EdgeNotInGrid: return "EdgeNotInGrid";
        case ErrorCode::UnpairedInput: return "UnpairedInput";
        case ErrorCode::NonManifoldJunction: return "NonManifoldJunction";
        case ErrorCode::DegenerateLoop: return "DegenerateLoop";
        case ErrorCode::NonOrientable: return "NonOrientable";
        case ErrorCode::EmptyMesh: return "EmptyMesh";
        case ErrorCode::InvalidDocument: return "InvalidDocument";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

char axis_name(Axis a) {
    switch (a) {
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        case Axis::Z: return 'z';
    }
    return '?';
}

std::optional<Axis> parse_axis(char c) {
    switch (c) {
        case 'x': case 'X': return Axis::X;
        case 'y': case 'Y': return Axis::Y;
        case 'z': case 'Z': return Axis::Z;
        default: return std::nullopt;
    }
}

std::string to_string(const ContourId& id) {
    std::ostringstream os;
    os << axis_name(id.axis) << ':' << id.plane << ':' << id.index;
    return os.str();
}

std::string to_string(const GridEdgeId& e) {
    std::ostringstream os;
    os << axis_name(e.dir) << '[' << e.idx[0] << ',' << e.idx[1] << ',' << e.idx[2] << ']';
    return os.str();
}

std::size_t SliceDocument::contour_count() const {
    std::size_t n = 0;
    for (const auto& s : sets)
        for (const auto& p : s) n += p.contours.size();
    return n;
}

std::vector<ContourId> SliceDocument::contour_ids() const {
    std::vector<ContourId> ids;
    for (const auto& s : sets)
        for (const auto& p : s)
            for (const auto& c : p.contours) ids.push_back(c.id);
    return ids;
}

void renumber(SliceDocument& doc) {
    for (int a = 0; a < 3; ++a) {
        auto& set = doc.sets[a];
        for (std::size_t p = 0; p < set.size(); ++p) {
            set[p].axis = axis_from_index(a);
            for (std::size_t c = 0; c < set[p].contours.size(); ++c)
                set[p].contours[c].id = ContourId{axis_from_index(a), static_cast<int>(p), static_cast<int>(c)};
        }
    }
}

int Grid::interval_of(Axis a, double value) const {
    const auto& c = coords[index(a)];
    const auto it = std::upper_bound(c.begin(), c.end(), value + eps);
    const int i = static_cast<int>(it - c.begin()) - 1;
    if (i < 0 || i > static_cast<int>(c.size()) - 2) return -1;
    return i;
}

Vec3 Grid::cell_min(const CellIndex& c) const {
    return {coords[0][c[0]], coords[1][c[1]], coords[2][c[2]]};
}

Vec3 Grid::cell_max(const CellIndex& c) const {
    return {coords[0][c[0] + 1], coords[1][c[1] + 1], coords[2][c[2] + 1]};
}

Vec3 Grid::cell_center(const CellIndex& c) const { return 0.5 * (cell_min(c) + cell_max(c)); }

double Grid::cell_diagonal(const CellIndex& c) const { return norm(cell_max(c) - cell_min(c)); }

double Grid::min_spacing() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : coords)
        for (std::size_t i = 1; i < c.size(); ++i) m = std::min(m, c[i] - c[i - 1]);
    return m;
}

double Grid::diagonal() const {
    double sq = 0.0;
    for (const auto& c : coords) {
        if (c.size() < 4) continue;
        const double ext = c[c.size() - 2] - c[1];
        sq += ext * ext;
    }
    return std::sqrt(sq);
}

std::size_t Grid::total_cells() const {
    std::size_t n = 1;
    for (int a = 0; a < 3; ++a) n *= static_cast<std::size_t>(cell_count(axis_from_index(a)));
    return n;
}

namespace {

double plane_extent_diagonal(const SliceDocument& doc) {
    double sq = 0.0;
    for (const auto& set : doc.sets) {
        if (set.size() < 2) continue;
        double lo = set.front().coord, hi = set.front().coord;
        for (const auto& p : set) {
            lo = std::min(lo, p.coord);
            hi = std::max(hi, p.coord);
        }
        sq += (hi - lo) * (hi - lo);
    }
    return std::sqrt(sq);
}

} // namespace

Grid build_grid(const SliceDocument& doc, double relative_eps) {
    Grid g;
    const double diag = plane_extent_diagonal(doc);
    g.eps = relative_eps * (diag > 0.0 ? diag : 1.0);
    for (int a = 0; a < 3; ++a) {
        const auto& set = doc.sets[a];
        if (set.size() < 2)
            throw Error(ErrorCode::TooFewPlanes,
                        std::string("axis ") + axis_name(axis_from_index(a)) + " has fewer than 2 planes");
        std::vector<double> c;
        c.reserve(set.size() + 2);
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (i > 0) {
                const double gap = set[i].coord - set[i - 1].coord;
                if (std::abs(gap) <= g.eps)
                    throw Error(ErrorCode::DuplicatePlane, std::string("axis ") + axis_name(axis_from_index(a)) +
                                                               " planes " + std::to_string(i - 1) + " and " +
                                                               std::to_string(i) + " coincide");
                if (gap < 0.0)
                    throw Error(ErrorCode::UnsortedPlanes,
                                std::string("axis ") + axis_name(axis_from_index(a)) + " coordinates not increasing");
            }
            c.push_back(set[i].coord);
        }
        const double lo_gap = c[1] - c[0];
        const double hi_gap = c[c.size() - 1] - c[c.size() - 2];
        c.insert(c.begin(), c.front() - lo_gap);
        c.push_back(c.back() + hi_gap);
        g.coords[a] = std::move(c);
    }
    return g;
}

CellIndex locate_cell(const Grid& grid, Vec3 p) {
    CellIndex cell{};
    for (int a = 0; a < 3; ++a) {
        const auto& c = grid.coords[a];
        const double x = p[a];
        if (!(x > c.front() && x < c.back()))
            throw Error(ErrorCode::OutOfHull, "point outside the grid hull");
        for (double plane : c)
            if (std::abs(x - plane) <= grid.eps) throw Error(ErrorCode::OnPlane, "point lies on a grid plane");
        cell[a] = grid.interval_of(axis_from_index(a), x);
    }
    return cell;
}

std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::TooFewPlanes: return "TooFewPlanes";
        case ViolationKind::PlaneOrder: return "PlaneOrder";
        case ViolationKind::TooFewVertices: return "TooFewVertices";
        case ViolationKind::RepeatedVertex: return "RepeatedVertex";
        case ViolationKind::OrientationViolation: return "OrientationViolation";
        case ViolationKind::HoleContour: return "HoleContour";
        case ViolationKind::OutOfHull: return "OutOfHull";
        case ViolationKind::SelfIntersection: return "SelfIntersection";
    }
    return "Unknown";
}

namespace {

bool self_intersects(const std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // adjacent edges share a vertex by construction
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return true;
        }
    }
    return false;
}

} // namespace

std::vector<Violation> validate_document(const SliceDocument& doc, const ValidateOptions& opts) {
    std::vector<Violation> out;
    const double diag = plane_extent_diagonal(doc);
    const double eps = opts.relative_eps * (diag > 0.0 ? diag : 1.0);

    bool ordered = true;
    for (int a = 0; a < 3; ++a) {
        const auto& set = doc.sets[a];
        const std::string name(1, axis_name(axis_from_index(a)));
        if (set.size() < 2) {
            out.push_back({ViolationKind::TooFewPlanes, std::nullopt, "axis " + name});
            ordered = false;
        }
        for (std::size_t i = 1; i < set.size(); ++i) {
            if (set[i].coord - set[i - 1].coord <= eps) {
                out.push_back({ViolationKind::PlaneOrder, std::nullopt,
                               "axis " + name + " plane " + std::to_string(i)});
                ordered = false;
            }
        }
    }

    std::optional<Grid> grid;
    if (ordered) grid = build_grid(doc, opts.relative_eps);

    for (const auto& set : doc.sets) {
        for (const auto& plane : set) {
            for (const auto& c : plane.contours) {
                const auto n = c.vertices.size();
                if (n < 3) {
                    out.push_back({ViolationKind::TooFewVertices, c.id, std::to_string(n) + " vertices"});
                    continue;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    if (norm(c.vertices[(i + 1) % n] - c.vertices[i]) <= eps) {
                        out.push_back({ViolationKind::RepeatedVertex, c.id, "vertex " + std::to_string(i)});
                        break;
                    }
                }
                const double area = c.area();
                if (area <= 0.0) {
                    // A clockwise loop nested inside a counter-clockwise one of the
                    // same plane bounds a hole; anything else is mis-oriented.
                    bool nested = false;
                    for (const auto& other : plane.contours) {
                        if (&other == &c || other.vertices.size() < 3 || other.area() <= 0.0) continue;
                        if (point_in_polygon(c.vertices.front(), other.vertices)) {
                            nested = true;
                            break;
                        }
                    }
                    out.push_back({nested ? ViolationKind::HoleContour : ViolationKind::OrientationViolation, c.id,
                                   "signed area " + std::to_string(area)});
                }
                if (grid) {
                    const Axis ua = u_axis(plane.axis), va = v_axis(plane.axis);
                    const auto& cu = grid->coords[index(ua)];
                    const auto& cv = grid->coords[index(va)];
                    for (const Vec2& p : c.vertices) {
                        if (p.u <= cu.front() + eps || p.u >= cu.back() - eps || p.v <= cv.front() + eps ||
                            p.v >= cv.back() - eps) {
                            out.push_back({ViolationKind::OutOfHull, c.id, "vertex outside sentinel hull"});
                            break;
                        }
                    }
                }
                if (opts.check_simplicity && self_intersects(c.vertices))
                    out.push_back({ViolationKind::SelfIntersection, c.id, "contour crosses itself"});
            }
        }
    }
    return out;
}

} // namespace orthorecon
