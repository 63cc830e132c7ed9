#pragma once

// Shared synthetic inputs for the unit, property and acceptance tests.

#include <cmath>
#include <numbers>
#include <vector>

#include "orthorecon/patcher.hpp"
#include "orthorecon/synth_slicer.hpp"

namespace fixtures {

using namespace orthorecon;

inline std::vector<double> ramp(double start, double step, int count) {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(start + step * i);
    return v;
}

inline PlaneCoords same_planes(const std::vector<double>& c) { return {c, c, c}; }

struct Fixture {
    const char* name;
    AnalyticShape shape;
    PlaneCoords planes;
};

inline Fixture box() {
    return {"box", {Box{{0.25, 0.25, 0.25}, {1.75, 1.75, 1.75}}}, same_planes({0.0, 1.0, 2.0})};
}

// Planes at 0, 0.25, ..., 2 would touch the sphere at 0.25 and 1.75; the
// grid is shifted by half a spacing, keeping the spacing.
inline Fixture sphere() { return {"sphere", {Sphere{{1, 1, 1}, 0.75}}, same_planes(ramp(0.125, 0.25, 8))}; }

// Same story for the torus: z = 0.75 and 1.25 are tangent to the tube.
inline Fixture torus() {
    return {"torus", {Torus{{1, 1, 1}, 0.6, 0.25, Axis::Z}}, same_planes(ramp(0.0625, 0.125, 16))};
}

inline AnalyticShape two_spheres_shape() {
    Union u;
    u.members.push_back({Sphere{{0.5, 0.5, 0.5}, 0.3}});
    u.members.push_back({Sphere{{1.5, 1.5, 1.5}, 0.3}});
    return {std::move(u)};
}

inline Fixture two_spheres() { return {"two_spheres", two_spheres_shape(), same_planes(ramp(0.05, 0.2, 10))}; }

inline Cylinder tilted_cylinder_shape() {
    const double s = std::sin(std::numbers::pi / 3), c = std::cos(std::numbers::pi / 3);
    const double half = 1.7;
    return {{1.0 - half * s, 1.0, 1.0 - half * c}, {s, 0.0, c}, 0.2, 2.0 * half};
}

// z spacing 0.5; x and y at 0.1 with an offset that keeps every plane clear
// of the rim and of the silhouette lines.
inline Fixture tilted_cylinder() {
    return {"tilted_cylinder",
            {tilted_cylinder_shape()},
            {ramp(-0.97, 0.1, 40), ramp(0.53, 0.1, 10), ramp(0.03, 0.5, 5)}};
}

inline std::vector<Fixture> corpus() { return {box(), sphere(), torus(), two_spheres(), tilted_cylinder()}; }

inline std::vector<Vec2> circle(Vec2 c, double r, int n) {
    std::vector<Vec2> v;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * i / n;
        v.push_back({c.u + r * std::cos(t), c.v + r * std::sin(t)});
    }
    return v;
}

inline Contour contour(Axis a, int plane, int index, std::vector<Vec2> v) { return {{a, plane, index}, std::move(v)}; }

inline std::vector<Vec2> square(double lo, double hi) { return {{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}}; }


// Closed box surface, 12 triangles, outward.
inline Mesh box_mesh(Vec3 lo, Vec3 hi) {
    Mesh m;
    for (int i = 0; i < 8; ++i) m.vertices.push_back({i & 1 ? hi.x : lo.x, i & 2 ? hi.y : lo.y, i & 4 ? hi.z : lo.z});
    const int quads[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
    for (const auto& q : quads) {
        m.triangles.push_back({q[0], q[1], q[2]});
        m.triangles.push_back({q[0], q[2], q[3]});
    }
    return orient_mesh(m);
}

// Latitude/longitude sphere with pole vertices, outward.
inline Mesh uv_sphere_mesh(Vec3 c, double r, int rings, int sectors) {
    Mesh m;
    m.vertices.push_back(c + Vec3{0, 0, -r});
    for (int i = 1; i < rings; ++i) {
        const double phi = std::numbers::pi * i / rings;
        for (int j = 0; j < sectors; ++j) {
            const double th = 2.0 * std::numbers::pi * j / sectors;
            m.vertices.push_back(c + Vec3{r * std::sin(phi) * std::cos(th), r * std::sin(phi) * std::sin(th),
                                          -r * std::cos(phi)});
        }
    }
    m.vertices.push_back(c + Vec3{0, 0, r});
    const int top = static_cast<int>(m.vertices.size()) - 1;
    auto at = [&](int ring, int j) { return 1 + (ring - 1) * sectors + (j % sectors); };
    for (int j = 0; j < sectors; ++j) {
        m.triangles.push_back({0, at(1, j + 1), at(1, j)});
        m.triangles.push_back({top, at(rings - 1, j), at(rings - 1, j + 1)});
    }
    for (int i = 1; i + 1 < rings; ++i)
        for (int j = 0; j < sectors; ++j) {
            m.triangles.push_back({at(i, j), at(i, j + 1), at(i + 1, j + 1)});
            m.triangles.push_back({at(i, j), at(i + 1, j + 1), at(i + 1, j)});
        }
    return orient_mesh(m);
}

} // namespace fixtures
