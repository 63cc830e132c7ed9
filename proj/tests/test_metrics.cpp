#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fixtures.hpp"
#include "orthorecon/error.hpp"
#include "orthorecon/metrics.hpp"

using namespace orthorecon;

namespace {

Mesh tetrahedron(Vec3 o = {0, 0, 0}) {
    Mesh m;
    m.vertices = {o, o + Vec3{1, 0, 0}, o + Vec3{0, 1, 0}, o + Vec3{0, 0, 1}};
    m.triangles = {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}};
    return m;
}

Mesh append(Mesh a, const Mesh& b) {
    const int off = static_cast<int>(a.vertices.size());
    a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
    for (auto t : b.triangles) {
        for (int& i : t) i += off;
        a.triangles.push_back(t);
    }
    return a;
}

// Quad grid wrapped both ways.
Mesh torus_mesh(double R, double r, int n, int m) {
    Mesh out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            const double a = 2.0 * std::numbers::pi * i / n, b = 2.0 * std::numbers::pi * j / m;
            out.vertices.push_back({(R + r * std::cos(b)) * std::cos(a), (R + r * std::cos(b)) * std::sin(a), r * std::sin(b)});
        }
    auto at = [&](int i, int j) { return (i % n) * m + (j % m); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            out.triangles.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
            out.triangles.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    return out;
}

Mesh scaled(const Mesh& m, Vec3 c, double s) {
    Mesh out = m;
    for (auto& v : out.vertices) v = c + s * (v - c);
    return out;
}

// Closest distance to a triangle by dense barycentric search.
double brute_triangle_distance(Vec3 p, Vec3 a, Vec3 b, Vec3 c, int n) {
    double best = 1e300;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            const double u = double(i) / n, v = double(j) / n;
            best = std::min(best, norm(a + u * (b - a) + v * (c - a) - p));
        }
    return best;
}

double brute_mesh_distance(const Mesh& m, Vec3 p) {
    double best = 1e300;
    for (const auto& t : m.triangles)
        best = std::min(best, point_triangle_distance(p, m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]));
    return best;
}

} // namespace

TEST_CASE("topology of closed surfaces") {
    const auto t = topology(tetrahedron());
    CHECK(t.vertices == 4);
    CHECK(t.edges == 6);
    CHECK(t.faces == 4);
    CHECK(t.euler == 2);
    CHECK(t.components == 1);
    CHECK(t.watertight);
    REQUIRE(t.per_component.size() == 1);
    CHECK(t.per_component[0].genus == 0);

    const auto tor = topology(torus_mesh(1, 0.3, 12, 8));
    CHECK(tor.euler == 0);
    CHECK(tor.watertight);
    CHECK(tor.per_component[0].genus == 1);

    const auto two = topology(append(tetrahedron(), torus_mesh(1, 0.3, 12, 8)));
    CHECK(two.components == 2);
    CHECK(two.euler == 2);
    CHECK(two.per_component[0].genus == 0);
    CHECK(two.per_component[1].genus == 1);
}

TEST_CASE("topology of open and degenerate input") {
    Mesh tri;
    tri.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 5}}; // last one unreferenced
    tri.triangles = {{0, 1, 2}};
    const auto t = topology(tri);
    CHECK(t.vertices == 3);
    CHECK(t.euler == 1);
    CHECK(t.boundary_edges == 3);
    CHECK_FALSE(t.watertight);
    CHECK_FALSE(t.per_component[0].closed);
    CHECK_FALSE(t.per_component[0].genus.has_value());
    CHECK(t.per_component[0].boundary_loops == 1);

    const auto empty = topology(Mesh{});
    CHECK(empty.faces == 0);
    CHECK(empty.components == 0);
    CHECK_FALSE(empty.watertight);

    Mesh fin;
    fin.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}};
    fin.triangles = {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}};
    const auto f = topology(fin);
    CHECK(f.nonmanifold_edges == 1);
    CHECK_FALSE(f.watertight);

    Mesh holed = tetrahedron();
    holed.triangles.pop_back();
    CHECK(topology(holed).per_component[0].boundary_loops == 1);
}

TEST_CASE("point_triangle_distance against dense sampling") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int trial = 0; trial < 300; ++trial) {
        const Vec3 a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)}, c{d(rng), d(rng), d(rng)};
        const Vec3 p{d(rng), d(rng), d(rng)};
        const double fast = point_triangle_distance(p, a, b, c);
        const double slow = brute_triangle_distance(p, a, b, c, 200);
        // the lattice is within one cell diagonal of the true closest point
        const double cell = (norm(b - a) + norm(c - a)) / 200;
        CHECK(fast <= slow + 1e-12);
        CHECK(fast >= slow - cell);
    }
    // exact cases
    CHECK(point_triangle_distance({0.2, 0.2, 3}, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}) == doctest::Approx(3));
    CHECK(point_triangle_distance({-1, -1, 0}, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(point_triangle_distance({0.5, -2, 0}, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}) == doctest::Approx(2));
}

TEST_CASE("TriangleDistance agrees with a linear scan") {
    const Mesh m = fixtures::uv_sphere_mesh({0.3, -0.2, 0.1}, 1.2, 10, 14);
    const TriangleDistance tree(m);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(-3, 3);
    for (int i = 0; i < 500; ++i) {
        const Vec3 p{d(rng), d(rng), d(rng)};
        CHECK(tree.distance(p) == doctest::Approx(brute_mesh_distance(m, p)).epsilon(1e-12));
    }
    TriangleDistance source(m);
    TriangleDistance moved = std::move(source);
    CHECK(moved.distance({0.3, -0.2, 0.1}) > 1.0);
}

TEST_CASE("sample_mesh") {
    const Mesh m = fixtures::box_mesh({0, 0, 0}, {1, 2, 3});
    const auto s = sample_mesh(m, 1000);
    REQUIRE(s.size() == 8 + 1000);
    for (std::size_t i = 0; i < 8; ++i) CHECK(s[i] == m.vertices[i]);
    const TriangleDistance tree(m);
    for (const auto& p : s) CHECK(tree.distance(p) <= 1e-12);
    CHECK(sample_mesh(m, 1000) == s);
    CHECK(sample_mesh(m, 1000, 1) != s);
    // area weighting: about 2 * (2 + 3 + 6) / 22 of the points lie on the two
    // largest faces (x = 0, 1 has area 6 each)
    int big = 0;
    for (std::size_t i = 8; i < s.size(); ++i)
        if (s[i].x == doctest::Approx(0) || s[i].x == doctest::Approx(1)) ++big;
    CHECK(big == doctest::Approx(1000.0 * 12 / 22).epsilon(0.05));
}

TEST_CASE("hausdorff distance") {
    const Mesh cube = fixtures::box_mesh({0, 0, 0}, {1, 1, 1});
    CHECK(hausdorff(cube, cube, 2000) <= 1e-12);

    // the worst point of a scaled cube is a corner, which is always sampled
    const Mesh big = scaled(cube, {0.5, 0.5, 0.5}, 1.15);
    const double h = hausdorff(cube, big, 2000);
    double oracle = 0;
    for (const auto& p : sample_mesh(big, 2000)) oracle = std::max(oracle, brute_mesh_distance(cube, p));
    for (const auto& p : sample_mesh(cube, 2000)) oracle = std::max(oracle, brute_mesh_distance(big, p));
    CHECK(h == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(h == doctest::Approx(0.075 * std::sqrt(3.0)));
    CHECK(hausdorff(big, cube, 2000) == doctest::Approx(h));

    // permuting vertex and triangle order leaves the corner-dominated value
    Mesh shuffled = big;
    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(1);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < 8; ++i) shuffled.vertices[perm[i]] = big.vertices[i];
    for (auto& t : shuffled.triangles)
        for (int& v : t) v = perm[v];
    std::shuffle(shuffled.triangles.begin(), shuffled.triangles.end(), rng);
    CHECK(hausdorff(cube, shuffled, 2000) == doctest::Approx(h).epsilon(1e-12));
    CHECK(topology(shuffled).euler == topology(big).euler);

    const Mesh ball = fixtures::uv_sphere_mesh({1, 1, 1}, 0.75, 24, 48);
    const AnalyticShape sphere{Sphere{{1, 1, 1}, 0.75}};
    const double hs = hausdorff(ball, sphere, 5000);
    CHECK(hs > 0.0);
    CHECK(hs < 0.75 * (1 - std::cos(std::numbers::pi / 24)) * 1.5);
    CHECK(hausdorff(ball, sphere, 5000, 4) == hs);
    CHECK(hausdorff(ball, cube, 3000, 1) == hausdorff(ball, cube, 3000, 3));

    CHECK_THROWS_AS(hausdorff(cube, cube, 99), std::invalid_argument);
    CHECK_THROWS_AS(hausdorff(cube, sphere, 10), std::invalid_argument);
    try {
        hausdorff(Mesh{}, sphere, 1000);
        FAIL("expected EmptyMesh");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyMesh);
    }
}

TEST_CASE("polygon_histogram") {
    CHECK(polygon_histogram({}).empty());
    std::vector<SpatialPolygon> polys(5);
    for (int i = 0; i < 5; ++i) polys[i].arcs.resize(i < 3 ? 3 : 4 + i);
    const std::map<int, int> expect{{3, 3}, {7, 1}, {8, 1}};
    CHECK(polygon_histogram(polys) == expect);
    std::reverse(polys.begin(), polys.end());
    CHECK(polygon_histogram(polys) == expect);
}
