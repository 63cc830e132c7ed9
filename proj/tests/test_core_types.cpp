#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "orthorecon/core_types.hpp"
#include "orthorecon/error.hpp"

using namespace orthorecon;
using fixtures::contour;
using fixtures::square;

namespace {

SliceDocument planes_doc(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& z) {
    SliceDocument doc;
    const std::vector<double>* sets[3] = {&x, &y, &z};
    for (int a = 0; a < 3; ++a)
        for (double c : *sets[a]) doc.sets[a].push_back({axis_from_index(a), c, {}});
    return doc;
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::Io;
}

} // namespace

TEST_CASE("frames are the cyclic permutation") {
    CHECK(u_axis(Axis::Z) == Axis::X);
    CHECK(v_axis(Axis::Z) == Axis::Y);
    CHECK(u_axis(Axis::X) == Axis::Y);
    CHECK(v_axis(Axis::X) == Axis::Z);
    CHECK(u_axis(Axis::Y) == Axis::Z);
    CHECK(v_axis(Axis::Y) == Axis::X);

    // (u, v, axis) is right-handed for every axis, so CCW in-plane means the
    // normal u x v points along +axis.
    for (int a = 0; a < 3; ++a) {
        const Axis ax = axis_from_index(a);
        const Vec3 u = lift(ax, 0.0, {1, 0}), v = lift(ax, 0.0, {0, 1});
        const Vec3 n = cross(u, v);
        CHECK(n[a] == doctest::Approx(1.0));
        const Vec3 p = lift(ax, 2.5, {0.25, -3});
        CHECK(project(ax, p) == Vec2{0.25, -3});
        CHECK(p[a] == 2.5);
    }
}

TEST_CASE("build_grid adds one sentinel per side with the adjacent spacing") {
    const auto g = build_grid(planes_doc({0, 1, 2}, {0, 1, 2}, {0, 1, 2}));
    for (int a = 0; a < 3; ++a) CHECK(g.coords[a] == std::vector<double>{-1, 0, 1, 2, 3});
    CHECK(g.cell_count(Axis::X) == 4);
    CHECK(g.plane_count(Axis::Y) == 3);

    // interior cells: between consecutive slice planes
    int interior = 1;
    for (int a = 0; a < 3; ++a) interior *= g.plane_count(axis_from_index(a)) - 1;
    CHECK(interior == 8);

    // bounded grid edges on non-sentinel lines: lines from the other two axes,
    // segments between consecutive planes of this axis
    int edges = 0;
    for (int a = 0; a < 3; ++a) {
        const Axis ax = axis_from_index(a);
        edges += g.plane_count(u_axis(ax)) * g.plane_count(v_axis(ax)) * (g.plane_count(ax) - 1);
    }
    CHECK(edges == 54);

    const auto uneven = build_grid(planes_doc({0, 0.5, 2}, {0, 1}, {-3, 4}));
    CHECK(uneven.coords[0] == std::vector<double>{-0.5, 0, 0.5, 2, 3.5});
    CHECK(uneven.coords[2] == std::vector<double>{-10, -3, 4, 11});
}

TEST_CASE("build_grid errors") {
    CHECK(code_of([] { build_grid(planes_doc({0, 1e-12}, {0, 1}, {0, 1})); }) == ErrorCode::DuplicatePlane);
    CHECK(code_of([] { build_grid(planes_doc({0}, {0, 1}, {0, 1})); }) == ErrorCode::TooFewPlanes);
    CHECK(code_of([] { build_grid(planes_doc({0, 1}, {0, 1}, {})); }) == ErrorCode::TooFewPlanes);
    CHECK(code_of([] { build_grid(planes_doc({1, 0}, {0, 1}, {0, 1})); }) == ErrorCode::UnsortedPlanes);
}

TEST_CASE("build_grid is idempotent") {
    const auto doc = planes_doc({0, 0.3, 1.7}, {-1, 1}, {0, 1, 2, 4});
    const auto a = build_grid(doc), b = build_grid(doc);
    CHECK(a.coords == b.coords);
    CHECK(a.eps == b.eps);
}

TEST_CASE("epsilon scales with the plane extents") {
    const auto g = build_grid(planes_doc({0, 3}, {0, 4}, {0, 12}));
    CHECK(g.eps == doctest::Approx(13e-9));
    CHECK(build_grid(planes_doc({0, 3}, {0, 4}, {0, 12}), 1e-6).eps == doctest::Approx(13e-6));
}

TEST_CASE("locate_cell") {
    const auto g = build_grid(planes_doc({0, 1, 2}, {0, 1, 2}, {0, 1, 2}));
    CHECK(locate_cell(g, {0.5, 0.5, 0.5}) == CellIndex{1, 1, 1});
    CHECK(locate_cell(g, {-0.5, 2.5, 1.5}) == CellIndex{0, 3, 2});
    CHECK(code_of([&] { locate_cell(g, {1.0, 0.5, 0.5}); }) == ErrorCode::OnPlane);
    CHECK(code_of([&] { locate_cell(g, {5, 0.5, 0.5}); }) == ErrorCode::OutOfHull);

    // every cell center maps back to its cell
    const auto h = build_grid(planes_doc({0, 0.2, 1, 1.1}, {-2, 0, 3}, {0, 1}));
    for (int i = 0; i < h.cell_count(Axis::X); ++i)
        for (int j = 0; j < h.cell_count(Axis::Y); ++j)
            for (int k = 0; k < h.cell_count(Axis::Z); ++k) {
                const CellIndex c{i, j, k};
                CHECK(locate_cell(h, h.cell_center(c)) == c);
            }
}

TEST_CASE("interval_of counts near-plane values on the positive side") {
    const auto g = build_grid(planes_doc({0, 1, 2}, {0, 1, 2}, {0, 1, 2}));
    CHECK(g.interval_of(Axis::X, 0.5) == 1);
    CHECK(g.interval_of(Axis::X, 1.0) == 2);
    CHECK(g.interval_of(Axis::X, 1.0 - 0.1 * g.eps) == 2);
    CHECK(g.interval_of(Axis::X, 1.0 - 10 * g.eps) == 1);
    CHECK(g.interval_of(Axis::X, -1.5) == -1);
    CHECK(g.interval_of(Axis::X, 3.5) == -1);
}

TEST_CASE("validate_document") {
    auto doc = planes_doc({0, 1, 2}, {0, 1, 2}, {0, 1, 2});
    auto& zp = doc.set(Axis::Z)[1].contours;

    SUBCASE("CCW square is clean") {
        zp.push_back(contour(Axis::Z, 1, 0, square(0.25, 0.75)));
        CHECK(validate_document(doc).empty());
    }
    SUBCASE("CW square is an orientation violation") {
        auto v = square(0.25, 0.75);
        std::reverse(v.begin(), v.end());
        zp.push_back(contour(Axis::Z, 1, 0, v));
        const auto out = validate_document(doc);
        REQUIRE(out.size() == 1);
        CHECK(out[0].kind == ViolationKind::OrientationViolation);
        CHECK(out[0].id == ContourId{Axis::Z, 1, 0});
        CHECK(out[0].is_error());
    }
    SUBCASE("two vertices") {
        zp.push_back(contour(Axis::Z, 1, 0, {{0.2, 0.2}, {0.8, 0.8}}));
        const auto out = validate_document(doc);
        REQUIRE(out.size() == 1);
        CHECK(out[0].kind == ViolationKind::TooFewVertices);
    }
    SUBCASE("CW loop inside a CCW loop is a hole, not an error") {
        zp.push_back(contour(Axis::Z, 1, 0, square(0.1, 1.9)));
        auto inner = square(0.5, 1.5);
        std::reverse(inner.begin(), inner.end());
        zp.push_back(contour(Axis::Z, 1, 1, inner));
        const auto out = validate_document(doc);
        REQUIRE(out.size() == 1);
        CHECK(out[0].kind == ViolationKind::HoleContour);
        CHECK_FALSE(out[0].is_error());
    }
    SUBCASE("repeated vertex") {
        zp.push_back(contour(Axis::Z, 1, 0, {{0.2, 0.2}, {0.8, 0.2}, {0.8, 0.2}, {0.8, 0.8}}));
        const auto out = validate_document(doc);
        REQUIRE(out.size() == 1);
        CHECK(out[0].kind == ViolationKind::RepeatedVertex);
    }
    SUBCASE("outside the sentinel hull") {
        zp.push_back(contour(Axis::Z, 1, 0, square(0.5, 3.5)));
        const auto out = validate_document(doc);
        REQUIRE(out.size() == 1);
        CHECK(out[0].kind == ViolationKind::OutOfHull);
    }
    SUBCASE("self intersection only in strict mode") {
        zp.push_back(contour(Axis::Z, 1, 0, {{0.2, 0.2}, {0.8, 0.8}, {0.8, 0.3}, {0.1, 0.9}, {0.0, 0.1}}));
        const auto loose = validate_document(doc);
        const auto strict = validate_document(doc, {kDefaultRelativeEpsilon, true});
        CHECK(std::count_if(loose.begin(), loose.end(),
                            [](const Violation& v) { return v.kind == ViolationKind::SelfIntersection; }) == 0);
        CHECK(std::count_if(strict.begin(), strict.end(),
                            [](const Violation& v) { return v.kind == ViolationKind::SelfIntersection; }) == 1);
    }
    SUBCASE("too few planes and plane order") {
        doc.set(Axis::X).pop_back();
        doc.set(Axis::X).pop_back();
        std::swap(doc.set(Axis::Y)[0].coord, doc.set(Axis::Y)[2].coord);
        const auto out = validate_document(doc);
        CHECK(std::count_if(out.begin(), out.end(),
                            [](const Violation& v) { return v.kind == ViolationKind::TooFewPlanes; }) == 1);
        CHECK(std::count_if(out.begin(), out.end(),
                            [](const Violation& v) { return v.kind == ViolationKind::PlaneOrder; }) >= 1);
    }
}

TEST_CASE("reversing a contour flips the sign of its area") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Vec2> v(3 + trial % 9);
        for (auto& p : v) p = {d(rng), d(rng)};
        Contour c{{}, v};
        std::reverse(v.begin(), v.end());
        Contour r{{}, v};
        CHECK(r.area() == doctest::Approx(-c.area()));
    }
}

TEST_CASE("renumber rewrites ids from positions") {
    SliceDocument doc = planes_doc({0, 1}, {0, 1}, {0, 1});
    doc.set(Axis::Y)[1].contours.push_back(contour(Axis::Z, 7, 7, square(0, 1)));
    doc.set(Axis::Y)[1].contours.push_back(contour(Axis::Z, 7, 7, square(0, 1)));
    renumber(doc);
    CHECK(doc.set(Axis::Y)[1].contours[1].id == ContourId{Axis::Y, 1, 1});
    CHECK(doc.contour_count() == 2);
    CHECK(to_string(doc.contour_ids().front()) == "y:1:0");
}
