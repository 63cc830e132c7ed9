#include "orthorecon/synth_slicer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "orthorecon/error.hpp"

namespace orthorecon {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void tangency(Axis a, double coord, const char* what) {
    std::ostringstream os;
    os << what << " at " << axis_name(a) << "=" << coord;
    throw Error(ErrorCode::TangencyDetected, os.str());
}

std::vector<Vec2> circle(Vec2 center, double radius, int n) {
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double t = kTwoPi * k / n;
        pts.push_back({center.u + radius * std::cos(t), center.v + radius * std::sin(t)});
    }
    return pts;
}

void make_positive(std::vector<Vec2>& loop) {
    if (signed_area(loop) < 0.0) std::reverse(loop.begin(), loop.end());
}

using Loops = std::vector<std::vector<Vec2>>;

Loops sphere_section(const Sphere& s, Axis a, double c, int n, double eps) {
    const double d = c - s.center[index(a)];
    if (std::abs(d) > s.radius + eps) return {};
    if (std::abs(std::abs(d) - s.radius) <= eps) tangency(a, c, "sphere touches plane");
    const double rho = std::sqrt(s.radius * s.radius - d * d);
    return {circle(project(a, s.center), rho, n)};
}

Loops torus_section(const Torus& t, Axis a, double c, int n, double eps) {
    const double big = t.major, small = t.minor;
    if (a == t.axis) {
        const double dz = c - t.center[index(a)];
        if (std::abs(dz) > small + eps) return {};
        if (std::abs(std::abs(dz) - small) <= eps) tangency(a, c, "torus touches plane");
        const double hw = std::sqrt(small * small - dz * dz);
        const Vec2 ctr = project(a, t.center);
        auto outer = circle(ctr, big + hw, n);
        auto inner = circle(ctr, big - hw, n);
        std::reverse(inner.begin(), inner.end());
        return {std::move(outer), std::move(inner)};
    }

    // Plane parallel to the symmetry axis: each loop is a graph h = +-H(w) over
    // an interval of the transverse coordinate w.
    const double off = c - t.center[index(a)];
    const double aoff = std::abs(off);
    if (aoff > big + small + eps) return {};
    if (std::abs(aoff - (big + small)) <= eps) tangency(a, c, "torus touches plane");
    if (std::abs(aoff - (big - small)) <= eps) tangency(a, c, "plane touches inner torus equator");
    const int h_axis = index(t.axis);
    const int w_axis = 3 - index(a) - h_axis;
    const double w1 = std::sqrt((big + small) * (big + small) - off * off);
    std::vector<std::pair<double, double>> spans;
    if (aoff < big - small) {
        const double w0 = std::sqrt((big - small) * (big - small) - off * off);
        spans = {{w0, w1}, {-w1, -w0}};
    } else {
        spans = {{-w1, w1}};
    }
    Loops loops;
    for (const auto& [lo, hi] : spans) {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        std::vector<Vec2> loop;
        loop.reserve(n);
        for (int k = 0; k < n; ++k) {
            const double th = kTwoPi * k / n;
            const double w = mid + half * std::cos(th);
            const double rho = std::sqrt(off * off + w * w);
            const double hh = std::sqrt(std::max(0.0, small * small - (rho - big) * (rho - big)));
            Vec3 p;
            p[index(a)] = c;
            p[h_axis] = t.center[h_axis] + (std::sin(th) >= 0.0 ? hh : -hh);
            p[w_axis] = t.center[w_axis] + w;
            loop.push_back(project(a, p));
        }
        make_positive(loop);
        loops.push_back(std::move(loop));
    }
    return loops;
}

// Cylinder sections are convex, so they are sampled by casting rays from an
// interior point found by maximising the (concave) inset distance.
struct CylinderSlab {
    const Cylinder& cyl;
    Axis a;
    double c;

    Vec3 perp(Vec3 q) const { return q - dot(q, cyl.direction) * cyl.direction; }

    double slack(Vec2 p) const {
        const Vec3 q = lift(a, c, p) - cyl.base;
        const double s = dot(q, cyl.direction);
        return std::min({cyl.radius - norm(perp(q)), s, cyl.length - s});
    }
};

template <class F>
std::pair<double, double> ternary_max(F&& f, double lo, double hi) {
    for (int it = 0; it < 90; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2))
            lo = m1;
        else
            hi = m2;
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

Loops cylinder_section(const Cylinder& cyl, Axis a, double c, int n, double eps) {
    const CylinderSlab slab{cyl, a, c};
    const auto [bmin, bmax] = bounding_box(AnalyticShape{cyl});
    const Axis ua = u_axis(a), va = v_axis(a);
    const double pad = cyl.radius;
    const double u0 = bmin[index(ua)] - pad, u1 = bmax[index(ua)] + pad;
    const double v0 = bmin[index(va)] - pad, v1 = bmax[index(va)] + pad;

    auto best_v = [&](double u) { return ternary_max([&](double v) { return slab.slack({u, v}); }, v0, v1); };
    const auto [ustar, peak] = ternary_max([&](double u) { return best_v(u).second; }, u0, u1);
    if (peak < -eps) return {};
    if (peak <= eps) tangency(a, c, "cylinder touches plane");
    const Vec2 inner{ustar, best_v(ustar).first};

    const Vec3 d = cyl.direction;
    const Vec3 q0 = lift(a, c, inner) - cyl.base;
    const double s0 = dot(q0, d);
    const Vec3 w0 = slab.perp(q0);
    const double r2 = cyl.radius * cyl.radius;

    auto ray_exit = [&](Vec2 e) {
        const Vec3 e3 = lift(a, 0.0, e);
        double t = std::numeric_limits<double>::infinity();
        const double ds = dot(e3, d);
        if (ds < -1e-15) t = std::min(t, s0 / -ds);
        if (ds > 1e-15) t = std::min(t, (cyl.length - s0) / ds);
        const Vec3 we = slab.perp(e3);
        const double qa = dot(we, we);
        if (qa > 1e-15) {
            const double qb = 2.0 * dot(w0, we), qc = dot(w0, w0) - r2;
            t = std::min(t, (-qb + std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * qc))) / (2.0 * qa));
        }
        return inner + t * e;
    };

    std::vector<Vec2> loop;
    loop.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double th = kTwoPi * k / n;
        loop.push_back(ray_exit({std::cos(th), std::sin(th)}));
    }

    // Rim points (cap line meets lateral surface) are corners of the section;
    // each replaces the ray sample nearest to it in angle.
    const Vec2 g{d[index(ua)], d[index(va)]};
    const double g2 = dot(g, g);
    std::vector<bool> taken(n, false);
    if (g2 > 1e-20) {
        const double base_dot = dot(cyl.base, d) - d[index(a)] * c;
        const Vec2 tau = (1.0 / std::sqrt(g2)) * Vec2{-g.v, g.u};
        for (double s_cap : {0.0, cyl.length}) {
            const Vec2 p0 = ((s_cap + base_dot) / g2) * g;
            const Vec3 wp = slab.perp(lift(a, c, p0) - cyl.base);
            const Vec3 wt = slab.perp(lift(a, 0.0, tau));
            const double qa = dot(wt, wt), qb = 2.0 * dot(wp, wt), qc = dot(wp, wp) - r2;
            const double disc = qb * qb - 4.0 * qa * qc;
            if (qa <= 1e-15 || disc <= 0.0) continue;
            for (double sign : {-1.0, 1.0}) {
                const Vec2 corner = p0 + ((-qb + sign * std::sqrt(disc)) / (2.0 * qa)) * tau;
                double phi = std::atan2(corner.v - inner.v, corner.u - inner.u);
                if (phi < 0.0) phi += kTwoPi;
                int k = static_cast<int>(std::lround(phi / kTwoPi * n)) % n;
                if (taken[k]) {
                    const int alt = (phi / kTwoPi * n > k) ? (k + 1) % n : (k + n - 1) % n;
                    if (taken[alt]) continue;
                    k = alt;
                }
                taken[k] = true;
                loop[k] = corner;
            }
        }
    }
    return {std::move(loop)};
}

Loops box_section(const Box& b, Axis a, double c, double eps) {
    const int ai = index(a);
    if (c < b.min[ai] - eps || c > b.max[ai] + eps) return {};
    if (std::abs(c - b.min[ai]) <= eps || std::abs(c - b.max[ai]) <= eps) tangency(a, c, "box face lies in plane");
    const Vec2 lo = project(a, b.min), hi = project(a, b.max);
    return {{{lo.u, lo.v}, {hi.u, lo.v}, {hi.u, hi.v}, {lo.u, hi.v}}};
}

Loops section(const AnalyticShape& s, Axis a, double c, int n, double eps) {
    return std::visit(overloaded{
                          [&](const Sphere& x) { return sphere_section(x, a, c, n, eps); },
                          [&](const Torus& x) { return torus_section(x, a, c, n, eps); },
                          [&](const Cylinder& x) { return cylinder_section(x, a, c, n, eps); },
                          [&](const Box& x) { return box_section(x, a, c, eps); },
                          [&](const Union& u) {
                              Loops all;
                              for (const auto& m : u.members) {
                                  auto part = section(m, a, c, n, eps);
                                  for (auto& l : part) all.push_back(std::move(l));
                              }
                              return all;
                          },
                      },
                      s.shape);
}

double planes_epsilon(const PlaneCoords& planes, double relative_eps) {
    double sq = 0.0;
    for (const auto& p : planes) {
        if (p.size() < 2) continue;
        const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
        sq += (*hi - *lo) * (*hi - *lo);
    }
    const double diag = std::sqrt(sq);
    return relative_eps * (diag > 0.0 ? diag : 1.0);
}

// Unit vectors spanning the plane orthogonal to unit d.
std::pair<Vec3, Vec3> orthonormal_frame(Vec3 d) {
    const Vec3 helper = std::abs(d.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 e1 = cross(d, helper);
    e1 = (1.0 / norm(e1)) * e1;
    return {e1, cross(d, e1)};
}

} // namespace

void validate_shape(const AnalyticShape& s) {
    std::visit(overloaded{
                   [](const Sphere& x) {
                       if (!(x.radius > 0.0)) throw Error(ErrorCode::InvalidShape, "sphere radius must be positive");
                   },
                   [](const Torus& x) {
                       if (!(x.minor > 0.0) || !(x.major > x.minor))
                           throw Error(ErrorCode::InvalidShape, "torus needs major > minor > 0");
                   },
                   [](const Cylinder& x) {
                       if (!(x.radius > 0.0) || !(x.length > 0.0))
                           throw Error(ErrorCode::InvalidShape, "cylinder radius and length must be positive");
                       if (std::abs(norm(x.direction) - 1.0) > 1e-9)
                           throw Error(ErrorCode::InvalidShape, "cylinder direction must be a unit vector");
                   },
                   [](const Box& x) {
                       for (int i = 0; i < 3; ++i)
                           if (!(x.max[i] > x.min[i])) throw Error(ErrorCode::InvalidShape, "box min must be below max");
                   },
                   [](const Union& u) {
                       for (const auto& m : u.members) validate_shape(m);
                       for (std::size_t i = 0; i < u.members.size(); ++i) {
                           const auto bi = bounding_box(u.members[i]);
                           for (std::size_t j = i + 1; j < u.members.size(); ++j) {
                               const auto bj = bounding_box(u.members[j]);
                               bool separated = false;
                               for (int k = 0; k < 3; ++k)
                                   separated |= bi.second[k] < bj.first[k] || bj.second[k] < bi.first[k];
                               if (!separated)
                                   throw Error(ErrorCode::InvalidShape, "union members must be disjoint");
                           }
                       }
                   },
               },
               s.shape);
}

std::pair<Vec3, Vec3> bounding_box(const AnalyticShape& s) {
    return std::visit(
        overloaded{
            [](const Sphere& x) {
                const Vec3 r{x.radius, x.radius, x.radius};
                return std::pair{x.center - r, x.center + r};
            },
            [](const Torus& x) {
                Vec3 r{x.major + x.minor, x.major + x.minor, x.major + x.minor};
                r[index(x.axis)] = x.minor;
                return std::pair{x.center - r, x.center + r};
            },
            [](const Cylinder& x) {
                const Vec3 top = x.base + x.length * x.direction;
                Vec3 lo, hi;
                for (int i = 0; i < 3; ++i) {
                    const double di = x.direction[i];
                    const double spread = x.radius * std::sqrt(std::max(0.0, 1.0 - di * di));
                    lo[i] = std::min(x.base[i], top[i]) - spread;
                    hi[i] = std::max(x.base[i], top[i]) + spread;
                }
                return std::pair{lo, hi};
            },
            [](const Box& x) { return std::pair{x.min, x.max}; },
            [](const Union& u) {
                Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
                for (const auto& m : u.members) {
                    const auto [a, b] = bounding_box(m);
                    for (int i = 0; i < 3; ++i) {
                        lo[i] = std::min(lo[i], a[i]);
                        hi[i] = std::max(hi[i], b[i]);
                    }
                }
                return std::pair{lo, hi};
            },
        },
        s.shape);
}

double surface_distance(const AnalyticShape& s, Vec3 p) {
    return std::visit(
        overloaded{
            [&](const Sphere& x) { return std::abs(norm(p - x.center) - x.radius); },
            [&](const Torus& x) {
                const Vec3 q = p - x.center;
                const double h = q[index(x.axis)];
                const double rho = std::sqrt(std::max(0.0, dot(q, q) - h * h));
                return std::abs(std::hypot(rho - x.major, h) - x.minor);
            },
            [&](const Cylinder& x) {
                const Vec3 q = p - x.base;
                const double s = dot(q, x.direction);
                const double rho = norm(q - s * x.direction);
                if (s >= 0.0 && s <= x.length && rho <= x.radius)
                    return std::min({s, x.length - s, x.radius - rho});
                const double ds = std::max({0.0, -s, s - x.length});
                const double dr = std::max(0.0, rho - x.radius);
                return std::hypot(ds, dr);
            },
            [&](const Box& x) {
                double outside = 0.0, inside = 1e300;
                bool in = true;
                for (int i = 0; i < 3; ++i) {
                    const double below = x.min[i] - p[i], above = p[i] - x.max[i];
                    const double gap = std::max({0.0, below, above});
                    outside += gap * gap;
                    if (gap > 0.0) in = false;
                    inside = std::min({inside, -below, -above});
                }
                return in ? inside : std::sqrt(outside);
            },
            [&](const Union& u) {
                double best = 1e300;
                for (const auto& m : u.members) best = std::min(best, surface_distance(m, p));
                return best;
            },
        },
        s.shape);
}

double surface_area(const AnalyticShape& s) {
    using std::numbers::pi;
    return std::visit(overloaded{
                          [](const Sphere& x) { return 4.0 * pi * x.radius * x.radius; },
                          [](const Torus& x) { return 4.0 * pi * pi * x.major * x.minor; },
                          [](const Cylinder& x) {
                              return 2.0 * pi * x.radius * x.length + 2.0 * pi * x.radius * x.radius;
                          },
                          [](const Box& x) {
                              const Vec3 e = x.max - x.min;
                              return 2.0 * (e.x * e.y + e.y * e.z + e.z * e.x);
                          },
                          [](const Union& u) {
                              double a = 0.0;
                              for (const auto& m : u.members) a += surface_area(m);
                              return a;
                          },
                      },
                      s.shape);
}

namespace {

// h[0] has already been consumed for selecting the component when needed;
// h[1..3] are fresh uniforms.
Vec3 surface_point(const AnalyticShape& s, std::array<double, 4> h) {
    using std::numbers::pi;
    return std::visit(
        overloaded{
            [&](const Sphere& x) {
                const double z = 1.0 - 2.0 * h[1], r = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double phi = 2.0 * pi * h[2];
                return x.center + x.radius * Vec3{r * std::cos(phi), r * std::sin(phi), z};
            },
            [&](const Torus& x) {
                // tube angle density proportional to (R + r cos psi): invert its CDF
                const double target = h[2] * 2.0 * pi * x.major;
                double psi = 2.0 * pi * h[2];
                for (int it = 0; it < 50; ++it) {
                    const double f = x.major * psi + x.minor * std::sin(psi) - target;
                    const double df = x.major + x.minor * std::cos(psi);
                    const double step = f / df;
                    psi -= step;
                    if (std::abs(step) < 1e-15) break;
                }
                const double theta = 2.0 * pi * h[1];
                const double rho = x.major + x.minor * std::cos(psi);
                const int ai = index(x.axis);
                const int bi = (ai + 1) % 3, ci = (ai + 2) % 3;
                Vec3 p = x.center;
                p[ai] += x.minor * std::sin(psi);
                p[bi] += rho * std::cos(theta);
                p[ci] += rho * std::sin(theta);
                return p;
            },
            [&](const Cylinder& x) {
                const auto [e1, e2] = orthonormal_frame(x.direction);
                const double lateral = 2.0 * pi * x.radius * x.length;
                const double cap = pi * x.radius * x.radius;
                const double pick = h[1] * (lateral + 2.0 * cap);
                const double ang = 2.0 * pi * h[2];
                if (pick < lateral) {
                    const double s = x.length * pick / lateral;
                    return x.base + s * x.direction + x.radius * (std::cos(ang) * e1 + std::sin(ang) * e2);
                }
                const double s = pick < lateral + cap ? 0.0 : x.length;
                const double r = x.radius * std::sqrt(h[3]);
                return x.base + s * x.direction + r * (std::cos(ang) * e1 + std::sin(ang) * e2);
            },
            [&](const Box& x) {
                const Vec3 e = x.max - x.min;
                const std::array<double, 3> face{e.y * e.z, e.z * e.x, e.x * e.y};
                double pick = h[1] * 2.0 * (face[0] + face[1] + face[2]);
                for (int i = 0; i < 3; ++i) {
                    for (int side = 0; side < 2; ++side) {
                        if (pick < face[i] || (i == 2 && side == 1)) {
                            Vec3 p = x.min;
                            p[i] = side ? x.max[i] : x.min[i];
                            p[(i + 1) % 3] += h[2] * e[(i + 1) % 3];
                            p[(i + 2) % 3] += h[3] * e[(i + 2) % 3];
                            return p;
                        }
                        pick -= face[i];
                    }
                }
                return x.min;
            },
            [&](const Union& u) {
                const double total = surface_area(AnalyticShape{u});
                double pick = h[0] * total;
                for (std::size_t i = 0; i < u.members.size(); ++i) {
                    const double a = surface_area(u.members[i]);
                    if (pick < a || i + 1 == u.members.size()) return surface_point(u.members[i], h);
                    pick -= a;
                }
                return Vec3{};
            },
        },
        s.shape);
}

} // namespace

std::vector<Vec3> sample_surface(const AnalyticShape& s, std::size_t count, std::size_t sequence_offset) {
    std::vector<Vec3> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = sequence_offset + i;
        out.push_back(surface_point(
            s, {radical_inverse(7, k), radical_inverse(2, k), radical_inverse(3, k), radical_inverse(5, k)}));
    }
    return out;
}

namespace {

using nlohmann::json;

Vec3 vec3_of(const json& j) {
    if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::Parse, "expected [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

AnalyticShape shape_of(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "sphere") return {Sphere{vec3_of(j.at("center")), j.at("radius").get<double>()}};
    if (type == "torus") {
        const std::string ax = j.value("axis", std::string("z"));
        const auto axis = ax.size() == 1 ? parse_axis(ax[0]) : std::nullopt;
        if (!axis) throw Error(ErrorCode::Parse, "bad torus axis");
        return {Torus{vec3_of(j.at("center")), j.at("major").get<double>(), j.at("minor").get<double>(), *axis}};
    }
    if (type == "cylinder") {
        Vec3 d = vec3_of(j.at("direction"));
        const double len = norm(d);
        if (!(len > 0.0)) throw Error(ErrorCode::Parse, "cylinder direction is zero");
        d = (1.0 / len) * d;
        return {Cylinder{vec3_of(j.at("base")), d, j.at("radius").get<double>(), j.at("length").get<double>()}};
    }
    if (type == "box") return {Box{vec3_of(j.at("min")), vec3_of(j.at("max"))}};
    if (type == "union") {
        Union u;
        for (const auto& m : j.at("shapes")) u.members.push_back(shape_of(m));
        return {std::move(u)};
    }
    throw Error(ErrorCode::Parse, "unknown shape type '" + type + "'");
}

} // namespace

AnalyticShape parse_shape_json(const std::string& text) {
    try {
        AnalyticShape s = shape_of(json::parse(text));
        validate_shape(s);
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
}

SliceDocument slice_analytic(const AnalyticShape& shape, const PlaneCoords& planes, int samples_per_contour,
                             double relative_eps) {
    validate_shape(shape);
    if (samples_per_contour < 3) throw Error(ErrorCode::InvalidShape, "need at least 3 samples per contour");
    const double eps = planes_epsilon(planes, relative_eps);
    SliceDocument doc;
    for (int ai = 0; ai < 3; ++ai) {
        const Axis a = axis_from_index(ai);
        for (double c : planes[ai]) {
            SlicePlane plane{a, c, {}};
            for (auto& loop : section(shape, a, c, samples_per_contour, eps)) {
                if (std::abs(signed_area(loop)) <= eps * eps) tangency(a, c, "degenerate section");
                plane.contours.push_back(Contour{{}, std::move(loop)});
            }
            doc.set(a).push_back(std::move(plane));
        }
    }
    renumber(doc);
    return doc;
}

namespace {

struct ChainSegment {
    std::pair<int, int> from_edge, to_edge;
    Vec2 from, to;
};

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

std::vector<Vec2> simplify_loop(const std::vector<Vec2>& raw, double eps) {
    std::vector<Vec2> pts;
    for (const Vec2& p : raw)
        if (pts.empty() || norm(p - pts.back()) > eps) pts.push_back(p);
    while (pts.size() > 1 && norm(pts.front() - pts.back()) <= eps) pts.pop_back();
    bool changed = true;
    while (changed && pts.size() > 3) {
        changed = false;
        for (std::size_t i = 0; i < pts.size() && pts.size() > 3; ++i) {
            const Vec2 a = pts[(i + pts.size() - 1) % pts.size()], b = pts[i], c = pts[(i + 1) % pts.size()];
            if (std::abs(cross(b - a, c - b)) <= eps * (norm(b - a) + norm(c - b))) {
                pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    const auto first = std::min_element(pts.begin(), pts.end(), [](Vec2 x, Vec2 y) {
        return x.u < y.u || (x.u == y.u && x.v < y.v);
    });
    std::rotate(pts.begin(), first, pts.end());
    return pts;
}

} // namespace

SliceDocument slice_mesh(const Mesh& mesh, const PlaneCoords& planes, double relative_eps) {
    const double eps = planes_epsilon(planes, relative_eps);
    SliceDocument doc;
    for (int ai = 0; ai < 3; ++ai) {
        const Axis a = axis_from_index(ai);
        for (double c : planes[ai]) {
            for (const Vec3& v : mesh.vertices)
                if (std::abs(v[ai] - c) <= eps) {
                    std::ostringstream os;
                    os << "mesh vertex within epsilon of " << axis_name(a) << "=" << c;
                    throw Error(ErrorCode::VertexOnPlane, os.str());
                }

            auto crossing = [&](int i, int j) {
                if (i > j) std::swap(i, j);
                const Vec3 p = mesh.vertices[i], q = mesh.vertices[j];
                Vec3 x = p + ((c - p[ai]) / (q[ai] - p[ai])) * (q - p);
                x[ai] = c;
                return project(a, x);
            };

            std::vector<ChainSegment> segs;
            for (const auto& t : mesh.triangles) {
                std::vector<std::pair<int, int>> cut;
                for (int k = 0; k < 3; ++k) {
                    const int i = t[k], j = t[(k + 1) % 3];
                    if ((mesh.vertices[i][ai] > c) != (mesh.vertices[j][ai] > c)) cut.push_back({i, j});
                }
                if (cut.size() != 2) continue;
                ChainSegment s{edge_key(cut[0].first, cut[0].second), edge_key(cut[1].first, cut[1].second),
                               crossing(cut[0].first, cut[0].second), crossing(cut[1].first, cut[1].second)};
                const Vec3 nrm = cross(mesh.vertices[t[1]] - mesh.vertices[t[0]], mesh.vertices[t[2]] - mesh.vertices[t[0]]);
                const Vec2 np = project(a, nrm);
                // material lies opposite the outward normal, i.e. on the left
                if (dot(s.to - s.from, Vec2{-np.v, np.u}) < 0.0) {
                    std::swap(s.from_edge, s.to_edge);
                    std::swap(s.from, s.to);
                }
                segs.push_back(s);
            }

            std::map<std::pair<int, int>, int> starts;
            for (int i = 0; i < static_cast<int>(segs.size()); ++i)
                if (!starts.emplace(segs[i].from_edge, i).second)
                    throw Error(ErrorCode::OpenChain, "mesh edge crossed by more than two faces");

            std::vector<bool> used(segs.size(), false);
            SlicePlane plane{a, c, {}};
            std::vector<std::vector<Vec2>> loops;
            for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
                if (used[s0]) continue;
                std::vector<Vec2> raw;
                std::size_t cur = s0;
                while (!used[cur]) {
                    used[cur] = true;
                    raw.push_back(segs[cur].from);
                    const auto it = starts.find(segs[cur].to_edge);
                    if (it == starts.end()) throw Error(ErrorCode::OpenChain, "section chain does not close");
                    cur = static_cast<std::size_t>(it->second);
                }
                if (cur != s0) throw Error(ErrorCode::OpenChain, "section chain does not close");
                auto loop = simplify_loop(raw, eps);
                if (loop.size() < 3) throw Error(ErrorCode::DegenerateContour, "section loop collapses");
                loops.push_back(std::move(loop));
            }
            std::sort(loops.begin(), loops.end(), [](const auto& x, const auto& y) {
                return x.front().u < y.front().u || (x.front().u == y.front().u && x.front().v < y.front().v);
            });
            for (auto& l : loops) plane.contours.push_back(Contour{{}, std::move(l)});
            doc.set(a).push_back(std::move(plane));
        }
    }
    renumber(doc);
    return doc;
}

Contour orient_contour(const Contour& c, double eps) {
    const double area = c.area();
    if (std::abs(area) <= eps * eps) throw Error(ErrorCode::DegenerateContour, "contour " + to_string(c.id) + " has no area");
    Contour out = c;
    if (area < 0.0) std::reverse(out.vertices.begin(), out.vertices.end());
    return out;
}

} // namespace orthorecon
