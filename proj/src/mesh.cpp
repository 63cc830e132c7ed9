#include "orthorecon/mesh.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orthorecon/error.hpp"

namespace orthorecon {

double signed_volume(const Mesh& m) {
    double six = 0.0;
    for (const auto& t : m.triangles)
        six += dot(m.vertices[t[0]], cross(m.vertices[t[1]], m.vertices[t[2]]));
    return six / 6.0;
}

std::string format_obj(const Mesh& m, const ObjWriteOptions& opts) {
    std::string out;
    out.reserve(m.vertices.size() * 40 + m.triangles.size() * 24);
    char buf[128];
    for (const Vec3& v : m.vertices) {
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
        out += buf;
    }
    const bool comments = opts.cell_comments && m.has_provenance();
    int last_polygon = -1;
    for (std::size_t i = 0; i < m.triangles.size(); ++i) {
        if (comments && m.triangle_polygons[i] != last_polygon) {
            last_polygon = m.triangle_polygons[i];
            const auto& c = m.triangle_cells[i];
            std::snprintf(buf, sizeof buf, "# cell %d %d %d\n", c[0], c[1], c[2]);
            out += buf;
        }
        const auto& t = m.triangles[i];
        std::snprintf(buf, sizeof buf, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
        out += buf;
    }
    return out;
}

void write_obj(const Mesh& m, const std::string& path, const ObjWriteOptions& opts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    out << format_obj(m, opts);
}

Mesh parse_obj(const std::string& text) {
    Mesh m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) throw Error(ErrorCode::Parse, "bad vertex on line " + std::to_string(lineno));
            m.vertices.push_back(p);
        } else if (tag == "f") {
            std::vector<int> refs;
            std::string tok;
            while (ls >> tok) {
                int i = 0;
                const auto head = tok.substr(0, tok.find('/'));
                const auto [end, ec] = std::from_chars(head.data(), head.data() + head.size(), i);
                if (ec != std::errc{} || end != head.data() + head.size() || i == 0)
                    throw Error(ErrorCode::Parse, "bad face reference on line " + std::to_string(lineno));
                refs.push_back(i < 0 ? static_cast<int>(m.vertices.size()) + i : i - 1);
            }
            if (refs.size() != 3)
                throw Error(ErrorCode::Parse, "only triangles are supported (line " + std::to_string(lineno) + ")");
            for (int r : refs)
                if (r < 0 || r >= static_cast<int>(m.vertices.size()))
                    throw Error(ErrorCode::Parse, "face index out of range on line " + std::to_string(lineno));
            m.triangles.push_back({refs[0], refs[1], refs[2]});
        }
    }
    return m;
}

Mesh read_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_obj(ss.str());
}

} // namespace orthorecon
