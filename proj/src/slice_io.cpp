#include "orthorecon/slice_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "orthorecon/error.hpp"

namespace orthorecon {

using nlohmann::json;

SliceDocument parse_slice_document(const std::string& text) {
    SliceDocument doc;
    try {
        const json root = json::parse(text);
        bool seen[3] = {false, false, false};
        for (const auto& set : root.at("sets")) {
            const std::string name = set.at("axis").get<std::string>();
            const auto axis = name.size() == 1 ? parse_axis(name[0]) : std::nullopt;
            if (!axis) throw Error(ErrorCode::Parse, "unknown axis '" + name + "'");
            auto& planes = doc.set(*axis);
            if (seen[index(*axis)]) throw Error(ErrorCode::Parse, "axis '" + name + "' given twice");
            seen[index(*axis)] = true;
            for (const auto& jp : set.at("planes")) {
                SlicePlane plane;
                plane.axis = *axis;
                plane.coord = jp.at("coord").get<double>();
                for (const auto& jc : jp.at("contours")) {
                    Contour c;
                    for (const auto& jv : jc) {
                        if (jv.size() != 2) throw Error(ErrorCode::Parse, "contour vertex must be [u, v]");
                        c.vertices.push_back({jv[0].get<double>(), jv[1].get<double>()});
                    }
                    plane.contours.push_back(std::move(c));
                }
                planes.push_back(std::move(plane));
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    renumber(doc);
    return doc;
}

SliceDocument read_slice_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_slice_document(ss.str());
}

std::string format_slice_document(const SliceDocument& doc) {
    json sets = json::array();
    for (int a = 0; a < 3; ++a) {
        const auto& set = doc.sets[a];
        if (set.empty()) continue;
        json planes = json::array();
        for (const auto& plane : set) {
            json contours = json::array();
            for (const auto& c : plane.contours) {
                json verts = json::array();
                for (const Vec2& p : c.vertices) verts.push_back({p.u, p.v});
                contours.push_back(std::move(verts));
            }
            planes.push_back({{"coord", plane.coord}, {"contours", std::move(contours)}});
        }
        sets.push_back({{"axis", std::string(1, axis_name(axis_from_index(a)))}, {"planes", std::move(planes)}});
    }
    return json{{"sets", std::move(sets)}}.dump() + "\n";
}

void write_slice_document(const SliceDocument& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    out << format_slice_document(doc);
}

} // namespace orthorecon
