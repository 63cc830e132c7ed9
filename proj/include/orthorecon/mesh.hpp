#pragma once

#include <array>
#include <string>
#include <vector>

#include "orthorecon/core_types.hpp"
#include "orthorecon/geometry.hpp"

namespace orthorecon {

using Triangle = std::array<int, 3>;

// Indexed triangle mesh. The provenance vectors are either empty or parallel
// to `triangles`: the grid cell and the spatial polygon each face came from.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    std::vector<CellIndex> triangle_cells;
    std::vector<int> triangle_polygons;

    bool has_provenance() const { return !triangle_cells.empty(); }
};

double signed_volume(const Mesh& m);

struct ObjWriteOptions {
    bool cell_comments = false; // "# cell i j k" before each polygon's faces
};

std::string format_obj(const Mesh& m, const ObjWriteOptions& opts = {});
void write_obj(const Mesh& m, const std::string& path, const ObjWriteOptions& opts = {});

// Triangles only; "f a/b/c" style references are accepted, polygons are not.
Mesh parse_obj(const std::string& text);
Mesh read_obj(const std::string& path);

} // namespace orthorecon
