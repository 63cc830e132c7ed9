#pragma once

#include <iosfwd>
#include <string>

#include "orthorecon/core_types.hpp"

namespace orthorecon {

// Canonical slice document JSON:
//   { "sets": [ { "axis": "x"|"y"|"z",
//                 "planes": [ { "coord": c, "contours": [ [[u,v], ...], ... ] } ] } ] }
// Axes missing from "sets" come back as empty slice sets.
SliceDocument parse_slice_document(const std::string& text);
SliceDocument read_slice_document(const std::string& path);

std::string format_slice_document(const SliceDocument& doc);
void write_slice_document(const SliceDocument& doc, const std::string& path);

} // namespace orthorecon
