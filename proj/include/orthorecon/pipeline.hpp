#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orthorecon/cell_cycles.hpp"
#include "orthorecon/core_types.hpp"
#include "orthorecon/metrics.hpp"
#include "orthorecon/node_points.hpp"
#include "orthorecon/patcher.hpp"

namespace orthorecon {

struct ReconstructOptions {
    double relative_eps = kDefaultRelativeEpsilon;
    std::optional<double> pairing_tolerance; // default: half the smallest spacing
    bool strict = false;       // unpaired registrations and non-manifold cells are fatal
    bool snap_corners = true;  // false: corner crossings raise CornerSingularity
    bool check_simplicity = false;
    int workers = 1;
};

struct Reconstruction {
    std::vector<Violation> violations; // non-fatal ones (holes)
    Grid grid;
    ClipRun clip;
    PairingResult pairing;
    ArcGraph arcs;
    CycleResult cycles;
    Assembly assembly;
    OrientReport orientation;
    Mesh mesh; // oriented
    TopologyReport topology;
};

// validate, grid, clip, pair, arcs, cycles, patch, orient, topology.
// Throws Error{InvalidDocument} for empty or invalid documents and passes
// through the stage errors.
Reconstruction reconstruct(const SliceDocument& doc, const ReconstructOptions& opts = {});

struct ReportOptions {
    bool dump_nodes = false;
    bool dump_polygons = false;
};

std::string format_report(const Reconstruction& r, const ReportOptions& opts = {});
std::string format_topology(const TopologyReport& t);
std::string format_histogram_csv(const std::map<int, int>& histogram);

} // namespace orthorecon
