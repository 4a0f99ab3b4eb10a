#pragma once

#include <string>

#include "etc/metrics.hpp"
#include "etc/solver.hpp"

namespace etc {

// On-disk placement description shared by attack results and ground truth:
// per-piece grid cell and display transform plus the grid shape.
struct PlacementManifest {
    int rows = 0;
    int cols = 0;
    int block = 0;
    std::vector<Cell> cell;
    std::vector<BlockTransform> orientation;
};

PlacementManifest manifest_of(const AssemblyResult& result, int block);
PlacementManifest manifest_of(const GroundTruth& truth, int block);
AssemblyResult assembly_from_manifest(const PlacementManifest& m);
GroundTruth truth_from_manifest(const PlacementManifest& m);

PlacementManifest read_placement_manifest(const std::string& path);
void write_placement_manifest(const PlacementManifest& m, const std::string& path);

} // namespace etc
