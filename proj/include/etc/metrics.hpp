#pragma once

#include <utility>
#include <vector>

#include "etc/cipher.hpp"
#include "etc/solver.hpp"

namespace etc {

// Per-piece true grid position and true orientation (the inverse of the
// encryption transform). Held by the scoring side only; the solver never
// sees it.
struct GroundTruth {
    int rows = 0;
    int cols = 0;
    std::vector<Cell> cell;
    std::vector<BlockTransform> orientation;
};

GroundTruth ground_truth_of(const KeyExpansion& exp, int rows, int cols);

struct ScoreTriple {
    double dc = 0.0;
    double nc = 0.0;
    double lc = 0.0;

    double sum() const { return dc + nc + lc; }
};

// Fraction of pieces in the correct absolute cell with the correct
// orientation. A uniform global polarity flip is accepted (it is
// unresolvable from pixel gradients), so the better of the two readings is
// returned.
double direct_comparison(const AssemblyResult& result, const GroundTruth& truth);

// Fraction of true adjacent pairs that are adjacent in the result with the
// matching relative direction and mutually consistent orientation.
double neighbor_comparison(const AssemblyResult& result, const GroundTruth& truth);

// Size of the largest connected component of correctly joined pieces, over n.
double largest_component(const AssemblyResult& result, const GroundTruth& truth);

ScoreTriple score(const AssemblyResult& result, const GroundTruth& truth);

// The correct-join edge set shared by Nc (its numerator) and Lc (its graph).
std::vector<std::pair<int, int>> correct_join_edges(const AssemblyResult& result,
                                                    const GroundTruth& truth);

} // namespace etc
