#include "etc/metrics.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace etc {

GroundTruth ground_truth_of(const KeyExpansion& exp, int rows, int cols) {
    const int n = exp.count();
    if (n != rows * cols) throw DimensionError("expansion size does not match grid dims");
    GroundTruth gt;
    gt.rows = rows;
    gt.cols = cols;
    gt.cell.resize(static_cast<size_t>(n));
    gt.orientation.resize(static_cast<size_t>(n));
    for (int slot = 0; slot < n; ++slot) {
        int src = static_cast<int>(exp.permutation[slot]);
        gt.cell[slot] = {src % cols, src / cols};
        gt.orientation[slot] = invert_transform(exp.transforms[slot]);
    }
    return gt;
}

namespace {

void check_shapes(const AssemblyResult& result, const GroundTruth& truth) {
    if (result.rows != truth.rows || result.cols != truth.cols ||
        result.cell.size() != truth.cell.size())
        throw DimensionError("assembly and ground truth disagree on grid shape");
}

// Net pose mapping plaintext appearance to canvas appearance; identity means
// the piece is shown exactly as in the original image.
std::vector<BlockTransform> net_poses(const AssemblyResult& result, const GroundTruth& truth) {
    const size_t n = truth.cell.size();
    std::vector<BlockTransform> net(n);
    for (size_t p = 0; p < n; ++p)
        net[p] = compose_transform(result.pose[p], invert_transform(truth.orientation[p])).canonical();
    return net;
}

} // namespace

std::vector<std::pair<int, int>> correct_join_edges(const AssemblyResult& result,
                                                    const GroundTruth& truth) {
    check_shapes(result, truth);
    const int n = static_cast<int>(truth.cell.size());
    std::vector<BlockTransform> net = net_poses(result, truth);

    // invert the truth placement: plaintext cell -> piece
    std::vector<int> piece_at(static_cast<size_t>(truth.rows) * truth.cols, -1);
    for (int p = 0; p < n; ++p)
        piece_at[static_cast<size_t>(truth.cell[p].y) * truth.cols + truth.cell[p].x] = p;

    std::vector<std::pair<int, int>> edges;
    const int dirs[2][2] = {{1, 0}, {0, 1}}; // east, south
    for (int p = 0; p < n; ++p) {
        for (const auto& e : dirs) {
            int tx = truth.cell[p].x + e[0], ty = truth.cell[p].y + e[1];
            if (tx >= truth.cols || ty >= truth.rows) continue;
            int q = piece_at[static_cast<size_t>(ty) * truth.cols + tx];
            if (q < 0) continue;
            if (result.cell[p].x < 0 || result.cell[q].x < 0) continue;
            if (!(net[p] == net[q])) continue;
            auto d = net[p].geom().map_direction(e[0], e[1]);
            if (result.cell[q].x - result.cell[p].x == d.first &&
                result.cell[q].y - result.cell[p].y == d.second)
                edges.emplace_back(p, q);
        }
    }
    return edges;
}

double direct_comparison(const AssemblyResult& result, const GroundTruth& truth) {
    check_shapes(result, truth);
    const int n = static_cast<int>(truth.cell.size());
    std::vector<BlockTransform> net = net_poses(result, truth);
    const BlockTransform identity{};
    const BlockTransform flipped{Rotation::R0, Inversion::None, true, 0};
    int plain = 0, inverted = 0;
    for (int p = 0; p < n; ++p) {
        if (!(result.cell[p] == truth.cell[p])) continue;
        if (net[p] == identity) ++plain;
        if (net[p] == flipped) ++inverted;
    }
    return double(std::max(plain, inverted)) / n;
}

double neighbor_comparison(const AssemblyResult& result, const GroundTruth& truth) {
    const long denom = 2L * truth.rows * truth.cols - truth.rows - truth.cols;
    if (denom == 0) return 1.0; // single piece, vacuously joined
    return double(correct_join_edges(result, truth).size()) / double(denom);
}

double largest_component(const AssemblyResult& result, const GroundTruth& truth) {
    const int n = static_cast<int>(truth.cell.size());
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : correct_join_edges(result, truth)) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
    std::vector<int> size(static_cast<size_t>(n), 0);
    int best = 0;
    for (int p = 0; p < n; ++p) best = std::max(best, ++size[static_cast<size_t>(find(p))]);
    return double(best) / n;
}

ScoreTriple score(const AssemblyResult& result, const GroundTruth& truth) {
    return {direct_comparison(result, truth), neighbor_comparison(result, truth),
            largest_component(result, truth)};
}

} // namespace etc
