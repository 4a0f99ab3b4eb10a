#pragma once

// Independent oracles shared by the unit and acceptance suites. Everything in
// here recomputes results from raw pixels with plain loops; none of it calls
// the solver's fast paths or the metrics' transform algebra.

#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "etc/metrics.hpp"
#include "etc/mgc.hpp"
#include "etc/solver.hpp"
#include "helpers.hpp"

namespace etc::test {

// ---------- exhaustive assembly search ----------

struct BruteForceResult {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<int> piece;           // per cell, row-major
    std::vector<BlockTransform> pose; // per cell
};

// Minimum total seam cost over every bijective placement and every per-piece
// transform from the family. Seam costs are naive MGC on materialized blocks.
inline BruteForceResult brute_force_assembly(const std::vector<RasterImage>& pieces,
                                             PuzzleType type, int rows, int cols) {
    const int n = int(pieces.size());
    const auto family = transform_family(type);
    const BlockTransform rho{Rotation::R270, Inversion::None, false, 0};

    // materialized transformed pieces, deduplicated by action
    std::vector<int> f_first;
    {
        std::vector<char> seen(96, 0);
        for (size_t f = 0; f < family.size(); ++f) {
            int key = family[f].geom().index() * 12 + (family[f].negpos ? 6 : 0) +
                      family[f].color_perm;
            if (!seen[size_t(key)]) {
                seen[size_t(key)] = 1;
                f_first.push_back(int(f));
            }
        }
    }
    const int F = int(f_first.size());
    std::vector<RasterImage> mat(size_t(n) * F), mat_rho(size_t(n) * F);
    for (int p = 0; p < n; ++p) {
        for (int f = 0; f < F; ++f) {
            const BlockTransform& t = family[size_t(f_first[size_t(f)])];
            mat[size_t(p) * F + f] = apply_transform(pieces[size_t(p)], t);
            mat_rho[size_t(p) * F + f] =
                apply_transform(pieces[size_t(p)], compose_transform(rho, t));
        }
    }
    // memoized seams: the DFS revisits the same butted pair many times
    std::map<uint32_t, double> seam_cache;
    auto cached = [&](uint32_t key, auto compute) {
        auto it = seam_cache.find(key);
        if (it == seam_cache.end()) it = seam_cache.emplace(key, compute()).first;
        return it->second;
    };
    auto seam_h = [&](int pl, int fl, int pr, int fr) {
        uint32_t key = uint32_t((((pl * F + fl) * n + pr) * F + fr) * 2);
        return cached(key, [&] { return mgc_cost(mat[size_t(pl) * F + fl], mat[size_t(pr) * F + fr]); });
    };
    auto seam_v = [&](int pt, int ft, int pb, int fb) {
        uint32_t key = uint32_t((((pt * F + ft) * n + pb) * F + fb) * 2 + 1);
        return cached(key, [&] {
            return mgc_cost(mat_rho[size_t(pt) * F + ft], mat_rho[size_t(pb) * F + fb]);
        });
    };

    BruteForceResult best;
    std::vector<int> cell_piece(size_t(rows) * cols, -1), cell_pose(size_t(rows) * cols, -1);
    std::vector<char> used(size_t(n), 0);

    std::function<void(int, double)> dfs = [&](int idx, double cost) {
        if (cost >= best.cost) return;
        if (idx == rows * cols) {
            best.cost = cost;
            best.piece = cell_piece;
            best.pose.assign(cell_pose.size(), BlockTransform{});
            for (size_t c = 0; c < cell_pose.size(); ++c)
                best.pose[c] = family[size_t(f_first[size_t(cell_pose[c])])];
            return;
        }
        int x = idx % cols, y = idx / cols;
        for (int p = 0; p < n; ++p) {
            if (used[size_t(p)]) continue;
            used[size_t(p)] = 1;
            for (int f = 0; f < F; ++f) {
                double add = 0.0;
                if (x > 0) add += seam_h(cell_piece[size_t(idx) - 1], cell_pose[size_t(idx) - 1], p, f);
                if (y > 0)
                    add += seam_v(cell_piece[size_t(idx - cols)], cell_pose[size_t(idx - cols)], p, f);
                if (cost + add < best.cost) {
                    cell_piece[size_t(idx)] = p;
                    cell_pose[size_t(idx)] = f;
                    dfs(idx + 1, cost + add);
                }
            }
            used[size_t(p)] = 0;
        }
        cell_piece[size_t(idx)] = -1;
    };
    dfs(0, 0.0);
    return best;
}

// ---------- pixel-level score recount ----------

// All 96 distinct actions, for the "equal up to a rigid transform" checks.
inline const std::vector<BlockTransform>& all_actions() {
    static const std::vector<BlockTransform> acts = [] {
        std::vector<BlockTransform> out;
        std::vector<char> seen(96, 0);
        for (const auto& t : transform_family(PuzzleType::TypeINC)) {
            int key = t.geom().index() * 12 + (t.negpos ? 6 : 0) + t.color_perm;
            if (!seen[size_t(key)]) {
                seen[size_t(key)] = 1;
                out.push_back(t);
            }
        }
        return out;
    }();
    return acts;
}

// Recounts Dc/Nc/Lc from pixels: pieces are rendered with their result poses
// and compared against the plaintext, pairs against the plaintext two-block
// strip under every rigid transform.
struct NaiveScores {
    double dc = 0, nc = 0, lc = 0;
};

inline NaiveScores naive_score(const RasterImage& plain, int block,
                               const std::vector<RasterImage>& piece_pixels,
                               const AssemblyResult& result, const GroundTruth& truth) {
    const int rows = truth.rows, cols = truth.cols;
    const int n = int(piece_pixels.size());
    BlockGrid pg = partition(plain, block, block);

    auto render = [&](int p) { return naive_apply(piece_pixels[size_t(p)], result.pose[size_t(p)]); };

    // Dc, both polarity readings
    int hits_plain = 0, hits_flip = 0;
    for (int p = 0; p < n; ++p) {
        if (!(result.cell[size_t(p)] == truth.cell[size_t(p)])) continue;
        const RasterImage& want =
            pg.blocks[size_t(truth.cell[size_t(p)].y) * cols + size_t(truth.cell[size_t(p)].x)];
        RasterImage got = render(p);
        if (got == want) ++hits_plain;
        if (got == naive_negpos(want)) ++hits_flip;
    }
    NaiveScores s;
    s.dc = double(std::max(hits_plain, hits_flip)) / n;

    // pair correctness from the two-block configurations
    std::vector<int> at_plain(size_t(rows) * cols, -1);
    for (int p = 0; p < n; ++p)
        at_plain[size_t(truth.cell[size_t(p)].y) * cols + size_t(truth.cell[size_t(p)].x)] = p;

    auto two_block = [&](const RasterImage& a, const RasterImage& b, bool horizontal) {
        RasterImage out = RasterImage::create(horizontal ? 2 * block : block,
                                              horizontal ? block : 2 * block, 3);
        for (int y = 0; y < block; ++y)
            for (int x = 0; x < block; ++x)
                for (int c = 0; c < 3; ++c) {
                    out.at(x, y, c) = a.at(x, y, c);
                    if (horizontal)
                        out.at(x + block, y, c) = b.at(x, y, c);
                    else
                        out.at(x, y + block, c) = b.at(x, y, c);
                }
        return out;
    };

    std::vector<std::pair<int, int>> edges;
    for (int y = 0; y < rows; ++y) {
        for (int x = 0; x < cols; ++x) {
            const int dirs[2][2] = {{1, 0}, {0, 1}};
            for (const auto& e : dirs) {
                int tx = x + e[0], ty = y + e[1];
                if (tx >= cols || ty >= rows) continue;
                int p = at_plain[size_t(y) * cols + size_t(x)];
                int q = at_plain[size_t(ty) * cols + size_t(tx)];
                int dx = result.cell[size_t(q)].x - result.cell[size_t(p)].x;
                int dy = result.cell[size_t(q)].y - result.cell[size_t(p)].y;
                if (std::abs(dx) + std::abs(dy) != 1) continue;
                if (result.cell[size_t(p)].x < 0 || result.cell[size_t(q)].x < 0) continue;

                RasterImage got = dx != 0 ? two_block(render(dx > 0 ? p : q), render(dx > 0 ? q : p), true)
                                          : two_block(render(dy > 0 ? p : q), render(dy > 0 ? q : p), false);
                RasterImage want = two_block(
                    pg.blocks[size_t(y) * cols + size_t(x)],
                    pg.blocks[size_t(ty) * cols + size_t(tx)], e[0] == 1);
                bool ok = false;
                for (const BlockTransform& g : all_actions()) {
                    RasterImage w = naive_apply(want, g);
                    if (w.width == got.width && w.height == got.height && w == got) {
                        ok = true;
                        break;
                    }
                }
                if (ok) edges.emplace_back(p, q);
            }
        }
    }
    long denom = 2L * rows * cols - rows - cols;
    s.nc = denom ? double(edges.size()) / double(denom) : 1.0;

    std::vector<int> parent(static_cast<size_t>(n), 0);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[size_t(v)] != v) v = parent[size_t(v)] = parent[size_t(parent[size_t(v)])];
        return v;
    };
    for (auto& [a, b] : edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[size_t(ra)] = rb;
    }
    std::vector<int> size_of(size_t(n), 0);
    int biggest = 0;
    for (int p = 0; p < n; ++p) biggest = std::max(biggest, ++size_of[size_t(find(p))]);
    s.lc = double(biggest) / n;
    return s;
}

} // namespace etc::test
