#include "etc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace etc {

namespace {

// Quarter turn mapping a south adjacency onto an east one; used for every
// top-bottom seam so only the left-right kernel exists.
const BlockTransform kRho{Rotation::R270, Inversion::None, false, 0};

uint64_t pack_cell(int x, int y) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(x)) << 32) |
           static_cast<uint64_t>(static_cast<uint32_t>(y));
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ETC_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

} // namespace

std::vector<BlockTransform> transform_family(PuzzleType type) {
    StepFlags f = steps_of(type);
    std::vector<Rotation> rots = f.rotation
        ? std::vector<Rotation>{Rotation::R0, Rotation::R90, Rotation::R180, Rotation::R270}
        : std::vector<Rotation>{Rotation::R0};
    std::vector<Inversion> invs = f.inversion
        ? std::vector<Inversion>{Inversion::None, Inversion::H, Inversion::V}
        : std::vector<Inversion>{Inversion::None};
    std::vector<char> nps = f.negpos ? std::vector<char>{0, 1} : std::vector<char>{0};
    std::vector<ColorPerm> cps;
    if (f.colorshuffle)
        cps = {0, 1, 2, 3, 4, 5};
    else
        cps = {0};

    std::vector<BlockTransform> family;
    family.reserve(rots.size() * invs.size() * nps.size() * cps.size());
    for (Rotation r : rots)
        for (Inversion i : invs)
            for (char np : nps)
                for (ColorPerm cp : cps) family.push_back({r, i, np != 0, cp});
    return family;
}

PieceSet::PieceSet(const BlockGrid& grid, PuzzleType type)
    : PieceSet(grid.blocks, type) {}

PieceSet::PieceSet(std::vector<RasterImage> pieces, PuzzleType type)
    : type_(type), pieces_(std::move(pieces)) {
    n_ = static_cast<int>(pieces_.size());
    if (n_ < 1) throw ConfigError("piece set requires at least one piece");
    b_ = pieces_.front().width;
    for (const auto& p : pieces_) {
        if (p.width != b_ || p.height != b_)
            throw DimensionError("solver pieces must be square and uniformly sized");
        if (p.channels != 3) throw DimensionError("solver pieces must be 3-channel");
    }
    if (b_ < 2) throw DimensionError("solver pieces must be at least 2x2");
    family_ = transform_family(type);
    build_variants();
}

int PieceSet::variant_key(const BlockTransform& t) const {
    return t.geom().index() * 12 + (t.negpos ? 6 : 0) + t.color_perm;
}

void PieceSet::build_variants() {
    variant_slot_.assign(96, -1);
    auto ensure = [this](int key) {
        if (variant_slot_[key] < 0) variant_slot_[key] = num_slots_++;
    };
    family_key_.reserve(family_.size());
    std::vector<char> seen(96, 0);
    family_is_first_.reserve(family_.size());
    for (const auto& f : family_) {
        int key = variant_key(f);
        family_key_.push_back(key);
        family_is_first_.push_back(!seen[key]);
        seen[key] = 1;
        ensure(key);
        ensure(variant_key(compose_transform(kRho, f)));
    }

    store_.resize(static_cast<size_t>(n_) * num_slots_);
    const size_t col_bytes = static_cast<size_t>(b_) * 3;
    for (int pi = 0; pi < n_; ++pi) {
        const RasterImage& src = pieces_[static_cast<size_t>(pi)];
        for (int key = 0; key < 96; ++key) {
            int slot = variant_slot_[key];
            if (slot < 0) continue;
            GeomOp g{(key / 12 & 4) != 0, (key / 12 & 2) != 0, (key / 12 & 1) != 0};
            const uint8_t mask = (key % 12) >= 6 ? 0xFF : 0x00;
            const auto& perm = kColorPerm[key % 6];
            VariantEdges& ve = store_[static_cast<size_t>(pi) * num_slots_ + slot];
            ve.left_b.resize(col_bytes);
            ve.left_i.resize(col_bytes);
            ve.right_b.resize(col_bytes);
            ve.right_i.resize(col_bytes);
            auto fill_col = [&](int x, std::vector<uint8_t>& out) {
                for (int y = 0; y < b_; ++y) {
                    int sx, sy;
                    g.map_src(b_, b_, x, y, sx, sy);
                    for (int c = 0; c < 3; ++c)
                        out[static_cast<size_t>(y) * 3 + c] = src.at(sx, sy, perm[c]) ^ mask;
                }
            };
            fill_col(0, ve.left_b);
            fill_col(1, ve.left_i);
            fill_col(b_ - 1, ve.right_b);
            fill_col(b_ - 2, ve.right_i);
            ve.left_stats = compute_edge_stats(ve.left_b.data(), ve.left_i.data(), b_);
            ve.right_stats = compute_edge_stats(ve.right_b.data(), ve.right_i.data(), b_);
        }
    }
}

const PieceSet::VariantEdges& PieceSet::edges(int piece, int key) const {
    int slot = variant_slot_[key];
    if (slot < 0) throw ConfigError("pose outside the precomputed transform closure");
    return store_[static_cast<size_t>(piece) * num_slots_ + slot];
}

double PieceSet::seam_lr(int i, const BlockTransform& a, int j, const BlockTransform& b) const {
    const VariantEdges& ea = edges(i, variant_key(a));
    const VariantEdges& eb = edges(j, variant_key(b));
    return directional_cost(ea.right_stats, ea.right_b.data(), eb.left_b.data(), b_) +
           directional_cost(eb.left_stats, eb.left_b.data(), ea.right_b.data(), b_);
}

double PieceSet::seam_tb(int i, const BlockTransform& a, int j, const BlockTransform& b) const {
    return seam_lr(i, compose_transform(kRho, a), j, compose_transform(kRho, b));
}

PairwiseScore PieceSet::min_compatibility_lr(int i, int j) const {
    const VariantEdges& ei = edges(i, variant_key(BlockTransform{}));
    PairwiseScore best;
    best.side = Side::LeftRight;
    for (size_t idx = 0; idx < family_.size(); ++idx) {
        if (!family_is_first_[idx]) continue; // duplicate action, identical cost
        const VariantEdges& ej = edges(j, family_key_[idx]);
        double c = directional_cost(ei.right_stats, ei.right_b.data(), ej.left_b.data(), b_) +
                   directional_cost(ej.left_stats, ej.left_b.data(), ei.right_b.data(), b_);
        if (c < best.cost) {
            best.cost = c;
            best.transform = family_[idx];
        }
    }
    return best;
}

PairwiseScore PieceSet::min_compatibility_tb(int i, int j) const {
    const VariantEdges& ei = edges(i, variant_key(kRho));
    PairwiseScore best;
    best.side = Side::TopBottom;
    for (size_t idx = 0; idx < family_.size(); ++idx) {
        if (!family_is_first_[idx]) continue;
        const VariantEdges& ej = edges(j, variant_key(compose_transform(kRho, family_[idx])));
        double c = directional_cost(ei.right_stats, ei.right_b.data(), ej.left_b.data(), b_) +
                   directional_cost(ej.left_stats, ej.left_b.data(), ei.right_b.data(), b_);
        if (c < best.cost) {
            best.cost = c;
            best.transform = family_[idx];
        }
    }
    return best;
}

PairwiseScore PieceSet::min_compatibility_rl(int i, int j) const {
    const VariantEdges& ei = edges(i, variant_key(BlockTransform{}));
    PairwiseScore best;
    best.side = Side::RightLeft;
    for (size_t idx = 0; idx < family_.size(); ++idx) {
        if (!family_is_first_[idx]) continue;
        const VariantEdges& ej = edges(j, family_key_[idx]);
        double c = directional_cost(ej.right_stats, ej.right_b.data(), ei.left_b.data(), b_) +
                   directional_cost(ei.left_stats, ei.left_b.data(), ej.right_b.data(), b_);
        if (c < best.cost) {
            best.cost = c;
            best.transform = family_[idx];
        }
    }
    return best;
}

PairwiseScore PieceSet::min_compatibility_bt(int i, int j) const {
    const VariantEdges& ei = edges(i, variant_key(kRho));
    PairwiseScore best;
    best.side = Side::BottomTop;
    for (size_t idx = 0; idx < family_.size(); ++idx) {
        if (!family_is_first_[idx]) continue;
        const VariantEdges& ej = edges(j, variant_key(compose_transform(kRho, family_[idx])));
        double c = directional_cost(ej.right_stats, ej.right_b.data(), ei.left_b.data(), b_) +
                   directional_cost(ei.left_stats, ei.left_b.data(), ej.right_b.data(), b_);
        if (c < best.cost) {
            best.cost = c;
            best.transform = family_[idx];
        }
    }
    return best;
}

CompatibilityTable build_table(const PieceSet& pieces, int threads) {
    const int n = pieces.count();
    CompatibilityTable table;
    table.n = n;
    table.type = pieces.type();
    table.lr.assign(static_cast<size_t>(n) * n, PairwiseScore{});
    table.tb.assign(static_cast<size_t>(n) * n, PairwiseScore{});
    table.rl.assign(static_cast<size_t>(n) * n, PairwiseScore{});
    table.bt.assign(static_cast<size_t>(n) * n, PairwiseScore{});

    const int workers = std::min(resolve_threads(threads), n);
    std::atomic<int> next{0};
    auto run = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                table.lr[static_cast<size_t>(i) * n + j] = pieces.min_compatibility_lr(i, j);
                table.tb[static_cast<size_t>(i) * n + j] = pieces.min_compatibility_tb(i, j);
                table.rl[static_cast<size_t>(i) * n + j] = pieces.min_compatibility_rl(i, j);
                table.bt[static_cast<size_t>(i) * n + j] = pieces.min_compatibility_bt(i, j);
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    return table;
}

PairwiseScore min_compatibility(const RasterImage& xi, const RasterImage& xj, PuzzleType type) {
    PieceSet ps(std::vector<RasterImage>{xi, xj}, type);
    return ps.min_compatibility_lr(0, 1);
}

AssemblyResult AssemblyResult::global_negpos_flipped() const {
    AssemblyResult r = *this;
    for (auto& p : r.pose) p.negpos = !p.negpos;
    return r;
}

namespace {

struct Candidate {
    double key = 0.0;
    double cost = 0.0;
    int i = 0;
    int j = 0;
    Side side = Side::LeftRight;
};

struct Cluster {
    std::vector<int> members;
    std::unordered_set<uint64_t> occupied;
    int min_member = 0;
};

std::vector<BlockTransform> global_reorientations(PuzzleType type) {
    StepFlags f = steps_of(type);
    std::vector<BlockTransform> out;
    if (!f.rotation) {
        out.push_back(BlockTransform{});
        return out;
    }
    std::vector<Inversion> invs = f.inversion
        ? std::vector<Inversion>{Inversion::None, Inversion::H, Inversion::V}
        : std::vector<Inversion>{Inversion::None};
    std::vector<char> seen(8, 0);
    for (Rotation r : {Rotation::R0, Rotation::R90, Rotation::R180, Rotation::R270}) {
        for (Inversion i : invs) {
            BlockTransform t{r, i, false, 0};
            int gi = t.geom().index();
            if (!seen[gi]) {
                seen[gi] = 1;
                out.push_back(t.canonical());
            }
        }
    }
    return out;
}

} // namespace

AssemblyResult assemble(const CompatibilityTable& table, const PieceSet& pieces,
                        int target_rows, int target_cols, const AssemblyOptions& options) {
    const int n = pieces.count();
    if (table.n != n) throw ConfigError("table and piece set disagree on piece count");
    if (target_rows < 1 || target_cols < 1) throw ConfigError("target grid must be at least 1x1");
    if (n > target_rows * target_cols)
        throw ConfigError("more pieces than target cells");

    // --- candidate list: every ordered pair, east and south attachments ---
    std::vector<Candidate> cands;
    cands.reserve(static_cast<size_t>(n) * (n - 1) * 2);
    auto second_best = [n](const std::vector<PairwiseScore>& plane, int i) {
        double b1 = std::numeric_limits<double>::infinity(), b2 = b1;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double c = plane[static_cast<size_t>(i) * n + j].cost;
            if (c < b1) {
                b2 = b1;
                b1 = c;
            } else if (c < b2) {
                b2 = c;
            }
        }
        if (!std::isfinite(b2)) b2 = b1; // fewer than two rivals
        return std::max(b2, 1e-12);
    };
    const std::vector<PairwiseScore>* planes[4] = {&table.lr, &table.tb, &table.rl, &table.bt};
    for (int side = 0; side < 4; ++side) {
        const auto& plane = *planes[side];
        for (int i = 0; i < n; ++i) {
            double denom = options.ratio_ordering ? second_best(plane, i) : 1.0;
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const PairwiseScore& s = plane[static_cast<size_t>(i) * n + j];
                Candidate c;
                c.cost = s.cost;
                c.key = options.ratio_ordering ? s.cost / denom : s.cost;
                c.i = i;
                c.j = j;
                c.side = Side(side);
                cands.push_back(c);
            }
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.key != b.key) return a.key < b.key;
        if (a.cost != b.cost) return a.cost < b.cost;
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        return a.side < b.side;
    });

    // --- Kruskal-style merging with rigid-motion consistency ---
    std::vector<int> cluster_of(static_cast<size_t>(n));
    std::vector<Cell> cell(static_cast<size_t>(n));
    std::vector<BlockTransform> pose(static_cast<size_t>(n));
    std::vector<Cluster> clusters(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) {
        cluster_of[p] = p;
        clusters[p].members = {p};
        clusters[p].occupied.insert(pack_cell(0, 0));
        clusters[p].min_member = p;
    }
    int alive = n;

    bool merged = true;
    while (merged && alive > 1) {
        merged = false;
        for (const Candidate& cand : cands) {
            if (alive <= 1) break;
            int a = cluster_of[cand.i];
            int b = cluster_of[cand.j];
            if (a == b) continue;

            const PairwiseScore& s =
                (*planes[int(cand.side)])[static_cast<size_t>(cand.i) * n + cand.j];
            static const int kSideDir[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            const BlockTransform& gi = pose[cand.i];
            BlockTransform q = compose_transform(gi, s.transform);
            auto dir = gi.geom().map_direction(kSideDir[int(cand.side)][0],
                                               kSideDir[int(cand.side)][1]);
            Cell target{cell[cand.i].x + dir.first, cell[cand.i].y + dir.second};
            BlockTransform u = compose_transform(q, invert_transform(pose[cand.j]));
            GeomOp ug = u.geom();
            const Cell anchor = cell[cand.j]; // copied: the commit loop moves it

            auto mapped_cell = [&, anchor](const Cell& c) {
                auto d = ug.map_direction(c.x - anchor.x, c.y - anchor.y);
                return Cell{target.x + d.first, target.y + d.second};
            };
            bool collision = false;
            for (int p : clusters[b].members) {
                Cell nc = mapped_cell(cell[p]);
                if (clusters[a].occupied.count(pack_cell(nc.x, nc.y))) {
                    collision = true;
                    break;
                }
            }
            if (collision) continue;

            for (int p : clusters[b].members) {
                Cell nc = mapped_cell(cell[p]);
                BlockTransform np = compose_transform(u, pose[p]);
                cell[p] = nc;
                pose[p] = np;
                cluster_of[p] = a;
                clusters[a].members.push_back(p);
                clusters[a].occupied.insert(pack_cell(nc.x, nc.y));
            }
            clusters[a].min_member = std::min(clusters[a].min_member, clusters[b].min_member);
            clusters[b].members.clear();
            clusters[b].occupied.clear();
            --alive;
            merged = true;
        }
    }

    // --- pick the main cluster, reorient, and trim to the target window ---
    int main_cluster = -1;
    for (int c = 0; c < n; ++c) {
        if (clusters[c].members.empty()) continue;
        if (main_cluster < 0 ||
            clusters[c].members.size() > clusters[main_cluster].members.size() ||
            (clusters[c].members.size() == clusters[main_cluster].members.size() &&
             clusters[c].min_member < clusters[main_cluster].min_member))
            main_cluster = c;
    }
    const std::vector<int>& main_members = clusters[main_cluster].members;

    const std::vector<BlockTransform> globals = global_reorientations(pieces.type());
    const int tw = target_cols, th = target_rows;

    struct TrimChoice {
        int count = -1;
        size_t rho_idx = 0;
        int ox = 0, oy = 0;
    } best;

    std::vector<Cell> oriented(main_members.size());
    for (size_t ri = 0; ri < globals.size(); ++ri) {
        GeomOp rg = globals[ri].geom();
        int min_x = INT32_MAX, min_y = INT32_MAX, max_x = INT32_MIN, max_y = INT32_MIN;
        for (size_t k = 0; k < main_members.size(); ++k) {
            auto d = rg.map_direction(cell[main_members[k]].x, cell[main_members[k]].y);
            oriented[k] = {d.first, d.second};
            min_x = std::min(min_x, d.first);
            max_x = std::max(max_x, d.first);
            min_y = std::min(min_y, d.second);
            max_y = std::max(max_y, d.second);
        }
        const int W = max_x - min_x + 1, H = max_y - min_y + 1;
        std::vector<int> prefix(static_cast<size_t>(W + 1) * (H + 1), 0);
        for (const Cell& c : oriented)
            prefix[static_cast<size_t>(c.y - min_y + 1) * (W + 1) + (c.x - min_x + 1)] = 1;
        for (int y = 1; y <= H; ++y)
            for (int x = 0; x <= W; ++x)
                prefix[static_cast<size_t>(y) * (W + 1) + x] += prefix[static_cast<size_t>(y - 1) * (W + 1) + x];
        for (int y = 0; y <= H; ++y)
            for (int x = 1; x <= W; ++x)
                prefix[static_cast<size_t>(y) * (W + 1) + x] += prefix[static_cast<size_t>(y) * (W + 1) + x - 1];
        auto rect_count = [&](int x0, int y0, int x1, int y1) { // inclusive, clamped
            x0 = std::max(x0, min_x);
            y0 = std::max(y0, min_y);
            x1 = std::min(x1, max_x);
            y1 = std::min(y1, max_y);
            if (x0 > x1 || y0 > y1) return 0;
            int a0 = x0 - min_x, b0 = y0 - min_y, a1 = x1 - min_x + 1, b1 = y1 - min_y + 1;
            return prefix[static_cast<size_t>(b1) * (W + 1) + a1] -
                   prefix[static_cast<size_t>(b0) * (W + 1) + a1] -
                   prefix[static_cast<size_t>(b1) * (W + 1) + a0] +
                   prefix[static_cast<size_t>(b0) * (W + 1) + a0];
        };
        for (int oy = min_y - th + 1; oy <= max_y; ++oy) {
            for (int ox = min_x - tw + 1; ox <= max_x; ++ox) {
                int cnt = rect_count(ox, oy, ox + tw - 1, oy + th - 1);
                if (cnt > best.count) best = {cnt, ri, ox, oy};
            }
        }
    }

    AssemblyResult res;
    res.rows = target_rows;
    res.cols = target_cols;
    res.cell.assign(static_cast<size_t>(n), Cell{-1, -1});
    res.pose.assign(static_cast<size_t>(n), BlockTransform{});
    res.canvas.assign(static_cast<size_t>(target_rows) * target_cols, -1);

    const BlockTransform rho_g = globals[best.rho_idx];
    GeomOp rg = rho_g.geom();
    std::vector<int> leftovers;
    for (int p = 0; p < n; ++p) {
        if (cluster_of[p] != main_cluster) {
            leftovers.push_back(p);
            continue;
        }
        auto d = rg.map_direction(cell[p].x, cell[p].y);
        int x = d.first - best.ox, y = d.second - best.oy;
        if (x < 0 || x >= tw || y < 0 || y >= th) {
            leftovers.push_back(p);
            continue;
        }
        res.cell[p] = {x, y};
        res.pose[p] = compose_transform(rho_g, pose[p]);
        res.canvas[static_cast<size_t>(y) * tw + x] = p;
    }

    // --- fill remaining holes greedily by best summed neighbor cost ---
    const auto& family = pieces.family();
    struct CacheEntry {
        double cost = 0.0;
        int pose_idx = -1;
        int stamp = -1;
    };
    std::vector<int> stamp(static_cast<size_t>(th) * tw, 0);
    std::unordered_map<uint64_t, CacheEntry> cache;
    cache.reserve(static_cast<size_t>(n) * 4);

    auto hole_candidate = [&](int hx, int hy, int q) -> CacheEntry {
        CacheEntry e;
        e.cost = std::numeric_limits<double>::infinity();
        const int hidx = hy * tw + hx;
        e.stamp = stamp[static_cast<size_t>(hidx)];
        struct Nb {
            int piece;
            int dir; // 0=W 1=E 2=N 3=S relative to hole
        };
        Nb nbs[4];
        int nnb = 0;
        if (hx > 0 && res.canvas[static_cast<size_t>(hidx) - 1] >= 0)
            nbs[nnb++] = {res.canvas[static_cast<size_t>(hidx) - 1], 0};
        if (hx + 1 < tw && res.canvas[static_cast<size_t>(hidx) + 1] >= 0)
            nbs[nnb++] = {res.canvas[static_cast<size_t>(hidx) + 1], 1};
        if (hy > 0 && res.canvas[static_cast<size_t>(hidx) - tw] >= 0)
            nbs[nnb++] = {res.canvas[static_cast<size_t>(hidx) - tw], 2};
        if (hy + 1 < th && res.canvas[static_cast<size_t>(hidx) + tw] >= 0)
            nbs[nnb++] = {res.canvas[static_cast<size_t>(hidx) + tw], 3};
        if (nnb == 0) return e;
        std::vector<char> tried(96, 0);
        for (size_t fi = 0; fi < family.size(); ++fi) {
            const BlockTransform& g = family[fi];
            int key = g.geom().index() * 12 + (g.negpos ? 6 : 0) + g.color_perm;
            if (tried[static_cast<size_t>(key)]) continue;
            tried[static_cast<size_t>(key)] = 1;
            double cost = 0.0;
            for (int k = 0; k < nnb; ++k) {
                int p = nbs[k].piece;
                const BlockTransform& gp = res.pose[p];
                switch (nbs[k].dir) {
                    case 0: cost += pieces.seam_lr(p, gp, q, g); break;
                    case 1: cost += pieces.seam_lr(q, g, p, gp); break;
                    case 2: cost += pieces.seam_tb(p, gp, q, g); break;
                    case 3: cost += pieces.seam_tb(q, g, p, gp); break;
                }
            }
            if (cost < e.cost) {
                e.cost = cost;
                e.pose_idx = static_cast<int>(fi);
            }
        }
        return e;
    };

    int holes = 0;
    for (int v : res.canvas)
        if (v < 0) ++holes;

    while (holes > 0 && !leftovers.empty()) {
        double best_cost = std::numeric_limits<double>::infinity();
        int best_piece = -1, best_hx = -1, best_hy = -1, best_pose = -1;
        for (int hy = 0; hy < th; ++hy) {
            for (int hx = 0; hx < tw; ++hx) {
                const int hidx = hy * tw + hx;
                if (res.canvas[static_cast<size_t>(hidx)] >= 0) continue;
                for (int q : leftovers) {
                    uint64_t ck = (static_cast<uint64_t>(hidx) << 32) | static_cast<uint32_t>(q);
                    auto it = cache.find(ck);
                    if (it == cache.end() || it->second.stamp != stamp[static_cast<size_t>(hidx)]) {
                        CacheEntry e = hole_candidate(hx, hy, q);
                        it = cache.insert_or_assign(ck, e).first;
                    }
                    const CacheEntry& e = it->second;
                    if (e.pose_idx < 0) continue; // no placed neighbor yet
                    if (e.cost < best_cost) {
                        best_cost = e.cost;
                        best_piece = q;
                        best_hx = hx;
                        best_hy = hy;
                        best_pose = e.pose_idx;
                    }
                }
            }
        }
        if (best_piece < 0) break; // disconnected window; cannot happen on a full grid
        res.cell[best_piece] = {best_hx, best_hy};
        res.pose[best_piece] = family[static_cast<size_t>(best_pose)];
        res.canvas[static_cast<size_t>(best_hy) * tw + best_hx] = best_piece;
        leftovers.erase(std::find(leftovers.begin(), leftovers.end(), best_piece));
        --holes;
        const int dxs[4] = {-1, 1, 0, 0};
        const int dys[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            int nx = best_hx + dxs[k], ny = best_hy + dys[k];
            if (nx < 0 || nx >= tw || ny < 0 || ny >= th) continue;
            if (res.canvas[static_cast<size_t>(ny) * tw + nx] < 0)
                ++stamp[static_cast<size_t>(ny) * tw + nx];
        }
    }
    return res;
}

double assembly_seam_cost(const AssemblyResult& result, const PieceSet& pieces) {
    double total = 0.0;
    for (int y = 0; y < result.rows; ++y) {
        for (int x = 0; x < result.cols; ++x) {
            int p = result.piece_at(x, y);
            if (p < 0) continue;
            if (x + 1 < result.cols) {
                int q = result.piece_at(x + 1, y);
                if (q >= 0) total += pieces.seam_lr(p, result.pose[p], q, result.pose[q]);
            }
            if (y + 1 < result.rows) {
                int q = result.piece_at(x, y + 1);
                if (q >= 0) total += pieces.seam_tb(p, result.pose[p], q, result.pose[q]);
            }
        }
    }
    return total;
}

RasterImage render_assembly(const AssemblyResult& result, const PieceSet& pieces) {
    const int b = pieces.block();
    RasterImage out = RasterImage::create(result.cols * b, result.rows * b, 3);
    for (int y = 0; y < result.rows; ++y) {
        for (int x = 0; x < result.cols; ++x) {
            int p = result.piece_at(x, y);
            if (p < 0) continue;
            RasterImage blk = apply_transform(pieces.piece(p), result.pose[p]);
            for (int by = 0; by < b; ++by)
                for (int bx = 0; bx < b; ++bx)
                    for (int c = 0; c < 3; ++c)
                        out.at(x * b + bx, y * b + by, c) = blk.at(bx, by, c);
        }
    }
    return out;
}

void write_table_csv(const CompatibilityTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot create " + path);
    out << "i,j,side,cost,rotation,inversion,negpos,color_perm\n";
    const char* inv_names[3] = {"none", "H", "V"};
    auto dump = [&](const std::vector<PairwiseScore>& plane, const char* side) {
        for (int i = 0; i < table.n; ++i) {
            for (int j = 0; j < table.n; ++j) {
                if (i == j) continue;
                const PairwiseScore& s = plane[static_cast<size_t>(i) * table.n + j];
                out << i << ',' << j << ',' << side << ',' << s.cost << ','
                    << 90 * int(s.transform.rotation) << ',' << inv_names[int(s.transform.inversion)]
                    << ',' << (s.transform.negpos ? 1 : 0) << ','
                    << kColorPermName[s.transform.color_perm] << '\n';
            }
        }
    };
    dump(table.lr, "LR");
    dump(table.tb, "TB");
    dump(table.rl, "RL");
    dump(table.bt, "BT");
}

} // namespace etc
