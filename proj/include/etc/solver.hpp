#pragma once

#include <limits>
#include <vector>

#include "etc/mgc.hpp"
#include "etc/transform.hpp"

namespace etc {

// Attachment side of j relative to i: east, south, west, north. All four are
// needed once pieces carry unknown orientations; a pair whose relative pose
// turns the seam to i's west or north shows up in no east/south entry.
enum class Side : uint8_t { LeftRight = 0, TopBottom = 1, RightLeft = 2, BottomTop = 3 };

struct PairwiseScore {
    double cost = std::numeric_limits<double>::infinity();
    BlockTransform transform{}; // argmin over the enumerated family
    Side side = Side::LeftRight;
};

// The enumerated transform subsets per puzzle type, in tie-break order:
// rotation outermost, then inversion, negative-positive, color shuffle.
// Type 1 enumerates only the identity; Type INC all 144 parameterizations.
std::vector<BlockTransform> transform_family(PuzzleType type);

struct Cell {
    int x = 0; // column
    int y = 0; // row
    bool operator==(const Cell&) const = default;
};

// Pieces of one scrambled image plus the per-orientation edge data the MGC
// kernel consumes. Building the set precomputes boundary columns and gradient
// stats for every distinct transform action the type can need, so pairwise
// scoring never touches full blocks.
class PieceSet {
public:
    PieceSet(const BlockGrid& grid, PuzzleType type);
    PieceSet(std::vector<RasterImage> pieces, PuzzleType type);

    int count() const { return n_; }
    int block() const { return b_; }
    PuzzleType type() const { return type_; }
    const std::vector<BlockTransform>& family() const { return family_; }
    const RasterImage& piece(int i) const { return pieces_[static_cast<size_t>(i)]; }

    // C_LR of f_a(piece i) butted against f_b(piece j); bit-identical to
    // mgc_cost on the materialized transformed blocks.
    double seam_lr(int i, const BlockTransform& a, int j, const BlockTransform& b) const;
    // cost of f_a(piece i) sitting directly above f_b(piece j)
    double seam_tb(int i, const BlockTransform& a, int j, const BlockTransform& b) const;

    // min over the family of C_LR(x_i, f(x_j)) / C_TB(x_i, f(x_j)); ties go to
    // the lowest family index.
    PairwiseScore min_compatibility_lr(int i, int j) const;
    PairwiseScore min_compatibility_tb(int i, int j) const;
    // the mirrored attachments: f(x_j) butted west / north of x_i
    PairwiseScore min_compatibility_rl(int i, int j) const;
    PairwiseScore min_compatibility_bt(int i, int j) const;

private:
    struct VariantEdges {
        std::vector<uint8_t> left_b, left_i, right_b, right_i;
        EdgeStats left_stats, right_stats;
    };

    void build_variants();
    int variant_key(const BlockTransform& t) const;
    const VariantEdges& edges(int piece, int key) const;

    int n_ = 0;
    int b_ = 0;
    PuzzleType type_ = PuzzleType::Type1;
    std::vector<RasterImage> pieces_;
    std::vector<BlockTransform> family_;
    std::vector<int> family_key_;        // family index -> variant key
    std::vector<char> family_is_first_;  // first family index realizing its action
    std::vector<int> variant_slot_;      // variant key (96) -> dense slot or -1
    int num_slots_ = 0;
    std::vector<VariantEdges> store_;    // piece-major, num_slots_ per piece
};

// Pairwise minimum compatibilities for every ordered pair. `lr` scores piece j
// attached to the right of piece i; `tb` scores j directly below i (computed
// by rotating both pieces a quarter turn; explicit edges for Type 1). The
// mirrored planes `rl` and `bt` attach j to i's west and north; they carry
// information of their own whenever the family transforms j.
struct CompatibilityTable {
    int n = 0;
    PuzzleType type = PuzzleType::Type1;
    std::vector<PairwiseScore> lr; // n*n, index i*n + j
    std::vector<PairwiseScore> tb;
    std::vector<PairwiseScore> rl;
    std::vector<PairwiseScore> bt;

    const PairwiseScore& at_lr(int i, int j) const { return lr[static_cast<size_t>(i) * n + j]; }
    const PairwiseScore& at_tb(int i, int j) const { return tb[static_cast<size_t>(i) * n + j]; }
    const PairwiseScore& at_rl(int i, int j) const { return rl[static_cast<size_t>(i) * n + j]; }
    const PairwiseScore& at_bt(int i, int j) const { return bt[static_cast<size_t>(i) * n + j]; }
};

// threads = 0 picks ETC_WORKERS or hardware concurrency.
CompatibilityTable build_table(const PieceSet& pieces, int threads = 0);

// Convenience over a temporary two-piece set.
PairwiseScore min_compatibility(const RasterImage& xi, const RasterImage& xj, PuzzleType type);

struct AssemblyOptions {
    bool ratio_ordering = true; // order merges by cost / second-best instead of raw cost
};

struct AssemblyResult {
    int rows = 0;
    int cols = 0;
    std::vector<Cell> cell;            // per piece
    std::vector<BlockTransform> pose;  // per piece, applied for display
    std::vector<int> canvas;           // rows*cols -> piece id or -1

    int piece_at(int x, int y) const { return canvas[static_cast<size_t>(y) * cols + x]; }

    // The mirror reading with every piece's polarity flipped; equally
    // consistent under the cost model, so both interpretations get scored.
    AssemblyResult global_negpos_flipped() const;
};

AssemblyResult assemble(const CompatibilityTable& table, const PieceSet& pieces,
                        int target_rows, int target_cols, const AssemblyOptions& options = {});

// Total seam cost over all placed adjacencies (the quantity greedy assembly
// tries to keep small; used by the exhaustive oracles).
double assembly_seam_cost(const AssemblyResult& result, const PieceSet& pieces);

RasterImage render_assembly(const AssemblyResult& result, const PieceSet& pieces);

void write_table_csv(const CompatibilityTable& table, const std::string& path);

} // namespace etc
