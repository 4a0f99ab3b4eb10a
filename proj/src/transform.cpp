#include "etc/transform.hpp"

#include <algorithm>
#include <array>

namespace etc {

const std::array<std::array<uint8_t, 3>, 6> kColorPerm = {{
    {0, 1, 2}, // RGB
    {1, 0, 2}, // GRB
    {0, 2, 1}, // RBG
    {2, 1, 0}, // BGR
    {2, 0, 1}, // BRG
    {1, 2, 0}, // GBR
}};

const std::array<const char*, 6> kColorPermName = {"RGB", "GRB", "RBG", "BGR", "BRG", "GBR"};

namespace {

int color_perm_index(const std::array<uint8_t, 3>& p) {
    for (int i = 0; i < 6; ++i)
        if (kColorPerm[i] == p) return i;
    return -1; // unreachable: S3 is closed
}

} // namespace

ColorPerm compose_color_perm(ColorPerm second, ColorPerm first) {
    // out[k] = mid[perm2[k]] = in[perm1[perm2[k]]]
    const auto& p1 = kColorPerm[first];
    const auto& p2 = kColorPerm[second];
    std::array<uint8_t, 3> r = {p1[p2[0]], p1[p2[1]], p1[p2[2]]};
    return static_cast<ColorPerm>(color_perm_index(r));
}

ColorPerm invert_color_perm(ColorPerm p) {
    const auto& perm = kColorPerm[p];
    std::array<uint8_t, 3> r{};
    for (uint8_t k = 0; k < 3; ++k) r[perm[k]] = k;
    return static_cast<ColorPerm>(color_perm_index(r));
}

GeomOp GeomOp::then(const GeomOp& next) const {
    // Pullback maps compose in reverse of application order.
    GeomOp r;
    r.swap = swap ^ next.swap;
    r.flip_x = flip_x ^ (swap ? next.flip_y : next.flip_x);
    r.flip_y = flip_y ^ (swap ? next.flip_x : next.flip_y);
    return r;
}

GeomOp GeomOp::inverse() const {
    GeomOp r;
    r.swap = swap;
    r.flip_x = swap ? flip_y : flip_x;
    r.flip_y = swap ? flip_x : flip_y;
    return r;
}

std::pair<int, int> GeomOp::map_direction(int dx, int dy) const {
    GeomOp inv = inverse();
    int a = inv.swap ? dy : dx;
    int b = inv.swap ? dx : dy;
    if (inv.flip_x) a = -a;
    if (inv.flip_y) b = -b;
    return {a, b};
}

namespace {

GeomOp rotation_geom(Rotation r) {
    switch (r) {
        case Rotation::R0: return {false, false, false};
        case Rotation::R90: return {true, false, true};
        case Rotation::R180: return {false, true, true};
        case Rotation::R270: return {true, true, false};
    }
    return {};
}

GeomOp inversion_geom(Inversion i) {
    switch (i) {
        case Inversion::None: return {false, false, false};
        case Inversion::H: return {false, true, false};
        case Inversion::V: return {false, false, true};
    }
    return {};
}

// Lexicographically smallest (rotation, inversion) pair for each dihedral
// element, filled on first use from the 12 parameterizations.
struct CanonicalTable {
    std::array<std::pair<Rotation, Inversion>, 8> rep;
    CanonicalTable() {
        std::array<bool, 8> seen{};
        for (int r = 0; r < 4; ++r) {
            for (int i = 0; i < 3; ++i) {
                GeomOp g = inversion_geom(Inversion(i)).then(rotation_geom(Rotation(r)));
                if (!seen[g.index()]) {
                    seen[g.index()] = true;
                    rep[g.index()] = {Rotation(r), Inversion(i)};
                }
            }
        }
    }
};

const CanonicalTable& canonical_table() {
    static const CanonicalTable t;
    return t;
}

} // namespace

bool BlockTransform::is_identity() const {
    return geom() == GeomOp{} && !negpos && color_perm == 0;
}

GeomOp BlockTransform::geom() const {
    return inversion_geom(inversion).then(rotation_geom(rotation));
}

BlockTransform BlockTransform::canonical() const {
    auto [rot, inv] = canonical_table().rep[geom().index()];
    return {rot, inv, negpos, color_perm};
}

bool same_action(const BlockTransform& a, const BlockTransform& b) {
    return a.geom() == b.geom() && a.negpos == b.negpos && a.color_perm == b.color_perm;
}

BlockTransform transform_from_geom(const GeomOp& g, bool np, ColorPerm cp) {
    auto [rot, inv] = canonical_table().rep[g.index()];
    return {rot, inv, np, cp};
}

BlockTransform compose_transform(const BlockTransform& second, const BlockTransform& first) {
    // Negative-positive and the color shuffle commute with the geometry, so the
    // composite folds back into canonical component order.
    GeomOp g = first.geom().then(second.geom());
    return transform_from_geom(g, first.negpos ^ second.negpos,
                               compose_color_perm(second.color_perm, first.color_perm));
}

BlockTransform invert_transform(const BlockTransform& t) {
    return transform_from_geom(t.geom().inverse(), t.negpos, invert_color_perm(t.color_perm));
}

RasterImage apply_transform(const RasterImage& block, const BlockTransform& t) {
    if ((t.rotation == Rotation::R90 || t.rotation == Rotation::R270) && block.width != block.height)
        throw DimensionError("90/270 rotation requires square blocks");
    if (block.channels != 3 && t.color_perm != 0)
        throw DimensionError("color shuffle requires 3-channel blocks");

    GeomOp g = t.geom();
    const int out_w = g.swap ? block.height : block.width;
    const int out_h = g.swap ? block.width : block.height;
    RasterImage out = RasterImage::create(out_w, out_h, block.channels);
    const auto& perm = kColorPerm[t.color_perm];
    const uint8_t mask = t.negpos ? 0xFF : 0x00;
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            int sx, sy;
            g.map_src(block.width, block.height, x, y, sx, sy);
            for (int c = 0; c < block.channels; ++c) {
                int sc = block.channels == 3 ? perm[c] : c;
                out.at(x, y, c) = block.at(sx, sy, sc) ^ mask;
            }
        }
    }
    return out;
}

RasterImage negpos(const RasterImage& block, int bits) {
    const uint8_t mask = static_cast<uint8_t>((1u << bits) - 1u);
    RasterImage out = block;
    for (auto& p : out.pixels) p ^= mask;
    return out;
}

RasterImage shuffle_colors(const RasterImage& block, ColorPerm p) {
    if (block.channels != 3)
        throw DimensionError("color shuffle requires 3-channel blocks");
    const auto& perm = kColorPerm[p];
    RasterImage out = block;
    const size_t n = block.pixels.size();
    for (size_t i = 0; i < n; i += 3) {
        out.pixels[i + 0] = block.pixels[i + perm[0]];
        out.pixels[i + 1] = block.pixels[i + perm[1]];
        out.pixels[i + 2] = block.pixels[i + perm[2]];
    }
    return out;
}

StepFlags steps_of(PuzzleType type) {
    switch (type) {
        case PuzzleType::Type1: return {true, false, false, false, false};
        case PuzzleType::Type2: return {true, true, false, false, false};
        case PuzzleType::TypeI: return {true, true, true, false, false};
        case PuzzleType::TypeN: return {true, true, false, true, false};
        case PuzzleType::TypeIN: return {true, true, true, true, false};
        case PuzzleType::TypeINC: return {true, true, true, true, true};
    }
    return {};
}

std::optional<PuzzleType> type_of_steps(const StepFlags& flags) {
    for (PuzzleType t : {PuzzleType::Type1, PuzzleType::Type2, PuzzleType::TypeI,
                         PuzzleType::TypeN, PuzzleType::TypeIN, PuzzleType::TypeINC}) {
        if (steps_of(t) == flags) return t;
    }
    return std::nullopt;
}

const char* to_string(PuzzleType type) {
    switch (type) {
        case PuzzleType::Type1: return "1";
        case PuzzleType::Type2: return "2";
        case PuzzleType::TypeI: return "I";
        case PuzzleType::TypeN: return "N";
        case PuzzleType::TypeIN: return "IN";
        case PuzzleType::TypeINC: return "INC";
    }
    return "?";
}

PuzzleType puzzle_type_from_string(const std::string& s) {
    for (PuzzleType t : {PuzzleType::Type1, PuzzleType::Type2, PuzzleType::TypeI,
                         PuzzleType::TypeN, PuzzleType::TypeIN, PuzzleType::TypeINC}) {
        if (s == to_string(t)) return t;
    }
    throw ConfigError("unknown puzzle type '" + s + "' (expected 1, 2, I, N, IN or INC)");
}

} // namespace etc
