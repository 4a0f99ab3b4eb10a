#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "etc/raster.hpp"

namespace etc {

enum class Rotation : uint8_t { R0 = 0, R90 = 1, R180 = 2, R270 = 3 }; // 90-degree steps, clockwise
enum class Inversion : uint8_t { None = 0, H = 1, V = 2 };             // mirror across vertical / horizontal axis

// Color component shuffle indexed 0..5. Output channel k holds input channel
// kColorPerm[p][k]; row order: RGB, GRB, RBG, BGR, BRG, GBR.
using ColorPerm = uint8_t;
extern const std::array<std::array<uint8_t, 3>, 6> kColorPerm;
extern const std::array<const char*, 6> kColorPermName;

ColorPerm compose_color_perm(ColorPerm second, ColorPerm first); // second applied after first
ColorPerm invert_color_perm(ColorPerm p);

// One of the 8 dihedral index maps. Output pixel (x, y) reads the input at
// m(x, y): swap first, then per-axis flips. Output dims are swapped when
// `swap` is set.
struct GeomOp {
    bool swap = false;
    bool flip_x = false;
    bool flip_y = false;

    bool operator==(const GeomOp&) const = default;

    int index() const { return (swap << 2) | (flip_x << 1) | int(flip_y); }

    // Source coordinates for output pixel (x, y); (in_w, in_h) are input dims.
    void map_src(int in_w, int in_h, int x, int y, int& sx, int& sy) const {
        int a = swap ? y : x;
        int b = swap ? x : y;
        sx = flip_x ? in_w - 1 - a : a;
        sy = flip_y ? in_h - 1 - b : b;
    }

    // Block-op composition: `next` applied to the result of *this.
    GeomOp then(const GeomOp& next) const;
    GeomOp inverse() const;

    // Forward action on cell/direction vectors: where a step of (dx, dy) in the
    // input lands in the output.
    std::pair<int, int> map_direction(int dx, int dy) const;
};

// One element of the per-block transform group: the composite applies the
// color shuffle first, then negative-positive, then inversion, then rotation.
struct BlockTransform {
    Rotation rotation = Rotation::R0;
    Inversion inversion = Inversion::None;
    bool negpos = false;
    ColorPerm color_perm = 0;

    bool operator==(const BlockTransform&) const = default;

    bool is_identity() const;
    GeomOp geom() const; // rotation-after-inversion composite

    // Canonical representative of the same action: several (rotation,
    // inversion) pairs realize one dihedral element; pick the smallest.
    BlockTransform canonical() const;
};

bool same_action(const BlockTransform& a, const BlockTransform& b);
BlockTransform compose_transform(const BlockTransform& second, const BlockTransform& first);
BlockTransform invert_transform(const BlockTransform& t);
BlockTransform transform_from_geom(const GeomOp& g, bool negpos = false, ColorPerm cp = 0);

RasterImage apply_transform(const RasterImage& block, const BlockTransform& t);
RasterImage negpos(const RasterImage& block, int bits = 8); // every sample p -> p XOR (2^bits - 1)
RasterImage shuffle_colors(const RasterImage& block, ColorPerm p);

// Jigsaw puzzle classes distinguishing which scrambling steps are enabled.
enum class PuzzleType : uint8_t { Type1, Type2, TypeI, TypeN, TypeIN, TypeINC };

struct StepFlags {
    bool scramble = false;
    bool rotation = false;
    bool inversion = false;
    bool negpos = false;
    bool colorshuffle = false;

    bool operator==(const StepFlags&) const = default;
};

StepFlags steps_of(PuzzleType type);
std::optional<PuzzleType> type_of_steps(const StepFlags& flags);
const char* to_string(PuzzleType type);
PuzzleType puzzle_type_from_string(const std::string& s);

} // namespace etc
