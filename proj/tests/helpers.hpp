#pragma once

#include <vector>

#include "etc/keystream.hpp"
#include "etc/raster.hpp"
#include "etc/transform.hpp"

namespace etc::test {

inline RasterImage random_image(int w, int h, uint64_t seed) {
    RasterImage img = RasterImage::create(w, h, 3);
    Keystream ks(seed);
    for (auto& p : img.pixels) p = static_cast<uint8_t>(ks.uniform(256));
    return img;
}

// Independent transform implementations used as oracles: straight pixel loops
// with no shared code with the library path.
inline RasterImage naive_rot90cw(const RasterImage& in) {
    RasterImage out = RasterImage::create(in.height, in.width, in.channels);
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x)
            for (int c = 0; c < in.channels; ++c)
                out.at(in.height - 1 - y, x, c) = in.at(x, y, c);
    return out;
}

inline RasterImage naive_flip_h(const RasterImage& in) {
    RasterImage out = in;
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x)
            for (int c = 0; c < in.channels; ++c) out.at(in.width - 1 - x, y, c) = in.at(x, y, c);
    return out;
}

inline RasterImage naive_flip_v(const RasterImage& in) {
    RasterImage out = in;
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x)
            for (int c = 0; c < in.channels; ++c) out.at(x, in.height - 1 - y, c) = in.at(x, y, c);
    return out;
}

inline RasterImage naive_negpos(const RasterImage& in) {
    RasterImage out = in;
    for (auto& p : out.pixels) p = static_cast<uint8_t>(255 - p);
    return out;
}

inline RasterImage naive_shuffle(const RasterImage& in, int perm_index) {
    RasterImage out = in;
    const auto& perm = kColorPerm[static_cast<size_t>(perm_index)];
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x)
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = in.at(x, y, perm[c]);
    return out;
}

// Full composite in the canonical order: color shuffle, then negative-positive,
// then inversion, then rotation.
inline RasterImage naive_apply(const RasterImage& in, const BlockTransform& t) {
    RasterImage img = naive_shuffle(in, t.color_perm);
    if (t.negpos) img = naive_negpos(img);
    if (t.inversion == Inversion::H) img = naive_flip_h(img);
    if (t.inversion == Inversion::V) img = naive_flip_v(img);
    for (int k = 0; k < int(t.rotation); ++k) img = naive_rot90cw(img);
    return img;
}

} // namespace etc::test
