#include "etc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "etc/keystream.hpp"

namespace etc {

namespace {

double hash01(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
    uint64_t h = mix64(seed ^ mix64(a ^ mix64(b ^ mix64(c))));
    return double(h >> 11) * (1.0 / 9007199254740992.0); // 53-bit mantissa
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

// One octave of lattice value noise with smoothstep interpolation.
double lattice(uint64_t seed, uint64_t octave, double x, double y) {
    double fx = std::floor(x), fy = std::floor(y);
    auto gx = static_cast<int64_t>(fx);
    auto gy = static_cast<int64_t>(fy);
    double tx = smoothstep(x - fx), ty = smoothstep(y - fy);
    double v00 = hash01(seed, octave, static_cast<uint64_t>(gx), static_cast<uint64_t>(gy));
    double v10 = hash01(seed, octave, static_cast<uint64_t>(gx + 1), static_cast<uint64_t>(gy));
    double v01 = hash01(seed, octave, static_cast<uint64_t>(gx), static_cast<uint64_t>(gy + 1));
    double v11 = hash01(seed, octave, static_cast<uint64_t>(gx + 1), static_cast<uint64_t>(gy + 1));
    double a = v00 + (v10 - v00) * tx;
    double b = v01 + (v11 - v01) * tx;
    return a + (b - a) * ty;
}

double octaves(uint64_t seed, double x, double y, double base_scale, int count, double persistence) {
    double amp = 1.0, total = 0.0, norm = 0.0, scale = base_scale;
    for (int o = 0; o < count; ++o) {
        total += amp * lattice(seed, static_cast<uint64_t>(o), x / scale, y / scale);
        norm += amp;
        amp *= persistence;
        scale *= 0.5;
    }
    return total / norm;
}

uint8_t clamp_u8(double v) {
    return static_cast<uint8_t>(std::clamp(v, 0.0, 255.0) + 0.5);
}

} // namespace

RasterImage gradient_image(int width, int height, uint64_t seed) {
    // a clean ramp plus a light dither: without the dither the boundary
    // gradient distribution degenerates to quantization jitter and the
    // Mahalanobis scores turn meaningless
    RasterImage img = RasterImage::create(width, height, 3);
    for (int c = 0; c < 3; ++c) {
        double ax = 0.4 + hash01(seed, 10, static_cast<uint64_t>(c), 0);
        double ay = 0.4 + hash01(seed, 11, static_cast<uint64_t>(c), 0);
        bool rx = hash01(seed, 12, static_cast<uint64_t>(c), 0) < 0.5;
        bool ry = hash01(seed, 13, static_cast<uint64_t>(c), 0) < 0.5;
        double span = ax * (width - 1) + ay * (height - 1);
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                double u = ax * (rx ? width - 1 - x : x) + ay * (ry ? height - 1 - y : y);
                double dither = 6.0 * (hash01(seed, 14 + uint64_t(c), uint64_t(x), uint64_t(y)) - 0.5);
                img.at(x, y, c) = clamp_u8(12.0 + 231.0 * u / span + dither);
            }
        }
    }
    return img;
}

RasterImage value_noise_image(int width, int height, uint64_t seed) {
    // palette anchors: four colors traversed by the primary field
    double anchors[4][3];
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 3; ++c)
            anchors[a][c] = 20.0 + 215.0 * hash01(seed, 20 + a, static_cast<uint64_t>(c), 1);

    const double base = 60.0 + 160.0 * hash01(seed, 30, 0, 0);
    const double detail_amp = 10.0 + 25.0 * hash01(seed, 31, 0, 0);

    RasterImage img = RasterImage::create(width, height, 3);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double f = octaves(seed, x, y, base, 4, 0.5);
            double d = octaves(seed ^ 0x5bf0363546df1073ULL, x, y, base * 0.25, 3, 0.55) - 0.5;
            double t = std::clamp(f * 3.0, 0.0, 2.999);
            int seg = static_cast<int>(t);
            double u = t - seg;
            for (int c = 0; c < 3; ++c) {
                double v = anchors[seg][c] + (anchors[seg + 1][c] - anchors[seg][c]) * u;
                img.at(x, y, c) = clamp_u8(v + detail_amp * d);
            }
        }
    }
    return img;
}

std::vector<std::pair<std::string, RasterImage>> fixture_suite(uint64_t seed, int count,
                                                               int width, int height) {
    std::vector<std::pair<std::string, RasterImage>> suite;
    suite.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "synth%02d", i);
        suite.emplace_back(name, value_noise_image(width, height, mix64(seed ^ static_cast<uint64_t>(i))));
    }
    return suite;
}

} // namespace etc
