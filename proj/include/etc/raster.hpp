#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "etc/common.hpp"

namespace etc {

// 8-bit RGB raster, row-major, channel-interleaved. This single layout is
// shared by every module so fixtures stay bit-exact.
struct RasterImage {
    int width = 0;
    int height = 0;
    int channels = 3;
    static constexpr int bit_depth = 8;
    std::vector<uint8_t> pixels; // width * height * channels samples

    static RasterImage create(int width, int height, int channels = 3);

    bool empty() const { return pixels.empty(); }

    size_t index(int x, int y, int c) const {
        return (static_cast<size_t>(y) * width + x) * channels + c;
    }
    uint8_t at(int x, int y, int c) const { return pixels[index(x, y, c)]; }
    uint8_t& at(int x, int y, int c) { return pixels[index(x, y, c)]; }

    bool operator==(const RasterImage&) const = default;
};

// An image cut into a rows x cols lattice of block_w x block_h tiles.
// Residual pixels beyond the lattice are cropped away at partition time.
struct BlockGrid {
    int rows = 0;
    int cols = 0;
    int block_w = 0;
    int block_h = 0;
    std::vector<RasterImage> blocks; // row-major grid order

    int count() const { return rows * cols; }
};

BlockGrid partition(const RasterImage& image, int block_w, int block_h);
RasterImage reassemble(const BlockGrid& grid);

// Fidelity helpers for channel measurements.
double image_mse(const RasterImage& a, const RasterImage& b);
double image_psnr(const RasterImage& a, const RasterImage& b); // dB, +inf when identical

// File I/O. PPM (P6, maxval 255) is the canonical lossless format; PNG files
// are accepted for ingestion (RGB, RGBA with alpha dropped, gray replicated).
RasterImage read_image(const std::string& path);
RasterImage read_ppm(const std::string& path);
void write_ppm(const RasterImage& image, const std::string& path);
RasterImage read_png(const std::string& path);

} // namespace etc
