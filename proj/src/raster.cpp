#include "etc/raster.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

#include <png.h>

namespace etc {

RasterImage RasterImage::create(int width, int height, int channels) {
    if (width <= 0 || height <= 0 || channels <= 0)
        throw DimensionError("raster dimensions must be positive");
    RasterImage img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.pixels.assign(static_cast<size_t>(width) * height * channels, 0);
    return img;
}

BlockGrid partition(const RasterImage& image, int block_w, int block_h) {
    if (block_w < 2 || block_h < 2)
        throw DimensionError("block dimensions must be at least 2");
    if (block_w > image.width || block_h > image.height)
        throw DimensionError("block exceeds image dimensions");

    BlockGrid grid;
    grid.block_w = block_w;
    grid.block_h = block_h;
    grid.cols = image.width / block_w;
    grid.rows = image.height / block_h;
    grid.blocks.reserve(static_cast<size_t>(grid.count()));

    const int ch = image.channels;
    for (int br = 0; br < grid.rows; ++br) {
        for (int bc = 0; bc < grid.cols; ++bc) {
            RasterImage blk = RasterImage::create(block_w, block_h, ch);
            for (int y = 0; y < block_h; ++y) {
                const uint8_t* src = &image.pixels[image.index(bc * block_w, br * block_h + y, 0)];
                std::memcpy(&blk.pixels[blk.index(0, y, 0)], src, static_cast<size_t>(block_w) * ch);
            }
            grid.blocks.push_back(std::move(blk));
        }
    }
    return grid;
}

RasterImage reassemble(const BlockGrid& grid) {
    if (grid.rows <= 0 || grid.cols <= 0 || grid.blocks.size() != static_cast<size_t>(grid.count()))
        throw DimensionError("malformed block grid");

    const int ch = grid.blocks.front().channels;
    RasterImage out = RasterImage::create(grid.cols * grid.block_w, grid.rows * grid.block_h, ch);
    for (int br = 0; br < grid.rows; ++br) {
        for (int bc = 0; bc < grid.cols; ++bc) {
            const RasterImage& blk = grid.blocks[static_cast<size_t>(br) * grid.cols + bc];
            if (blk.width != grid.block_w || blk.height != grid.block_h || blk.channels != ch)
                throw DimensionError("grid block has mismatched shape");
            for (int y = 0; y < grid.block_h; ++y) {
                std::memcpy(&out.pixels[out.index(bc * grid.block_w, br * grid.block_h + y, 0)],
                            &blk.pixels[blk.index(0, y, 0)],
                            static_cast<size_t>(grid.block_w) * ch);
            }
        }
    }
    return out;
}

double image_mse(const RasterImage& a, const RasterImage& b) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw DimensionError("MSE requires identically shaped images");
    double acc = 0.0;
    for (size_t i = 0; i < a.pixels.size(); ++i) {
        double d = double(a.pixels[i]) - double(b.pixels[i]);
        acc += d * d;
    }
    return acc / double(a.pixels.size());
}

double image_psnr(const RasterImage& a, const RasterImage& b) {
    double mse = image_mse(a, b);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

int ppm_next_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') { // comment runs to end of line
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) break;
    }
    if (c == EOF) return -1;
    do {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    } while (c != EOF && !std::isspace(c) && c != '#');
    if (c == '#') in.unget();
    return 0;
}

} // namespace

RasterImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string tok;
    if (ppm_next_token(in, tok) < 0 || tok != "P6")
        throw IoError(path + ": not a P6 PPM file");
    int vals[3];
    for (int& v : vals) {
        if (ppm_next_token(in, tok) < 0) throw IoError(path + ": truncated PPM header");
        try {
            v = std::stoi(tok);
        } catch (const std::exception&) {
            throw IoError(path + ": bad PPM header token '" + tok + "'");
        }
    }
    if (vals[2] != 255) throw IoError(path + ": only maxval 255 PPM supported");
    RasterImage img = RasterImage::create(vals[0], vals[1], 3);
    // exactly one whitespace byte separates header and raster
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw IoError(path + ": truncated PPM raster");
    return img;
}

void write_ppm(const RasterImage& image, const std::string& path) {
    if (image.channels != 3) throw IoError("PPM writer requires 3-channel images");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create " + path);
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw IoError("short write to " + path);
}

RasterImage read_png(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw IoError("cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw IoError("libpng initialization failed");
    }
    std::vector<uint8_t*> row_ptrs;
    RasterImage img;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw IoError(path + ": PNG decode failed");
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);

    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    img = RasterImage::create(static_cast<int>(w), static_cast<int>(h), 3);
    row_ptrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
        row_ptrs[y] = &img.pixels[img.index(0, static_cast<int>(y), 0)];
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return img;
}

RasterImage read_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError("cannot open " + path);
    unsigned char magic[8] = {0};
    probe.read(reinterpret_cast<char*>(magic), 8);
    probe.close();
    if (magic[0] == 'P' && magic[1] == '6') return read_ppm(path);
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (std::memcmp(magic, png_sig, 8) == 0) return read_png(path);
    throw IoError(path + ": unsupported image format (expect PPM P6 or PNG)");
}

} // namespace etc
