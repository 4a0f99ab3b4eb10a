#include "etc/jpeg_channel.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <jpeglib.h>

namespace etc {

const char* to_string(Subsampling s) {
    return s == Subsampling::S444 ? "4:4:4" : "4:2:0";
}

Subsampling subsampling_from_string(const std::string& s) {
    if (s == "444" || s == "4:4:4") return Subsampling::S444;
    if (s == "420" || s == "4:2:0") return Subsampling::S420;
    throw ConfigError("unknown chroma subsampling '" + s + "' (expected 444 or 420)");
}

namespace {

struct JpegErrorTrap {
    jpeg_error_mgr mgr;
    jmp_buf env;
    char message[JMSG_LENGTH_MAX] = {0};
};

void jpeg_error_exit_trap(j_common_ptr cinfo) {
    auto* trap = reinterpret_cast<JpegErrorTrap*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, trap->message);
    longjmp(trap->env, 1);
}

struct MemGuard {
    unsigned char* buf = nullptr;
    ~MemGuard() { std::free(buf); }
};

} // namespace

std::vector<uint8_t> encode_jpeg(const RasterImage& image, int quality, Subsampling chroma) {
    if (image.channels != 3) throw CodecError("JPEG encoder requires 3-channel input");
    if (quality < 1 || quality > 100) throw CodecError("JPEG quality must be in [1, 100]");

    jpeg_compress_struct cinfo;
    JpegErrorTrap trap;
    cinfo.err = jpeg_std_error(&trap.mgr);
    trap.mgr.error_exit = jpeg_error_exit_trap;

    MemGuard out;
    unsigned long out_size = 0;
    if (setjmp(trap.env)) {
        jpeg_destroy_compress(&cinfo);
        throw CodecError(std::string("JPEG encode failed: ") + trap.message);
    }
    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &out.buf, &out_size);

    cinfo.image_width = static_cast<JDIMENSION>(image.width);
    cinfo.image_height = static_cast<JDIMENSION>(image.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    if (chroma == Subsampling::S444) {
        cinfo.comp_info[0].h_samp_factor = 1;
        cinfo.comp_info[0].v_samp_factor = 1;
    } else {
        cinfo.comp_info[0].h_samp_factor = 2;
        cinfo.comp_info[0].v_samp_factor = 2;
    }
    cinfo.comp_info[1].h_samp_factor = 1;
    cinfo.comp_info[1].v_samp_factor = 1;
    cinfo.comp_info[2].h_samp_factor = 1;
    cinfo.comp_info[2].v_samp_factor = 1;

    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        const JSAMPLE* row = image.pixels.data() +
                             static_cast<size_t>(cinfo.next_scanline) * image.width * 3;
        JSAMPROW rows[1] = {const_cast<JSAMPROW>(row)};
        jpeg_write_scanlines(&cinfo, rows, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);

    return std::vector<uint8_t>(out.buf, out.buf + out_size);
}

RasterImage decode_jpeg(const std::vector<uint8_t>& bytes) {
    jpeg_decompress_struct cinfo;
    JpegErrorTrap trap;
    cinfo.err = jpeg_std_error(&trap.mgr);
    trap.mgr.error_exit = jpeg_error_exit_trap;

    if (setjmp(trap.env)) {
        jpeg_destroy_decompress(&cinfo);
        throw CodecError(std::string("JPEG decode failed: ") + trap.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    RasterImage img = RasterImage::create(static_cast<int>(cinfo.output_width),
                                          static_cast<int>(cinfo.output_height), 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = img.pixels.data() +
                       static_cast<size_t>(cinfo.output_scanline) * img.width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

RasterImage single_hop(const RasterImage& image, int quality, Subsampling chroma) {
    return decode_jpeg(encode_jpeg(image, quality, chroma));
}

namespace {

void dump_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

} // namespace

RasterImage transmit(const RasterImage& encrypted, const ChannelConfig& config) {
    RasterImage current = encrypted;
    struct Hop {
        const char* name;
        std::optional<int> quality;
    };
    for (const Hop& hop : {Hop{"user", config.user_quality}, Hop{"sns", config.sns_quality}}) {
        if (!hop.quality) continue;
        try {
            std::vector<uint8_t> bytes = encode_jpeg(current, *hop.quality, config.chroma);
            if (!config.keep_intermediates_prefix.empty())
                dump_bytes(config.keep_intermediates_prefix + "." + hop.name + ".jpg", bytes);
            current = decode_jpeg(bytes);
        } catch (const CodecError& e) {
            throw CodecError(std::string(hop.name) + " hop: " + e.what());
        }
    }
    return current;
}

} // namespace etc
