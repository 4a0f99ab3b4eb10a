#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etc/raster.hpp"

namespace etc {

enum class Subsampling : uint8_t { S444, S420 };

const char* to_string(Subsampling s);
Subsampling subsampling_from_string(const std::string& s);

// The transmission path: user-side JPEG compression of the encrypted image,
// provider-side recompression, decompression at each hop. A nullopt quality
// bypasses that hop losslessly.
struct ChannelConfig {
    std::optional<int> user_quality;
    std::optional<int> sns_quality;
    Subsampling chroma = Subsampling::S420;
    std::string keep_intermediates_prefix; // when non-empty, JFIF dumps per hop
};

RasterImage transmit(const RasterImage& encrypted, const ChannelConfig& config);

// One encode/decode round trip at IJG-convention quality scaling.
RasterImage single_hop(const RasterImage& image, int quality, Subsampling chroma = Subsampling::S420);

// Byte-level codec access, for size measurements and intermediate dumps.
std::vector<uint8_t> encode_jpeg(const RasterImage& image, int quality, Subsampling chroma);
RasterImage decode_jpeg(const std::vector<uint8_t>& bytes);

} // namespace etc
