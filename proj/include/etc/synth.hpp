#pragma once

#include <string>
#include <utility>
#include <vector>

#include "etc/raster.hpp"

namespace etc {

// Deterministic test imagery. The suite stands in for photographic inputs:
// multi-octave value noise through a random palette gives images with strong
// local correlation, smooth regions and varied texture.
RasterImage gradient_image(int width, int height, uint64_t seed);
RasterImage value_noise_image(int width, int height, uint64_t seed);

std::vector<std::pair<std::string, RasterImage>> fixture_suite(uint64_t seed, int count = 5,
                                                               int width = 672, int height = 480);

} // namespace etc
