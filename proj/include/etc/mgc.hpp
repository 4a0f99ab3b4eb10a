#pragma once

#include <cstdint>
#include <vector>

#include "etc/raster.hpp"

namespace etc {

// Mean and inverse covariance of a piece's boundary gradient distribution.
// inv is the 3x3 inverse packed symmetric: xx, xy, xz, yy, yz, zz.
struct EdgeStats {
    double mean[3] = {0, 0, 0};
    double inv[6] = {0, 0, 0, 0, 0, 0};
};

// Fits the gradient distribution of one edge: samples are boundary - inner per
// row, plus the dummy gradients (0,0,0) and +-(1,1,1) so constant edges stay
// nonsingular. The covariance gets a ridge of 1e-6 times the mean channel
// variance. `boundary` and `inner` are rows*3 interleaved samples.
EdgeStats compute_edge_stats(const uint8_t* boundary, const uint8_t* inner, int rows);

// Sum over rows of the Mahalanobis distance of the cross-boundary gradient
// (other - self) against the fitted stats.
double directional_cost(const EdgeStats& stats, const uint8_t* self_boundary,
                        const uint8_t* other_boundary, int rows);

// MGC cost of butting `left`'s right side against `right`'s left side: both
// directional terms summed. Zero is the floor (e.g. identical constant blocks).
double mgc_cost(const RasterImage& left, const RasterImage& right);

} // namespace etc
