#include "etc/mgc.hpp"

namespace etc {

EdgeStats compute_edge_stats(const uint8_t* boundary, const uint8_t* inner, int rows) {
    // dummy gradients appended to the row samples
    static const double kDummy[3][3] = {{0, 0, 0}, {1, 1, 1}, {-1, -1, -1}};
    const int m = rows + 3;

    double sum[3] = {0, 0, 0};
    for (int p = 0; p < rows; ++p) {
        for (int c = 0; c < 3; ++c)
            sum[c] += double(boundary[p * 3 + c]) - double(inner[p * 3 + c]);
    }
    // dummies sum to zero per channel
    EdgeStats s;
    for (int c = 0; c < 3; ++c) s.mean[c] = sum[c] / m;

    double cov[6] = {0, 0, 0, 0, 0, 0}; // xx, xy, xz, yy, yz, zz
    auto accumulate = [&cov, &s](double g0, double g1, double g2) {
        double d0 = g0 - s.mean[0];
        double d1 = g1 - s.mean[1];
        double d2 = g2 - s.mean[2];
        cov[0] += d0 * d0;
        cov[1] += d0 * d1;
        cov[2] += d0 * d2;
        cov[3] += d1 * d1;
        cov[4] += d1 * d2;
        cov[5] += d2 * d2;
    };
    for (int p = 0; p < rows; ++p) {
        accumulate(double(boundary[p * 3 + 0]) - double(inner[p * 3 + 0]),
                   double(boundary[p * 3 + 1]) - double(inner[p * 3 + 1]),
                   double(boundary[p * 3 + 2]) - double(inner[p * 3 + 2]));
    }
    for (const auto& d : kDummy) accumulate(d[0], d[1], d[2]);
    for (double& v : cov) v /= m;

    const double ridge = 1e-6 * (cov[0] + cov[3] + cov[5]) / 3.0;
    cov[0] += ridge;
    cov[3] += ridge;
    cov[5] += ridge;

    // closed-form symmetric 3x3 inverse; the dummies guarantee a positive
    // determinant on any 8-bit input
    const double a = cov[0], b = cov[1], c = cov[2], d = cov[3], e = cov[4], f = cov[5];
    double det = a * (d * f - e * e) - b * (b * f - c * e) + c * (b * e - c * d);
    if (!(det > 0)) det = 1e-300;
    const double id = 1.0 / det;
    s.inv[0] = (d * f - e * e) * id;
    s.inv[1] = (c * e - b * f) * id;
    s.inv[2] = (b * e - c * d) * id;
    s.inv[3] = (a * f - c * c) * id;
    s.inv[4] = (b * c - a * e) * id;
    s.inv[5] = (a * d - b * b) * id;
    return s;
}

double directional_cost(const EdgeStats& stats, const uint8_t* self_boundary,
                        const uint8_t* other_boundary, int rows) {
    double acc = 0.0;
    for (int p = 0; p < rows; ++p) {
        double d0 = double(other_boundary[p * 3 + 0]) - double(self_boundary[p * 3 + 0]) - stats.mean[0];
        double d1 = double(other_boundary[p * 3 + 1]) - double(self_boundary[p * 3 + 1]) - stats.mean[1];
        double d2 = double(other_boundary[p * 3 + 2]) - double(self_boundary[p * 3 + 2]) - stats.mean[2];
        acc += d0 * d0 * stats.inv[0] + d1 * d1 * stats.inv[3] + d2 * d2 * stats.inv[5] +
               2.0 * (d0 * d1 * stats.inv[1] + d0 * d2 * stats.inv[2] + d1 * d2 * stats.inv[4]);
    }
    return acc;
}

namespace {

void extract_column(const RasterImage& img, int x, std::vector<uint8_t>& out) {
    out.resize(static_cast<size_t>(img.height) * 3);
    for (int y = 0; y < img.height; ++y)
        for (int c = 0; c < 3; ++c) out[static_cast<size_t>(y) * 3 + c] = img.at(x, y, c);
}

} // namespace

double mgc_cost(const RasterImage& left, const RasterImage& right) {
    if (left.width != right.width || left.height != right.height)
        throw DimensionError("MGC requires same-size pieces");
    if (left.channels != 3 || right.channels != 3)
        throw DimensionError("MGC requires 3-channel pieces");
    if (left.width < 2)
        throw DimensionError("MGC requires pieces at least 2 pixels wide");

    std::vector<uint8_t> lb, li, rb, ri;
    extract_column(left, left.width - 1, lb);
    extract_column(left, left.width - 2, li);
    extract_column(right, 0, rb);
    extract_column(right, 1, ri);

    EdgeStats ls = compute_edge_stats(lb.data(), li.data(), left.height);
    EdgeStats rs = compute_edge_stats(rb.data(), ri.data(), right.height);
    return directional_cost(ls, lb.data(), rb.data(), left.height) +
           directional_cost(rs, rb.data(), lb.data(), left.height);
}

} // namespace etc
