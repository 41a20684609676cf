#include "freqfuse/features.hpp"

#include <cmath>
#include <stdexcept>

#include "freqfuse/dct.hpp"

namespace freqfuse {

std::string_view extractor_kind_name(ExtractorKind kind) {
    return kind == ExtractorKind::DownsampledPixels ? "pixels" : "blockdct";
}

ExtractorKind extractor_kind_from_name(std::string_view name) {
    if (name == "pixels") return ExtractorKind::DownsampledPixels;
    if (name == "blockdct") return ExtractorKind::BlockDctEnergy;
    throw std::invalid_argument("unknown extractor: " + std::string(name));
}

namespace {

void l2_normalize(FeatureVector& v) {
    double sq = 0.0;
    for (double x : v) sq += x * x;
    const double norm = std::sqrt(sq);
    if (norm > 0.0)
        for (double& x : v) x /= norm;
}

FeatureVector downsampled_pixels(const GrayMatrix& gray, int target_h, int target_w) {
    if (gray.height < target_h || gray.width < target_w)
        throw std::invalid_argument("extract_features: image smaller than target dims");

    FeatureVector features(static_cast<size_t>(target_h) * target_w);
    for (int ty = 0; ty < target_h; ++ty) {
        const int y0 = static_cast<int>(static_cast<long long>(ty) * gray.height / target_h);
        const int y1 = static_cast<int>(static_cast<long long>(ty + 1) * gray.height / target_h);
        for (int tx = 0; tx < target_w; ++tx) {
            const int x0 = static_cast<int>(static_cast<long long>(tx) * gray.width / target_w);
            const int x1 = static_cast<int>(static_cast<long long>(tx + 1) * gray.width / target_w);
            double sum = 0.0;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) sum += gray.at(y, x);
            features[static_cast<size_t>(ty) * target_w + tx] =
                sum / (static_cast<double>(y1 - y0) * (x1 - x0));
        }
    }
    return features;
}

FeatureVector block_dct_energy(const GrayMatrix& gray, int block, int bands) {
    if (gray.height < block || gray.width < block)
        throw std::invalid_argument("extract_features: image smaller than block dims");

    const int blocks_y = gray.height / block;
    const int blocks_x = gray.width / block;
    FeatureVector features;
    features.reserve(static_cast<size_t>(blocks_y) * blocks_x * bands);

    GrayMatrix tile(block, block);
    for (int by = 0; by < blocks_y; ++by) {
        for (int bx = 0; bx < blocks_x; ++bx) {
            for (int y = 0; y < block; ++y)
                for (int x = 0; x < block; ++x)
                    tile.at(y, x) = gray.at(by * block + y, bx * block + x);
            const Spectrum spec = dct2_forward(tile, ScalingMode::Orthonormal);

            for (int band = 0; band < bands; ++band) {
                double energy = 0.0;
                for (int v = 0; v <= band && v < block; ++v) {
                    const int u = band - v;
                    if (u < block) energy += spec.at(v, u) * spec.at(v, u);
                }
                features.push_back(energy);
            }
        }
    }
    return features;
}

}  // namespace

FeatureVector extract_features(const PixelImage& image, const ExtractorConfig& config) {
    const GrayMatrix gray = to_gray(image);
    FeatureVector features =
        config.kind == ExtractorKind::DownsampledPixels
            ? downsampled_pixels(gray, config.target_height, config.target_width)
            : block_dct_energy(gray, config.block_size, config.bands);
    l2_normalize(features);
    return features;
}

double euclidean_distance(const FeatureVector& a, const FeatureVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("euclidean_distance: dimensionality mismatch");
    double sq = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

}  // namespace freqfuse
