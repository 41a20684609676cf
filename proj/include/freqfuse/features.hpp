#pragma once

#include <vector>

#include "freqfuse/pnm.hpp"

namespace freqfuse {

using FeatureVector = std::vector<double>;

enum class ExtractorKind { DownsampledPixels, BlockDctEnergy };

std::string_view extractor_kind_name(ExtractorKind kind);
ExtractorKind extractor_kind_from_name(std::string_view name);

struct ExtractorConfig {
    ExtractorKind kind = ExtractorKind::DownsampledPixels;

    // DownsampledPixels: grayscale, mean-pool to target dims, flatten,
    // L2-normalize.
    int target_height = 84;
    int target_width = 84;

    // BlockDctEnergy: per non-overlapping block, energy per leading
    // anti-diagonal band u+v = b for b < bands, concatenated over blocks,
    // L2-normalized.
    int block_size = 8;
    int bands = 3;
};

// Throws if the image is smaller than the target/block dims.
FeatureVector extract_features(const PixelImage& image, const ExtractorConfig& config);

double euclidean_distance(const FeatureVector& a, const FeatureVector& b);

}  // namespace freqfuse
