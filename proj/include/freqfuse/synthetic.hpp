#pragma once

#include <cstdint>
#include <filesystem>

namespace freqfuse {

// Synthetic few-shot dataset built directly in the coefficient domain:
// every class is a fixed random pattern of low-frequency DCT coefficients,
// every image adds per-image jitter on those coefficients plus i.i.d.
// noise on the high-frequency coefficients (outside the block a box
// low-pass with the default retention ratio keeps). Images are written as
// 8-bit PGMs plus a manifest, fully determined by the seed.
struct SyntheticParams {
    int n_classes = 10;
    int images_per_class = 30;
    int height = 84;
    int width = 84;
    int pattern_band = 8;      // pattern lives at u,v < pattern_band, (0,0) excluded
    int noise_band = 32;       // noise lives at u >= noise_band or v >= noise_band
    double base_level = 0.30;  // DC brightness of every image
    double pattern_amplitude = 0.22;
    double pattern_jitter = 0.077;
    double noise_sigma = 0.20;
    std::uint64_t seed = 7;
};

// Writes <dir>/class_##_img_##.pgm and <dir>/manifest.tsv; returns the
// manifest path.
std::filesystem::path generate_synthetic_dataset(const std::filesystem::path& dir,
                                                 const SyntheticParams& params);

}  // namespace freqfuse
