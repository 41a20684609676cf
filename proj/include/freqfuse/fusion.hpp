#pragma once

#include "freqfuse/lowpass.hpp"
#include "freqfuse/matrix.hpp"
#include "freqfuse/pnm.hpp"

namespace freqfuse {

// AddClamp adds the low-frequency reconstruction onto the original image and
// clamps to [0,1]; Average blends the two halves equally.
enum class CombineMode { AddClamp, Average };

std::string_view combine_mode_name(CombineMode mode);
CombineMode combine_mode_from_name(std::string_view name);

struct FusionParams {
    LowpassParams lowpass;
    CombineMode combine = CombineMode::AddClamp;
    ScalingMode scaling = ScalingMode::Orthonormal;
};

// Fused result plus the parameters that produced it, so experiment outputs
// stay labeled.
struct FusedImage {
    GrayMatrix image;
    FusionParams params;
};

// idct(lowpass(dct(image))): the low-frequency branch of the pipeline.
// Values may fall outside [0,1]; no clamping happens at this stage.
GrayMatrix reconstruct_lowfreq(const GrayMatrix& image, const FusionParams& params);

// Combine the original image with its low-frequency reconstruction. Output
// values are clamped to [0,1] in both combine modes and dimensions are
// preserved.
FusedImage fuse(const GrayMatrix& image, const FusionParams& params);

// Whole-pipeline entry point: fusion applied independently per channel,
// then re-quantized to 8 bits. Channel count and dimensions are preserved.
PixelImage preprocess(const PixelImage& image, const FusionParams& params);

}  // namespace freqfuse
