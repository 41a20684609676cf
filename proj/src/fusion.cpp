#include "freqfuse/fusion.hpp"

#include <algorithm>

#include "freqfuse/dct.hpp"

namespace freqfuse {

std::string_view combine_mode_name(CombineMode mode) {
    return mode == CombineMode::AddClamp ? "addclamp" : "average";
}

CombineMode combine_mode_from_name(std::string_view name) {
    if (name == "addclamp") return CombineMode::AddClamp;
    if (name == "average") return CombineMode::Average;
    throw std::invalid_argument("unknown combine mode: " + std::string(name));
}

GrayMatrix reconstruct_lowfreq(const GrayMatrix& image, const FusionParams& params) {
    const Spectrum spectrum = dct2_forward(image, params.scaling);
    const Spectrum filtered = apply_lowpass(spectrum, params.lowpass);
    return dct2_inverse(filtered, params.scaling);
}

FusedImage fuse(const GrayMatrix& image, const FusionParams& params) {
    const GrayMatrix recon = reconstruct_lowfreq(image, params);

    GrayMatrix out(image.height, image.width);
    for (size_t idx = 0; idx < out.size(); ++idx) {
        const double combined = params.combine == CombineMode::AddClamp
                                    ? image.data[idx] + recon.data[idx]
                                    : 0.5 * image.data[idx] + 0.5 * recon.data[idx];
        out.data[idx] = std::clamp(combined, 0.0, 1.0);
    }
    return FusedImage{std::move(out), params};
}

PixelImage preprocess(const PixelImage& image, const FusionParams& params) {
    if (image.channels != 1 && image.channels != 3)
        throw std::invalid_argument("preprocess: only 1- or 3-channel images supported");

    std::vector<GrayMatrix> channels = to_unit_interval(image);
    for (GrayMatrix& channel : channels) channel = fuse(channel, params).image;
    return from_unit_interval(channels);
}

}  // namespace freqfuse
