#include "freqfuse/lowpass.hpp"

#include <cmath>
#include <limits>

namespace freqfuse {

std::string_view lowpass_strategy_name(LowpassStrategy s) {
    return s == LowpassStrategy::Box ? "box" : "gradient";
}

LowpassStrategy lowpass_strategy_from_name(std::string_view name) {
    if (name == "box") return LowpassStrategy::Box;
    if (name == "gradient") return LowpassStrategy::Gradient;
    throw std::invalid_argument("unknown lowpass strategy: " + std::string(name));
}

int box_retained_extent(int dim, double retention_ratio) {
    return static_cast<int>(std::floor(dim * std::sqrt(retention_ratio)));
}

Spectrum box_lowpass(const Spectrum& spectrum, double retention_ratio) {
    require_valid(spectrum, "box_lowpass spectrum");
    if (!(retention_ratio >= 0.0 && retention_ratio <= 1.0))
        throw std::invalid_argument("box_lowpass: retention ratio must be in [0,1]");

    const int keep_rows = box_retained_extent(spectrum.height, retention_ratio);
    const int keep_cols = box_retained_extent(spectrum.width, retention_ratio);

    Spectrum out(spectrum.height, spectrum.width, spectrum.scaling);
    for (int i = 0; i < keep_rows; ++i)
        for (int j = 0; j < keep_cols; ++j)
            out.at(i, j) = spectrum.at(i, j);
    return out;
}

GrayMatrix gradient_magnitudes(const Spectrum& spectrum) {
    require_valid(spectrum, "gradient_magnitudes spectrum");
    const int h = spectrum.height, w = spectrum.width;
    if (h < 2 || w < 2)
        throw std::invalid_argument("gradient_magnitudes: dimensions must be >= 2x2");

    GrayMatrix mags(h, w);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            double gx;  // along columns
            if (j == 0)
                gx = spectrum.at(i, 1) - spectrum.at(i, 0);
            else if (j == w - 1)
                gx = spectrum.at(i, w - 1) - spectrum.at(i, w - 2);
            else
                gx = (spectrum.at(i, j + 1) - spectrum.at(i, j - 1)) / 2.0;

            double gy;  // along rows
            if (i == 0)
                gy = spectrum.at(1, j) - spectrum.at(0, j);
            else if (i == h - 1)
                gy = spectrum.at(h - 1, j) - spectrum.at(h - 2, j);
            else
                gy = (spectrum.at(i + 1, j) - spectrum.at(i - 1, j)) / 2.0;

            mags.at(i, j) = std::sqrt(gx * gx + gy * gy);
        }
    }
    return mags;
}

GradientStats gradient_stats(const GrayMatrix& magnitudes, double sigma_multiplier) {
    const size_t n = magnitudes.size();
    double sum = 0.0;
    for (double v : magnitudes.data) sum += v;
    const double mean = sum / n;

    double sq = 0.0;
    for (double v : magnitudes.data) sq += (v - mean) * (v - mean);
    const double stddev = std::sqrt(sq / n);

    GradientStats stats{mean, stddev, 0.0};
    // k*stddev would be NaN for k = inf on a constant input; the intended
    // limit is an all-pass threshold.
    stats.threshold = std::isinf(sigma_multiplier)
                          ? std::numeric_limits<double>::infinity()
                          : mean + sigma_multiplier * stddev;
    return stats;
}

Spectrum gradient_lowpass(const Spectrum& spectrum, double sigma_multiplier) {
    if (!(sigma_multiplier >= 0.0))
        throw std::invalid_argument("gradient_lowpass: sigma multiplier must be >= 0");
    const GrayMatrix mags = gradient_magnitudes(spectrum);
    const GradientStats stats = gradient_stats(mags, sigma_multiplier);

    Spectrum out = spectrum;
    for (size_t idx = 0; idx < out.size(); ++idx)
        if (mags.data[idx] > stats.threshold) out.coeffs[idx] = 0.0;
    return out;
}

Spectrum apply_lowpass(const Spectrum& spectrum, const LowpassParams& params) {
    return params.strategy == LowpassStrategy::Box
               ? box_lowpass(spectrum, params.retention_ratio)
               : gradient_lowpass(spectrum, params.sigma_multiplier);
}

long long count_retained(const Spectrum& before, const Spectrum& after) {
    if (before.height != after.height || before.width != after.width)
        throw std::invalid_argument("count_retained: dimension mismatch");
    long long count = 0;
    for (size_t idx = 0; idx < before.size(); ++idx)
        if (after.coeffs[idx] == before.coeffs[idx] && after.coeffs[idx] != 0.0) ++count;
    return count;
}

}  // namespace freqfuse
