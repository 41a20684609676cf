#pragma once

#include "freqfuse/matrix.hpp"

namespace freqfuse {

enum class LowpassStrategy { Box, Gradient };

std::string_view lowpass_strategy_name(LowpassStrategy s);
LowpassStrategy lowpass_strategy_from_name(std::string_view name);

struct LowpassParams {
    LowpassStrategy strategy = LowpassStrategy::Box;
    double retention_ratio = 0.15;  // Box: kept area fraction, in [0,1]
    double sigma_multiplier = 2.0;  // Gradient: threshold = mean + k*stddev, k >= 0
};

struct GradientStats {
    double mean = 0.0;
    double stddev = 0.0;  // population stddev over all H*W magnitudes
    double threshold = 0.0;
};

// Keep coefficient (i,j) iff i < floor(h*sqrt(r)) and j < floor(w*sqrt(r));
// everything else is zeroed. sqrt(r) per axis makes r the retained area
// fraction. Scaling tag is preserved. Throws if r is outside [0,1].
Spectrum box_lowpass(const Spectrum& spectrum, double retention_ratio);

// Retained per-axis bound floor(dim*sqrt(r)) of the box mask.
int box_retained_extent(int dim, double retention_ratio);

// Gradient magnitude sqrt(gx^2 + gy^2) of the coefficient matrix, with
// central differences in the interior and one-sided differences at the
// borders (x along columns, y along rows, unit spacing). Requires dims >= 2x2.
GrayMatrix gradient_magnitudes(const Spectrum& spectrum);

// Mean, population stddev and threshold mean + k*stddev over all magnitudes.
// An infinite k yields an infinite threshold even when stddev is zero.
GradientStats gradient_stats(const GrayMatrix& magnitudes, double sigma_multiplier);

// Zero every coefficient whose gradient magnitude exceeds the threshold;
// others pass through unchanged. Requires dims >= 2x2 and k >= 0.
Spectrum gradient_lowpass(const Spectrum& spectrum, double sigma_multiplier);

Spectrum apply_lowpass(const Spectrum& spectrum, const LowpassParams& params);

// Positions where `after` equals `before` and is not zero. Exact-zero cells
// are excluded: a masked zero is indistinguishable from a preserved one.
long long count_retained(const Spectrum& before, const Spectrum& after);

}  // namespace freqfuse
