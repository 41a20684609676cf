#include "freqfuse/matrix.hpp"

#include <cmath>

namespace freqfuse {

std::string_view scaling_mode_name(ScalingMode mode) {
    return mode == ScalingMode::Orthonormal ? "orthonormal" : "paper";
}

ScalingMode scaling_mode_from_name(std::string_view name) {
    if (name == "orthonormal") return ScalingMode::Orthonormal;
    if (name == "paper") return ScalingMode::PaperQuarter;
    throw std::invalid_argument("unknown scaling mode: " + std::string(name));
}

GrayMatrix::GrayMatrix(int h, int w, double fill) : height(h), width(w) {
    if (h <= 0 || w <= 0)
        throw std::invalid_argument("GrayMatrix dimensions must be positive");
    data.assign(static_cast<size_t>(h) * w, fill);
}

Spectrum::Spectrum(int h, int w, ScalingMode mode, double fill)
    : height(h), width(w), scaling(mode) {
    if (h <= 0 || w <= 0)
        throw std::invalid_argument("Spectrum dimensions must be positive");
    coeffs.assign(static_cast<size_t>(h) * w, fill);
}

namespace {

void check(int height, int width, const std::vector<double>& values, const char* what) {
    if (height <= 0 || width <= 0)
        throw std::invalid_argument(std::string(what) + ": dimensions must be positive");
    if (values.size() != static_cast<size_t>(height) * width)
        throw std::invalid_argument(std::string(what) + ": buffer length does not match dimensions");
    for (double v : values) {
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
}

}  // namespace

void require_valid(const GrayMatrix& m, const char* what) { check(m.height, m.width, m.data, what); }
void require_valid(const Spectrum& s, const char* what) { check(s.height, s.width, s.coeffs, what); }

}  // namespace freqfuse
