#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace freqfuse {

// Normalization applied to the 2-D DCT.
//
// Orthonormal uses the (2/sqrt(N*M))*C(u)*C(v) prefactor, which makes the
// forward transform an isometry and the inverse exact for any dimensions.
// PaperQuarter uses a literal 1/4 prefactor in both directions; forward and
// inverse are mutual inverses only at 8x8, where the two modes coincide.
enum class ScalingMode { Orthonormal, PaperQuarter };

std::string_view scaling_mode_name(ScalingMode mode);
ScalingMode scaling_mode_from_name(std::string_view name);

// Single-channel spatial-domain image, row-major, nominal value range [0,1].
struct GrayMatrix {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    GrayMatrix() = default;
    GrayMatrix(int h, int w, double fill = 0.0);

    double& at(int row, int col) { return data[static_cast<size_t>(row) * width + col]; }
    double at(int row, int col) const { return data[static_cast<size_t>(row) * width + col]; }
    size_t size() const { return data.size(); }
};

// DCT coefficient matrix, row-major. Row index is the vertical frequency v,
// column index the horizontal frequency u. The scaling tag records which
// prefactor produced the coefficients and must match at inverse time.
struct Spectrum {
    int height = 0;
    int width = 0;
    ScalingMode scaling = ScalingMode::Orthonormal;
    std::vector<double> coeffs;

    Spectrum() = default;
    Spectrum(int h, int w, ScalingMode mode, double fill = 0.0);

    double& at(int row, int col) { return coeffs[static_cast<size_t>(row) * width + col]; }
    double at(int row, int col) const { return coeffs[static_cast<size_t>(row) * width + col]; }
    size_t size() const { return coeffs.size(); }
};

// Throw std::invalid_argument if dims are non-positive, the buffer length
// does not match, or any value is NaN/Inf. `what` names the offending input
// in the message.
void require_valid(const GrayMatrix& m, const char* what);
void require_valid(const Spectrum& s, const char* what);

}  // namespace freqfuse
