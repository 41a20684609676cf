#include "freqfuse/dct.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace freqfuse {

namespace {

constexpr size_t kOracleMaxCells = 64 * 64;

// Per-axis scale factor. The 2-D prefactor is the product of the two axis
// scales times C(u)*C(v): orthonormal sqrt(2/N)*sqrt(2/M) = 2/sqrt(N*M),
// paper (1/2)*(1/2) = 1/4.
double axis_scale(int n, ScalingMode mode) {
    return mode == ScalingMode::Orthonormal ? std::sqrt(2.0 / n) : 0.5;
}

// cos((2j+1) k pi / (2n)) for k (frequency) major, j (sample) minor.
std::vector<double> cosine_table(int n) {
    std::vector<double> table(static_cast<size_t>(n) * n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            table[static_cast<size_t>(k) * n + j] =
                std::cos((2 * j + 1) * k * std::numbers::pi / (2.0 * n));
    return table;
}

// 1-D DCT-II of `n` samples read at `stride` from `in`, written at `stride`
// to `out`: out[k] = scale * C(k) * sum_j in[j] cos((2j+1) k pi / (2n)).
void forward_pass(const double* in, double* out, int n, size_t stride,
                  const std::vector<double>& table, double scale) {
    for (int k = 0; k < n; ++k) {
        const double* row = table.data() + static_cast<size_t>(k) * n;
        double sum = 0.0;
        for (int j = 0; j < n; ++j) sum += in[j * stride] * row[j];
        out[k * stride] = scale * normalization_coefficient(k) * sum;
    }
}

// 1-D DCT-III (inverse): out[j] = scale * sum_k C(k) in[k] cos((2j+1) k pi / (2n)).
void inverse_pass(const double* in, double* out, int n, size_t stride,
                  const std::vector<double>& table, double scale) {
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k)
            sum += normalization_coefficient(k) * in[k * stride] *
                   table[static_cast<size_t>(k) * n + j];
        out[j * stride] = scale * sum;
    }
}

void check_oracle_size(int height, int width) {
    if (static_cast<size_t>(height) * width > kOracleMaxCells)
        throw std::invalid_argument("naive oracle limited to height*width <= 64*64");
}

}  // namespace

double normalization_coefficient(int index) {
    if (index < 0) throw std::invalid_argument("normalization_coefficient: negative index");
    return index == 0 ? std::numbers::sqrt2 / 2.0 : 1.0;
}

Spectrum dct2_forward(const GrayMatrix& image, ScalingMode mode) {
    require_valid(image, "dct2_forward image");
    const int h = image.height, w = image.width;
    const std::vector<double> row_table = cosine_table(w);
    const std::vector<double> col_table = h == w ? row_table : cosine_table(h);
    const double row_scale = axis_scale(w, mode);
    const double col_scale = axis_scale(h, mode);

    // Rows first (transform along x for each y), then columns of the result.
    GrayMatrix mid(h, w);
    for (int y = 0; y < h; ++y)
        forward_pass(&image.data[static_cast<size_t>(y) * w], &mid.data[static_cast<size_t>(y) * w],
                     w, 1, row_table, row_scale);

    Spectrum out(h, w, mode);
    for (int u = 0; u < w; ++u)
        forward_pass(&mid.data[u], &out.coeffs[u], h, w, col_table, col_scale);
    return out;
}

GrayMatrix dct2_inverse(const Spectrum& spectrum, ScalingMode mode) {
    require_valid(spectrum, "dct2_inverse spectrum");
    if (spectrum.scaling != mode)
        throw std::invalid_argument("dct2_inverse: scaling mode does not match spectrum tag");
    const int h = spectrum.height, w = spectrum.width;
    const std::vector<double> row_table = cosine_table(w);
    const std::vector<double> col_table = h == w ? row_table : cosine_table(h);
    const double row_scale = axis_scale(w, mode);
    const double col_scale = axis_scale(h, mode);

    GrayMatrix mid(h, w);
    for (int u = 0; u < w; ++u)
        inverse_pass(&spectrum.coeffs[u], &mid.data[u], h, w, col_table, col_scale);

    GrayMatrix out(h, w);
    for (int y = 0; y < h; ++y)
        inverse_pass(&mid.data[static_cast<size_t>(y) * w], &out.data[static_cast<size_t>(y) * w],
                     w, 1, row_table, row_scale);
    return out;
}

Spectrum dct2_naive_oracle(const GrayMatrix& image, ScalingMode mode) {
    require_valid(image, "dct2_naive_oracle image");
    check_oracle_size(image.height, image.width);
    const int h = image.height, w = image.width;  // M = h, N = w
    const double prefactor = mode == ScalingMode::Orthonormal ? 2.0 / std::sqrt(double(h) * w) : 0.25;

    Spectrum out(h, w, mode);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            double sum = 0.0;
            for (int y = 0; y < h; ++y) {
                const double cy = std::cos((2 * y + 1) * v * std::numbers::pi / (2.0 * h));
                for (int x = 0; x < w; ++x) {
                    const double cx = std::cos((2 * x + 1) * u * std::numbers::pi / (2.0 * w));
                    sum += image.at(y, x) * cx * cy;
                }
            }
            out.at(v, u) = prefactor * normalization_coefficient(u) *
                           normalization_coefficient(v) * sum;
        }
    }
    return out;
}

GrayMatrix idct2_naive_oracle(const Spectrum& spectrum, ScalingMode mode) {
    require_valid(spectrum, "idct2_naive_oracle spectrum");
    if (spectrum.scaling != mode)
        throw std::invalid_argument("idct2_naive_oracle: scaling mode does not match spectrum tag");
    check_oracle_size(spectrum.height, spectrum.width);
    const int h = spectrum.height, w = spectrum.width;
    const double prefactor = mode == ScalingMode::Orthonormal ? 2.0 / std::sqrt(double(h) * w) : 0.25;

    GrayMatrix out(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double sum = 0.0;
            for (int v = 0; v < h; ++v) {
                const double cy = std::cos((2 * y + 1) * v * std::numbers::pi / (2.0 * h));
                for (int u = 0; u < w; ++u) {
                    const double cx = std::cos((2 * x + 1) * u * std::numbers::pi / (2.0 * w));
                    sum += normalization_coefficient(u) * normalization_coefficient(v) *
                           spectrum.at(v, u) * cx * cy;
                }
            }
            out.at(y, x) = prefactor * sum;
        }
    }
    return out;
}

}  // namespace freqfuse
