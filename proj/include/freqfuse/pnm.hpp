#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "freqfuse/matrix.hpp"

namespace freqfuse {

// 8-bit pixel image, row-major, channels interleaved. channels is 1 (gray)
// or 3 (RGB).
struct PixelImage {
    int height = 0;
    int width = 0;
    int channels = 1;
    std::vector<std::uint8_t> samples;

    PixelImage() = default;
    PixelImage(int h, int w, int c, std::uint8_t fill = 0);
};

class PnmError : public std::runtime_error {
public:
    enum class Kind { BadMagic, BadHeader, UnsupportedMaxval, Truncated };

    PnmError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Binary PGM (P5) / PPM (P6), maxval 255 only. Header comments (#) and
// arbitrary whitespace are accepted per the netpbm convention.
PixelImage read_pnm(std::span<const std::uint8_t> bytes);

// Canonical serialization: "P5 <w> <h> 255\n" (single spaces, no comments)
// followed by the raw payload. read_pnm(write_pnm(x)) == x bitwise.
std::vector<std::uint8_t> write_pnm(const PixelImage& image);

PixelImage read_pnm_file(const std::filesystem::path& path);
void write_pnm_file(const std::filesystem::path& path, const PixelImage& image);

// Deinterleave into one [0,1] matrix per channel, v_real = v_int / 255.
std::vector<GrayMatrix> to_unit_interval(const PixelImage& image);

// Inverse conversion: round half away from zero, then clamp to [0,255].
// Values outside [0,1] are clamped, not rejected.
PixelImage from_unit_interval(const std::vector<GrayMatrix>& channels);

// Single-channel view: gray images pass through, RGB is reduced with luma
// weights 0.299/0.587/0.114.
GrayMatrix to_gray(const PixelImage& image);

}  // namespace freqfuse
