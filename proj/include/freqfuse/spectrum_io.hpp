#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "freqfuse/matrix.hpp"

namespace freqfuse {

// Spectrum file format, fixed bit-exactly so other implementations can
// interoperate:
//
//   "FFSPEC1 <height> <width> <orthonormal|paper>\n"
//
// followed by height*width IEEE-754 binary64 values, little-endian,
// row-major. Nothing may follow the payload.
std::vector<std::uint8_t> encode_spectrum(const Spectrum& spectrum);
Spectrum decode_spectrum(std::span<const std::uint8_t> bytes);

Spectrum read_spectrum_file(const std::filesystem::path& path);
void write_spectrum_file(const std::filesystem::path& path, const Spectrum& spectrum);

}  // namespace freqfuse
