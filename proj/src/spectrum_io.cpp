#include "freqfuse/spectrum_io.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <string>

namespace freqfuse {

namespace {

void append_le64(std::vector<std::uint8_t>& out, double value) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
    for (int byte = 0; byte < 8; ++byte)
        out.push_back(static_cast<std::uint8_t>(bits >> (8 * byte)));
}

double read_le64(const std::uint8_t* p) {
    std::uint64_t bits = 0;
    for (int byte = 0; byte < 8; ++byte) bits |= static_cast<std::uint64_t>(p[byte]) << (8 * byte);
    return std::bit_cast<double>(bits);
}

}  // namespace

std::vector<std::uint8_t> encode_spectrum(const Spectrum& spectrum) {
    require_valid(spectrum, "encode_spectrum spectrum");
    const std::string header = "FFSPEC1 " + std::to_string(spectrum.height) + " " +
                               std::to_string(spectrum.width) + " " +
                               std::string(scaling_mode_name(spectrum.scaling)) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + spectrum.size() * 8);
    for (double c : spectrum.coeffs) append_le64(out, c);
    return out;
}

Spectrum decode_spectrum(std::span<const std::uint8_t> bytes) {
    const auto newline = std::find(bytes.begin(), bytes.end(), std::uint8_t('\n'));
    if (newline == bytes.end()) throw std::runtime_error("spectrum file: missing header line");
    const std::string header(bytes.begin(), newline);

    std::istringstream in(header);
    std::string magic, scaling;
    long long height = 0, width = 0;
    in >> magic >> height >> width >> scaling;
    if (!in || magic != "FFSPEC1")
        throw std::runtime_error("spectrum file: bad header '" + header + "'");
    if (height <= 0 || width <= 0)
        throw std::runtime_error("spectrum file: non-positive dimensions");

    Spectrum spectrum(static_cast<int>(height), static_cast<int>(width),
                      scaling_mode_from_name(scaling));
    const size_t payload_offset = static_cast<size_t>(newline - bytes.begin()) + 1;
    const size_t expected = spectrum.size() * 8;
    if (bytes.size() - payload_offset != expected)
        throw std::runtime_error("spectrum file: payload is " +
                                 std::to_string(bytes.size() - payload_offset) +
                                 " bytes, expected " + std::to_string(expected));
    for (size_t i = 0; i < spectrum.size(); ++i)
        spectrum.coeffs[i] = read_le64(bytes.data() + payload_offset + i * 8);
    return spectrum;
}

Spectrum read_spectrum_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_spectrum(bytes);
}

void write_spectrum_file(const std::filesystem::path& path, const Spectrum& spectrum) {
    const std::vector<std::uint8_t> bytes = encode_spectrum(spectrum);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

}  // namespace freqfuse
