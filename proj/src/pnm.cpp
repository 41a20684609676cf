#include "freqfuse/pnm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

namespace freqfuse {

PixelImage::PixelImage(int h, int w, int c, std::uint8_t fill) : height(h), width(w), channels(c) {
    if (h <= 0 || w <= 0)
        throw std::invalid_argument("PixelImage dimensions must be positive");
    if (c != 1 && c != 3)
        throw std::invalid_argument("PixelImage must have 1 or 3 channels");
    samples.assign(static_cast<size_t>(h) * w * c, fill);
}

namespace {

bool is_pnm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Reads the next header token, skipping whitespace and # comments.
std::string next_token(std::span<const std::uint8_t> bytes, size_t& pos) {
    while (pos < bytes.size()) {
        if (is_pnm_space(bytes[pos])) {
            ++pos;
        } else if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    std::string token;
    while (pos < bytes.size() && !is_pnm_space(bytes[pos]) && bytes[pos] != '#')
        token.push_back(static_cast<char>(bytes[pos++]));
    if (token.empty()) throw PnmError(PnmError::Kind::Truncated, "pnm: header ended early");
    return token;
}

int parse_header_int(std::span<const std::uint8_t> bytes, size_t& pos, const char* what) {
    const std::string token = next_token(bytes, pos);
    size_t consumed = 0;
    int value = 0;
    try {
        value = std::stoi(token, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != token.size() || value <= 0)
        throw PnmError(PnmError::Kind::BadHeader,
                       std::string("pnm: bad ") + what + " '" + token + "'");
    return value;
}

}  // namespace

PixelImage read_pnm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        throw PnmError(PnmError::Kind::BadMagic, "pnm: expected P5 or P6 magic");
    const int channels = bytes[1] == '5' ? 1 : 3;
    size_t pos = 2;

    const int width = parse_header_int(bytes, pos, "width");
    const int height = parse_header_int(bytes, pos, "height");
    const int maxval = parse_header_int(bytes, pos, "maxval");
    if (maxval != 255)
        throw PnmError(PnmError::Kind::UnsupportedMaxval,
                       "pnm: only maxval 255 supported, got " + std::to_string(maxval));

    // Exactly one whitespace byte separates the header from the payload.
    if (pos >= bytes.size() || !is_pnm_space(bytes[pos]))
        throw PnmError(PnmError::Kind::BadHeader, "pnm: missing separator before payload");
    ++pos;

    PixelImage image(height, width, channels);
    if (bytes.size() - pos < image.samples.size())
        throw PnmError(PnmError::Kind::Truncated,
                       "pnm: payload truncated, expected " + std::to_string(image.samples.size()) +
                           " bytes, got " + std::to_string(bytes.size() - pos));
    std::copy_n(bytes.begin() + pos, image.samples.size(), image.samples.begin());
    return image;
}

std::vector<std::uint8_t> write_pnm(const PixelImage& image) {
    if (image.samples.size() != static_cast<size_t>(image.height) * image.width * image.channels)
        throw std::invalid_argument("write_pnm: sample buffer does not match dimensions");
    std::string header = std::string(image.channels == 1 ? "P5" : "P6") + " " +
                         std::to_string(image.width) + " " + std::to_string(image.height) +
                         " 255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.samples.begin(), image.samples.end());
    return out;
}

PixelImage read_pnm_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return read_pnm(bytes);
}

void write_pnm_file(const std::filesystem::path& path, const PixelImage& image) {
    const std::vector<std::uint8_t> bytes = write_pnm(image);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

std::vector<GrayMatrix> to_unit_interval(const PixelImage& image) {
    std::vector<GrayMatrix> channels;
    channels.reserve(image.channels);
    for (int c = 0; c < image.channels; ++c) {
        GrayMatrix m(image.height, image.width);
        for (size_t px = 0; px < m.size(); ++px)
            m.data[px] = image.samples[px * image.channels + c] / 255.0;
        channels.push_back(std::move(m));
    }
    return channels;
}

PixelImage from_unit_interval(const std::vector<GrayMatrix>& channels) {
    if (channels.empty() || (channels.size() != 1 && channels.size() != 3))
        throw std::invalid_argument("from_unit_interval: expected 1 or 3 channels");
    for (const GrayMatrix& m : channels) {
        require_valid(m, "from_unit_interval channel");
        if (m.height != channels[0].height || m.width != channels[0].width)
            throw std::invalid_argument("from_unit_interval: channel dimensions differ");
    }

    PixelImage image(channels[0].height, channels[0].width, static_cast<int>(channels.size()));
    for (size_t c = 0; c < channels.size(); ++c) {
        for (size_t px = 0; px < channels[c].size(); ++px) {
            const double scaled = std::round(channels[c].data[px] * 255.0);
            const double clamped = std::min(255.0, std::max(0.0, scaled));
            image.samples[px * channels.size() + c] = static_cast<std::uint8_t>(clamped);
        }
    }
    return image;
}

GrayMatrix to_gray(const PixelImage& image) {
    GrayMatrix m(image.height, image.width);
    if (image.channels == 1) {
        for (size_t px = 0; px < m.size(); ++px) m.data[px] = image.samples[px] / 255.0;
    } else {
        for (size_t px = 0; px < m.size(); ++px) {
            const std::uint8_t* rgb = &image.samples[px * 3];
            m.data[px] = (0.299 * rgb[0] + 0.587 * rgb[1] + 0.114 * rgb[2]) / 255.0;
        }
    }
    return m;
}

}  // namespace freqfuse
