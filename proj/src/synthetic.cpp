#include "freqfuse/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "freqfuse/dct.hpp"
#include "freqfuse/pnm.hpp"
#include "freqfuse/rng.hpp"

namespace freqfuse {

std::filesystem::path generate_synthetic_dataset(const std::filesystem::path& dir,
                                                 const SyntheticParams& p) {
    if (p.n_classes < 2 || p.images_per_class < 1)
        throw std::invalid_argument("generate_synthetic_dataset: need >= 2 classes, >= 1 image each");
    if (p.pattern_band < 2 || p.pattern_band > p.noise_band || p.noise_band > p.height ||
        p.noise_band > p.width)
        throw std::invalid_argument("generate_synthetic_dataset: bands out of range");

    std::filesystem::create_directories(dir);
    SplitMix64 rng(p.seed);

    // Fixed per-class coefficient patterns, drawn once up front.
    const int band = p.pattern_band;
    std::vector<std::vector<double>> patterns(p.n_classes,
                                              std::vector<double>(static_cast<size_t>(band) * band));
    for (int c = 0; c < p.n_classes; ++c)
        for (int v = 0; v < band; ++v)
            for (int u = 0; u < band; ++u)
                patterns[c][static_cast<size_t>(v) * band + u] =
                    (u == 0 && v == 0) ? 0.0 : p.pattern_amplitude * rng.next_gaussian();

    std::string manifest;
    for (int c = 0; c < p.n_classes; ++c) {
        for (int i = 0; i < p.images_per_class; ++i) {
            Spectrum spec(p.height, p.width, ScalingMode::Orthonormal);
            spec.at(0, 0) = p.base_level * std::sqrt(static_cast<double>(p.height) * p.width);
            for (int v = 0; v < band; ++v)
                for (int u = 0; u < band; ++u)
                    if (u != 0 || v != 0)
                        spec.at(v, u) = patterns[c][static_cast<size_t>(v) * band + u] +
                                        p.pattern_jitter * rng.next_gaussian();
            for (int v = 0; v < p.height; ++v)
                for (int u = 0; u < p.width; ++u)
                    if (v >= p.noise_band || u >= p.noise_band)
                        spec.at(v, u) = p.noise_sigma * rng.next_gaussian();

            const GrayMatrix image = dct2_inverse(spec, ScalingMode::Orthonormal);
            char name[64];
            std::snprintf(name, sizeof(name), "class_%02d_img_%03d.pgm", c, i);
            write_pnm_file(dir / name, from_unit_interval({image}));

            char label[32];
            std::snprintf(label, sizeof(label), "class_%02d", c);
            manifest += std::string(label) + "\t" + name + "\n";
        }
    }

    const std::filesystem::path manifest_path = dir / "manifest.tsv";
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + manifest_path.string());
    out << manifest;
    return manifest_path;
}

}  // namespace freqfuse
