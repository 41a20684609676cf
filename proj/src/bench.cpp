#include "freqfuse/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "freqfuse/lowpass.hpp"
#include "freqfuse/rng.hpp"

namespace freqfuse {

namespace {

constexpr int kWarmupIterations = 3;

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double percentile_90(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const size_t rank = static_cast<size_t>(std::ceil(0.9 * static_cast<double>(values.size())));
    return values[rank - 1];
}

template <typename Fn>
BenchResult time_strategy(const char* name, const Spectrum& input, int iterations, Fn&& fn) {
    using clock = std::chrono::steady_clock;
    volatile double sink = 0.0;  // keep the filtered spectra from being optimized out
    for (int i = 0; i < kWarmupIterations; ++i) sink = fn(input).coeffs[0];

    std::vector<double> seconds(iterations);
    for (int i = 0; i < iterations; ++i) {
        const auto start = clock::now();
        const Spectrum out = fn(input);
        const auto stop = clock::now();
        sink = out.coeffs[0];
        seconds[i] = std::chrono::duration<double>(stop - start).count();
    }
    (void)sink;

    BenchResult result;
    result.strategy = name;
    result.height = input.height;
    result.width = input.width;
    result.iterations = iterations;
    result.median_s = median(seconds);
    result.p90_s = percentile_90(seconds);
    return result;
}

}  // namespace

std::vector<BenchResult> bench_lowpass(std::span<const std::pair<int, int>> dims, int iterations,
                                       std::uint64_t seed) {
    if (iterations < 10) throw std::invalid_argument("bench_lowpass: iterations must be >= 10");

    const LowpassParams defaults;
    std::vector<BenchResult> results;
    for (const auto& [h, w] : dims) {
        SplitMix64 rng(seed);
        Spectrum input(h, w, ScalingMode::Orthonormal);
        for (double& c : input.coeffs) c = 2.0 * rng.next_unit() - 1.0;

        results.push_back(time_strategy("box", input, iterations, [&](const Spectrum& s) {
            return box_lowpass(s, defaults.retention_ratio);
        }));
        results.push_back(time_strategy("gradient", input, iterations, [&](const Spectrum& s) {
            return gradient_lowpass(s, defaults.sigma_multiplier);
        }));
    }
    return results;
}

std::string bench_results_json(std::span<const BenchResult> results) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const BenchResult& r : results) {
        doc.push_back({{"strategy", r.strategy},
                       {"height", r.height},
                       {"width", r.width},
                       {"iterations", r.iterations},
                       {"median_s", r.median_s},
                       {"p90_s", r.p90_s}});
    }
    return doc.dump(2) + "\n";
}

std::string bench_results_table(std::span<const BenchResult> results) {
    std::string out = "strategy      dims        iters   median_s      p90_s\n";
    char line[128];
    for (const BenchResult& r : results) {
        char dims[32];
        std::snprintf(dims, sizeof(dims), "%dx%d", r.height, r.width);
        std::snprintf(line, sizeof(line), "%-12s  %-10s  %5d   %.6e  %.6e\n", r.strategy.c_str(),
                      dims, r.iterations, r.median_s, r.p90_s);
        out += line;
    }
    return out;
}

}  // namespace freqfuse
