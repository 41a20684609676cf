#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace freqfuse {

struct BenchResult {
    std::string strategy;
    int height = 0;
    int width = 0;
    int iterations = 0;
    double median_s = 0.0;
    double p90_s = 0.0;
};

// Times box_lowpass (default r) and gradient_lowpass (default k) on the
// same random spectrum per dims entry, monotonic wall clock, with a warm-up
// phase excluded from the stats. Single-threaded on purpose. iterations
// must be >= 10.
std::vector<BenchResult> bench_lowpass(std::span<const std::pair<int, int>> dims, int iterations,
                                       std::uint64_t seed);

std::string bench_results_json(std::span<const BenchResult> results);
std::string bench_results_table(std::span<const BenchResult> results);

}  // namespace freqfuse
