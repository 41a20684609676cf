#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "freqfuse/episodes.hpp"
#include "freqfuse/features.hpp"
#include "freqfuse/fusion.hpp"

namespace freqfuse {

enum class PreprocessingKind { Raw, Fused };

// One preprocessing arm: either the image as-is or the spatial-frequency
// fusion with the given parameters.
struct Preprocessing {
    PreprocessingKind kind = PreprocessingKind::Raw;
    FusionParams fusion;
};

std::string preprocessing_label(const Preprocessing& p);

struct ExperimentConfig {
    std::filesystem::path manifest;
    int n_way = 5;
    int k_shot = 1;
    int q_query = 15;
    int n_tasks = 1000;
    std::uint64_t seed = 0;
    Preprocessing preprocessing;
    ExtractorConfig extractor;
    bool use_feature_cache = true;
};

// Per class, centroid = mean of its support vectors; each query goes to the
// nearest centroid in Euclidean distance, ties broken by lowest class index.
// Returns one predicted class index per query, in query order.
std::vector<int> nearest_centroid_classify(
    const Episode& episode, const std::unordered_map<std::string, FeatureVector>& features);

// Samples n_tasks episodes (task seeds split off the master seed), applies
// the configured preprocessing, extracts features (cached per distinct path
// when enabled), classifies with nearest centroids and scores the tasks.
// Deterministic: an identical config yields a bitwise-identical report.
EvalReport run_experiment(const ExperimentConfig& config);

// Provenance pairs echoing the full config, for report serialization.
std::vector<std::pair<std::string, std::string>> config_provenance(const ExperimentConfig& config);

// Parsed eval config file: the shared experiment settings plus the list of
// preprocessing arms to run.
struct EvalRunConfig {
    ExperimentConfig base;
    std::vector<Preprocessing> arms;
    std::vector<std::string> arm_names;
};

// Plain-text key-value config ("key = value", '#' comments). Unknown keys
// and malformed values are rejected with the offending key in the message.
// Keys: manifest, n_way, k_shot, q_query, n_tasks, seed, preprocessing,
// extractor, pixels_target, blockdct_block, blockdct_bands, fusion_r,
// fusion_strategy, fusion_k, fusion_combine, fusion_scaling,
// use_feature_cache.
EvalRunConfig parse_eval_config(const std::string& text,
                                const std::filesystem::path& base_dir);
EvalRunConfig load_eval_config(const std::filesystem::path& path);

// Cap on worker threads used for feature extraction: FREQFUSE_THREADS when
// set (positive integer), otherwise hardware concurrency.
unsigned max_worker_threads();

}  // namespace freqfuse
