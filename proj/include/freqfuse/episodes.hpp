#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace freqfuse {

enum class SplitRole { Train, Val, Test };

std::string_view split_role_name(SplitRole role);

struct ClassEntry {
    std::string label;
    std::vector<std::string> paths;
};

// One role's worth of a class-partitioned dataset. Classes are kept sorted
// by label so class indices are stable regardless of manifest line order.
struct DatasetSplit {
    std::string name;
    SplitRole role = SplitRole::Test;
    std::vector<ClassEntry> classes;

    // Directory that relative image paths resolve against (the manifest's
    // parent directory when loaded from disk).
    std::filesystem::path root;
};

struct EpisodeItem {
    std::string path;
    int class_index = 0;
};

// One n-way k-shot task. Items are class-major: class 0's items first.
struct Episode {
    int n_way = 0;
    int k_shot = 0;
    int q_query = 0;
    std::vector<EpisodeItem> support;       // n_way * k_shot
    std::vector<EpisodeItem> query;         // n_way * q_query
    std::vector<std::string> class_map;     // chosen labels, class_map[i] <-> index i
};

struct EvalReport {
    int n_tasks = 0;
    double mean_accuracy = 0.0;
    double ci_half_width = 0.0;  // 1.96 * sample stddev / sqrt(n_tasks)
    std::vector<double> per_task_accuracies;
};

// Manifest format: one record per line, "<class-label>\t<relative-path>".
// '#' starts a comment, blank lines are skipped. Duplicate paths are
// rejected with the offending path in the message.
DatasetSplit parse_split_manifest(std::string_view text, std::string name, SplitRole role);
DatasetSplit load_split_manifest(const std::filesystem::path& path, std::string name,
                                 SplitRole role);

// Table-1-style partition check: class sets of the given splits must be
// pairwise disjoint.
void validate_disjoint_roles(std::span<const DatasetSplit> splits);

// Uniform sampling without replacement of n_way classes, then of
// k_shot + q_query images per chosen class, driven by SplitMix64(seed).
// Identical seed, identical episode.
Episode sample_episode(const DatasetSplit& split, int n_way, int k_shot, int q_query,
                       std::uint64_t seed);

// Mean accuracy and 95% normal-approximation CI half-width
// (1.96 * sample stddev / sqrt(T)). Requires at least 2 tasks.
EvalReport score_tasks(std::span<const double> per_task_accuracies);

// "93.66 ± 0.13" rendering: percent, two decimals.
std::string format_mean_ci_percent(double mean, double ci_half_width);

// Line-oriented "key value" text; extra provenance pairs are appended in
// the order given.
std::string report_to_kv_text(const EvalReport& report,
                              const std::vector<std::pair<std::string, std::string>>& provenance = {});

// Machine-readable JSON with fields n_tasks, mean_accuracy, ci_half_width,
// per_task_accuracies plus a provenance object.
std::string report_to_json_text(const EvalReport& report,
                                const std::vector<std::pair<std::string, std::string>>& provenance = {});

}  // namespace freqfuse
