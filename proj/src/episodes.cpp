#include "freqfuse/episodes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "freqfuse/rng.hpp"

namespace freqfuse {

std::string_view split_role_name(SplitRole role) {
    switch (role) {
        case SplitRole::Train: return "train";
        case SplitRole::Val: return "val";
        default: return "test";
    }
}

DatasetSplit parse_split_manifest(std::string_view text, std::string name, SplitRole role) {
    std::map<std::string, std::vector<std::string>> classes;
    std::set<std::string> seen_paths;

    size_t line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (const size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        if (line.empty()) continue;

        const size_t tab = line.find('\t');
        if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size())
            throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                     ": expected <class-label>\\t<path>");
        const std::string label(line.substr(0, tab));
        const std::string path(line.substr(tab + 1));
        if (!seen_paths.insert(path).second)
            throw std::runtime_error("manifest: duplicate path '" + path + "'");
        classes[label].push_back(path);
    }

    if (classes.empty()) throw std::runtime_error("manifest: no records");

    DatasetSplit split;
    split.name = std::move(name);
    split.role = role;
    for (auto& [label, paths] : classes)
        split.classes.push_back(ClassEntry{label, std::move(paths)});
    return split;
}

DatasetSplit load_split_manifest(const std::filesystem::path& path, std::string name,
                                 SplitRole role) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open manifest " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    DatasetSplit split = parse_split_manifest(buffer.str(), std::move(name), role);
    split.root = path.parent_path();
    return split;
}

void validate_disjoint_roles(std::span<const DatasetSplit> splits) {
    std::map<std::string, const DatasetSplit*> owner;
    for (const DatasetSplit& split : splits) {
        for (const ClassEntry& entry : split.classes) {
            const auto [it, inserted] = owner.emplace(entry.label, &split);
            if (!inserted && it->second != &split)
                throw std::runtime_error("class '" + entry.label + "' appears in both '" +
                                         it->second->name + "' and '" + split.name + "'");
        }
    }
}

Episode sample_episode(const DatasetSplit& split, int n_way, int k_shot, int q_query,
                       std::uint64_t seed) {
    if (n_way < 1 || k_shot < 1 || q_query < 1)
        throw std::invalid_argument("sample_episode: n_way, k_shot, q_query must be >= 1");
    if (static_cast<size_t>(n_way) > split.classes.size())
        throw std::runtime_error("sample_episode: split has " +
                                 std::to_string(split.classes.size()) + " classes, need " +
                                 std::to_string(n_way));

    SplitMix64 rng(seed);
    const std::vector<std::uint32_t> class_picks = sample_without_replacement(
        static_cast<std::uint32_t>(split.classes.size()), static_cast<std::uint32_t>(n_way), rng);

    Episode episode;
    episode.n_way = n_way;
    episode.k_shot = k_shot;
    episode.q_query = q_query;
    episode.support.reserve(static_cast<size_t>(n_way) * k_shot);
    episode.query.reserve(static_cast<size_t>(n_way) * q_query);

    for (int c = 0; c < n_way; ++c) {
        const ClassEntry& entry = split.classes[class_picks[c]];
        episode.class_map.push_back(entry.label);
        const size_t need = static_cast<size_t>(k_shot) + q_query;
        if (entry.paths.size() < need)
            throw std::runtime_error("sample_episode: class '" + entry.label + "' has " +
                                     std::to_string(entry.paths.size()) + " images, need " +
                                     std::to_string(need));
        const std::vector<std::uint32_t> picks = sample_without_replacement(
            static_cast<std::uint32_t>(entry.paths.size()), static_cast<std::uint32_t>(need), rng);
        for (int s = 0; s < k_shot; ++s)
            episode.support.push_back(EpisodeItem{entry.paths[picks[s]], c});
        for (int q = 0; q < q_query; ++q)
            episode.query.push_back(EpisodeItem{entry.paths[picks[k_shot + q]], c});
    }
    return episode;
}

EvalReport score_tasks(std::span<const double> per_task_accuracies) {
    const size_t n = per_task_accuracies.size();
    if (n < 2) throw std::invalid_argument("score_tasks: need at least 2 tasks");

    double sum = 0.0;
    for (double a : per_task_accuracies) sum += a;
    const double mean = sum / static_cast<double>(n);

    double sq = 0.0;
    for (double a : per_task_accuracies) sq += (a - mean) * (a - mean);
    const double sample_stddev = std::sqrt(sq / static_cast<double>(n - 1));

    EvalReport report;
    report.n_tasks = static_cast<int>(n);
    report.mean_accuracy = mean;
    report.ci_half_width = 1.96 * sample_stddev / std::sqrt(static_cast<double>(n));
    report.per_task_accuracies.assign(per_task_accuracies.begin(), per_task_accuracies.end());
    return report;
}

std::string format_mean_ci_percent(double mean, double ci_half_width) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f ± %.2f", mean * 100.0, ci_half_width * 100.0);
    return buf;
}

namespace {

std::string double_repr(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string report_to_kv_text(const EvalReport& report,
                              const std::vector<std::pair<std::string, std::string>>& provenance) {
    std::string out;
    out += "n_tasks " + std::to_string(report.n_tasks) + "\n";
    out += "mean_accuracy " + double_repr(report.mean_accuracy) + "\n";
    out += "ci_half_width " + double_repr(report.ci_half_width) + "\n";
    out += "mean_ci_percent " + format_mean_ci_percent(report.mean_accuracy, report.ci_half_width) +
           "\n";
    for (const auto& [key, value] : provenance) out += key + " " + value + "\n";
    return out;
}

std::string report_to_json_text(const EvalReport& report,
                                const std::vector<std::pair<std::string, std::string>>& provenance) {
    nlohmann::ordered_json doc;
    doc["n_tasks"] = report.n_tasks;
    doc["mean_accuracy"] = report.mean_accuracy;
    doc["ci_half_width"] = report.ci_half_width;
    nlohmann::ordered_json prov = nlohmann::ordered_json::object();
    for (const auto& [key, value] : provenance) prov[key] = value;
    doc["provenance"] = prov;
    doc["per_task_accuracies"] = report.per_task_accuracies;
    return doc.dump(2) + "\n";
}

}  // namespace freqfuse
