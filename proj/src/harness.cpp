#include "freqfuse/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "freqfuse/rng.hpp"

namespace freqfuse {

std::string preprocessing_label(const Preprocessing& p) {
    if (p.kind == PreprocessingKind::Raw) return "raw";
    return "fused";
}

std::vector<int> nearest_centroid_classify(
    const Episode& episode, const std::unordered_map<std::string, FeatureVector>& features) {
    const auto lookup = [&](const std::string& path) -> const FeatureVector& {
        const auto it = features.find(path);
        if (it == features.end())
            throw std::runtime_error("nearest_centroid_classify: missing feature for '" + path + "'");
        return it->second;
    };

    std::vector<FeatureVector> centroids(episode.n_way);
    std::vector<int> counts(episode.n_way, 0);
    for (const EpisodeItem& item : episode.support) {
        const FeatureVector& f = lookup(item.path);
        FeatureVector& centroid = centroids[item.class_index];
        if (centroid.empty()) centroid.assign(f.size(), 0.0);
        if (centroid.size() != f.size())
            throw std::runtime_error("nearest_centroid_classify: feature dimensionality mismatch");
        for (size_t i = 0; i < f.size(); ++i) centroid[i] += f[i];
        ++counts[item.class_index];
    }
    for (int c = 0; c < episode.n_way; ++c) {
        if (counts[c] == 0)
            throw std::runtime_error("nearest_centroid_classify: class without support items");
        for (double& v : centroids[c]) v /= counts[c];
    }

    std::vector<int> predictions;
    predictions.reserve(episode.query.size());
    for (const EpisodeItem& item : episode.query) {
        const FeatureVector& f = lookup(item.path);
        int best = 0;
        double best_distance = std::numeric_limits<double>::infinity();
        for (int c = 0; c < episode.n_way; ++c) {
            const double d = euclidean_distance(f, centroids[c]);
            if (d < best_distance) {  // strict: ties keep the lowest index
                best_distance = d;
                best = c;
            }
        }
        predictions.push_back(best);
    }
    return predictions;
}

unsigned max_worker_threads() {
    if (const char* env = std::getenv("FREQFUSE_THREADS")) {
        unsigned value = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
        if (ec == std::errc() && *ptr == '\0' && value > 0) return value;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

FeatureVector compute_feature(const std::filesystem::path& root, const std::string& path,
                              const ExperimentConfig& config) {
    PixelImage image;
    try {
        image = read_pnm_file(root / path);
    } catch (const std::exception& e) {
        throw std::runtime_error("cannot read image '" + path + "': " + e.what());
    }
    if (config.preprocessing.kind == PreprocessingKind::Fused)
        image = preprocess(image, config.preprocessing.fusion);
    return extract_features(image, config.extractor);
}

std::unordered_map<std::string, FeatureVector> extract_all(
    const std::vector<std::string>& paths, const std::filesystem::path& root,
    const ExperimentConfig& config) {
    std::vector<FeatureVector> results(paths.size());
    std::vector<std::exception_ptr> errors(paths.size());

    const unsigned threads =
        std::min<unsigned>(max_worker_threads(), static_cast<unsigned>(paths.size()));
    if (threads <= 1) {
        for (size_t i = 0; i < paths.size(); ++i) results[i] = compute_feature(root, paths[i], config);
    } else {
        std::atomic<size_t> cursor{0};
        auto worker = [&] {
            for (size_t i = cursor.fetch_add(1); i < paths.size(); i = cursor.fetch_add(1)) {
                try {
                    results[i] = compute_feature(root, paths[i], config);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::unordered_map<std::string, FeatureVector> features;
    features.reserve(paths.size());
    for (size_t i = 0; i < paths.size(); ++i) features.emplace(paths[i], std::move(results[i]));
    return features;
}

}  // namespace

EvalReport run_experiment(const ExperimentConfig& config) {
    if (config.n_tasks < 2) throw std::invalid_argument("run_experiment: n_tasks must be >= 2");
    const DatasetSplit split = load_split_manifest(
        config.manifest, config.manifest.filename().string(), SplitRole::Test);

    std::vector<Episode> episodes;
    episodes.reserve(config.n_tasks);
    for (int task = 0; task < config.n_tasks; ++task)
        episodes.push_back(sample_episode(split, config.n_way, config.k_shot, config.q_query,
                                          SplitMix64::task_seed(config.seed, task)));

    std::unordered_map<std::string, FeatureVector> cache;
    if (config.use_feature_cache) {
        std::vector<std::string> distinct;
        std::unordered_map<std::string, bool> seen;
        for (const Episode& episode : episodes) {
            for (const EpisodeItem& item : episode.support)
                if (seen.emplace(item.path, true).second) distinct.push_back(item.path);
            for (const EpisodeItem& item : episode.query)
                if (seen.emplace(item.path, true).second) distinct.push_back(item.path);
        }
        cache = extract_all(distinct, split.root, config);
    }

    std::vector<double> accuracies;
    accuracies.reserve(config.n_tasks);
    for (const Episode& episode : episodes) {
        const std::unordered_map<std::string, FeatureVector>* features = &cache;
        std::unordered_map<std::string, FeatureVector> local;
        if (!config.use_feature_cache) {
            // Re-extract for every episode; must agree with the cached path.
            std::vector<std::string> paths;
            for (const EpisodeItem& item : episode.support) paths.push_back(item.path);
            for (const EpisodeItem& item : episode.query) paths.push_back(item.path);
            std::sort(paths.begin(), paths.end());
            paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
            local = extract_all(paths, split.root, config);
            features = &local;
        }

        const std::vector<int> predictions = nearest_centroid_classify(episode, *features);
        int correct = 0;
        for (size_t q = 0; q < episode.query.size(); ++q)
            if (predictions[q] == episode.query[q].class_index) ++correct;
        accuracies.push_back(static_cast<double>(correct) / static_cast<double>(episode.query.size()));
    }
    return score_tasks(accuracies);
}

std::vector<std::pair<std::string, std::string>> config_provenance(const ExperimentConfig& config) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("manifest", config.manifest.string());
    kv.emplace_back("n_way", std::to_string(config.n_way));
    kv.emplace_back("k_shot", std::to_string(config.k_shot));
    kv.emplace_back("q_query", std::to_string(config.q_query));
    kv.emplace_back("seed", std::to_string(config.seed));
    kv.emplace_back("preprocessing", preprocessing_label(config.preprocessing));
    if (config.preprocessing.kind == PreprocessingKind::Fused) {
        const FusionParams& f = config.preprocessing.fusion;
        kv.emplace_back("fusion_strategy", std::string(lowpass_strategy_name(f.lowpass.strategy)));
        if (f.lowpass.strategy == LowpassStrategy::Box)
            kv.emplace_back("fusion_r", std::to_string(f.lowpass.retention_ratio));
        else
            kv.emplace_back("fusion_k", std::to_string(f.lowpass.sigma_multiplier));
        kv.emplace_back("fusion_combine", std::string(combine_mode_name(f.combine)));
        kv.emplace_back("fusion_scaling", std::string(scaling_mode_name(f.scaling)));
    }
    kv.emplace_back("extractor", std::string(extractor_kind_name(config.extractor.kind)));
    if (config.extractor.kind == ExtractorKind::DownsampledPixels) {
        kv.emplace_back("pixels_target", std::to_string(config.extractor.target_height) + " " +
                                             std::to_string(config.extractor.target_width));
    } else {
        kv.emplace_back("blockdct_block", std::to_string(config.extractor.block_size));
        kv.emplace_back("blockdct_bands", std::to_string(config.extractor.bands));
    }
    kv.emplace_back("use_feature_cache", config.use_feature_cache ? "true" : "false");
    return kv;
}

namespace {

[[noreturn]] void config_error(const std::string& key, const std::string& detail) {
    throw std::runtime_error("config key '" + key + "': " + detail);
}

long long parse_ll(const std::string& key, const std::string& value, long long min_value) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        config_error(key, "expected an integer, got '" + value + "'");
    if (out < min_value)
        config_error(key, "must be >= " + std::to_string(min_value));
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t consumed = 0;
        const double out = std::stod(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        config_error(key, "expected a number, got '" + value + "'");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string current;
    for (char c : value) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!current.empty()) items.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) items.push_back(std::move(current));
    return items;
}

}  // namespace

EvalRunConfig parse_eval_config(const std::string& text, const std::filesystem::path& base_dir) {
    EvalRunConfig run;
    std::vector<std::string> arm_specs = {"raw", "fused"};
    bool manifest_seen = false;

    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto trim = [](std::string s) {
            const size_t first = s.find_first_not_of(" \t\r");
            if (first == std::string::npos) return std::string();
            const size_t last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        };
        line = trim(line);
        if (line.empty()) continue;

        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(line_no) +
                                                  ": empty key");
        if (value.empty()) config_error(key, "empty value");

        ExperimentConfig& base = run.base;
        if (key == "manifest") {
            const std::filesystem::path p(value);
            base.manifest = p.is_absolute() ? p : base_dir / p;
            manifest_seen = true;
        } else if (key == "n_way") {
            base.n_way = static_cast<int>(parse_ll(key, value, 1));
        } else if (key == "k_shot") {
            base.k_shot = static_cast<int>(parse_ll(key, value, 1));
        } else if (key == "q_query") {
            base.q_query = static_cast<int>(parse_ll(key, value, 1));
        } else if (key == "n_tasks") {
            base.n_tasks = static_cast<int>(parse_ll(key, value, 2));
        } else if (key == "seed") {
            base.seed = static_cast<std::uint64_t>(parse_ll(key, value, 0));
        } else if (key == "preprocessing") {
            arm_specs = split_list(value);
            if (arm_specs.empty()) config_error(key, "expected raw and/or fused");
        } else if (key == "extractor") {
            try {
                base.extractor.kind = extractor_kind_from_name(value);
            } catch (const std::exception&) {
                config_error(key, "expected pixels or blockdct, got '" + value + "'");
            }
        } else if (key == "pixels_target") {
            const std::vector<std::string> dims = split_list(value);
            if (dims.size() == 1) {
                base.extractor.target_height = static_cast<int>(parse_ll(key, dims[0], 1));
                base.extractor.target_width = base.extractor.target_height;
            } else if (dims.size() == 2) {
                base.extractor.target_height = static_cast<int>(parse_ll(key, dims[0], 1));
                base.extractor.target_width = static_cast<int>(parse_ll(key, dims[1], 1));
            } else {
                config_error(key, "expected '<height> <width>'");
            }
        } else if (key == "blockdct_block") {
            base.extractor.block_size = static_cast<int>(parse_ll(key, value, 1));
        } else if (key == "blockdct_bands") {
            base.extractor.bands = static_cast<int>(parse_ll(key, value, 1));
        } else if (key == "fusion_r") {
            const double r = parse_double(key, value);
            if (!(r >= 0.0 && r <= 1.0)) config_error(key, "must be in [0,1]");
            base.preprocessing.fusion.lowpass.retention_ratio = r;
        } else if (key == "fusion_strategy") {
            try {
                base.preprocessing.fusion.lowpass.strategy = lowpass_strategy_from_name(value);
            } catch (const std::exception&) {
                config_error(key, "expected box or gradient, got '" + value + "'");
            }
        } else if (key == "fusion_k") {
            const double k = parse_double(key, value);
            if (!(k >= 0.0)) config_error(key, "must be >= 0");
            base.preprocessing.fusion.lowpass.sigma_multiplier = k;
        } else if (key == "fusion_combine") {
            try {
                base.preprocessing.fusion.combine = combine_mode_from_name(value);
            } catch (const std::exception&) {
                config_error(key, "expected addclamp or average, got '" + value + "'");
            }
        } else if (key == "fusion_scaling") {
            try {
                base.preprocessing.fusion.scaling = scaling_mode_from_name(value);
            } catch (const std::exception&) {
                config_error(key, "expected orthonormal or paper, got '" + value + "'");
            }
        } else if (key == "use_feature_cache") {
            if (value == "true" || value == "1")
                base.use_feature_cache = true;
            else if (value == "false" || value == "0")
                base.use_feature_cache = false;
            else
                config_error(key, "expected true or false, got '" + value + "'");
        } else {
            config_error(key, "unknown key");
        }
    }

    if (!manifest_seen) config_error("manifest", "missing (path to the split manifest is required)");

    for (const std::string& spec : arm_specs) {
        Preprocessing arm = run.base.preprocessing;
        if (spec == "raw") {
            arm.kind = PreprocessingKind::Raw;
        } else if (spec == "fused") {
            arm.kind = PreprocessingKind::Fused;
        } else {
            config_error("preprocessing", "unknown arm '" + spec + "' (expected raw or fused)");
        }
        run.arms.push_back(arm);
        run.arm_names.push_back(spec);
    }
    return run;
}

EvalRunConfig load_eval_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_eval_config(buffer.str(), path.parent_path());
}

}  // namespace freqfuse
