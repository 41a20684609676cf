// freqfuse - spatial-frequency fusion preprocessing and few-shot evaluation.
//
// Subcommands: transform, fuse, eval, bench, synth. Exit codes: 0 success,
// 1 usage error, 2 data error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freqfuse/bench.hpp"
#include "freqfuse/dct.hpp"
#include "freqfuse/fusion.hpp"
#include "freqfuse/harness.hpp"
#include "freqfuse/pnm.hpp"
#include "freqfuse/spectrum_io.hpp"
#include "freqfuse/synthetic.hpp"

namespace fs = std::filesystem;
using namespace freqfuse;

namespace {

struct TransformOptions {
    std::string input;
    std::string output;
    std::string mode = "orthonormal";
    bool inverse = false;
};

int run_transform(const TransformOptions& opt) {
    const ScalingMode mode = scaling_mode_from_name(opt.mode);
    if (opt.inverse) {
        const Spectrum spectrum = read_spectrum_file(opt.input);
        const GrayMatrix image = dct2_inverse(spectrum, mode);
        write_pnm_file(opt.output, from_unit_interval({image}));
    } else {
        const PixelImage pixels = read_pnm_file(opt.input);
        const Spectrum spectrum = dct2_forward(to_gray(pixels), mode);
        write_spectrum_file(opt.output, spectrum);
    }
    return 0;
}

struct FuseOptions {
    std::string input;
    std::string output_dir;
    double retention_ratio = 0.15;
    std::string strategy = "box";
    double sigma_multiplier = 2.0;
    std::string combine = "addclamp";
};

std::vector<fs::path> collect_pnm_inputs(const fs::path& input) {
    if (!fs::exists(input)) throw std::runtime_error("input path does not exist: " + input.string());
    if (fs::is_regular_file(input)) return {input};
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(input)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no .pgm/.ppm/.pnm files in " + input.string());
    return files;
}

int run_fuse(const FuseOptions& opt) {
    FusionParams params;
    params.lowpass.strategy = lowpass_strategy_from_name(opt.strategy);
    params.lowpass.retention_ratio = opt.retention_ratio;
    params.lowpass.sigma_multiplier = opt.sigma_multiplier;
    params.combine = combine_mode_from_name(opt.combine);

    const std::vector<fs::path> inputs = collect_pnm_inputs(opt.input);

    // Fail fast: validate every input before writing anything.
    std::vector<PixelImage> images(inputs.size());
    std::vector<std::string> unreadable;
    for (size_t i = 0; i < inputs.size(); ++i) {
        try {
            images[i] = read_pnm_file(inputs[i]);
        } catch (const std::exception& e) {
            unreadable.push_back(inputs[i].string() + ": " + e.what());
        }
    }
    if (!unreadable.empty()) {
        for (const std::string& line : unreadable) std::cerr << "unreadable: " << line << "\n";
        throw std::runtime_error(std::to_string(unreadable.size()) + " unreadable input(s), aborting");
    }

    fs::create_directories(opt.output_dir);
    nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
    for (size_t i = 0; i < inputs.size(); ++i) {
        const fs::path out_path = fs::path(opt.output_dir) / inputs[i].filename();
        write_pnm_file(out_path, preprocess(images[i], params));
        outputs.push_back({{"input", inputs[i].string()}, {"output", out_path.string()}});
        std::cout << inputs[i].string() << " -> " << out_path.string() << "\n";
    }

    nlohmann::ordered_json provenance;
    provenance["strategy"] = opt.strategy;
    provenance["r"] = opt.retention_ratio;
    provenance["k"] = opt.sigma_multiplier;
    provenance["combine"] = opt.combine;
    provenance["scaling"] = std::string(scaling_mode_name(params.scaling));
    provenance["images"] = outputs;
    std::ofstream prov(fs::path(opt.output_dir) / "provenance.json", std::ios::binary);
    if (!prov) throw std::runtime_error("cannot write provenance file");
    prov << provenance.dump(2) << "\n";
    return 0;
}

struct EvalOptions {
    std::string config;
    std::string out_dir = "eval_out";
};

int run_eval(const EvalOptions& opt) {
    const EvalRunConfig run = load_eval_config(opt.config);
    fs::create_directories(opt.out_dir);

    std::vector<EvalReport> reports;
    for (size_t a = 0; a < run.arms.size(); ++a) {
        ExperimentConfig config = run.base;
        config.preprocessing = run.arms[a];
        const EvalReport report = run_experiment(config);
        reports.push_back(report);

        auto provenance = config_provenance(config);
        provenance.emplace_back("arm", run.arm_names[a]);
        const fs::path stem = fs::path(opt.out_dir) / ("report_" + run.arm_names[a]);
        std::ofstream txt(stem.string() + ".txt", std::ios::binary);
        txt << report_to_kv_text(report, provenance);
        std::ofstream json(stem.string() + ".json", std::ios::binary);
        json << report_to_json_text(report, provenance);

        std::cout << run.arm_names[a] << ": "
                  << format_mean_ci_percent(report.mean_accuracy, report.ci_half_width) << "\n";
    }

    std::string summary;
    for (size_t a = 0; a < run.arms.size(); ++a)
        summary += run.arm_names[a] + " " +
                   format_mean_ci_percent(reports[a].mean_accuracy, reports[a].ci_half_width) + "\n";
    if (reports.size() == 2)
        summary += "delta_percent " +
                   std::to_string((reports[1].mean_accuracy - reports[0].mean_accuracy) * 100.0) +
                   "\n";
    std::ofstream cmp(fs::path(opt.out_dir) / "comparison.txt", std::ios::binary);
    cmp << summary;
    std::cout << summary;
    return 0;
}

struct BenchOptions {
    std::vector<std::string> dims = {"84x84", "256x256"};
    int iterations = 30;
    std::uint64_t seed = 1;
    std::string out = "bench_results.json";
};

int run_bench(const BenchOptions& opt) {
    std::vector<std::pair<int, int>> dims;
    for (const std::string& spec : opt.dims) {
        int h = 0, w = 0;
        if (std::sscanf(spec.c_str(), "%dx%d", &h, &w) != 2 || h <= 1 || w <= 1)
            throw std::runtime_error("bad --dims entry '" + spec + "', expected <h>x<w> with h,w >= 2");
        dims.emplace_back(h, w);
    }
    const std::vector<BenchResult> results = bench_lowpass(dims, opt.iterations, opt.seed);
    std::cout << bench_results_table(results);
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + opt.out);
    out << bench_results_json(results);
    return 0;
}

struct SynthOptions {
    std::string out_dir;
    SyntheticParams params;
};

int run_synth(const SynthOptions& opt) {
    const fs::path manifest = generate_synthetic_dataset(opt.out_dir, opt.params);
    std::cout << "manifest: " << manifest.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spatial-frequency information-fusion preprocessing toolkit"};
    app.require_subcommand(1);

    TransformOptions transform_opt;
    CLI::App* transform = app.add_subcommand("transform", "2-D DCT of a PNM image (or inverse)");
    transform->add_option("input", transform_opt.input, "input image (PGM/PPM), or spectrum file with --inverse")->required();
    transform->add_option("output", transform_opt.output, "output spectrum file, or PGM with --inverse")->required();
    transform->add_option("--mode", transform_opt.mode, "scaling mode: orthonormal|paper")
        ->check(CLI::IsMember({"orthonormal", "paper"}));
    transform->add_flag("--inverse", transform_opt.inverse, "apply the inverse transform");

    FuseOptions fuse_opt;
    CLI::App* fuse = app.add_subcommand("fuse", "low-frequency fusion of PNM images");
    fuse->add_option("input", fuse_opt.input, "input PNM file or directory")->required();
    fuse->add_option("output", fuse_opt.output_dir, "output directory")->required();
    fuse->add_option("--r", fuse_opt.retention_ratio, "box retention ratio")
        ->check(CLI::Range(0.0, 1.0));
    fuse->add_option("--strategy", fuse_opt.strategy, "low-pass strategy: box|gradient")
        ->check(CLI::IsMember({"box", "gradient"}));
    fuse->add_option("--k", fuse_opt.sigma_multiplier, "gradient sigma multiplier")
        ->check(CLI::NonNegativeNumber);
    fuse->add_option("--combine", fuse_opt.combine, "combine mode: addclamp|average")
        ->check(CLI::IsMember({"addclamp", "average"}));

    EvalOptions eval_opt;
    CLI::App* eval = app.add_subcommand("eval", "episodic evaluation per the config file");
    eval->add_option("config", eval_opt.config, "eval config file")->required();
    eval->add_option("--out", eval_opt.out_dir, "output directory for reports");

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "time the low-pass strategies");
    bench->add_option("--dims", bench_opt.dims, "dimensions to time, e.g. 256x256");
    bench->add_option("--iters", bench_opt.iterations, "iterations per strategy (>= 10)");
    bench->add_option("--seed", bench_opt.seed, "spectrum seed");
    bench->add_option("--out", bench_opt.out, "results JSON path");

    SynthOptions synth_opt;
    CLI::App* synth = app.add_subcommand("synth", "generate the synthetic few-shot dataset");
    synth->add_option("output", synth_opt.out_dir, "output directory")->required();
    synth->add_option("--classes", synth_opt.params.n_classes, "number of classes");
    synth->add_option("--images-per-class", synth_opt.params.images_per_class, "images per class");
    synth->add_option("--seed", synth_opt.params.seed, "dataset seed");
    synth->add_option("--noise-sigma", synth_opt.params.noise_sigma, "high-frequency noise sigma");
    synth->add_option("--pattern-amplitude", synth_opt.params.pattern_amplitude,
                      "class pattern coefficient scale");
    synth->add_option("--pattern-jitter", synth_opt.params.pattern_jitter,
                      "per-image pattern jitter sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Keep the 0/1 exit contract rather than CLI11's per-error codes.
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (transform->parsed()) return run_transform(transform_opt);
        if (fuse->parsed()) return run_fuse(fuse_opt);
        if (eval->parsed()) return run_eval(eval_opt);
        if (bench->parsed()) return run_bench(bench_opt);
        if (synth->parsed()) return run_synth(synth_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
