// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Run via ctest or directly from the build tree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "freqfuse/bench.hpp"
#include "freqfuse/dct.hpp"
#include "freqfuse/episodes.hpp"
#include "freqfuse/fusion.hpp"
#include "freqfuse/harness.hpp"
#include "freqfuse/lowpass.hpp"
#include "freqfuse/pnm.hpp"
#include "freqfuse/rng.hpp"
#include "freqfuse/synthetic.hpp"
#include "test_util.hpp"

using namespace freqfuse;
using testutil::max_abs_diff;
using testutil::random_dense_spectrum;
using testutil::random_image;

namespace {

int failures = 0;

void report(int number, const char* title, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, title,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Orthonormal roundtrip and Parseval across 200 random matrices.
void criterion_transform_correctness() {
    const auto start = std::chrono::steady_clock::now();
    const std::pair<int, int> sizes[] = {{1, 1}, {2, 3}, {8, 8}, {16, 16},
                                         {64, 64}, {84, 84}, {256, 256}};
    double worst_roundtrip = 0.0, worst_parseval = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto& [h, w] = sizes[i % 7];
        const GrayMatrix image = random_image(h, w, 1000 + i);
        const Spectrum spec = dct2_forward(image, ScalingMode::Orthonormal);
        const GrayMatrix back = dct2_inverse(spec, ScalingMode::Orthonormal);
        worst_roundtrip = std::max(worst_roundtrip, max_abs_diff(image.data, back.data));

        double spatial = 0.0, frequency = 0.0;
        for (double v : image.data) spatial += v * v;
        for (double c : spec.coeffs) frequency += c * c;
        worst_parseval = std::max(worst_parseval, std::abs(spatial - frequency) / spatial);
    }
    const double elapsed = seconds_since(start);
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max roundtrip err %.3e, max Parseval rel err %.3e, %.1f s", worst_roundtrip,
                  worst_parseval, elapsed);
    report(1, "transform correctness",
           worst_roundtrip <= 1e-9 && worst_parseval <= 1e-9 && elapsed <= 60.0, detail);
}

// 2. Fast separable path vs the literal quadruple-loop oracle, both modes.
void criterion_oracle_equivalence() {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        SplitMix64 rng(seed);
        int h, w;
        if (seed == 0) {
            h = w = 64;
        } else if (seed == 1) {
            h = w = 1;
        } else {
            h = 1 + static_cast<int>(rng.next_below(64));
            w = 1 + static_cast<int>(rng.next_below(64));
        }
        const GrayMatrix image = random_image(h, w, rng.next());
        for (const ScalingMode mode : {ScalingMode::Orthonormal, ScalingMode::PaperQuarter}) {
            const Spectrum fast = dct2_forward(image, mode);
            const Spectrum naive = dct2_naive_oracle(image, mode);
            worst = std::max(worst, max_abs_diff(fast.coeffs, naive.coeffs));

            const GrayMatrix inv_fast = dct2_inverse(fast, mode);
            const GrayMatrix inv_naive = idct2_naive_oracle(fast, mode);
            worst = std::max(worst, max_abs_diff(inv_fast.data, inv_naive.data));
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max |fast - naive| %.3e over 50 seeds", worst);
    report(2, "oracle equivalence", worst <= 1e-9, detail);
}

// 3. Box mask retained-count law.
void criterion_box_mask_law() {
    bool pass = true;
    std::string detail;
    for (const auto& [h, w] : {std::pair{84, 84}, {100, 60}}) {
        for (const double r : {0.0, 0.15, 0.5, 1.0}) {
            const Spectrum s = random_dense_spectrum(h, w, 9000 + h + static_cast<int>(r * 100));
            const long long expected =
                static_cast<long long>(box_retained_extent(h, r)) * box_retained_extent(w, r);
            const long long got = count_retained(s, box_lowpass(s, r));
            if (got != expected) {
                pass = false;
                detail = "mismatch at " + std::to_string(h) + "x" + std::to_string(w) +
                         " r=" + std::to_string(r);
            }
        }
    }
    const Spectrum s = random_dense_spectrum(84, 84, 4242);
    const long long kept = count_retained(s, box_lowpass(s, 0.15));
    if (kept != 1024) {
        pass = false;
        detail = "84x84 r=0.15 kept " + std::to_string(kept);
    }
    if (pass) detail = "floor(h*sqrt(r))*floor(w*sqrt(r)) holds; 84x84 r=0.15 keeps 1024";
    report(3, "box mask law", pass, detail);
}

// 4. Gradient mask soundness and the k->inf identity.
void criterion_gradient_mask_soundness() {
    bool pass = true;
    std::string detail = "100 random spectra sound; k=inf is the identity";
    SplitMix64 rng(777);
    for (int trial = 0; trial < 100 && pass; ++trial) {
        const int h = 2 + static_cast<int>(rng.next_below(62));
        const int w = 2 + static_cast<int>(rng.next_below(62));
        const Spectrum s = random_dense_spectrum(h, w, rng.next());

        const GrayMatrix mags = gradient_magnitudes(s);
        double sum = 0.0;
        for (double v : mags.data) sum += v;
        const double mean = sum / static_cast<double>(mags.size());
        double sq = 0.0;
        for (double v : mags.data) sq += (v - mean) * (v - mean);
        const double threshold = mean + 2.0 * std::sqrt(sq / static_cast<double>(mags.size()));

        const Spectrum out = gradient_lowpass(s, 2.0);
        for (size_t i = 0; i < s.size() && pass; ++i) {
            if (out.coeffs[i] != 0.0 && mags.data[i] > threshold) {
                pass = false;
                detail = "retained coefficient above threshold at trial " + std::to_string(trial);
            }
        }
        const Spectrum identity = gradient_lowpass(s, std::numeric_limits<double>::infinity());
        if (identity.coeffs != s.coeffs) {
            pass = false;
            detail = "k=inf altered the spectrum at trial " + std::to_string(trial);
        }
    }
    report(4, "gradient mask soundness", pass, detail);
}

// 5. Fusion identities, range and size preservation.
void criterion_fusion_identities() {
    bool pass = true;
    std::string detail;

    FusionParams average;
    average.lowpass.retention_ratio = 1.0;
    average.combine = CombineMode::Average;
    const GrayMatrix image = random_image(40, 56, 31);
    const double identity_err = max_abs_diff(image.data, fuse(image, average).image.data);
    if (identity_err > 1e-9) {
        pass = false;
        detail = "r=1 average deviates by " + std::to_string(identity_err);
    }

    FusionParams addclamp;
    addclamp.lowpass.retention_ratio = 1.0;
    const GrayMatrix dim(16, 16, 0.3);
    for (double v : fuse(dim, addclamp).image.data)
        if (std::abs(v - 0.6) > 1e-9) {
            pass = false;
            detail = "0.3 constant under addclamp gave " + std::to_string(v);
            break;
        }

    SplitMix64 rng(88);
    for (int trial = 0; trial < 10 && pass; ++trial) {
        const int h = 2 + static_cast<int>(rng.next_below(80));
        const int w = 2 + static_cast<int>(rng.next_below(80));
        FusionParams params;
        params.lowpass.strategy = trial % 2 == 0 ? LowpassStrategy::Box : LowpassStrategy::Gradient;
        params.lowpass.retention_ratio = rng.next_unit();
        params.combine = trial % 3 == 0 ? CombineMode::Average : CombineMode::AddClamp;
        const GrayMatrix input = random_image(h, w, rng.next());
        const FusedImage fused = fuse(input, params);
        if (fused.image.height != h || fused.image.width != w) {
            pass = false;
            detail = "dims changed";
        }
        for (double v : fused.image.data)
            if (!(v >= 0.0 && v <= 1.0)) {
                pass = false;
                detail = "value outside [0,1]: " + std::to_string(v);
                break;
            }
    }
    if (pass) detail = "identities hold; outputs in [0,1]; dims preserved";
    report(5, "fusion identities", pass, detail);
}

// 6. Episodic protocol invariants, bitwise reproducibility, report format.
void criterion_episodic_protocol() {
    bool pass = true;
    std::string detail;

    std::string manifest_text;
    for (int c = 0; c < 16; ++c)
        for (int i = 0; i < 25; ++i)
            manifest_text += "class" + std::to_string(c) + "\timg_" + std::to_string(c) + "_" +
                             std::to_string(i) + ".pgm\n";
    const DatasetSplit split = parse_split_manifest(manifest_text, "acceptance", SplitRole::Test);

    for (const auto& [k_shot, q_query] : {std::pair{1, 15}, {5, 15}}) {
        for (int task = 0; task < 1000 && pass; ++task) {
            const Episode e =
                sample_episode(split, 5, k_shot, q_query, SplitMix64::task_seed(2026, task));
            std::set<std::string> labels(e.class_map.begin(), e.class_map.end());
            if (labels.size() != 5) { pass = false; detail = "duplicate classes"; }
            std::vector<int> sc(5, 0), qc(5, 0);
            std::set<std::string> support_paths;
            for (const EpisodeItem& item : e.support) {
                if (item.class_index < 0 || item.class_index >= 5) { pass = false; detail = "bad index"; }
                ++sc[item.class_index];
                support_paths.insert(item.path);
            }
            for (const EpisodeItem& item : e.query) {
                if (item.class_index < 0 || item.class_index >= 5) { pass = false; detail = "bad index"; }
                ++qc[item.class_index];
                if (support_paths.count(item.path)) { pass = false; detail = "support/query overlap"; }
            }
            for (int c = 0; c < 5; ++c)
                if (sc[c] != k_shot || qc[c] != q_query) { pass = false; detail = "per-class counts"; }
        }
    }

    testutil::TempDir dir("acceptance_proto");
    SyntheticParams small;
    small.n_classes = 6;
    small.images_per_class = 8;
    small.height = 32;
    small.width = 32;
    small.pattern_band = 4;
    small.noise_band = 12;
    ExperimentConfig config;
    config.manifest = generate_synthetic_dataset(dir.path, small);
    config.n_way = 5;
    config.k_shot = 1;
    config.q_query = 3;
    config.n_tasks = 30;
    config.seed = 31337;
    config.extractor.target_height = 16;
    config.extractor.target_width = 16;

    const EvalReport once = run_experiment(config);
    const EvalReport again = run_experiment(config);
    const auto provenance = config_provenance(config);
    if (report_to_json_text(once, provenance) != report_to_json_text(again, provenance) ||
        report_to_kv_text(once, provenance) != report_to_kv_text(again, provenance)) {
        pass = false;
        detail = "same master seed produced different reports";
    }

    const std::string rendered = format_mean_ci_percent(once.mean_accuracy, once.ci_half_width);
    if (!std::regex_match(rendered, std::regex(R"(\d+\.\d{2} ± \d+\.\d{2})"))) {
        pass = false;
        detail = "bad report format '" + rendered + "'";
    }
    if (pass) detail = "2000 episodes valid; reports bitwise stable; rendered '" + rendered + "'";
    report(6, "episodic protocol", pass, detail);
}

// 7. Directional ablation on the bundled synthetic dataset.
void criterion_directional_ablation() {
    const auto start = std::chrono::steady_clock::now();
    testutil::TempDir dir("acceptance_ablation");
    const SyntheticParams defaults;  // the bundled dataset: fixed default seed
    ExperimentConfig config;
    config.manifest = generate_synthetic_dataset(dir.path, defaults);
    config.seed = 123;  // n_way=5, k_shot=1, q_query=15, n_tasks=1000 defaults

    config.preprocessing.kind = PreprocessingKind::Raw;
    const EvalReport raw = run_experiment(config);
    config.preprocessing.kind = PreprocessingKind::Fused;
    const EvalReport fused = run_experiment(config);
    const double elapsed = seconds_since(start);

    const double gap = fused.mean_accuracy - raw.mean_accuracy;
    const bool disjoint_ci =
        raw.mean_accuracy + raw.ci_half_width < fused.mean_accuracy - fused.ci_half_width;
    char detail[192];
    std::snprintf(detail, sizeof(detail), "raw %s, fused %s, gap %.2f pp, %.0f s",
                  format_mean_ci_percent(raw.mean_accuracy, raw.ci_half_width).c_str(),
                  format_mean_ci_percent(fused.mean_accuracy, fused.ci_half_width).c_str(),
                  gap * 100.0, elapsed);
    report(7, "directional ablation", gap >= 0.05 && disjoint_ci && elapsed <= 600.0, detail);
}

// 8. Gradient strategy measurably slower than box at 256x256.
void criterion_bench_ordering() {
    const std::pair<int, int> dims[] = {{256, 256}};
    const std::vector<BenchResult> results = bench_lowpass(dims, 15, 99);
    const BenchResult& box = results[0];
    const BenchResult& gradient = results[1];
    char detail[128];
    std::snprintf(detail, sizeof(detail), "box median %.3e s, gradient median %.3e s",
                  box.median_s, gradient.median_s);
    report(8, "bench reproduces the slowdown", gradient.median_s > box.median_s, detail);
}

// 9. PNM bitwise roundtrip and exhaustive 8-bit conversion.
void criterion_io_roundtrip() {
    bool pass = true;
    std::string detail = "canonical roundtrip bitwise; 256/256 values exact";

    SplitMix64 rng(55);
    for (int trial = 0; trial < 50 && pass; ++trial) {
        PixelImage image(1 + static_cast<int>(rng.next_below(24)),
                         1 + static_cast<int>(rng.next_below(24)), rng.next() & 1 ? 3 : 1);
        for (std::uint8_t& s : image.samples) s = static_cast<std::uint8_t>(rng.next_below(256));
        const std::vector<std::uint8_t> canonical = write_pnm(image);
        if (write_pnm(read_pnm(canonical)) != canonical) {
            pass = false;
            detail = "canonical file changed across parse/serialize";
        }
    }

    PixelImage ramp(16, 16, 1);
    for (int i = 0; i < 256; ++i) ramp.samples[i] = static_cast<std::uint8_t>(i);
    if (from_unit_interval(to_unit_interval(ramp)).samples != ramp.samples) {
        pass = false;
        detail = "8-bit conversion not exact";
    }
    report(9, "I/O roundtrips", pass, detail);
}

}  // namespace

int main() {
    criterion_transform_correctness();
    criterion_oracle_equivalence();
    criterion_box_mask_law();
    criterion_gradient_mask_soundness();
    criterion_fusion_identities();
    criterion_episodic_protocol();
    criterion_directional_ablation();
    criterion_bench_ordering();
    criterion_io_roundtrip();

    if (failures == 0)
        std::printf("all 9 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
