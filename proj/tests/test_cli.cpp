#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "freqfuse/pnm.hpp"
#include "freqfuse/spectrum_io.hpp"
#include "test_util.hpp"

using namespace freqfuse;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CommandResult run_cli(const std::string& args, const std::filesystem::path& scratch) {
    const std::filesystem::path log = scratch / "cli_output.log";
    const std::string command =
        std::string(FREQFUSE_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(command.c_str());

    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

PixelImage make_gradient_pgm(int h, int w) {
    PixelImage image(h, w, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            image.samples[static_cast<size_t>(y) * w + x] =
                static_cast<std::uint8_t>((x * 17 + y * 31) % 256);
    return image;
}

std::vector<std::uint8_t> file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("usage errors exit with 1, help with 0") {
    testutil::TempDir dir("cli_usage");
    CHECK(run_cli("", dir.path).exit_code == 1);
    CHECK(run_cli("--help", dir.path).exit_code == 0);
    CHECK(run_cli("transform", dir.path).exit_code == 1);           // missing args
    CHECK(run_cli("frobnicate x y", dir.path).exit_code == 1);      // unknown subcommand
    CHECK(run_cli("fuse in out --r 2.0", dir.path).exit_code == 1); // out-of-range flag
}

TEST_CASE("transform roundtrips through files") {
    testutil::TempDir dir("cli_transform");
    const auto input = dir.path / "in.pgm";
    write_pnm_file(input, make_gradient_pgm(16, 12));

    const auto spec_path = dir.path / "spec.ffs";
    CHECK(run_cli("transform " + input.string() + " " + spec_path.string(), dir.path).exit_code == 0);
    const Spectrum spec = read_spectrum_file(spec_path);
    CHECK(spec.height == 16);
    CHECK(spec.width == 12);
    CHECK(spec.scaling == ScalingMode::Orthonormal);

    const auto back = dir.path / "back.pgm";
    CHECK(run_cli("transform --inverse " + spec_path.string() + " " + back.string(), dir.path)
              .exit_code == 0);
    CHECK(file_bytes(back) == file_bytes(input));  // integer re-quantization is exact
}

TEST_CASE("paper mode coincides with orthonormal at 8x8") {
    testutil::TempDir dir("cli_paper");
    const auto input = dir.path / "in.pgm";
    write_pnm_file(input, make_gradient_pgm(8, 8));

    const auto ortho_path = dir.path / "ortho.ffs";
    const auto paper_path = dir.path / "paper.ffs";
    REQUIRE(run_cli("transform " + input.string() + " " + ortho_path.string(), dir.path).exit_code ==
            0);
    REQUIRE(run_cli("transform --mode paper " + input.string() + " " + paper_path.string(), dir.path)
                .exit_code == 0);

    const Spectrum ortho = read_spectrum_file(ortho_path);
    const Spectrum paper = read_spectrum_file(paper_path);
    CHECK(paper.scaling == ScalingMode::PaperQuarter);
    CHECK(ortho.coeffs == paper.coeffs);
}

TEST_CASE("inverse with the wrong mode is a data error") {
    testutil::TempDir dir("cli_mode");
    const auto input = dir.path / "in.pgm";
    write_pnm_file(input, make_gradient_pgm(8, 8));
    const auto spec_path = dir.path / "spec.ffs";
    REQUIRE(run_cli("transform " + input.string() + " " + spec_path.string(), dir.path).exit_code ==
            0);
    const CommandResult result = run_cli(
        "transform --inverse --mode paper " + spec_path.string() + " " + (dir.path / "x.pgm").string(),
        dir.path);
    CHECK(result.exit_code == 2);
}

TEST_CASE("fuse processes a directory and records provenance") {
    testutil::TempDir dir("cli_fuse");
    const auto in_dir = dir.path / "in";
    std::filesystem::create_directories(in_dir);
    for (int i = 0; i < 3; ++i) {
        PixelImage rgb(10, 10, 3);
        SplitMix64 rng(100 + i);
        for (std::uint8_t& s : rgb.samples) s = static_cast<std::uint8_t>(rng.next_below(256));
        write_pnm_file(in_dir / ("img" + std::to_string(i) + ".ppm"), rgb);
    }

    const auto out_dir = dir.path / "out";
    CHECK(run_cli("fuse " + in_dir.string() + " " + out_dir.string(), dir.path).exit_code == 0);
    for (int i = 0; i < 3; ++i)
        CHECK(std::filesystem::exists(out_dir / ("img" + std::to_string(i) + ".ppm")));

    const nlohmann::json provenance =
        nlohmann::json::parse(std::ifstream(out_dir / "provenance.json"));
    CHECK(provenance["strategy"] == "box");
    CHECK(provenance["r"] == 0.15);
    CHECK(provenance["combine"] == "addclamp");
    CHECK(provenance["images"].size() == 3);

    // Identical inputs and flags are idempotent.
    const auto rerun_dir = dir.path / "out2";
    CHECK(run_cli("fuse " + in_dir.string() + " " + rerun_dir.string(), dir.path).exit_code == 0);
    CHECK(file_bytes(out_dir / "img0.ppm") == file_bytes(rerun_dir / "img0.ppm"));
}

TEST_CASE("fuse at r=1 average is an identity up to re-quantization") {
    testutil::TempDir dir("cli_fuse_id");
    const auto in_dir = dir.path / "in";
    std::filesystem::create_directories(in_dir);
    const auto input = in_dir / "img.pgm";
    write_pnm_file(input, make_gradient_pgm(12, 9));

    const auto out_dir = dir.path / "out";
    CHECK(run_cli("fuse --r 1 --combine average " + in_dir.string() + " " + out_dir.string(),
                  dir.path)
              .exit_code == 0);
    CHECK(file_bytes(out_dir / "img.pgm") == file_bytes(input));
}

TEST_CASE("fuse aborts before writing when any input is unreadable") {
    testutil::TempDir dir("cli_fuse_bad");
    const auto in_dir = dir.path / "in";
    std::filesystem::create_directories(in_dir);
    write_pnm_file(in_dir / "good.pgm", make_gradient_pgm(6, 6));
    std::ofstream(in_dir / "bad.pgm", std::ios::binary) << "P5 junk";

    const auto out_dir = dir.path / "out";
    const CommandResult result =
        run_cli("fuse " + in_dir.string() + " " + out_dir.string(), dir.path);
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("bad.pgm") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(out_dir / "good.pgm"));
}

TEST_CASE("eval runs both arms against a synthetic dataset") {
    testutil::TempDir dir("cli_eval");
    const auto data_dir = dir.path / "data";
    REQUIRE(run_cli("synth " + data_dir.string() +
                        " --classes 4 --images-per-class 6 --seed 3",
                    dir.path)
                .exit_code == 0);

    const auto config_path = dir.path / "eval.cfg";
    {
        std::ofstream cfg(config_path);
        cfg << "manifest = " << (data_dir / "manifest.tsv").string() << "\n"
            << "n_way = 3\nk_shot = 1\nq_query = 2\nn_tasks = 5\nseed = 9\n"
            << "preprocessing = raw, fused\n"
            << "pixels_target = 28 28\n";
    }
    const auto out_dir = dir.path / "reports";
    const CommandResult result =
        run_cli("eval " + config_path.string() + " --out " + out_dir.string(), dir.path);
    CHECK(result.exit_code == 0);
    CHECK(std::filesystem::exists(out_dir / "report_raw.txt"));
    CHECK(std::filesystem::exists(out_dir / "report_fused.txt"));
    CHECK(std::filesystem::exists(out_dir / "comparison.txt"));

    const nlohmann::json raw = nlohmann::json::parse(std::ifstream(out_dir / "report_raw.json"));
    CHECK(raw["n_tasks"] == 5);
    CHECK(raw["provenance"]["preprocessing"] == "raw");
    CHECK(raw["provenance"]["arm"] == "raw");

    const nlohmann::json fused =
        nlohmann::json::parse(std::ifstream(out_dir / "report_fused.json"));
    CHECK(fused["provenance"]["preprocessing"] == "fused");
    CHECK(fused["provenance"]["fusion_r"].get<std::string>().substr(0, 4) == "0.15");
}

TEST_CASE("eval config errors name the key and exit 2") {
    testutil::TempDir dir("cli_eval_bad");
    const auto config_path = dir.path / "eval.cfg";
    std::ofstream(config_path) << "n_way = 5\n";
    const CommandResult result = run_cli("eval " + config_path.string(), dir.path);
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("manifest") != std::string::npos);
}

TEST_CASE("bench writes parseable results") {
    testutil::TempDir dir("cli_bench");
    const auto out = dir.path / "bench.json";
    const CommandResult result =
        run_cli("bench --dims 8x8 --iters 10 --out " + out.string(), dir.path);
    CHECK(result.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(std::ifstream(out));
    REQUIRE(doc.size() == 2);
    CHECK(doc[0]["strategy"] == "box");
    CHECK(doc[1]["strategy"] == "gradient");
    CHECK(doc[0]["median_s"].is_number());
}

TEST_CASE("missing input is a data error") {
    testutil::TempDir dir("cli_missing");
    const CommandResult result = run_cli(
        "transform " + (dir.path / "nope.pgm").string() + " " + (dir.path / "o.ffs").string(),
        dir.path);
    CHECK(result.exit_code == 2);
}
