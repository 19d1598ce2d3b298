#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace fgf {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::initializer_list<std::string> args) {
    std::vector<std::string> owned{"fgf"};
    owned.insert(owned.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : owned) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("fgf_cli_" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        std::vector<ImagePlane> rgb;
        for (std::uint32_t c = 0; c < 3; ++c) rgb.push_back(synthetic_plane(72, 56, 20 + c));
        image_ = MultiImage(rgb);
        encode(image_, path("in.ppm"));
        image_ = decode(path("in.ppm"));
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
    MultiImage image_{ImagePlane(1, 1)};
};

TEST_F(Cli, MissingInputIsUsageError) {
    const Result r = run_cli({"smooth", "--output", path("o.png")});
    EXPECT_EQ(r.code, cli::exit_usage_error);
    EXPECT_NE(r.err.find("--input"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("o.png")));
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, cli::exit_usage_error);
    EXPECT_EQ(run_cli({"sharpen"}).code, cli::exit_usage_error);
    EXPECT_EQ(run_cli({"smooth", "-i", path("in.ppm"), "-o", path("o.png"), "--subsample-method",
                       "bicubic"})
                  .code,
              cli::exit_usage_error);
    EXPECT_EQ(run_cli({"smooth", "-i", path("in.ppm"), "-o", path("o.png"), "--radius", "0"}).code,
              cli::exit_usage_error);
    EXPECT_EQ(run_cli({"smooth", "-i", path("in.ppm"), "-o", path("o.png"), "--bit-depth", "12"})
                  .code,
              cli::exit_usage_error);
    EXPECT_EQ(run_cli({"flash-denoise", "-i", path("in.ppm"), "-o", path("o.png")}).code,
              cli::exit_usage_error);
}

TEST_F(Cli, HelpSucceeds) {
    const Result r = run_cli({"--help"});
    EXPECT_EQ(r.code, cli::exit_ok);
    EXPECT_NE(r.out.find("feather"), std::string::npos);
}

TEST_F(Cli, ProcessingErrors) {
    EXPECT_EQ(run_cli({"smooth", "-i", path("missing.png"), "-o", path("o.png")}).code,
              cli::exit_processing_error);
    EXPECT_EQ(run_cli({"smooth", "-i", path("in.ppm"), "-o", path("o.tiff")}).code,
              cli::exit_processing_error);
    // A three-channel mask is rejected.
    EXPECT_EQ(run_cli({"feather", "-i", path("in.ppm"), "-g", path("in.ppm"), "-o", path("o.png")})
                  .code,
              cli::exit_processing_error);
    // Subsample ratio larger than the image.
    EXPECT_EQ(run_cli({"smooth", "-i", path("in.ppm"), "-o", path("o.png"), "-s", "64"}).code,
              cli::exit_processing_error);
}

TEST_F(Cli, SmoothDefaultsMatchPreset) {
    ASSERT_EQ(run_cli({"smooth", "-i", path("in.ppm"), "-o", path("o.ppm")}).code, cli::exit_ok);
    const MultiImage expected = smooth(image_, smooth_preset.params());
    encode(expected, path("expected.ppm"));
    EXPECT_EQ(detail::read_bytes(path("o.ppm")), detail::read_bytes(path("expected.ppm")));
}

TEST_F(Cli, FilterExactMatchesLibrary) {
    ASSERT_EQ(run_cli({"filter", "-i", path("in.ppm"), "-g", path("in.ppm"), "-o", path("o.png"),
                       "-r", "6", "-e", "0.01", "-s", "1", "--bit-depth", "16"})
                  .code,
              cli::exit_ok);
    FilterParams params;
    params.radius = 6;
    params.epsilon = 0.01;
    params.subsample = 1;
    encode(guided_filter(to_grayscale(image_), image_, params), path("expected.png"), 16);
    EXPECT_EQ(detail::read_bytes(path("o.png")), detail::read_bytes(path("expected.png")));

    ASSERT_EQ(run_cli({"filter", "-i", path("in.ppm"), "-g", path("in.ppm"), "-o", path("x.png"),
                       "-r", "6", "-e", "0.01", "-s", "4", "--exact", "--bit-depth", "16"})
                  .code,
              cli::exit_ok);
    EXPECT_EQ(detail::read_bytes(path("x.png")), detail::read_bytes(path("expected.png")));
}

TEST_F(Cli, AllApplicationsRun) {
    encode(to_grayscale(image_), path("mask.pgm"));
    EXPECT_EQ(run_cli({"enhance", "-i", path("in.ppm"), "-o", path("e.png"), "--gain", "3"}).code,
              cli::exit_ok);
    EXPECT_EQ(run_cli({"flash-denoise", "-i", path("in.ppm"), "-g", path("in.ppm"), "-o",
                       path("f.png")})
                  .code,
              cli::exit_ok);
    EXPECT_EQ(run_cli({"feather", "-i", path("mask.pgm"), "-g", path("in.ppm"), "-o",
                       path("m.pgm"), "-r", "8"})
                  .code,
              cli::exit_ok);
    EXPECT_EQ(decode(path("m.pgm")).channels(), 1u);
    EXPECT_EQ(decode(path("e.png")).channels(), 3u);
}

TEST_F(Cli, OutputIsDeterministic) {
    for (const char* name : {"a.png", "b.png"}) {
        ASSERT_EQ(run_cli({"enhance", "-i", path("in.ppm"), "-o", path(name)}).code, cli::exit_ok);
    }
    EXPECT_EQ(detail::read_bytes(path("a.png")), detail::read_bytes(path("b.png")));
}

TEST_F(Cli, BenchWritesCsv) {
    const Result r = run_cli({"bench", "--size", "64", "--ratios", "1,2,4", "--runs", "1", "-r",
                              "4"});
    ASSERT_EQ(r.code, cli::exit_ok) << r.err;
    EXPECT_EQ(r.out.rfind("dims,channels,r,eps,s,time_ms,speedup,psnr_db,max_err\n64x64,1,4,", 0),
              0u)
        << r.out;
    EXPECT_NE(r.err.find("measured speedup at s=4"), std::string::npos);

    ASSERT_EQ(run_cli({"bench", "-i", path("in.ppm"), "--ratios", "2", "--runs", "1", "-o",
                       path("b.csv")})
                  .code,
              cli::exit_ok);
    const auto csv = detail::read_bytes(path("b.csv"));
    const std::string text(csv.begin(), csv.end());
    EXPECT_NE(text.find("\n72x56,3,16,0.01,2,"), std::string::npos) << text;
}

int exit_status(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(Cli, ExecutableExitCodes) {
    const std::string exe = FGF_CLI_PATH;
    const std::string quiet = " >/dev/null 2>&1";
    EXPECT_EQ(exit_status(exe + " smooth --output " + path("o.png") + quiet), 2);
    EXPECT_EQ(exit_status(exe + " smooth -i " + path("nope.png") + " -o " + path("o.png") + quiet),
              1);
    EXPECT_EQ(exit_status(exe + " smooth -i " + path("in.ppm") + " -o " + path("o.png") + quiet),
              0);
    EXPECT_TRUE(fs::exists(path("o.png")));
}

} // namespace
} // namespace fgf
