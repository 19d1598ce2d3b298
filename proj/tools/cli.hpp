#pragma once

#include <cstdlib>
#include <exception>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fgf/fgf.hpp"

namespace fgf::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_processing_error = 1;
inline constexpr int exit_usage_error = 2;

/// GF_THREADS caps the worker count; unset or invalid means 1.
inline unsigned default_threads() {
    if (const char* env = std::getenv("GF_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

struct Options {
    std::string input;
    std::string guide;
    std::string output;
    int radius = 4;
    double epsilon = 0.04;
    int subsample = 4;
    std::string subsample_method = "nearest";
    bool exact = false;
    double gain = 1.0;
    int bit_depth = 8;
    bool per_channel = false;
    unsigned threads = 1;

    // bench
    std::size_t size = 2048;
    std::vector<int> ratios{1, 2, 4, 8};
    int runs = 5;

    FilterParams params() const {
        FilterParams p;
        p.radius = radius;
        p.epsilon = epsilon;
        p.subsample = exact ? 1 : subsample;
        p.subsample_method = parse_subsample_method(subsample_method);
        p.threads = threads;
        return p;
    }

    SmoothGuidance guidance() const {
        return per_channel ? SmoothGuidance::per_channel : SmoothGuidance::luminance;
    }
};

inline void add_filter_flags(CLI::App& cmd, Options& o, const AppPreset& preset) {
    o.radius = preset.radius;
    o.epsilon = preset.epsilon;
    o.subsample = preset.subsample;
    cmd.add_option("--radius,-r", o.radius, "window radius in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--eps,-e", o.epsilon, "regularization, squared [0,1] intensity units")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--subsample,-s", o.subsample, "subsampling ratio (1 = exact filter)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--subsample-method", o.subsample_method, "decimation of I and p")
        ->check(CLI::IsMember({"nearest", "bilinear"}))
        ->capture_default_str();
    cmd.add_flag("--exact", o.exact, "force subsample ratio 1");
    cmd.add_option("--threads", o.threads, "worker threads (default: GF_THREADS or 1)")
        ->check(CLI::PositiveNumber);
}

inline void add_io_flags(CLI::App& cmd, Options& o, const std::string& input_help,
                         const std::string& guide_help, bool guide_required) {
    cmd.add_option("--input,-i", o.input, input_help)->required();
    if (!guide_help.empty()) {
        auto* guide = cmd.add_option("--guide,-g", o.guide, guide_help);
        if (guide_required) guide->required();
    }
    cmd.add_option("--output,-o", o.output, "output image (.png, .pgm, .ppm)")->required();
    cmd.add_option("--bit-depth", o.bit_depth, "output bit depth")
        ->check(CLI::IsMember({8, 16}))
        ->capture_default_str();
}

inline int run_bench_command(const Options& o, std::ostream& out, std::ostream& err) {
    const MultiImage input = o.input.empty() ? MultiImage(synthetic_plane(o.size, o.size))
                                             : decode(o.input);
    const ImagePlane I = o.guide.empty() ? to_grayscale(input) : to_grayscale(decode(o.guide));
    FilterParams params = o.params();
    params.subsample = 1;

    BenchOptions options;
    options.runs = o.runs;
    const BenchReport report = run_bench(I, input, params, o.ratios, options);
    const std::string csv = report.to_csv();
    if (o.output.empty()) {
        out << csv;
    } else {
        std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError(IoErrc::write_failed, o.output);
        file << csv;
    }
    for (const auto& row : report.rows) {
        err << "s=" << row.subsample << "  median " << row.time.median_ms << " ms (min "
            << row.time.min_ms << ", max " << row.time.max_ms << ")  speedup " << row.speedup
            << "x  psnr " << row.psnr_db << " dB  max_err " << row.max_err << "\n";
    }
    if (const auto s4 = report.find(4)) {
        err << "measured speedup at s=4: " << s4->speedup
            << "x (reported figure for optimized native code: >10x)\n";
    }
    err << "threads: " << report.threads << "\n";
    return exit_ok;
}

/// Entry point shared by the fgf executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Guided filter and fast (subsampled) guided filter"};
    app.require_subcommand(1);
    Options o;
    o.threads = default_threads();

    auto* smooth_cmd = app.add_subcommand("smooth", "edge-preserving smoothing");
    Options smooth_o = o;
    add_filter_flags(*smooth_cmd, smooth_o, smooth_preset);
    add_io_flags(*smooth_cmd, smooth_o, "image to smooth", "", false);
    smooth_cmd->add_flag("--per-channel", smooth_o.per_channel,
                         "guide each channel by itself instead of by luminance");

    auto* enhance_cmd = app.add_subcommand("enhance", "detail enhancement");
    Options enhance_o = o;
    add_filter_flags(*enhance_cmd, enhance_o, enhance_preset);
    add_io_flags(*enhance_cmd, enhance_o, "image to enhance", "", false);
    enhance_o.gain = enhance_preset.gain;
    enhance_cmd->add_option("--gain", enhance_o.gain, "detail amplification")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    enhance_cmd->add_flag("--per-channel", enhance_o.per_channel,
                          "guide each channel by itself instead of by luminance");

    auto* flash_cmd = app.add_subcommand("flash-denoise", "flash/no-flash denoising");
    Options flash_o = o;
    add_filter_flags(*flash_cmd, flash_o, flash_denoise_preset);
    add_io_flags(*flash_cmd, flash_o, "noisy no-flash image", "flash image (guidance)", true);

    auto* feather_cmd = app.add_subcommand("feather", "guided feathering of a mask");
    Options feather_o = o;
    add_filter_flags(*feather_cmd, feather_o, feather_preset);
    add_io_flags(*feather_cmd, feather_o, "binary or rough mask", "guide image", true);

    auto* filter_cmd = app.add_subcommand("filter", "guided filter with explicit guidance");
    Options filter_o = o;
    add_filter_flags(*filter_cmd, filter_o, smooth_preset);
    add_io_flags(*filter_cmd, filter_o, "filtering input p", "guidance image I", true);

    auto* bench_cmd = app.add_subcommand("bench", "time the filter across subsample ratios");
    Options bench_o = o;
    add_filter_flags(*bench_cmd, bench_o, enhance_preset);
    bench_cmd->add_option("--input,-i", bench_o.input, "filtering input (default: synthetic)");
    bench_cmd->add_option("--guide,-g", bench_o.guide, "guidance (default: the input)");
    bench_cmd->add_option("--size", bench_o.size, "side of the synthetic square image")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--ratios", bench_o.ratios, "subsample ratios to time")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--runs", bench_o.runs, "timed runs per ratio (median reported)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--output,-o", bench_o.output, "CSV destination (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* active = &app;
        for (const auto* sub : app.get_subcommands()) active = sub;
        err << active->help();
        return exit_usage_error;
    }

    try {
        if (*bench_cmd) return run_bench_command(bench_o, out, err);

        if (*smooth_cmd) {
            encode(smooth(decode(smooth_o.input), smooth_o.params(), smooth_o.guidance()),
                   smooth_o.output, smooth_o.bit_depth);
        } else if (*enhance_cmd) {
            encode(enhance(decode(enhance_o.input), enhance_o.gain, enhance_o.params(),
                           enhance_o.guidance()),
                   enhance_o.output, enhance_o.bit_depth);
        } else if (*flash_cmd) {
            encode(flash_denoise(decode(flash_o.input), decode(flash_o.guide), flash_o.params()),
                   flash_o.output, flash_o.bit_depth);
        } else if (*feather_cmd) {
            const MultiImage mask = decode(feather_o.input);
            if (mask.channels() != 1) {
                throw FormatError("feather mask must be a single-channel image");
            }
            encode(feather(mask[0], decode(feather_o.guide), feather_o.params()),
                   feather_o.output, feather_o.bit_depth);
        } else if (*filter_cmd) {
            const ImagePlane I = to_grayscale(decode(filter_o.guide));
            encode(apply_guided_filter(I, decode(filter_o.input), filter_o.params()),
                   filter_o.output, filter_o.bit_depth);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_processing_error;
    }
    return exit_ok;
}

} // namespace fgf::cli
