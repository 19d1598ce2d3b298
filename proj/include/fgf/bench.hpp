#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fgf/error.hpp"
#include "fgf/guided_filter.hpp"
#include "fgf/image.hpp"
#include "fgf/params.hpp"

namespace fgf {

inline constexpr double psnr_cap_db = 99.0;

template <typename T>
double mean_squared_error(const PlaneSet<T>& a, const PlaneSet<T>& b) {
    if (a.channels() != b.channels()) throw ShapeError("channel counts differ");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t c = 0; c < a.channels(); ++c) {
        require_same_shape(a[c], b[c], "mean_squared_error");
        auto x = a[c].values();
        auto y = b[c].values();
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = static_cast<double>(x[i]) - static_cast<double>(y[i]);
            sum += d * d;
        }
        n += x.size();
    }
    return sum / static_cast<double>(n);
}

/// 10 log10(1 / MSE) for unit peak, capped at 99 dB once MSE < 1e-10.
template <typename T>
double psnr(const PlaneSet<T>& a, const PlaneSet<T>& b) {
    const double mse = mean_squared_error(a, b);
    if (mse < 1e-10) return psnr_cap_db;
    return std::min(psnr_cap_db, 10.0 * std::log10(1.0 / mse));
}

template <typename T>
double psnr(const Plane<T>& a, const Plane<T>& b) {
    return psnr(PlaneSet<T>(a), PlaneSet<T>(b));
}

template <typename T>
double max_abs_error(const PlaneSet<T>& a, const PlaneSet<T>& b) {
    if (a.channels() != b.channels()) throw ShapeError("channel counts differ");
    double worst = 0.0;
    for (std::size_t c = 0; c < a.channels(); ++c) {
        require_same_shape(a[c], b[c], "max_abs_error");
        auto x = a[c].values();
        auto y = b[c].values();
        for (std::size_t i = 0; i < x.size(); ++i) {
            worst = std::max(worst, std::abs(static_cast<double>(x[i]) - static_cast<double>(y[i])));
        }
    }
    return worst;
}

template <typename T>
double max_abs_error(const Plane<T>& a, const Plane<T>& b) {
    return max_abs_error(PlaneSet<T>(a), PlaneSet<T>(b));
}

/// Deterministic benchmark input: a smooth ramp with a few hard edges and
/// uniform noise, in [0,1].
inline ImagePlane synthetic_plane(std::size_t width, std::size_t height, std::uint32_t seed = 7) {
    ImagePlane out(width, height);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<float> noise(-0.05f, 0.05f);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const double ramp = 0.25 + 0.5 * static_cast<double>(x) / static_cast<double>(width);
            const bool block = ((x * 8 / width) + (y * 8 / height)) % 2 == 0;
            const double v = ramp + (block ? 0.15 : -0.15) + noise(rng);
            out(x, y) = static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
    }
    return out;
}

struct TimingSummary {
    double median_ms = 0.0;
    double min_ms = 0.0;
    double max_ms = 0.0;
};

/// Runs `fn` warmup + runs times and summarizes the timed runs.
template <typename Fn>
TimingSummary time_runs(Fn&& fn, int runs, int warmup = 1) {
    if (runs < 1) throw ParameterError("need at least one timed run");
    for (int i = 0; i < warmup; ++i) fn();
    std::vector<double> ms;
    ms.reserve(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        ms.push_back(
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count());
    }
    std::sort(ms.begin(), ms.end());
    const std::size_t n = ms.size();
    const double median = n % 2 ? ms[n / 2] : 0.5 * (ms[n / 2 - 1] + ms[n / 2]);
    return {median, ms.front(), ms.back()};
}

struct BenchRow {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 0;
    int radius = 0;
    double epsilon = 0.0;
    int subsample = 1;
    TimingSummary time;
    double speedup = 1.0;
    double psnr_db = psnr_cap_db;
    double max_err = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    unsigned threads = 1;

    static constexpr const char* csv_header = "dims,channels,r,eps,s,time_ms,speedup,psnr_db,max_err";

    std::optional<BenchRow> find(int subsample) const {
        for (const auto& r : rows) {
            if (r.subsample == subsample) return r;
        }
        return std::nullopt;
    }

    std::string to_csv() const {
        std::string out = std::string(csv_header) + "\n";
        char line[256];
        for (const auto& r : rows) {
            std::snprintf(line, sizeof(line), "%zux%zu,%zu,%d,%.9g,%d,%.3f,%.3f,%.3f,%.6g\n",
                          r.width, r.height, r.channels, r.radius, r.epsilon, r.subsample,
                          r.time.median_ms, r.speedup, r.psnr_db, r.max_err);
            out += line;
        }
        return out;
    }
};

struct BenchOptions {
    int runs = 5;
    int warmup = 1;
};

/// Times fast_guided_filter at each ratio and compares every output with the
/// s = 1 output. The s = 1 run is always measured since it is the reference
/// for both speedup and degradation.
template <typename T>
BenchReport run_bench(const Plane<T>& I, const PlaneSet<T>& p, const FilterParams& params,
                      const std::vector<int>& ratios, const BenchOptions& options = {}) {
    if (ratios.empty()) throw ParameterError("bench needs at least one subsample ratio");
    for (int s : ratios) {
        if (s < 1) throw ParameterError("subsample ratios must be >= 1");
    }
    params.validate();

    const auto run = [&](int s) {
        FilterParams fp = params;
        fp.subsample = s;
        std::optional<PlaneSet<T>> out;
        const auto timing = time_runs([&] { out = fast_guided_filter(I, p, fp); }, options.runs,
                                      options.warmup);
        return std::pair{timing, std::move(*out)};
    };

    auto [ref_time, reference] = run(1);
    BenchReport report;
    report.threads = params.threads;
    for (int s : ratios) {
        BenchRow row;
        row.width = I.width();
        row.height = I.height();
        row.channels = p.channels();
        row.radius = params.radius;
        row.epsilon = params.epsilon;
        row.subsample = s;
        if (s == 1) {
            row.time = ref_time;
            row.speedup = 1.0;
            row.psnr_db = psnr_cap_db;
            row.max_err = 0.0;
        } else {
            auto [timing, out] = run(s);
            row.time = timing;
            row.speedup = ref_time.median_ms / timing.median_ms;
            row.psnr_db = psnr(out, reference);
            row.max_err = max_abs_error(out, reference);
        }
        report.rows.push_back(row);
    }
    return report;
}

} // namespace fgf
