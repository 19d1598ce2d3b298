#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fgf/box_filter.hpp"
#include "fgf/error.hpp"
#include "fgf/image.hpp"
#include "fgf/params.hpp"
#include "fgf/resample.hpp"

namespace fgf {

/// Window statistics of guidance I and input p at the resolution they were
/// computed at. var_I is clamped to be non-negative.
template <typename T>
struct LocalStatistics {
    Plane<T> mean_I;
    Plane<T> mean_p;
    Plane<T> var_I;
    Plane<T> cov_Ip;
};

/// Window-averaged coefficients of the local linear model q = a*I + b.
template <typename T>
struct CoefficientMaps {
    Plane<T> mean_a;
    Plane<T> mean_b;
};

/// Wall time of the three stages of the subsampled filter, in milliseconds.
struct StageTimings {
    double subsample_ms = 0.0;
    double coefficients_ms = 0.0;
    double upsample_blend_ms = 0.0;
};

namespace detail {

inline void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
}

// Guidance moments shared by every filtered channel.
template <typename T>
struct GuidanceMoments {
    Plane<T> mean_I;
    Plane<T> var_I;
};

template <typename T>
GuidanceMoments<T> guidance_moments(const Plane<T>& I, int radius, unsigned threads) {
    auto [mean_I, corr_I] = box_mean_pair(I, elementwise(I, I, ElementOp::mul), radius, threads);
    auto m = mean_I.values();
    auto c = corr_I.values();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double mi = m[i];
        c[i] = static_cast<T>(std::max(0.0, static_cast<double>(c[i]) - mi * mi));
    }
    return {std::move(mean_I), std::move(corr_I)};
}

// Input-dependent moments: returns (mean_p, cov_Ip).
template <typename T>
std::pair<Plane<T>, Plane<T>> cross_moments(const Plane<T>& I, const Plane<T>& p,
                                            const Plane<T>& mean_I, int radius, unsigned threads) {
    auto [mean_p, corr_Ip] = box_mean_pair(p, elementwise(I, p, ElementOp::mul), radius, threads);
    auto mi = mean_I.values();
    auto mp = mean_p.values();
    auto c = corr_Ip.values();
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = static_cast<T>(static_cast<double>(c[i]) -
                              static_cast<double>(mi[i]) * static_cast<double>(mp[i]));
    }
    return {std::move(mean_p), std::move(corr_Ip)};
}

template <typename T>
CoefficientMaps<T> coefficients_from_moments(const GuidanceMoments<T>& g, const Plane<T>& I,
                                             const Plane<T>& p, int radius, double epsilon,
                                             unsigned threads) {
    auto [mean_p, cov_Ip] = cross_moments(I, p, g.mean_I, radius, threads);
    // a and b overwrite cov_Ip and mean_p in place.
    auto mi = g.mean_I.values();
    auto var = g.var_I.values();
    auto a = cov_Ip.values();
    auto b = mean_p.values();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = static_cast<double>(a[i]) / (static_cast<double>(var[i]) + epsilon);
        b[i] = static_cast<T>(static_cast<double>(b[i]) - ai * static_cast<double>(mi[i]));
        a[i] = static_cast<T>(ai);
    }
    auto [mean_a, mean_b] = box_mean_pair(cov_Ip, mean_p, radius, threads);
    return {std::move(mean_a), std::move(mean_b)};
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
        .count();
}

} // namespace detail

template <typename T>
LocalStatistics<T> local_statistics(const Plane<T>& I, const Plane<T>& p, int radius,
                                    unsigned threads = 1) {
    require_same_shape(I, p, "local_statistics");
    auto g = detail::guidance_moments(I, radius, threads);
    auto [mean_p, cov_Ip] = detail::cross_moments(I, p, g.mean_I, radius, threads);
    return {std::move(g.mean_I), std::move(mean_p), std::move(g.var_I), std::move(cov_Ip)};
}

/// Linear coefficients a = cov_Ip / (var_I + eps), b = mean_p - a * mean_I,
/// each averaged once more over the window.
template <typename T>
CoefficientMaps<T> compute_coefficients(const Plane<T>& I, const Plane<T>& p, int radius,
                                        double epsilon, unsigned threads = 1) {
    require_same_shape(I, p, "compute_coefficients");
    detail::check_epsilon(epsilon);
    auto g = detail::guidance_moments(I, radius, threads);
    return detail::coefficients_from_moments(g, I, p, radius, epsilon, threads);
}

/// q = mean_a * I + mean_b. No clamping.
template <typename T>
Plane<T> blend_output(const CoefficientMaps<T>& coeffs, const Plane<T>& I) {
    require_same_shape(coeffs.mean_a, coeffs.mean_b, "blend_output coefficients");
    require_same_shape(coeffs.mean_a, I, "blend_output");
    Plane<T> q(I.width(), I.height());
    auto a = coeffs.mean_a.values();
    auto b = coeffs.mean_b.values();
    auto g = I.values();
    auto dst = q.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = static_cast<T>(static_cast<double>(a[i]) * static_cast<double>(g[i]) +
                                static_cast<double>(b[i]));
    }
    return q;
}

namespace detail {

template <typename T>
void check_inputs(const Plane<T>& I, std::span<const Plane<T>> p, const FilterParams& params) {
    params.validate();
    for (const auto& channel : p) require_same_shape(I, channel, "guidance vs filtering input");
}

template <typename T>
std::vector<Plane<T>> guided_filter_planes(const Plane<T>& I, std::span<const Plane<T>> p,
                                           const FilterParams& params) {
    check_inputs(I, p, params);
    const auto g = guidance_moments(I, params.radius, params.threads);
    std::vector<Plane<T>> out;
    out.reserve(p.size());
    for (const auto& channel : p) {
        const auto coeffs = coefficients_from_moments(g, I, channel, params.radius,
                                                      params.epsilon, params.threads);
        out.push_back(blend_output(coeffs, I));
    }
    return out;
}

// q = upsample(mean_a) * I + upsample(mean_b) in a single pass over the output.
template <typename T>
Plane<T> upsample_blend(const CoefficientMaps<T>& c, const Plane<T>& I) {
    const std::size_t w = I.width();
    const std::size_t h = I.height();
    BilinearRowSampler<T> up_a(c.mean_a, w, h);
    BilinearRowSampler<T> up_b(c.mean_b, w, h);
    Plane<T> q(w, h);
    for (std::size_t y = 0; y < h; ++y) {
        const auto ra = up_a.rows_for(y);
        const auto rb = up_b.rows_for(y);
        const T* guide = I.row(y).data();
        T* dst = q.row(y).data();
        for (std::size_t x = 0; x < w; ++x) {
            const T a = ra.upper[x] + ra.frac * (ra.lower[x] - ra.upper[x]);
            const T b = rb.upper[x] + rb.frac * (rb.lower[x] - rb.upper[x]);
            dst[x] = a * guide[x] + b;
        }
    }
    return q;
}

template <typename T>
std::vector<Plane<T>> fast_guided_filter_planes(const Plane<T>& I, std::span<const Plane<T>> p,
                                                const FilterParams& params,
                                                StageTimings* timings) {
    check_inputs(I, p, params);
    const int s = params.subsample;
    if (s > 1 && static_cast<std::size_t>(s) >= std::min(I.width(), I.height())) {
        throw ParameterError("subsample ratio " + std::to_string(s) +
                             " must be smaller than the image's shorter side (" +
                             std::to_string(std::min(I.width(), I.height())) + ")");
    }
    const ResampleSpec spec{s, params.subsample_method};
    const int r = params.low_res_radius();
    StageTimings local;
    StageTimings& t = timings ? *timings : local;

    // At s = 1 the low-resolution views alias the inputs.
    auto start = std::chrono::steady_clock::now();
    std::vector<Plane<T>> decimated;
    decimated.reserve(s > 1 ? p.size() + 1 : 0);
    std::vector<const Plane<T>*> p_low;
    const Plane<T>* I_low = &I;
    if (s > 1) {
        decimated.push_back(subsample(I, spec));
        for (const auto& channel : p) decimated.push_back(subsample(channel, spec));
        I_low = &decimated[0];
        for (std::size_t c = 0; c < p.size(); ++c) p_low.push_back(&decimated[c + 1]);
    } else {
        for (const auto& channel : p) p_low.push_back(&channel);
    }
    t.subsample_ms = elapsed_ms(start);

    start = std::chrono::steady_clock::now();
    const auto g = guidance_moments(*I_low, r, params.threads);
    std::vector<CoefficientMaps<T>> coeffs;
    coeffs.reserve(p.size());
    for (const auto* channel : p_low) {
        coeffs.push_back(
            coefficients_from_moments(g, *I_low, *channel, r, params.epsilon, params.threads));
    }
    t.coefficients_ms = elapsed_ms(start);

    start = std::chrono::steady_clock::now();
    std::vector<Plane<T>> out;
    out.reserve(p.size());
    for (const auto& c : coeffs) {
        out.push_back(s == 1 ? blend_output(c, I) : upsample_blend(c, I));
    }
    t.upsample_blend_ms = elapsed_ms(start);
    return out;
}

} // namespace detail

/// Exact guided filter, every channel of p guided by the scalar image I.
/// params.subsample is ignored.
template <typename T>
PlaneSet<T> guided_filter(const Plane<T>& I, const PlaneSet<T>& p, const FilterParams& params) {
    return PlaneSet<T>(detail::guided_filter_planes(I, p.planes(), params));
}

template <typename T>
Plane<T> guided_filter(const Plane<T>& I, const Plane<T>& p, const FilterParams& params) {
    return std::move(detail::guided_filter_planes(I, std::span<const Plane<T>>(&p, 1), params)[0]);
}

/// Subsampled guided filter: statistics and coefficients are computed on
/// I and p decimated by params.subsample with radius max(1, round(r/s)); the
/// coefficient maps are upsampled bilinearly and blended with the
/// full-resolution I.
template <typename T>
PlaneSet<T> fast_guided_filter(const Plane<T>& I, const PlaneSet<T>& p, const FilterParams& params,
                               StageTimings* timings = nullptr) {
    return PlaneSet<T>(detail::fast_guided_filter_planes(I, p.planes(), params, timings));
}

template <typename T>
Plane<T> fast_guided_filter(const Plane<T>& I, const Plane<T>& p, const FilterParams& params,
                            StageTimings* timings = nullptr) {
    return std::move(
        detail::fast_guided_filter_planes(I, std::span<const Plane<T>>(&p, 1), params, timings)[0]);
}

/// Exact filter when params.subsample == 1, subsampled filter otherwise.
template <typename T>
PlaneSet<T> apply_guided_filter(const Plane<T>& I, const PlaneSet<T>& p,
                                const FilterParams& params) {
    return params.subsample == 1 ? guided_filter(I, p, params) : fast_guided_filter(I, p, params);
}

} // namespace fgf
