#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fgf/error.hpp"
#include "fgf/image.hpp"
#include "fgf/params.hpp"

namespace fgf {

struct ResampleSpec {
    int ratio = 1;
    SubsampleMethod method = SubsampleMethod::nearest;

    static std::size_t low_res_extent(std::size_t full, int ratio) noexcept {
        const auto s = static_cast<std::size_t>(ratio);
        return (full + s - 1) / s;
    }

    void validate() const {
        if (ratio < 1) throw ParameterError("resample ratio must be >= 1");
    }
};

/// Decimates by an integer ratio to ceil(w/s) x ceil(h/s).
/// nearest: the top-left sample of each s x s block.
/// bilinear: mean of the block, clipped at the right and bottom edges.
template <typename T>
Plane<T> subsample(const Plane<T>& src, const ResampleSpec& spec) {
    spec.validate();
    if (spec.ratio == 1) return src;

    const auto s = static_cast<std::size_t>(spec.ratio);
    const std::size_t w = src.width();
    const std::size_t h = src.height();
    const std::size_t lw = ResampleSpec::low_res_extent(w, spec.ratio);
    const std::size_t lh = ResampleSpec::low_res_extent(h, spec.ratio);
    Plane<T> out(lw, lh);

    if (spec.method == SubsampleMethod::nearest) {
        for (std::size_t y = 0; y < lh; ++y) {
            const auto in = src.row(y * s);
            auto dst = out.row(y);
            for (std::size_t x = 0; x < lw; ++x) dst[x] = in[x * s];
        }
        return out;
    }

    std::vector<double> acc(lw);
    for (std::size_t y = 0; y < lh; ++y) {
        std::fill(acc.begin(), acc.end(), 0.0);
        const std::size_t y_end = std::min(h, (y + 1) * s);
        for (std::size_t sy = y * s; sy < y_end; ++sy) {
            const auto in = src.row(sy);
            for (std::size_t x = 0; x < lw; ++x) {
                const std::size_t x_end = std::min(w, (x + 1) * s);
                double sum = 0.0;
                for (std::size_t sx = x * s; sx < x_end; ++sx) sum += in[sx];
                acc[x] += sum;
            }
        }
        const double rows = static_cast<double>(y_end - y * s);
        auto dst = out.row(y);
        for (std::size_t x = 0; x < lw; ++x) {
            const double cols = static_cast<double>(std::min(w, (x + 1) * s) - x * s);
            dst[x] = static_cast<T>(acc[x] / (rows * cols));
        }
    }
    return out;
}

namespace detail {

// Interpolation taps for one destination coordinate.
struct AxisTap {
    std::size_t lo;
    std::size_t hi;
    double frac;
};

// Pixel-centre alignment: src = (dst + 0.5) * (n_src / n_dst) - 0.5, clamped.
inline std::vector<AxisTap> bilinear_taps(std::size_t n_src, std::size_t n_dst) {
    std::vector<AxisTap> taps(n_dst);
    const double scale = static_cast<double>(n_src) / static_cast<double>(n_dst);
    const double max_pos = static_cast<double>(n_src - 1);
    for (std::size_t i = 0; i < n_dst; ++i) {
        const double pos = std::clamp((static_cast<double>(i) + 0.5) * scale - 0.5, 0.0, max_pos);
        const auto lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, n_src - 1);
        taps[i] = {lo, hi, pos - static_cast<double>(lo)};
    }
    return taps;
}

// Produces bilinearly upsampled rows one at a time. Horizontally interpolated
// source rows are cached, so each source row is expanded once when output
// rows are requested in increasing order.
template <typename T>
class BilinearRowSampler {
public:
    BilinearRowSampler(const Plane<T>& src, std::size_t target_width, std::size_t target_height)
        : src_(src),
          y_taps_(bilinear_taps(src.height(), target_height)),
          padded_(src.width() + 1),
          rows_{std::vector<T>(target_width), std::vector<T>(target_width)} {
        const auto taps = bilinear_taps(src.width(), target_width);
        x_lo_.reserve(taps.size());
        x_frac_.reserve(taps.size());
        for (const auto& t : taps) {
            x_lo_.push_back(t.lo);
            x_frac_.push_back(static_cast<T>(t.frac));
        }
    }

    std::size_t width() const noexcept { return x_lo_.size(); }

    // The two horizontally expanded source rows bracketing destination row y
    // and the vertical weight of the lower one.
    struct RowPair {
        const T* upper;
        const T* lower;
        T frac;
    };

    RowPair rows_for(std::size_t y) {
        const AxisTap& t = y_taps_[y];
        const T* upper = expanded(t.lo);
        const T* lower = expanded(t.hi);
        return {upper, lower, static_cast<T>(t.frac)};
    }

    // Writes destination row y into out (length width()).
    void sample_row(std::size_t y, std::span<T> out) {
        const auto [upper, lower, f] = rows_for(y);
        const std::size_t w = width();
        T* dst = out.data();
        if (f == T{0} || upper == lower) {
            std::copy(upper, upper + w, dst);
        } else {
            for (std::size_t x = 0; x < w; ++x) dst[x] = upper[x] + f * (lower[x] - upper[x]);
        }
    }

private:
    const T* expanded(std::size_t src_row) {
        for (std::size_t k = 0; k < 2; ++k) {
            if (cached_[k] == src_row) return rows_[k].data();
        }
        // Evict the slot holding the older (smaller) source row.
        const std::size_t slot = cached_[0] == npos ? 0
                                 : cached_[1] == npos ? 1
                                 : (cached_[0] < cached_[1] ? 0 : 1);
        // A copy with the last sample repeated lets every tap read lo and lo + 1.
        const auto in = src_.row(src_row);
        std::copy(in.begin(), in.end(), padded_.begin());
        padded_.back() = in.back();
        const T* p = padded_.data();
        const std::size_t* lo = x_lo_.data();
        const T* frac = x_frac_.data();
        T* out = rows_[slot].data();
        const std::size_t w = width();
        for (std::size_t x = 0; x < w; ++x) {
            const T a = p[lo[x]];
            const T b = p[lo[x] + 1];
            out[x] = a + frac[x] * (b - a);
        }
        cached_[slot] = src_row;
        return out;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const Plane<T>& src_;
    std::vector<AxisTap> y_taps_;
    std::vector<std::size_t> x_lo_;
    std::vector<T> x_frac_;
    std::vector<T> padded_;
    std::vector<T> rows_[2];
    std::size_t cached_[2] = {npos, npos};
};

inline void check_upsample_target(std::size_t src_w, std::size_t src_h, std::size_t dst_w,
                                  std::size_t dst_h) {
    if (dst_w < src_w || dst_h < src_h) {
        throw ParameterError("upsample target " + std::to_string(dst_w) + "x" +
                             std::to_string(dst_h) + " is smaller than source " +
                             std::to_string(src_w) + "x" + std::to_string(src_h));
    }
}

} // namespace detail

/// Bilinear upsampling with pixel-centre alignment. Equal source and target
/// sizes reproduce the input exactly.
template <typename T>
Plane<T> upsample_bilinear(const Plane<T>& src, std::size_t target_width,
                           std::size_t target_height) {
    detail::check_upsample_target(src.width(), src.height(), target_width, target_height);
    if (target_width == src.width() && target_height == src.height()) return src;

    Plane<T> out(target_width, target_height);
    detail::BilinearRowSampler<T> sampler(src, target_width, target_height);
    for (std::size_t y = 0; y < target_height; ++y) sampler.sample_row(y, out.row(y));
    return out;
}

} // namespace fgf
