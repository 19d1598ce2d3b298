#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "fgf/error.hpp"
#include "fgf/image.hpp"
#include "fgf/parallel.hpp"

namespace fgf {

/// Square window of radius r centred on a pixel, clipped to the image.
struct WindowSpec {
    std::size_t radius;

    /// Number of in-bounds samples along one axis at position `pos`.
    std::size_t extent(std::size_t pos, std::size_t length) const noexcept {
        const std::size_t lo = pos >= radius ? pos - radius : 0;
        const std::size_t hi = std::min(length - 1, pos + radius);
        return hi - lo + 1;
    }

    /// |w_k| for pixel (x, y) of a width x height raster.
    std::size_t count(std::size_t x, std::size_t y, std::size_t width,
                      std::size_t height) const noexcept {
        return extent(x, width) * extent(y, height);
    }
};

namespace detail {

inline std::size_t checked_radius(int radius) {
    if (radius < 1) throw ParameterError("box filter radius must be >= 1");
    return static_cast<std::size_t>(radius);
}

// Running sum along one row of column sums, written out as window means.
template <typename T>
void horizontal_means(const double* col, std::span<T> out, const double* inv_cx,
                      double inv_cy, std::size_t r) {
    const std::size_t w = out.size();
    double s = 0.0;
    const std::size_t first_hi = std::min(w - 1, r);
    for (std::size_t i = 0; i <= first_hi; ++i) s += col[i];
    out[0] = static_cast<T>(s * inv_cx[0] * inv_cy);

    // Three regimes: window grows, slides, shrinks. When r >= w the middle
    // regime is empty and the first two overlap, hence the explicit bounds.
    std::size_t x = 1;
    const std::size_t grow_end = std::min(w, r + 1);
    for (; x < grow_end; ++x) {
        if (x + r < w) s += col[x + r];
        out[x] = static_cast<T>(s * inv_cx[x] * inv_cy);
    }
    const std::size_t slide_end = w > r ? w - r : 0;
    for (; x < slide_end; ++x) {
        s += col[x + r] - col[x - r - 1];
        out[x] = static_cast<T>(s * inv_cx[x] * inv_cy);
    }
    for (; x < w; ++x) {
        if (x + r < w) s += col[x + r];
        s -= col[x - r - 1];
        out[x] = static_cast<T>(s * inv_cx[x] * inv_cy);
    }
}

// Mean filter over N equally sized planes sharing one set of window counts.
// Vertical running sums are kept per column in 64-bit; each output row is then
// a horizontal running sum over those column sums. Cost is O(w*h) for any r.
template <typename T, std::size_t N>
void box_mean_n(const std::array<const Plane<T>*, N>& src, const std::array<Plane<T>*, N>& dst,
                std::size_t r, unsigned threads) {
    const std::size_t w = src[0]->width();
    const std::size_t h = src[0]->height();
    const WindowSpec window{r};

    std::vector<double> inv_cx(w);
    for (std::size_t x = 0; x < w; ++x) inv_cx[x] = 1.0 / static_cast<double>(window.extent(x, w));

    for_each_band(h, threads, [&](std::size_t y_begin, std::size_t y_end) {
        if (y_begin == y_end) return;
        std::vector<double> col(N * w, 0.0);

        const auto accumulate = [&](std::size_t row, double sign) {
            for (std::size_t n = 0; n < N; ++n) {
                const T* in = src[n]->row(row).data();
                double* c = col.data() + n * w;
                for (std::size_t x = 0; x < w; ++x) c[x] += sign * static_cast<double>(in[x]);
            }
        };
        const auto slide = [&](std::size_t add_row, std::size_t sub_row) {
            for (std::size_t n = 0; n < N; ++n) {
                const T* add = src[n]->row(add_row).data();
                const T* sub = src[n]->row(sub_row).data();
                double* c = col.data() + n * w;
                for (std::size_t x = 0; x < w; ++x) {
                    c[x] += static_cast<double>(add[x]) - static_cast<double>(sub[x]);
                }
            }
        };

        const std::size_t init_lo = y_begin >= r ? y_begin - r : 0;
        const std::size_t init_hi = std::min(h - 1, y_begin + r);
        for (std::size_t yy = init_lo; yy <= init_hi; ++yy) accumulate(yy, 1.0);

        for (std::size_t y = y_begin; y < y_end; ++y) {
            if (y > y_begin) {
                const bool add = y + r < h;
                const bool sub = y > r;
                if (add && sub) {
                    slide(y + r, y - r - 1);
                } else if (add) {
                    accumulate(y + r, 1.0);
                } else if (sub) {
                    accumulate(y - r - 1, -1.0);
                }
            }
            const double inv_cy = 1.0 / static_cast<double>(window.extent(y, h));
            for (std::size_t n = 0; n < N; ++n) {
                horizontal_means(col.data() + n * w, dst[n]->row(y), inv_cx.data(), inv_cy, r);
            }
        }
    });
}

} // namespace detail

/// Mean of every clipped (2r+1)x(2r+1) window, normalized by the in-bounds
/// pixel count. Runtime does not depend on the radius.
template <typename T>
Plane<T> box_mean(const Plane<T>& src, int radius, unsigned threads = 1) {
    const std::size_t r = detail::checked_radius(radius);
    Plane<T> out(src.width(), src.height());
    detail::box_mean_n<T, 1>({&src}, {&out}, r, threads);
    return out;
}

/// Two box means computed in one sweep with shared window counts.
template <typename T>
std::pair<Plane<T>, Plane<T>> box_mean_pair(const Plane<T>& a, const Plane<T>& b, int radius,
                                            unsigned threads = 1) {
    const std::size_t r = detail::checked_radius(radius);
    require_same_shape(a, b, "box_mean_pair");
    std::pair<Plane<T>, Plane<T>> out{Plane<T>(a.width(), a.height()),
                                      Plane<T>(a.width(), a.height())};
    detail::box_mean_n<T, 2>({&a, &b}, {&out.first, &out.second}, r, threads);
    return out;
}

} // namespace fgf
