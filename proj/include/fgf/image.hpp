#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fgf/error.hpp"

namespace fgf {

/// Single-channel raster, row-major. Intensities are nominally in [0,1],
/// intermediates such as linear coefficients may leave that range.
template <typename T>
class Plane {
public:
    using value_type = T;

    Plane(std::size_t width, std::size_t height, T fill = T{0})
        : width_(width), height_(height), data_(checked_area(width, height), fill) {}

    Plane(std::size_t width, std::size_t height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != checked_area(width, height)) {
            throw ShapeError("plane data length " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(width) + "x" +
                             std::to_string(height));
        }
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    T& operator()(std::size_t x, std::size_t y) noexcept { return data_[y * width_ + x]; }
    const T& operator()(std::size_t x, std::size_t y) const noexcept {
        return data_[y * width_ + x];
    }

    std::span<T> row(std::size_t y) noexcept { return {data_.data() + y * width_, width_}; }
    std::span<const T> row(std::size_t y) const noexcept {
        return {data_.data() + y * width_, width_};
    }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }

    bool same_shape(const Plane& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Plane&, const Plane&) = default;

private:
    static std::size_t checked_area(std::size_t width, std::size_t height) {
        if (width == 0 || height == 0) {
            throw ParameterError("plane dimensions must be at least 1x1");
        }
        return width * height;
    }

    std::size_t width_;
    std::size_t height_;
    std::vector<T> data_;
};

template <typename T>
void require_same_shape(const Plane<T>& a, const Plane<T>& b, const char* what) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(what) + ": " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                         "x" + std::to_string(b.height()));
    }
}

/// 1 to 4 planes of equal dimensions (gray, gray+mask, RGB, RGBA).
template <typename T>
class PlaneSet {
public:
    static constexpr std::size_t max_channels = 4;

    explicit PlaneSet(std::vector<Plane<T>> planes) : planes_(std::move(planes)) {
        if (planes_.empty() || planes_.size() > max_channels) {
            throw FormatError("channel count must be between 1 and 4, got " +
                              std::to_string(planes_.size()));
        }
        for (const auto& p : planes_) require_same_shape(planes_.front(), p, "channel planes");
    }

    explicit PlaneSet(Plane<T> plane) : PlaneSet(std::vector<Plane<T>>{std::move(plane)}) {}

    std::size_t channels() const noexcept { return planes_.size(); }
    std::size_t width() const noexcept { return planes_.front().width(); }
    std::size_t height() const noexcept { return planes_.front().height(); }

    const Plane<T>& operator[](std::size_t c) const noexcept { return planes_[c]; }
    Plane<T>& operator[](std::size_t c) noexcept { return planes_[c]; }

    std::span<const Plane<T>> planes() const noexcept { return planes_; }

    friend bool operator==(const PlaneSet&, const PlaneSet&) = default;

private:
    std::vector<Plane<T>> planes_;
};

using ImagePlane = Plane<float>;
using MultiImage = PlaneSet<float>;

/// Rec.601 luma weights, applied in linear [0,1] space.
inline constexpr double luma_r = 0.299;
inline constexpr double luma_g = 0.587;
inline constexpr double luma_b = 0.114;

template <typename T>
Plane<T> to_grayscale(const PlaneSet<T>& img) {
    if (img.channels() == 1) return img[0];
    if (img.channels() != 3) {
        throw FormatError("grayscale conversion needs 1 or 3 channels, got " +
                          std::to_string(img.channels()));
    }
    Plane<T> out(img.width(), img.height());
    auto r = img[0].values();
    auto g = img[1].values();
    auto b = img[2].values();
    auto dst = out.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = static_cast<T>(luma_r * r[i] + luma_g * g[i] + luma_b * b[i]);
    }
    return out;
}

enum class ElementOp { mul, add, sub, div_guarded };

/// Pointwise combination of two equally sized planes. `div_guarded` expects the
/// caller to have offset the denominator away from zero; a zero is rejected.
template <typename T>
Plane<T> elementwise(const Plane<T>& a, const Plane<T>& b, ElementOp op) {
    require_same_shape(a, b, "elementwise");
    Plane<T> out(a.width(), a.height());
    auto x = a.values();
    auto y = b.values();
    auto dst = out.values();
    switch (op) {
    case ElementOp::mul:
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = x[i] * y[i];
        break;
    case ElementOp::add:
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = x[i] + y[i];
        break;
    case ElementOp::sub:
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = x[i] - y[i];
        break;
    case ElementOp::div_guarded:
        for (std::size_t i = 0; i < dst.size(); ++i) {
            if (y[i] == T{0}) throw ParameterError("elementwise division by zero");
            dst[i] = x[i] / y[i];
        }
        break;
    }
    return out;
}

template <typename T>
std::pair<T, T> value_range(const Plane<T>& p) {
    auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
    return {*lo, *hi};
}

} // namespace fgf
