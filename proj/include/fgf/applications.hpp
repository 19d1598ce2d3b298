#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "fgf/error.hpp"
#include "fgf/guided_filter.hpp"
#include "fgf/image.hpp"
#include "fgf/params.hpp"

namespace fgf {

/// Parameters of one demo pipeline. epsilon is stored as the square of the
/// intensity-scale regularizer quoted for it (0.2 -> 0.2 * 0.2).
struct AppPreset {
    std::string_view name;
    int radius;
    double epsilon;
    int subsample;
    double gain;

    FilterParams params() const {
        FilterParams p;
        p.radius = radius;
        p.epsilon = epsilon;
        p.subsample = subsample;
        return p;
    }
};

inline constexpr AppPreset smooth_preset{"smooth", 4, 0.2 * 0.2, 4, 1.0};
inline constexpr AppPreset enhance_preset{"enhance", 16, 0.1 * 0.1, 4, 5.0};
inline constexpr AppPreset flash_denoise_preset{"flash-denoise", 8, 0.02 * 0.02, 4, 1.0};
inline constexpr AppPreset feather_preset{"feather", 60, 0.001 * 0.001, 4, 1.0};

inline constexpr std::array<AppPreset, 4> all_presets{smooth_preset, enhance_preset,
                                                      flash_denoise_preset, feather_preset};

inline const AppPreset& find_preset(std::string_view name) {
    for (const auto& p : all_presets) {
        if (p.name == name) return p;
    }
    throw ParameterError("no preset named '" + std::string(name) + "'");
}

enum class SmoothGuidance {
    /// Every channel is guided by the luminance of the image.
    luminance,
    /// Every channel guides itself.
    per_channel,
};

/// Edge-preserving smoothing with self guidance.
template <typename T>
PlaneSet<T> smooth(const PlaneSet<T>& img, const FilterParams& params = smooth_preset.params(),
                   SmoothGuidance guidance = SmoothGuidance::luminance) {
    if (guidance == SmoothGuidance::luminance || img.channels() == 1) {
        return apply_guided_filter(to_grayscale(img), img, params);
    }
    std::vector<Plane<T>> out;
    out.reserve(img.channels());
    for (const auto& channel : img.planes()) {
        out.push_back(apply_guided_filter(channel, PlaneSet<T>(channel), params)[0]);
    }
    return PlaneSet<T>(std::move(out));
}

/// Detail enhancement: base = smooth(img); out = (img - base) * gain + base.
/// The result is not clamped.
template <typename T>
PlaneSet<T> enhance(const PlaneSet<T>& img, double gain = enhance_preset.gain,
                    const FilterParams& params = enhance_preset.params(),
                    SmoothGuidance guidance = SmoothGuidance::luminance) {
    if (!(gain >= 0.0)) throw ParameterError("detail gain must be >= 0");
    PlaneSet<T> out = smooth(img, params, guidance);
    for (std::size_t c = 0; c < img.channels(); ++c) {
        auto src = img[c].values();
        auto dst = out[c].values();
        for (std::size_t i = 0; i < dst.size(); ++i) {
            const double base = dst[i];
            dst[i] = static_cast<T>((static_cast<double>(src[i]) - base) * gain + base);
        }
    }
    return out;
}

/// Denoises the no-flash image using the luminance of the flash image as guidance.
template <typename T>
PlaneSet<T> flash_denoise(const PlaneSet<T>& noflash, const PlaneSet<T>& flash,
                          const FilterParams& params = flash_denoise_preset.params()) {
    if (noflash.width() != flash.width() || noflash.height() != flash.height()) {
        throw ShapeError("flash and no-flash images differ in size");
    }
    return apply_guided_filter(to_grayscale(flash), noflash, params);
}

/// Refines a binary or rough mask into a soft matte that follows the edges
/// of the guide image. Output may leave [0,1] slightly; clamp at encode.
template <typename T>
Plane<T> feather(const Plane<T>& mask, const PlaneSet<T>& guide,
                 const FilterParams& params = feather_preset.params()) {
    if (mask.width() != guide.width() || mask.height() != guide.height()) {
        throw ShapeError("mask and guide image differ in size");
    }
    return apply_guided_filter(to_grayscale(guide), PlaneSet<T>(mask), params)[0];
}

} // namespace fgf
