#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "fgf/error.hpp"

namespace fgf {

enum class SubsampleMethod { nearest, bilinear };
enum class UpsampleMethod { bilinear };

inline std::string_view to_string(SubsampleMethod m) noexcept {
    return m == SubsampleMethod::nearest ? "nearest" : "bilinear";
}

inline SubsampleMethod parse_subsample_method(std::string_view name) {
    if (name == "nearest") return SubsampleMethod::nearest;
    if (name == "bilinear") return SubsampleMethod::bilinear;
    throw ParameterError("unknown subsample method '" + std::string(name) + "'");
}

struct FilterParams {
    int radius = 4;
    /// Regularization in squared [0,1]-intensity units.
    double epsilon = 0.04;
    int subsample = 1;
    SubsampleMethod subsample_method = SubsampleMethod::nearest;
    UpsampleMethod upsample_method = UpsampleMethod::bilinear;
    /// Row bands processed concurrently by the box filter. 1 = sequential.
    unsigned threads = 1;

    void validate() const {
        if (radius < 1) throw ParameterError("radius must be >= 1");
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
            throw ParameterError("epsilon must be finite and > 0");
        }
        if (subsample < 1) throw ParameterError("subsample ratio must be >= 1");
        if (threads < 1) throw ParameterError("thread count must be >= 1");
    }

    /// Window radius on the subsampled grid: max(1, round(r / s)).
    int low_res_radius() const noexcept {
        const long r = std::lround(static_cast<double>(radius) / subsample);
        return static_cast<int>(std::max(1L, r));
    }
};

} // namespace fgf
