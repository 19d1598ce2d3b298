#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fgf::detail {

// Splits [0, count) into contiguous bands and runs fn(begin, end) on each.
// With threads <= 1 the call is inline.
template <typename Fn>
void for_each_band(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t bands = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (bands == 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::exception_ptr> errors(bands);
    std::vector<std::jthread> workers;
    workers.reserve(bands - 1);
    const auto band_begin = [&](std::size_t i) { return count * i / bands; };
    for (std::size_t i = 1; i < bands; ++i) {
        workers.emplace_back([&, i] {
            try {
                fn(band_begin(i), band_begin(i + 1));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    try {
        fn(band_begin(0), band_begin(1));
    } catch (...) {
        errors[0] = std::current_exception();
    }
    workers.clear();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace fgf::detail
