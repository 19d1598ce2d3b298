#include <gtest/gtest.h>

#include <random>

#include "fgf/resample.hpp"
#include "oracles.hpp"

namespace fgf {
namespace {

TEST(Subsample, RatioOneIsIdentity) {
    std::mt19937 rng(21);
    const ImagePlane src = oracle::random_plane(7, 9, rng);
    EXPECT_EQ(subsample(src, {1, SubsampleMethod::nearest}), src);
    EXPECT_EQ(subsample(src, {1, SubsampleMethod::bilinear}), src);
}

TEST(Subsample, RejectsBadRatio) {
    EXPECT_THROW(subsample(ImagePlane(4, 4), {0, SubsampleMethod::nearest}), ParameterError);
}

TEST(Subsample, NearestTakesTopLeftOfEachBlock) {
    ImagePlane src(4, 4);
    for (std::size_t i = 0; i < 16; ++i) src.values()[i] = static_cast<float>(i);
    const ImagePlane out = subsample(src, {2, SubsampleMethod::nearest});
    ASSERT_EQ(out.width(), 2u);
    ASSERT_EQ(out.height(), 2u);
    EXPECT_EQ(out(0, 0), src(0, 0));
    EXPECT_EQ(out(1, 0), src(2, 0));
    EXPECT_EQ(out(0, 1), src(0, 2));
    EXPECT_EQ(out(1, 1), src(2, 2));
}

TEST(Subsample, BilinearAveragesBlocks) {
    ImagePlane src(4, 4);
    src(2, 0) = src(3, 0) = src(2, 1) = src(3, 1) = 1.0f;
    const ImagePlane out = subsample(src, {2, SubsampleMethod::bilinear});
    EXPECT_EQ(out(1, 0), 1.0f);
    EXPECT_EQ(out(0, 0), 0.0f);
    EXPECT_EQ(out(0, 1), 0.0f);
    EXPECT_EQ(out(1, 1), 0.0f);
}

TEST(Subsample, PartialEdgeBlocks) {
    std::mt19937 rng(22);
    for (auto [w, h, s] : {std::tuple{10, 7, 4}, std::tuple{5, 5, 2}, std::tuple{9, 3, 3}}) {
        const ImagePlane src = oracle::random_plane(w, h, rng);
        const auto g = oracle::from_plane(src);
        const ImagePlane near = subsample(src, {s, SubsampleMethod::nearest});
        const ImagePlane mean = subsample(src, {s, SubsampleMethod::bilinear});
        EXPECT_EQ(near.width(), static_cast<std::size_t>((w + s - 1) / s));
        EXPECT_EQ(near.height(), static_cast<std::size_t>((h + s - 1) / s));
        EXPECT_LE(oracle::max_abs_diff(oracle::subsample_nearest(g, s), near), 0.0);
        EXPECT_LE(oracle::max_abs_diff(oracle::subsample_block_mean(g, s), mean), 1e-6);
    }
}

TEST(UpsampleBilinear, ConstantStaysConstant) {
    const ImagePlane out = upsample_bilinear(ImagePlane(3, 2, 0.3f), 11, 9);
    for (float v : out.values()) EXPECT_EQ(v, 0.3f);
}

TEST(UpsampleBilinear, SinglePixelFillsTarget) {
    const ImagePlane out = upsample_bilinear(ImagePlane(1, 1, 0.8f), 4, 6);
    for (float v : out.values()) EXPECT_EQ(v, 0.8f);
}

TEST(UpsampleBilinear, TwoColumnRamp) {
    // x_src = (x + 0.5) / 2 - 0.5 -> clamp(-0.25, 0.25, 0.75, 1.25) = 0, 0.25, 0.75, 1
    const ImagePlane src(2, 2, std::vector<float>{0, 1, 0, 1});
    const ImagePlane out = upsample_bilinear(src, 4, 4);
    const float expected[4] = {0.0f, 0.25f, 0.75f, 1.0f};
    for (std::size_t y = 0; y < 4; ++y) {
        for (std::size_t x = 0; x < 4; ++x) EXPECT_FLOAT_EQ(out(x, y), expected[x]);
    }
}

TEST(UpsampleBilinear, MatchesDirectFormula) {
    std::mt19937 rng(23);
    for (auto [w, h, tw, th] : {std::tuple{3, 4, 12, 16}, std::tuple{5, 2, 17, 7},
                                std::tuple{1, 6, 5, 6}, std::tuple{8, 8, 29, 30}}) {
        const ImagePlane src = oracle::random_plane(w, h, rng);
        const auto expected = oracle::upsample_bilinear(oracle::from_plane(src), tw, th);
        EXPECT_LE(oracle::max_abs_diff(expected, upsample_bilinear(src, tw, th)), 1e-6);
    }
}

TEST(UpsampleBilinear, SameSizeIsExactIdentity) {
    std::mt19937 rng(24);
    const ImagePlane src = oracle::random_plane(6, 5, rng);
    EXPECT_EQ(upsample_bilinear(src, 6, 5), src);
}

TEST(UpsampleBilinear, RejectsSmallerTarget) {
    EXPECT_THROW(upsample_bilinear(ImagePlane(4, 4), 3, 8), ParameterError);
    EXPECT_THROW(upsample_bilinear(ImagePlane(4, 4), 8, 3), ParameterError);
}

TEST(UpsampleBilinear, IsLinear) {
    std::mt19937 rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        const ImagePlane a = oracle::random_plane(5, 4, rng);
        const ImagePlane b = oracle::random_plane(5, 4, rng);
        const float alpha = 0.7f;
        const float beta = -1.3f;
        ImagePlane mix(5, 4);
        for (std::size_t i = 0; i < mix.size(); ++i) {
            mix.values()[i] = alpha * a.values()[i] + beta * b.values()[i];
        }
        const ImagePlane lhs = upsample_bilinear(mix, 19, 13);
        const ImagePlane ua = upsample_bilinear(a, 19, 13);
        const ImagePlane ub = upsample_bilinear(b, 19, 13);
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            EXPECT_NEAR(lhs.values()[i], alpha * ua.values()[i] + beta * ub.values()[i], 1e-6);
        }
    }
}

TEST(Resample, RangePreservedAndDimsRoundTrip) {
    std::mt19937 rng(26);
    std::uniform_int_distribution<std::size_t> dim(4, 40);
    for (int trial = 0; trial < 30; ++trial) {
        const ImagePlane src = oracle::random_plane(dim(rng), dim(rng), rng);
        const auto [lo, hi] = value_range(src);
        for (int s : {1, 2, 3, 4}) {
            for (auto method : {SubsampleMethod::nearest, SubsampleMethod::bilinear}) {
                const ImagePlane low = subsample(src, {s, method});
                const ImagePlane back = upsample_bilinear(low, src.width(), src.height());
                EXPECT_TRUE(back.same_shape(src));
                for (float v : low.values()) {
                    EXPECT_GE(v, lo - 1e-6f);
                    EXPECT_LE(v, hi + 1e-6f);
                }
                const auto [llo, lhi] = value_range(low);
                for (float v : back.values()) {
                    EXPECT_GE(v, llo - 1e-6f);
                    EXPECT_LE(v, lhi + 1e-6f);
                }
            }
        }
    }
}

} // namespace
} // namespace fgf
