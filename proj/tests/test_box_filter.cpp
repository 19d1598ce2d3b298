#include <gtest/gtest.h>

#include <random>

#include "fgf/box_filter.hpp"
#include "oracles.hpp"

namespace fgf {
namespace {

TEST(BoxMean, RejectsNonPositiveRadius) {
    EXPECT_THROW(box_mean(ImagePlane(4, 4), 0), ParameterError);
    EXPECT_THROW(box_mean_pair(ImagePlane(4, 4), ImagePlane(4, 4), -1), ParameterError);
}

TEST(BoxMean, ConstantImage) {
    for (int r : {1, 3, 50}) {
        for (const auto out = box_mean(ImagePlane(13, 7, 0.42f), r); float v : out.values()) EXPECT_NEAR(v, 0.42f, 1e-7);
    }
}

TEST(BoxMean, CentredImpulse) {
    ImagePlane src(5, 5);
    src(2, 2) = 1.0f;
    const ImagePlane out = box_mean(src, 1);
    for (std::size_t y = 0; y < 5; ++y) {
        for (std::size_t x = 0; x < 5; ++x) {
            const bool near = x >= 1 && x <= 3 && y >= 1 && y <= 3;
            EXPECT_NEAR(out(x, y), near ? 1.0 / 9.0 : 0.0, 1e-7) << x << "," << y;
        }
    }
}

TEST(BoxMean, CornerWindowIsClipped) {
    const ImagePlane src(3, 3, std::vector<float>{0.1f, 0.2f, 0.3f, 0.4f, 0.5f, 0.6f, 0.7f, 0.8f, 0.9f});
    const ImagePlane out = box_mean(src, 1);
    EXPECT_NEAR(out(0, 0), (0.1 + 0.2 + 0.4 + 0.5) / 4.0, 1e-7);
    EXPECT_NEAR(out(2, 2), (0.5 + 0.6 + 0.8 + 0.9) / 4.0, 1e-7);
    EXPECT_NEAR(out(1, 0), (0.1 + 0.2 + 0.3 + 0.4 + 0.5 + 0.6) / 6.0, 1e-7);
}

TEST(BoxMean, MatchesBruteForceOracle) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::size_t> dim(1, 16);
    for (int trial = 0; trial < 100; ++trial) {
        const ImagePlane src = oracle::random_plane(dim(rng), dim(rng), rng);
        for (int r : {1, 2, 3, 7}) {
            const auto expected = oracle::box_mean(oracle::from_plane(src), r);
            EXPECT_LE(oracle::max_abs_diff(expected, box_mean(src, r)), 1e-5)
                << src.width() << "x" << src.height() << " r=" << r;
        }
    }
}

TEST(BoxMean, RadiusLargerThanImage) {
    std::mt19937 rng(12);
    const ImagePlane src = oracle::random_plane(3, 2, rng);
    double mean = 0.0;
    for (float v : src.values()) mean += v;
    mean /= 6.0;
    for (const auto out = box_mean(src, 40); float v : out.values()) EXPECT_NEAR(v, mean, 1e-6);
}

TEST(BoxMean, OutputStaysWithinInputRange) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const ImagePlane src = oracle::random_plane(17, 11, rng, -2.0f, 3.0f);
        const auto [lo, hi] = value_range(src);
        for (const auto out = box_mean(src, 1 + trial % 6); float v : out.values()) {
            EXPECT_GE(v, lo - 1e-6f);
            EXPECT_LE(v, hi + 1e-6f);
        }
    }
}

TEST(BoxMean, InteriorPixelsUseFullWindow) {
    std::mt19937 rng(14);
    const ImagePlane src = oracle::random_plane(20, 20, rng);
    const int r = 3;
    const ImagePlane out = box_mean(src, r);
    for (std::size_t y = r; y < 20 - r; ++y) {
        for (std::size_t x = r; x < 20 - r; ++x) {
            double sum = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) sum += src(x + dx, y + dy);
            }
            EXPECT_NEAR(out(x, y), sum / 49.0, 1e-6);
        }
    }
}

TEST(BoxMean, ThreadedBandsAgreeWithSequential) {
    std::mt19937 rng(15);
    const ImagePlane src = oracle::random_plane(64, 57, rng);
    const ImagePlane seq = box_mean(src, 5, 1);
    for (unsigned threads : {2u, 3u, 8u, 100u}) {
        const ImagePlane par = box_mean(src, 5, threads);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            EXPECT_NEAR(seq.values()[i], par.values()[i], 1e-6);
        }
    }
}

TEST(BoxMeanPair, IdenticalInputs) {
    std::mt19937 rng(16);
    const ImagePlane x = oracle::random_plane(9, 12, rng);
    const auto [a, b] = box_mean_pair(x, x, 2);
    EXPECT_EQ(a, box_mean(x, 2));
    EXPECT_EQ(b, box_mean(x, 2));
}

TEST(BoxMeanPair, Constants) {
    const auto [a, b] = box_mean_pair(ImagePlane(6, 6, 0.0f), ImagePlane(6, 6, 1.0f), 2);
    for (float v : a.values()) EXPECT_EQ(v, 0.0f);
    for (float v : b.values()) EXPECT_NEAR(v, 1.0f, 1e-7);
}

TEST(BoxMeanPair, EqualsTwoIndependentCalls) {
    std::mt19937 rng(17);
    const ImagePlane x = oracle::random_plane(8, 8, rng);
    const ImagePlane y = oracle::random_plane(8, 8, rng);
    const auto [a, b] = box_mean_pair(x, y, 2);
    EXPECT_EQ(a, box_mean(x, 2));
    EXPECT_EQ(b, box_mean(y, 2));
}

TEST(BoxMeanPair, ShapeMismatch) {
    EXPECT_THROW(box_mean_pair(ImagePlane(4, 4), ImagePlane(4, 5), 1), ShapeError);
}

TEST(WindowSpec, CountsAreClipped) {
    const WindowSpec w{2};
    EXPECT_EQ(w.count(0, 0, 10, 10), 9u);
    EXPECT_EQ(w.count(5, 5, 10, 10), 25u);
    EXPECT_EQ(w.count(0, 0, 1, 1), 1u);
}

} // namespace
} // namespace fgf
