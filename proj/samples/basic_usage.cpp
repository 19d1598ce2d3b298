// Filters an image with the exact and the subsampled guided filter and
// reports how far apart the results are.
//
//   basic_usage [input.png] [output_prefix]
//
// Without arguments a synthetic gradient-and-checkerboard image is used.

#include <cstdio>
#include <string>

#include "fgf/fgf.hpp"

int main(int argc, char** argv) {
    using namespace fgf;

    const MultiImage img = argc > 1 ? decode(argv[1]) : MultiImage(synthetic_plane(640, 480));
    const std::string prefix = argc > 2 ? argv[2] : "basic_usage";

    // Self-guided smoothing driven by the luminance of the image.
    const ImagePlane guide = to_grayscale(img);
    FilterParams params;
    params.radius = 8;
    params.epsilon = 0.1 * 0.1;

    params.subsample = 1;
    const MultiImage exact = guided_filter(guide, img, params);

    params.subsample = 4;
    StageTimings stages;
    const MultiImage fast = fast_guided_filter(guide, img, params, &stages);

    std::printf("%zux%zu, %zu channel(s), r=%d eps=%g\n", img.width(), img.height(),
                img.channels(), params.radius, params.epsilon);
    std::printf("s=4 stages: subsample %.2f ms, coefficients %.2f ms, upsample+blend %.2f ms\n",
                stages.subsample_ms, stages.coefficients_ms, stages.upsample_blend_ms);
    std::printf("fast vs exact: psnr %.2f dB, max abs error %.4f\n", psnr(fast, exact),
                max_abs_error(fast, exact));

    // The application helpers bundle preset parameters.
    const MultiImage detail = enhance(img);

    try {
        encode(exact, prefix + "_exact.png");
        encode(fast, prefix + "_fast.png");
        encode(detail, prefix + "_enhanced.png");
    } catch (const IoError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    return 0;
}
