#ifndef EHH_NARENDRA_LI_HPP
#define EHH_NARENDRA_LI_HPP

#include "ehh/narx.hpp"
#include "ehh/rng.hpp"

namespace ehh {

// Two-state benchmark system driven from the origin:
//   x1+ = (x1 / (1 + x1^2) + 1) sin(x2)
//   x2+ = x2 cos(x2) + x1 exp(-(x1^2 + x2^2)/8)
//         + u^3 / (1 + u^2 + 0.5 cos(x1 + x2))
//   y   = x1 / (1 + 0.5 sin(x2)) + x2 / (1 + 0.5 sin(x1)) + e
struct NarendraLiOptions {
    int train_length = 2000;
    int test_length = 200;
    double noise_variance = 0.1;  // Gaussian noise on the training output
    bool noisy_test = false;      // test output is noise-free by default
};

struct BenchmarkData {
    IoData train;  // input i.i.d. uniform on [-2, 2]
    IoData test;   // input sin(2 pi k / 10) + sin(2 pi k / 25)
};

BenchmarkData narendra_li_generate(const NarendraLiOptions& options, Rng& rng);

// The lag structure used for this benchmark:
// [y(k-1), y(k-2), y(k-3), u(k-1), u(k-2), u(k-3)].
inline NarxSpec narendra_li_spec() { return {3, 3, false}; }

}  // namespace ehh

#endif  // EHH_NARENDRA_LI_HPP
