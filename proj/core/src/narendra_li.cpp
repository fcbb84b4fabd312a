#include "ehh/narendra_li.hpp"

#include <cmath>

#include "ehh/errors.hpp"

namespace ehh {

namespace {

IoData simulate(const Eigen::VectorXd& u, double noise_stddev, Rng& rng) {
    const int n = static_cast<int>(u.size());
    IoData data;
    data.u = u;
    data.y.resize(n);
    double x1 = 0.0;
    double x2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double e = noise_stddev > 0.0 ? rng.normal(noise_stddev) : 0.0;
        data.y(k) = x1 / (1.0 + 0.5 * std::sin(x2)) +
                    x2 / (1.0 + 0.5 * std::sin(x1)) + e;
        const double uk = u(k);
        const double x1_next = (x1 / (1.0 + x1 * x1) + 1.0) * std::sin(x2);
        const double x2_next =
            x2 * std::cos(x2) + x1 * std::exp(-(x1 * x1 + x2 * x2) / 8.0) +
            uk * uk * uk / (1.0 + uk * uk + 0.5 * std::cos(x1 + x2));
        x1 = x1_next;
        x2 = x2_next;
    }
    return data;
}

}  // namespace

BenchmarkData narendra_li_generate(const NarendraLiOptions& options,
                                   Rng& rng) {
    if (options.train_length < 1 || options.test_length < 1) {
        throw InvalidConfig("benchmark lengths must be positive");
    }
    if (options.noise_variance < 0.0) {
        throw InvalidConfig("noise variance must be nonnegative");
    }
    const double stddev = std::sqrt(options.noise_variance);

    BenchmarkData out;
    Eigen::VectorXd u_train(options.train_length);
    for (int k = 0; k < options.train_length; ++k) {
        u_train(k) = rng.uniform(-2.0, 2.0);
    }
    out.train = simulate(u_train, stddev, rng);

    Eigen::VectorXd u_test(options.test_length);
    for (int k = 1; k <= options.test_length; ++k) {
        u_test(k - 1) = std::sin(2.0 * M_PI * k / 10.0) +
                        std::sin(2.0 * M_PI * k / 25.0);
    }
    out.test = simulate(u_test, options.noisy_test ? stddev : 0.0, rng);
    return out;
}

}  // namespace ehh
