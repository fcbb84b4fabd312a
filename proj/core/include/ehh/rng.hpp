#ifndef EHH_RNG_HPP
#define EHH_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace ehh {

// Seeded generator with explicit variate transforms. std:: distributions are
// implementation-defined, which would break bit-reproducibility of trained
// models across standard libraries, so the transforms live here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Uniform integer on [0, n). n must be positive.
    int uniform_int(int n) {
        return static_cast<int>(
            (static_cast<unsigned __int128>(engine_()) *
             static_cast<unsigned __int128>(n)) >> 64);
    }

    // Standard normal via Box-Muller; no cached spare so the draw sequence
    // is a pure function of the call count.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * M_PI * u2);
    }

    double normal(double stddev) { return stddev * normal(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// SplitMix64 step; used to derive independent streams (e.g. per restart)
// from one master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace ehh

#endif  // EHH_RNG_HPP
