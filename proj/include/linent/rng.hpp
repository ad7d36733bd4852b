#pragma once

#include <cstdint>
#include <cmath>
#include <complex>
#include <random>

namespace linent {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-sample substream keyed by (master seed, sample index) only, so sample
// content never depends on worker count or draw order across samples.
// Gaussians come from Box-Muller over the fully specified mt19937_64 stream.
class SampleRng {
public:
    SampleRng(std::uint64_t master_seed, std::uint64_t sample_index) {
        std::uint64_t s = master_seed;
        const std::uint64_t h = splitmix64(s);
        std::uint64_t mixed = h ^ (0x9E3779B97F4A7C15ULL * (sample_index + 1));
        gen_.seed(splitmix64(mixed));
    }

    double uniform01() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double gauss() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(ang);
        has_cached_ = true;
        return r * std::cos(ang);
    }

    std::complex<double> cgauss() {
        const double re = gauss();
        const double im = gauss();
        return std::complex<double>(re, im) / std::sqrt(2.0);
    }

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace linent
