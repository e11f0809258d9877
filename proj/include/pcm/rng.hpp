#ifndef PCM_RNG_HPP
#define PCM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace pcm {

// Seeded random stream with an explicit Box-Muller normal sampler.
// std::normal_distribution is implementation-defined, so replay across
// standard libraries would not be byte-stable; this is.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform() {
        return (engine_() >> 11) * 0x1.0p-53;
    }

    double normal(double mean = 0.0, double stddev = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double z0 = mag * std::cos(2.0 * M_PI * u2);
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return mean + stddev * z0;
    }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        return engine_() % n;
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pcm

#endif
