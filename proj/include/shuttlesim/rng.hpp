#pragma once

#include <cmath>
#include <cstdint>

namespace shuttlesim {

// Counter-based RNG: every draw is a pure hash of (seed, stream, counter),
// so shot-parallel code gets identical results regardless of thread schedule.
// Mixing function is the splitmix64 finalizer applied to the combined key.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream = 0)
        : seed_(seed), stream_(stream), counter_(0) {}

    static uint64_t hash(uint64_t seed, uint64_t stream, uint64_t counter) {
        uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z ^= counter + 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        // second round decorrelates low-entropy (seed, counter) patterns
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t next_u64() { return hash(seed_, stream_, counter_++); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; uses two counter slots per pair
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(6.283185307179586 * u2);
        have_spare_ = true;
        return r * std::cos(6.283185307179586 * u2);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // stream derived deterministically from this generator's identity
    CounterRng substream(uint64_t k) const {
        return CounterRng(seed_, hash(stream_, 0x5eed5eedULL, k));
    }

private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace shuttlesim
