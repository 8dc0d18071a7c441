#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace adrec {

// Splittable xoshiro256++ generator.  std engines/distributions are
// implementation-defined, so everything here is pinned for reproducibility
// across platforms and compilers.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0) {
        // seed the state through splitmix64; mixing the stream id into the
        // seed gives independent sequences per (seed, stream) pair
        std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        for (auto& s : state_) s = splitmix64(x);
        // avoid the all-zero state (probability ~2^-256, but cheap to rule out)
        if (!(state_[0] | state_[1] | state_[2] | state_[3])) state_[0] = 1;
        seed_ = seed;
    }

    // independent child stream, e.g. one per Monte Carlo trial
    SplitRng split(std::uint64_t stream) const { return SplitRng(seed_, stream + 1); }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on (0, 1): 53-bit mantissa, never exactly 0 or 1
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // N(mean, variance) via Marsaglia polar (deterministic given the stream)
    double gaussian(double mean, double variance) {
        if (variance < 0) throw std::domain_error("gaussian: variance must be >= 0");
        if (variance == 0) return mean;
        if (have_spare_) {
            have_spare_ = false;
            return mean + std::sqrt(variance) * spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return mean + std::sqrt(variance) * u * m;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
    std::uint64_t seed_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace adrec
