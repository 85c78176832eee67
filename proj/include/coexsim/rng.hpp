#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace coexsim {

/// Deterministic RNG with explicit (master seed, point, trial, stream)
/// derivation so parallel Monte Carlo trials reproduce exactly regardless of
/// scheduling.  xoshiro256** seeded through splitmix64; Gaussians via
/// Box-Muller (no library distributions, so sequences are pinned).
class Rng {
public:
    explicit Rng(std::uint64_t seed) { seed_state(seed); }

    static Rng for_trial(std::uint64_t master, std::uint64_t point,
                         std::uint64_t trial, std::uint64_t stream) {
        std::uint64_t x = master;
        x = mix(x ^ (0x9E3779B97F4A7C15ULL + point));
        x = mix(x ^ (0xBF58476D1CE4E5B9ULL + trial));
        x = mix(x ^ (0x94D049BB133111EBULL + stream));
        return Rng(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// standard normal
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// circular complex Gaussian, E|z|^2 = 1
    std::complex<double> cn01() {
        const double re = gaussian();
        const double im = gaussian();
        return {re * 0.7071067811865476, im * 0.7071067811865476};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    void seed_state(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : s_) {
            x += 0x9E3779B97F4A7C15ULL;
            s = mix(x);
        }
        if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
    }

    std::uint64_t s_[4]{};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace coexsim
