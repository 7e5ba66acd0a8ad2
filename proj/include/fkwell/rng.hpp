#pragma once

#include <cmath>
#include <cstdint>

namespace fkwell {

// xoshiro256++ with splitmix64 seeding; one instance per path so that a
// sample sequence is a pure function of (seed, stream, path) and does not
// depend on how work is scheduled.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t path = 0) {
        std::uint64_t x = seed;
        x = mix(x += 0x9e3779b97f4a7c15ULL ^ (stream * 0xbf58476d1ce4e5b9ULL));
        x = mix(x += 0x9e3779b97f4a7c15ULL ^ (path * 0x94d049bb133111ebULL));
        for (auto& word : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            word = mix(x);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on (0, 1), never exactly 0.
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53;
    }

    double exponential() { return -std::log(uniform()); }

    /// Standard normal (Box-Muller, pair cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(2.0 * exponential());
        const double theta = 6.283185307179586476925 * uniform();
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace fkwell
