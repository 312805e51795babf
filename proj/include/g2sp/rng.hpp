#pragma once

// Splittable counter-based randomness: every (master seed, stream index)
// pair names an independent SplitMix64 stream, so parallel trials draw the
// same numbers no matter how work is scheduled.

#include <cmath>
#include <cstdint>

#include "g2sp/linalg.hpp"

namespace g2sp {

inline uint64_t splitmix64_step(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitRng {
public:
    SplitRng(uint64_t master_seed, uint64_t stream_index) {
        // decorrelate the stream index before mixing it into the seed
        uint64_t s = stream_index;
        const uint64_t mixed = splitmix64_step(s);
        state_ = master_seed ^ mixed;
        splitmix64_step(state_);
    }

    uint64_t next_u64() { return splitmix64_step(state_); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller (second deviate cached)
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec gaussian_vec(int n) {
        Vec v(static_cast<size_t>(n));
        for (double& x : v) x = next_gaussian();
        return v;
    }

    Vec unit_vec(int n) {
        Vec v = gaussian_vec(n);
        double len = norm(v);
        while (len < 1e-8) {
            v = gaussian_vec(n);
            len = norm(v);
        }
        return (1.0 / len) * v;
    }

private:
    uint64_t state_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace g2sp
