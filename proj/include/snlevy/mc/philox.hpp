#pragma once

#include <cmath>
#include <cstdint>

namespace snlevy::mc {

// Philox4x32-10 (Salmon et al., SC'11): a keyed bijection of a 128-bit
// counter. Streams are addressed as (seed, stream, channel), so every path of
// a Monte Carlo run owns an independent substream no matter how the paths are
// scheduled across threads. Channels separate logically distinct draws that
// must not perturb each other (shared path noise vs per-level decisions).
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream, std::uint32_t channel = 0)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32) ^ (channel * 0x85EBCA6Bu)) {}

    // uniform double in (0,1); never returns an endpoint, so logs are safe
    double uniform() {
        if (spare_ == 0) refill();
        std::uint64_t bits;
        if (spare_ == 2) {
            bits = (static_cast<std::uint64_t>(block_[1]) << 32) | block_[0];
            spare_ = 1;
        } else {
            bits = (static_cast<std::uint64_t>(block_[3]) << 32) | block_[2];
            spare_ = 0;
        }
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via the Marsaglia polar method (per-stream cache)
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        has_cached_ = true;
        return u * f;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

private:
    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
        std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        lo = static_cast<std::uint32_t>(p);
        hi = static_cast<std::uint32_t>(p >> 32);
    }

    void refill() {
        std::uint32_t c0 = ctr_lo_, c1 = ctr_hi_, c2 = stream_lo_, c3 = stream_hi_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t lo0, hi0, lo1, hi1;
            mulhilo(0xD2511F53u, c0, lo0, hi0);
            mulhilo(0xCD9E8D57u, c2, lo1, hi1);
            std::uint32_t n0 = hi1 ^ c1 ^ k0;
            std::uint32_t n1 = lo1;
            std::uint32_t n2 = hi0 ^ c3 ^ k1;
            std::uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        block_[0] = c0;
        block_[1] = c1;
        block_[2] = c2;
        block_[3] = c3;
        spare_ = 2;
        if (++ctr_lo_ == 0) ++ctr_hi_;
    }

    std::uint32_t key0_, key1_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint32_t ctr_lo_ = 0, ctr_hi_ = 0;
    std::uint32_t block_[4] = {0, 0, 0, 0};
    int spare_ = 0;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace snlevy::mc
