#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <random>
#include <string>
#include <string_view>

namespace pllpinn {

/// Deterministic RNG used everywhere in the project. Wraps mt19937_64 and
/// maps raw bits to doubles by hand so that streams are reproducible across
/// standard-library implementations (uniform_real_distribution is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi].
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection-free modulo is fine here: n << 2^64 so bias is negligible,
        // but use Lemire-style multiply-shift to keep it clean.
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Standard normal via Box-Muller (no cached spare; one draw per call
    /// keeps the stream position a simple function of call count).
    double normal() {
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    /// Derive an independent substream, e.g. one per trajectory or worker.
    /// Mixing is splitmix64 so neighbouring indices decorrelate fully.
    static Rng substream(std::uint64_t master_seed, std::uint64_t index) {
        std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        return Rng(z);
    }

private:
    std::mt19937_64 engine_;
};

/// FNV-1a 64-bit, used for file checksums and config digests.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    return fnv1a64(s.data(), s.size());
}

inline std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

} // namespace pllpinn
