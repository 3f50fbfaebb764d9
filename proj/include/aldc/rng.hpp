#pragma once

#include "aldc/types.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace aldc::rng {

/// SplitMix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic child seed for stream `stream` of `seed`.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return mix(seed ^ mix(stream + 1));
}

/// Deterministic random engine. The generator is std::mt19937_64 (fully
/// specified by the standard, so sequences are identical on every
/// platform); all distributions are implemented here by hand because the
/// standard library's distribution objects are implementation-defined.
class Engine {
public:
    explicit Engine(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform in [0, bound) without modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % bound;
    }

    /// Standard normal via Box-Muller (one value per pair of uniforms).
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    RealVec gaussian(int d) {
        RealVec v(d);
        for (int i = 0; i < d; ++i) v[i] = normal();
        return v;
    }

    RealVec unit_sphere(int d) {
        for (;;) {
            RealVec v = gaussian(d);
            const double nrm = v.norm();
            if (nrm > 1e-12) return v / nrm;
        }
    }

    /// Fisher-Yates; std::shuffle is not portable across standard libraries.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 gen_;
};

}  // namespace aldc::rng
