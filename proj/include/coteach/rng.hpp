#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace coteach {

// splitmix64 finalizer; used for seed derivation so that nearby master seeds
// yield uncorrelated streams.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_str(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Replica/bootstrap streams are derived as hash(master, label, indices...).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::initializer_list<std::uint64_t> words = {}) {
    std::uint64_t h = mix64(master ^ hash_str(label));
    for (std::uint64_t w : words) h = mix64(h ^ w);
    return h;
}

// Deterministic RNG for every stochastic choice in the simulator. The engine
// mt19937_64 is fully specified by the standard; uniform/normal/gamma/beta
// draws are implemented here rather than with std::*_distribution, whose
// output is not pinned across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0,1), 53-bit resolution.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), unbiased via masked rejection.
    std::uint64_t bounded(std::uint64_t n) {
        std::uint64_t m = n - 1;
        m |= m >> 1;
        m |= m >> 2;
        m |= m >> 4;
        m |= m >> 8;
        m |= m >> 16;
        m |= m >> 32;
        std::uint64_t x;
        do {
            x = next_u64() & m;
        } while (x >= n);
        return x;
    }

    double normal() {
        double u1;
        do {
            u1 = next_unit();
        } while (u1 <= 0.0);
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Marsaglia-Tsang; valid for shape >= 1, which is all this project needs
    // (Beta counts only ever grow from the unit prior).
    double gamma(double shape) {
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_unit();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double a, double b) {
        const double ga = gamma(a);
        const double gb = gamma(b);
        const double s = ga + gb;
        return s > 0.0 ? ga / s : 0.5;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace coteach
