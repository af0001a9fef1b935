#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "steinhaus/vec.hpp"

namespace steinhaus {

/// splitmix64 step; used to derive independent child seeds.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic RNG wrapper. All randomness in the library flows through
/// this so that identical seeds reproduce identical runs; the standard
/// distributions are avoided because their output sequences are
/// implementation-defined.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(splitmix64(seed)) {}

    uint64_t bits() { return eng_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller.
    double gauss() {
        double u1 = uniform(), u2 = uniform();
        while (u1 == 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    Vec gauss_vec(int dim) {
        Vec v(static_cast<size_t>(dim));
        for (auto& c : v) c = gauss();
        return v;
    }

    /// Child seed for stream `idx` (deterministic, order-independent).
    static uint64_t child_seed(uint64_t base, uint64_t idx) {
        return splitmix64(base ^ splitmix64(idx + 1));
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace steinhaus
