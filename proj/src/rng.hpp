#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace gazekit {

/// Splittable 64-bit mixer used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic random source: the mt19937_64 engine (whose output
/// sequence is fixed by the standard) plus hand-rolled distributions, so
/// that identical seeds produce identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform index in [0, n); n must be positive.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Box-Muller without state, two uniforms per draw.
    double normal(double mean = 0.0, double sd = 1.0) {
        double u1 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) *
                         std::cos(2.0 * 3.14159265358979323846 * u2);
        return mean + sd * z;
    }

    /// Log-normal parameterized by its arithmetic mean and coefficient of
    /// variation (sd/mean), both > 0.
    double lognormal_mean_cv(double mean, double cv) {
        const double sigma2 = std::log1p(cv * cv);
        const double mu = std::log(mean) - 0.5 * sigma2;
        return std::exp(normal(mu, std::sqrt(sigma2)));
    }

    /// Exponential with the given rate (events per unit time).
    double exponential(double rate) {
        return -std::log1p(-uniform01()) / rate;
    }

    /// Deterministic Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace gazekit
