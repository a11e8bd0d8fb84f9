#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace uutest {

// Deterministic draws on top of mt19937_64. The distribution transforms are
// fixed here rather than taken from <random>, whose algorithms vary between
// standard libraries; sequences must replay identically for a given seed on
// any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Strictly inside (0, 1): keeps log/tan transforms away from the poles.
    double uniform01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Marsaglia polar method; the paired draw is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    // Marsaglia-Tsang rejection for unit scale; shapes below one are lifted
    // by one and scaled back with a uniform power.
    double gamma_unit(double k) {
        if (k < 1.0) {
            return gamma_unit(k + 1.0) * std::pow(uniform01(), 1.0 / k);
        }
        const double d = k - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double gamma(double k, double theta) { return theta * gamma_unit(k); }

    double exponential(double lambda) { return -std::log(uniform01()) / lambda; }

    double student_t(double nu) {
        const double chi2 = 2.0 * gamma_unit(0.5 * nu);
        return normal() / std::sqrt(chi2 / nu);
    }

    double cauchy(double x0, double scale) {
        return x0 + scale * std::tan(std::numbers::pi * (uniform01() - 0.5));
    }

    double triangular(double lo, double hi, double mode) {
        const double u = uniform01();
        const double cut = (mode - lo) / (hi - lo);
        if (u < cut) {
            return lo + std::sqrt(u * (hi - lo) * (mode - lo));
        }
        return hi - std::sqrt((1.0 - u) * (hi - lo) * (hi - mode));
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Stateless mixing for deriving independent stream seeds from a base seed
// and task coordinates (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1) + 0xbf58476d1ce4e5b9ULL * (c + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace uutest
