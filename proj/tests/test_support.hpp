#pragma once

#include <cmath>
#include <random>

#include "tunneltime/atom.hpp"

namespace tunneltime::testing {

// The He/Clementi point used throughout the frozen values. I_p is the
// rounded 0.90357 au, not the catalog's 0.9035698.
inline AtomModel helium_clementi() { return AtomModel::create("He", 0.90357, 1.6875, "Clementi"); }
inline AtomModel helium_kullie() { return AtomModel::create("He", 0.90357, 1.375, "Kullie"); }
inline LaserField field(double f) { return LaserField::direct(f); }

inline double rel_err(double actual, double expected) {
    if (expected == 0.0) {
        return std::abs(actual);
    }
    return std::abs(actual - expected) / std::abs(expected);
}

// Log-uniform draws keep the random atoms spread over several decades.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    AtomModel atom() { return AtomModel::create("rand", log_uniform(0.1, 5.0), log_uniform(0.3, 5.0), "random"); }

private:
    std::mt19937_64 rng_;
};

}  // namespace tunneltime::testing
