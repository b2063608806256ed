#pragma once

#include <cstdint>
#include <initializer_list>

#include "marstrand/types.hpp"

namespace marstrand {

// splitmix64 finalizer; the whole project draws randomness through this so
// runs are reproducible across platforms (no std::distribution involved).
inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based seed derivation: child streams depend only on (master, path),
// never on scheduling order.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) {
    uint64_t s = mix64(master ^ 0xA5A5A5A55A5A5A5AULL);
    for (uint64_t id : path) s = mix64(s ^ (id * 0x9E3779B97F4A7C15ULL));
    return s;
}

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    double angle() { return uniform(0.0, kTwoPi); }

    // Uniform w.r.t. area in the Euclidean disk of given radius.
    Point2 in_disk(double radius) {
        double r = radius * std::sqrt(u01());
        double t = angle();
        return {r * std::cos(t), r * std::sin(t)};
    }

    Point2 in_rect(double xmin, double xmax, double ymin, double ymax) {
        return {uniform(xmin, xmax), uniform(ymin, ymax)};
    }

    uint64_t below(uint64_t n) { return next() % n; }

private:
    uint64_t state_;
};

}  // namespace marstrand
