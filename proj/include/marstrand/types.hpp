#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace marstrand {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Violated preconditions (bad domains, degenerate inputs, resolution floors,
// size budgets). The CLI maps these to exit code 2.
class precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative solver failures (shooting, fits, 1-D minimizers). Exit code 3.
class solver_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double c, Point2 p) { return {c * p.x, c * p.y}; }
inline Point2 operator*(Point2 p, double c) { return {c * p.x, c * p.y}; }
inline Point2 operator-(Point2 p) { return {-p.x, -p.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Point2 p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point2 p) { return std::sqrt(norm_sq(p)); }

inline Point2 normalized(Point2 p) {
    double n = norm(p);
    if (n == 0.0) throw precondition_error("cannot normalize zero vector");
    return {p.x / n, p.y / n};
}

inline Point2 rotated(Point2 p, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

inline Point2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline void require_finite(Point2 p, const char* what) {
    if (!is_finite(p)) throw precondition_error(std::string(what) + ": non-finite coordinates");
}

// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

// Wraps an angular difference into (-pi, pi].
inline double wrap_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a > kPi) a -= kTwoPi;
    if (a <= -kPi) a += kTwoPi;
    return a;
}

}  // namespace marstrand
