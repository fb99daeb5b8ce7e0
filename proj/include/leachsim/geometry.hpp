#pragma once

#include <cmath>

namespace leachsim {

/// Planar coordinate in meters. Node positions stay inside the field;
/// the base station may lie outside it.
struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position& a, const Position& b) {
        return a.x == b.x && a.y == b.y;
    }
};

inline double distance_sq(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(const Position& a, const Position& b) {
    return std::sqrt(distance_sq(a, b));
}

inline Position midpoint(const Position& a, const Position& b) {
    return Position{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
}

} // namespace leachsim
