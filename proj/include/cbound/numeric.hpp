#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cbound/errors.hpp"

namespace cbound::num {

// Clamp a computed cosine into [-1, 1]. Values past the slack indicate a
// broken feasibility chain upstream, not roundoff.
inline double clamp_cosine(double c, double slack = 1e-9) {
    if (!(std::fabs(c) <= 1.0 + slack)) {
        throw internal_error("cosine out of range beyond roundoff slack: " + std::to_string(c));
    }
    return std::clamp(c, -1.0, 1.0);
}

// Spacing between |x| and the next representable double.
inline double ulp_of(double x) {
    const double a = std::fabs(x);
    return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

// Largest double strictly below 1; used to keep saturating tanh-type
// quantities strictly inside their open interval.
inline double below_one() {
    return std::nextafter(1.0, 0.0);
}

// |a - b| against a tolerance that is relative to the magnitudes in play
// but floored absolutely near zero.
inline bool close(double a, double b, double rel, double abs_floor = 1e-12) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= std::max(abs_floor, rel * scale);
}

inline double rel_gap(double a, double b) {
    return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

} // namespace cbound::num
