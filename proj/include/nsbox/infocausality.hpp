#pragma once

#include <cmath>
#include <stdexcept>

#include "nsbox/bell.hpp"

namespace nsbox {

// Largest q2 (or w) compatible with the quadratic condition, (sqrt2-1)/2.
inline const double kIcFamilyBound = (std::sqrt(2.0) - 1.0) / 2.0;

/// Guessing-game success statistics at one Bell label: p1 averages the
/// winning probability over X at Y=0, p2 at Y=1. The quadratic condition
/// a_value <= 1 is the information-causality test in the
/// (2p1-1, 2p2-1) plane. It is applied verbatim to whatever behavior is
/// handed in; no protocol simulation sits behind it, so for boxes far
/// outside the quantum set it is a diagnostic, not a theorem.
struct ICStats {
    double p1 = 0;
    double p2 = 0;
    double a_value = 0;  // (2 p1 - 1)^2 + (2 p2 - 1)^2
    double theta = 0;    // polar angle of (2 p1 - 1, 2 p2 - 1)
    bool ic_satisfied = false;
};

inline ICStats ic_stats(const Behavior& b, const BellLabel& l) {
    ICStats s;
    s.p1 = 0.5 * (success_probability(b, l, 0, 0) + success_probability(b, l, 1, 0));
    s.p2 = 0.5 * (success_probability(b, l, 0, 1) + success_probability(b, l, 1, 1));
    const double x = 2.0 * s.p1 - 1.0;
    const double y = 2.0 * s.p2 - 1.0;
    s.a_value = x * x + y * y;
    s.theta = (x == 0.0 && y == 0.0) ? 0.0 : std::atan2(y, x);
    s.ic_satisfied = s.a_value <= 1.0 + 1e-9;
    return s;
}

/// Cap on the normalized Bell value b' implied by a_value, monotone in
/// a_value: (sqrt(2 a) + 2) / 4. At a = 1 this is the Tsirelson point.
inline double bprime_bound(double a_value) {
    if (!(a_value >= 0.0))
        throw std::invalid_argument("a_value must be nonnegative");
    return (std::sqrt(2.0 * a_value) + 2.0) / 4.0;
}

}  // namespace nsbox
