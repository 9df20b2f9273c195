#pragma once

#include <array>
#include <vector>

#include "nsbox/behavior.hpp"
#include "nsbox/bell.hpp"
#include "nsbox/polytope.hpp"

namespace nsbox {

// The operator maximized by N-001; on both families B = 2 + 4 q2 and
// B = 2 + 4 w respectively.
inline constexpr BellLabel kHardyBellLabel{0, 0, 1};

/// The four probabilities behind the Hardy and Cabello arguments:
///   q1 = p(00|00), q2 = p(11|11), and the two entries required to
///   vanish, p(11|10) and p(11|01). w = q2 - q1.
struct HardyStats {
    double q1 = 0;
    double q2 = 0;
    double w = 0;
    std::array<double, 2> zero_residuals{};  // p(11|10), p(11|01)

    // Hardy's ladder: both zeros hold, q1 = 0, yet q2 > 0.
    bool satisfies_hardy() const {
        return zero_residuals[0] < kValidityTol && zero_residuals[1] < kValidityTol &&
               q1 < kValidityTol && q2 > kValidityTol;
    }

    // Cabello's relaxation: both zeros hold and q2 exceeds q1.
    bool satisfies_cabello() const {
        return zero_residuals[0] < kValidityTol && zero_residuals[1] < kValidityTol &&
               w > kValidityTol;
    }
};

inline HardyStats hardy_stats(const Behavior& b) {
    HardyStats s;
    s.q1 = b.p(0, 0, 0, 0);
    s.q2 = b.p(1, 1, 1, 1);
    s.w = s.q2 - s.q1;
    s.zero_residuals = {b.p(1, 0, 1, 1), b.p(0, 1, 1, 1)};
    return s;
}

/// Vertices compatible with the two zero constraints and q1 = 0, in
/// coefficient order c1..c6. The single nonlocal member N-001 carries
/// all of q2.
inline const std::array<VertexLabel, 6>& hardy_family() {
    static const std::array<VertexLabel, 6> k = {
        VertexLabel::local(0, 0, 0, 1), VertexLabel::local(0, 0, 1, 1),
        VertexLabel::local(0, 1, 0, 0), VertexLabel::local(1, 1, 0, 0),
        VertexLabel::local(1, 1, 1, 1), VertexLabel::nonlocal(0, 0, 1),
    };
    return k;
}

/// Cabello's extension c1..c11: the Hardy family plus five vertices that
/// keep the zeros but contribute to q1 (and one more PR box).
inline const std::array<VertexLabel, 11>& cabello_family() {
    static const std::array<VertexLabel, 11> k = {
        VertexLabel::local(0, 0, 0, 1),  VertexLabel::local(0, 0, 1, 1),
        VertexLabel::local(0, 1, 0, 0),  VertexLabel::local(1, 1, 0, 0),
        VertexLabel::local(1, 1, 1, 1),  VertexLabel::nonlocal(0, 0, 1),
        VertexLabel::local(0, 0, 0, 0),  VertexLabel::local(0, 0, 1, 0),
        VertexLabel::local(1, 0, 0, 0),  VertexLabel::local(1, 0, 1, 0),
        VertexLabel::nonlocal(1, 1, 0),
    };
    return k;
}

/// Validated coefficient vector over the Hardy (6 entries) or Cabello
/// (11 entries) vertex family.
struct HardyCoefficients {
    std::vector<double> c;

    bool cabello() const { return c.size() == 11; }

    static HardyCoefficients validated(std::vector<double> values) {
        if (values.size() != 6 && values.size() != 11)
            throw std::invalid_argument("expected 6 or 11 coefficients, got " +
                                        std::to_string(values.size()));
        double sum = 0;
        for (auto& v : values) {
            if (!std::isfinite(v))
                throw std::invalid_argument("coefficient is not finite");
            if (v < 0.0) {
                if (v <= -kExactTol)
                    throw std::invalid_argument("coefficient below -1e-12");
                v = 0.0;
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kExactTol)
            throw std::invalid_argument("coefficients do not sum to 1");
        return HardyCoefficients{std::move(values)};
    }
};

namespace detail {

template <size_t N>
inline Behavior family_mix(const std::array<VertexLabel, N>& family,
                           const std::vector<double>& c) {
    std::vector<std::pair<double, Behavior>> terms;
    terms.reserve(N);
    for (size_t k = 0; k < N; ++k) terms.emplace_back(c[k], vertex(family[k]));
    return convex_mix(terms);
}

}  // namespace detail

inline Behavior build_hardy_box(const HardyCoefficients& hc) {
    if (hc.c.size() != 6)
        throw std::invalid_argument("hardy box needs 6 coefficients");
    return detail::family_mix(hardy_family(), hc.c);
}

inline Behavior build_cabello_box(const HardyCoefficients& hc) {
    if (hc.c.size() != 11)
        throw std::invalid_argument("cabello box needs 11 coefficients");
    return detail::family_mix(cabello_family(), hc.c);
}

}  // namespace nsbox
