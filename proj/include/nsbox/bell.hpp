#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "nsbox/behavior.hpp"

namespace nsbox {

inline constexpr double kLocalBound = 2.0;
inline const double kTsirelsonBound = 2.0 * std::sqrt(2.0);
inline constexpr double kAlgebraicMax = 4.0;

/// Index (alpha,beta,gamma) of one of the eight CHSH-type operators
/// B = sum_XY (-1)^(alpha X + beta Y + gamma + XY) <XY>.
struct BellLabel {
    int alpha = 0, beta = 0, gamma = 0;

    std::string str() const {
        return std::to_string(alpha) + std::to_string(beta) + std::to_string(gamma);
    }

    static BellLabel parse(std::string_view s) {
        auto bit = [&](size_t i) -> int {
            const char c = s[i];
            if (c != '0' && c != '1')
                throw std::invalid_argument("bad bell label: " + std::string(s));
            return c - '0';
        };
        if (s.size() != 3)
            throw std::invalid_argument("bad bell label: " + std::string(s));
        return {bit(0), bit(1), bit(2)};
    }

    friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

inline const std::array<BellLabel, 8>& all_bell_labels() {
    static const std::array<BellLabel, 8> labels = [] {
        std::array<BellLabel, 8> v{};
        int k = 0;
        for (int a : {0, 1})
            for (int b : {0, 1})
                for (int g : {0, 1}) v[k++] = BellLabel{a, b, g};
        return v;
    }();
    return labels;
}

/// Probability that a settings-(X,Y) round satisfies the operator's
/// winning condition a = b + XY + alpha X + beta Y + gamma (mod 2).
inline double success_probability(const Behavior& bx, const BellLabel& l, int X, int Y) {
    const int parity = (X & Y) ^ (l.alpha & X) ^ (l.beta & Y) ^ l.gamma;
    double s = 0;
    for (int o : {0, 1}) s += bx.p(X, Y, o ^ parity, o);
    return s;
}

struct BellValue {
    double b = 0;        // correlator form, local bound 2, algebraic max 4
    double b_prime = 0;  // normalized form (b + 4) / 8, averaged win probability
};

/// Evaluates one Bell operator both as a correlator sum and as the mean
/// success probability over the four settings. The two routes must agree
/// through b' = (b + 4) / 8 to machine precision; a mismatch means the
/// coefficient tables drifted apart, which is a bug worth dying over.
inline BellValue bell_value(const Behavior& bx, const BellLabel& l) {
    const Correlators e = correlators(bx);
    double v = 0;
    double wins = 0;
    for (int X : {0, 1})
        for (int Y : {0, 1}) {
            const int parity = (X & Y) ^ (l.alpha & X) ^ (l.beta & Y) ^ l.gamma;
            v += (parity ? -1.0 : 1.0) * e(X, Y);
            wins += success_probability(bx, l, X, Y);
        }
    const BellValue out{v, wins / 4.0};
    if (std::abs(out.b_prime - (out.b + 4.0) / 8.0) > kExactTol)
        throw std::logic_error("bell value routes disagree beyond 1e-12");
    return out;
}

/// Largest operator value over all eight labels; ties keep the first
/// label in all_bell_labels() order.
inline std::pair<BellLabel, BellValue> max_bell(const Behavior& bx) {
    BellLabel best_label = all_bell_labels()[0];
    BellValue best = bell_value(bx, best_label);
    for (int k = 1; k < 8; ++k) {
        const BellValue v = bell_value(bx, all_bell_labels()[k]);
        if (v.b > best.b) {
            best = v;
            best_label = all_bell_labels()[k];
        }
    }
    return {best_label, best};
}

enum class BellRegime { Local, QuantumRange, SuperQuantum };

inline const char* to_string(BellRegime r) {
    switch (r) {
        case BellRegime::Local: return "local";
        case BellRegime::QuantumRange: return "quantum-range";
        case BellRegime::SuperQuantum: return "super-quantum";
    }
    return "?";
}

inline BellRegime classify(const BellValue& v) {
    if (v.b <= kLocalBound + 1e-9) return BellRegime::Local;
    if (v.b <= kTsirelsonBound + 1e-9) return BellRegime::QuantumRange;
    return BellRegime::SuperQuantum;
}

}  // namespace nsbox
