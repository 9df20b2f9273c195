#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace nsbox {

// Tolerance tiers: kValidityTol accepts accumulated float error in input
// tables, kExactTol guards identities that hold to machine precision.
inline constexpr double kValidityTol = 1e-9;
inline constexpr double kExactTol = 1e-12;

/// Conditional probability table p(ab|XY) for two parties with binary
/// settings X,Y and binary outcomes a,b. Index order is [X][Y][a][b].
/// Outcome 0 corresponds to the +1 eigenvalue, outcome 1 to -1.
struct Behavior {
    std::array<double, 16> table{};

    static constexpr int index(int X, int Y, int a, int b) {
        return ((X * 2 + Y) * 2 + a) * 2 + b;
    }

    double p(int X, int Y, int a, int b) const { return table[index(X, Y, a, b)]; }
    double& p(int X, int Y, int a, int b) { return table[index(X, Y, a, b)]; }

    friend bool operator==(const Behavior&, const Behavior&) = default;
};

/// Builds a behavior from raw entries. Entries in (-1e-12, 0) are float
/// noise from mixing and are rounded up to zero; anything more negative,
/// or non-finite, is rejected.
inline Behavior make_behavior(const std::array<double, 16>& entries) {
    Behavior b;
    for (int i = 0; i < 16; ++i) {
        double v = entries[i];
        if (!std::isfinite(v))
            throw std::invalid_argument("behavior entry is not finite");
        if (v < 0.0) {
            if (v <= -kExactTol)
                throw std::invalid_argument("behavior entry below -1e-12");
            v = 0.0;
        }
        b.table[i] = v;
    }
    return b;
}

/// The four correlators <XY> = sum_{ab} (-1)^{a+b} p(ab|XY).
struct Correlators {
    std::array<double, 4> e{};

    double operator()(int X, int Y) const { return e[X * 2 + Y]; }
    double& at(int X, int Y) { return e[X * 2 + Y]; }
};

struct ValidityReport {
    double normalization_residual = 0;   // max over XY of |sum_ab p(ab|XY) - 1|
    double max_negativity = 0;           // max over entries of max(0, -p)
    double alice_marginal_residual = 0;  // max over (X,a) of |p(a|X,Y=0) - p(a|X,Y=1)|
    double bob_marginal_residual = 0;    // max over (Y,b) of |p(b|X=0,Y) - p(b|X=1,Y)|
    bool normalized = false;
    bool nonnegative = false;
    bool is_no_signaling = false;

    bool valid() const { return normalized && nonnegative && is_no_signaling; }
};

inline ValidityReport validate(const Behavior& b) {
    for (double v : b.table)
        if (!std::isfinite(v))
            throw std::invalid_argument("behavior entry is not finite");

    ValidityReport r;
    for (int X : {0, 1})
        for (int Y : {0, 1}) {
            double s = 0;
            for (int a : {0, 1})
                for (int o : {0, 1}) s += b.p(X, Y, a, o);
            r.normalization_residual = std::max(r.normalization_residual, std::abs(s - 1.0));
        }
    for (double v : b.table) r.max_negativity = std::max(r.max_negativity, -v);
    r.max_negativity = std::max(r.max_negativity, 0.0);

    for (int X : {0, 1})
        for (int a : {0, 1}) {
            const double m0 = b.p(X, 0, a, 0) + b.p(X, 0, a, 1);
            const double m1 = b.p(X, 1, a, 0) + b.p(X, 1, a, 1);
            r.alice_marginal_residual = std::max(r.alice_marginal_residual, std::abs(m0 - m1));
        }
    for (int Y : {0, 1})
        for (int o : {0, 1}) {
            const double m0 = b.p(0, Y, 0, o) + b.p(0, Y, 1, o);
            const double m1 = b.p(1, Y, 0, o) + b.p(1, Y, 1, o);
            r.bob_marginal_residual = std::max(r.bob_marginal_residual, std::abs(m0 - m1));
        }

    r.normalized = r.normalization_residual < kValidityTol;
    r.nonnegative = r.max_negativity <= kExactTol;
    r.is_no_signaling =
        r.alice_marginal_residual < kValidityTol && r.bob_marginal_residual < kValidityTol;
    return r;
}

// Assumes b is normalized; pure arithmetic otherwise.
inline Correlators correlators(const Behavior& b) {
    Correlators c;
    for (int X : {0, 1})
        for (int Y : {0, 1}) {
            double e = 0;
            for (int a : {0, 1})
                for (int o : {0, 1}) e += ((a ^ o) ? -1.0 : 1.0) * b.p(X, Y, a, o);
            c.at(X, Y) = e;
        }
    return c;
}

inline Behavior uniform_box() {
    Behavior b;
    b.table.fill(0.25);
    return b;
}

}  // namespace nsbox
