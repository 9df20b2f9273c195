#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "nsbox/behavior.hpp"
#include "nsbox/bell.hpp"
#include "nsbox/hardy.hpp"
#include "nsbox/optimize.hpp"
#include "nsbox/sampling.hpp"

namespace nsbox {

/// Two-qubit measurement scenario: state cos(tau)|00> + sin(tau)|11>
/// with tau in [0, pi/4], and per-setting measurement directions in the
/// x-z plane given by polar angles thA0, thA1, thB0, thB1.
struct QuantumSetup {
    double tau = 0;
    std::array<double, 4> angles{};  // thA0, thA1, thB0, thB1
};

/// Born-rule behavior of the setup. The +1 eigenvector of
/// cos(th) Z + sin(th) X is (cos(th/2), sin(th/2)); outcome 0 is +1.
inline Behavior born_behavior(const QuantumSetup& s) {
    const double ct = std::cos(s.tau);
    const double st = std::sin(s.tau);
    // eigenvector components, [party setting][outcome][component]
    double vA[2][2][2], vB[2][2][2];
    for (int k : {0, 1}) {
        const double ca = std::cos(s.angles[k] / 2), sa = std::sin(s.angles[k] / 2);
        vA[k][0][0] = ca;  vA[k][0][1] = sa;
        vA[k][1][0] = -sa; vA[k][1][1] = ca;
        const double cb = std::cos(s.angles[2 + k] / 2), sb = std::sin(s.angles[2 + k] / 2);
        vB[k][0][0] = cb;  vB[k][0][1] = sb;
        vB[k][1][0] = -sb; vB[k][1][1] = cb;
    }
    std::array<double, 16> t{};
    for (int X : {0, 1})
        for (int Y : {0, 1})
            for (int a : {0, 1})
                for (int b : {0, 1}) {
                    const double amp =
                        vA[X][a][0] * vB[Y][b][0] * ct + vA[X][a][1] * vB[Y][b][1] * st;
                    t[Behavior::index(X, Y, a, b)] = amp * amp;
                }
    return make_behavior(t);
}

namespace detail {

inline const double kPi = std::acos(-1.0);

inline std::vector<opt::Box> setup_box() {
    return {{0.0, kPi / 4}, {-kPi, kPi}, {-kPi, kPi}, {-kPi, kPi}, {-kPi, kPi}};
}

inline QuantumSetup setup_from(const std::vector<double>& v) {
    return QuantumSetup{v[0], {v[1], v[2], v[3], v[4]}};
}

inline std::vector<double> random_setup_point(Rng& rng, const std::vector<opt::Box>& box) {
    std::vector<double> x(box.size());
    for (size_t i = 0; i < box.size(); ++i) x[i] = rng.uniform(box[i].lo, box[i].hi);
    return x;
}

}  // namespace detail

struct TsirelsonResult {
    QuantumSetup setup;
    BellLabel label;
    BellValue value;
};

/// Seeded multi-start search for the largest Bell value reachable by a
/// two-qubit setup. Deterministic for a fixed (starts, seed).
inline TsirelsonResult optimize_tsirelson(int starts = 200, std::uint64_t seed = kDefaultSeed) {
    Rng rng(seed);
    const std::vector<opt::Box> box = detail::setup_box();
    auto eval = [](const std::vector<double>& v) {
        return max_bell(born_behavior(detail::setup_from(v))).second.b;
    };
    double best_f = -1e300;
    std::vector<double> best_x;
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x = detail::random_setup_point(rng, box);
        const double f = opt::refine_coordinatewise(eval, x, box, 0.8);
        if (f > best_f) {
            best_f = f;
            best_x = x;
        }
    }
    const QuantumSetup setup = detail::setup_from(best_x);
    const auto [label, value] = max_bell(born_behavior(setup));
    return {setup, label, value};
}

struct QuantumHardyResult {
    QuantumSetup setup;
    HardyStats stats;
    double max_constraint = 0;  // max of q1 and the two zero residuals
};

namespace detail {

inline double hardy_constraint_sum(const HardyStats& s) {
    return s.q1 + s.zero_residuals[0] + s.zero_residuals[1];
}

inline double hardy_max_constraint(const HardyStats& s) {
    return std::max({s.q1, s.zero_residuals[0], s.zero_residuals[1]});
}

}  // namespace detail

/// Maximizes q2 over two-qubit setups subject to the three Hardy zero
/// constraints. Multi-start exact-penalty search at kappa = 100 finds
/// the basin; the penalty optimum sits O(1/kappa) off the constraint
/// surface, which is not enough for residuals below 1e-7, so the best
/// candidates are polished with kappa climbing by sqrt(10) steps to 1e6.
/// The gentle ladder matters: each step moves the penalized optimum only
/// a little, so the pattern-move refinement can track it along the
/// constraint surface instead of freezing at the first feasible point.
inline QuantumHardyResult optimize_hardy(int starts = 200, std::uint64_t seed = kDefaultSeed) {
    Rng rng(seed);
    const std::vector<opt::Box> box = detail::setup_box();
    auto penalized = [](double kappa) {
        return [kappa](const std::vector<double>& v) {
            const HardyStats s = hardy_stats(born_behavior(detail::setup_from(v)));
            return s.q2 - kappa * detail::hardy_constraint_sum(s);
        };
    };

    constexpr int kKeep = 5;
    std::vector<std::pair<double, std::vector<double>>> top;  // descending by value
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x = detail::random_setup_point(rng, box);
        const double f = opt::refine_coordinatewise(penalized(100.0), x, box, 0.8);
        top.emplace_back(f, std::move(x));
        std::sort(top.begin(), top.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        if (top.size() > kKeep) top.pop_back();
    }

    QuantumHardyResult best;
    double best_key = -1e300;
    bool best_feasible = false;
    for (auto& [f0, x] : top) {
        double f = f0;
        for (double kappa = 316.0; kappa < 2e6; kappa *= std::sqrt(10.0))
            f = opt::refine_coordinatewise(penalized(kappa), x, box, 0.05, 1e-10, 12);
        QuantumHardyResult cand;
        cand.setup = detail::setup_from(x);
        cand.stats = hardy_stats(born_behavior(cand.setup));
        cand.max_constraint = detail::hardy_max_constraint(cand.stats);
        const bool feasible = cand.max_constraint < 1e-7;
        const double key = feasible ? cand.stats.q2 : f;
        if ((feasible && !best_feasible) || (feasible == best_feasible && key > best_key)) {
            best = cand;
            best_key = key;
            best_feasible = feasible;
        }
    }
    return best;
}

}  // namespace nsbox
