#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace nsbox {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Deterministic uniform sampler. Raw mt19937_64 draws are mapped to
/// doubles by hand so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

/// Flat Dirichlet draw: exponential variates normalized to sum 1.
inline std::vector<double> random_simplex_weights(Rng& rng, int n) {
    std::vector<double> w(static_cast<size_t>(n));
    double s = 0;
    for (auto& v : w) {
        v = -std::log1p(-rng.uniform());
        s += v;
    }
    if (s <= 0) {
        w.assign(w.size(), 0.0);
        w[0] = 1.0;
        return w;
    }
    for (auto& v : w) v /= s;
    return w;
}

}  // namespace nsbox
