#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace nsbox::opt {

/// Golden-section maximization on [lo, hi]. Each iteration shrinks the
/// bracket by ~0.618, so the default resolves about 1e-7 of the span;
/// unimodal f gets the global line maximum, anything else a local one.
template <typename F>
double golden_max(F&& f, double lo, double hi, int iters = 36) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int k = 0; k < iters; ++k) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 >= f2 ? x1 : x2;
}

struct Box {
    double lo = 0, hi = 0;
};

/// Coordinate-wise golden sweeps with geometrically shrinking windows,
/// plus a pattern move along each sweep's net displacement. The pattern
/// step is what lets the search track curved penalty valleys instead of
/// zigzag-stalling on them. Deterministic. Each window level repeats
/// until a pass stops moving (capped), then the window halves; stops
/// below min_window. Returns the final objective value; x is refined in
/// place.
template <typename F>
double refine_coordinatewise(F&& f, std::vector<double>& x, const std::vector<Box>& box,
                             double window0, double min_window = 1e-10,
                             int max_passes_per_level = 6, int golden_iters = 36) {
    const size_t n = x.size();
    double fx = f(x);
    for (double w = window0; w > min_window; w *= 0.5) {
        for (int pass = 0; pass < max_passes_per_level; ++pass) {
            const std::vector<double> x0 = x;
            for (size_t i = 0; i < n; ++i) {
                const double lo = std::max(box[i].lo, x[i] - w);
                const double hi = std::min(box[i].hi, x[i] + w);
                if (!(hi > lo)) continue;
                const double xi = x[i];
                auto line = [&](double t) {
                    x[i] = t;
                    return f(x);
                };
                const double t = golden_max(line, lo, hi, golden_iters);
                x[i] = t;
                const double ft = f(x);
                if (ft > fx)
                    fx = ft;
                else
                    x[i] = xi;
            }

            std::vector<double> d(n);
            double norm = 0;
            for (size_t i = 0; i < n; ++i) {
                d[i] = x[i] - x0[i];
                norm += d[i] * d[i];
            }
            norm = std::sqrt(norm);
            bool moved = norm > 1e-3 * w;
            if (norm > 0) {
                // extend along the displacement, clipped to the box
                double tlo = -2.0, thi = 16.0;
                for (size_t i = 0; i < n; ++i) {
                    if (d[i] > 1e-300) {
                        thi = std::min(thi, (box[i].hi - x[i]) / d[i]);
                        tlo = std::max(tlo, (box[i].lo - x[i]) / d[i]);
                    } else if (d[i] < -1e-300) {
                        thi = std::min(thi, (box[i].lo - x[i]) / d[i]);
                        tlo = std::max(tlo, (box[i].hi - x[i]) / d[i]);
                    }
                }
                if (thi > tlo) {
                    std::vector<double> y(n);
                    auto line = [&](double t) {
                        for (size_t i = 0; i < n; ++i) y[i] = x[i] + t * d[i];
                        return f(y);
                    };
                    const double t = golden_max(line, tlo, thi, golden_iters);
                    for (size_t i = 0; i < n; ++i) y[i] = x[i] + t * d[i];
                    const double ft = f(y);
                    if (ft > fx) {
                        fx = ft;
                        x = y;
                        moved = true;
                    }
                }
            }
            if (!moved) break;
        }
    }
    return fx;
}

}  // namespace nsbox::opt
