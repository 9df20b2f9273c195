#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsbox/behavior.hpp"
#include "nsbox/sampling.hpp"
#include "nsbox/simplex.hpp"

namespace nsbox {

inline constexpr int kNumLocalVertices = 16;
inline constexpr int kNumNonLocalVertices = 8;
inline constexpr int kNumVertices = 24;

enum class VertexKind { Local, NonLocal };

/// Label of an extreme box of the no-signaling polytope. Local vertices
/// are the deterministic strategies a = alpha X + beta, b = gamma Y + delta
/// (mod 2), written "L-abgd". Nonlocal vertices are the PR-type boxes
/// a + b = XY + alpha X + beta Y + gamma (mod 2), written "N-abg".
struct VertexLabel {
    VertexKind kind = VertexKind::Local;
    int alpha = 0, beta = 0, gamma = 0, delta = 0;  // delta unused for NonLocal

    static VertexLabel local(int a, int b, int g, int d) {
        return {VertexKind::Local, a, b, g, d};
    }
    static VertexLabel nonlocal(int a, int b, int g) {
        return {VertexKind::NonLocal, a, b, g, 0};
    }

    std::string str() const {
        if (kind == VertexKind::Local)
            return "L-" + std::to_string(alpha) + std::to_string(beta) + std::to_string(gamma) +
                   std::to_string(delta);
        return "N-" + std::to_string(alpha) + std::to_string(beta) + std::to_string(gamma);
    }

    static VertexLabel parse(std::string_view s) {
        auto bit = [&](size_t i) -> int {
            const char c = s[i];
            if (c != '0' && c != '1')
                throw std::invalid_argument("bad vertex label: " + std::string(s));
            return c - '0';
        };
        if (s.size() == 6 && s[0] == 'L' && s[1] == '-')
            return local(bit(2), bit(3), bit(4), bit(5));
        if (s.size() == 5 && s[0] == 'N' && s[1] == '-')
            return nonlocal(bit(2), bit(3), bit(4));
        throw std::invalid_argument("bad vertex label: " + std::string(s));
    }

    friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

/// The 16 local vertices in bit-lexicographic order, then the 8 nonlocal
/// ones. This order fixes the weight layout of Decomposition.
inline const std::array<VertexLabel, kNumVertices>& all_vertex_labels() {
    static const std::array<VertexLabel, kNumVertices> labels = [] {
        std::array<VertexLabel, kNumVertices> v{};
        int k = 0;
        for (int a : {0, 1})
            for (int b : {0, 1})
                for (int g : {0, 1})
                    for (int d : {0, 1}) v[k++] = VertexLabel::local(a, b, g, d);
        for (int a : {0, 1})
            for (int b : {0, 1})
                for (int g : {0, 1}) v[k++] = VertexLabel::nonlocal(a, b, g);
        return v;
    }();
    return labels;
}

inline int vertex_position(const VertexLabel& l) {
    if (l.kind == VertexKind::Local)
        return l.alpha * 8 + l.beta * 4 + l.gamma * 2 + l.delta;
    return kNumLocalVertices + l.alpha * 4 + l.beta * 2 + l.gamma;
}

inline Behavior vertex(const VertexLabel& l) {
    std::array<double, 16> t{};
    if (l.kind == VertexKind::Local) {
        for (int X : {0, 1})
            for (int Y : {0, 1}) {
                const int a = (l.alpha & X) ^ l.beta;
                const int b = (l.gamma & Y) ^ l.delta;
                t[Behavior::index(X, Y, a, b)] = 1.0;
            }
    } else {
        for (int X : {0, 1})
            for (int Y : {0, 1}) {
                const int parity = (X & Y) ^ (l.alpha & X) ^ (l.beta & Y) ^ l.gamma;
                for (int o : {0, 1}) t[Behavior::index(X, Y, o ^ parity, o)] = 0.5;
            }
    }
    return make_behavior(t);
}

/// Mixes behaviors with the given weights. Weights must be nonnegative
/// and sum to 1 within 1e-12.
inline Behavior convex_mix(const std::vector<std::pair<double, Behavior>>& terms) {
    double sum = 0;
    for (const auto& [w, bx] : terms) {
        if (!(w >= 0.0))
            throw std::invalid_argument("mixture weight is negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kExactTol)
        throw std::invalid_argument("mixture weights do not sum to 1");
    std::array<double, 16> t{};
    for (const auto& [w, bx] : terms)
        for (int i = 0; i < 16; ++i) t[i] += w * bx.table[i];
    return make_behavior(t);
}

/// Convex weights over the 24 vertices, ordered as all_vertex_labels().
struct Decomposition {
    std::array<double, kNumVertices> weights{};

    double weight(const VertexLabel& l) const { return weights[vertex_position(l)]; }

    Behavior reconstruct() const {
        std::array<double, 16> t{};
        for (int k = 0; k < kNumVertices; ++k) {
            if (weights[k] == 0.0) continue;
            const Behavior v = vertex(all_vertex_labels()[k]);
            for (int i = 0; i < 16; ++i) t[i] += weights[k] * v.table[i];
        }
        return make_behavior(t);
    }
};

struct DecomposeOutcome {
    bool feasible = false;
    Decomposition decomposition;  // meaningful only when feasible
    double max_violation = 0;     // residual of the best LP point found
};

namespace detail {

inline lp::Result vertex_lp(const Behavior& b, int columns) {
    std::vector<std::vector<double>> A(16, std::vector<double>(columns));
    for (int k = 0; k < columns; ++k) {
        const Behavior v = vertex(all_vertex_labels()[k]);
        for (int i = 0; i < 16; ++i) A[i][k] = v.table[i];
    }
    const std::vector<double> rhs(b.table.begin(), b.table.end());
    const std::vector<double> cost(columns, 0.0);
    return lp::solve(A, rhs, cost, 1e-8);
}

inline void require_valid(const Behavior& b, const char* op) {
    const ValidityReport r = validate(b);
    if (r.valid()) return;
    std::string msg = std::string(op) + ": input behavior is ";
    if (!r.normalized)
        msg += "not normalized";
    else if (!r.nonnegative)
        msg += "not nonnegative";
    else
        msg += "signaling";
    throw std::invalid_argument(msg);
}

}  // namespace detail

/// Expresses b as a convex mixture of the 24 vertices. The normalization
/// row is implied by the 16 probability constraints, so equality rows on
/// the table are the whole LP. Infeasible only for points outside the
/// no-signaling polytope, which validate() should already have flagged.
inline DecomposeOutcome decompose(const Behavior& b) {
    detail::require_valid(b, "decompose");
    const lp::Result r = detail::vertex_lp(b, kNumVertices);
    DecomposeOutcome out;
    out.max_violation = r.max_violation;
    out.feasible = r.status == lp::Status::Optimal;
    if (out.feasible)
        for (int k = 0; k < kNumVertices; ++k) out.decomposition.weights[k] = r.x[k];
    return out;
}

struct LocalityCheck {
    bool local = false;
    std::array<double, kNumLocalVertices> local_weights{};  // witness when local
    double max_violation = 0;
};

/// Membership test for the local polytope: LP over the 16 deterministic
/// vertices only.
inline LocalityCheck is_local(const Behavior& b) {
    detail::require_valid(b, "is_local");
    const lp::Result r = detail::vertex_lp(b, kNumLocalVertices);
    LocalityCheck out;
    out.max_violation = r.max_violation;
    out.local = r.status == lp::Status::Optimal;
    if (out.local)
        for (int k = 0; k < kNumLocalVertices; ++k) out.local_weights[k] = r.x[k];
    return out;
}

/// Dirichlet-weighted mixture of all 24 vertices.
inline Behavior random_mixture(Rng& rng) {
    const std::vector<double> w = random_simplex_weights(rng, kNumVertices);
    std::vector<std::pair<double, Behavior>> terms;
    terms.reserve(kNumVertices);
    for (int k = 0; k < kNumVertices; ++k)
        terms.emplace_back(w[k], vertex(all_vertex_labels()[k]));
    return convex_mix(terms);
}

}  // namespace nsbox
