#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "nsbox/bell.hpp"
#include "nsbox/polytope.hpp"

using namespace nsbox;

TEST_CASE("vertex labels enumerate, print and parse consistently") {
    const auto& labels = all_vertex_labels();
    CHECK(labels.front().str() == "L-0000");
    CHECK(labels[15].str() == "L-1111");
    CHECK(labels[16].str() == "N-000");
    CHECK(labels.back().str() == "N-111");

    std::set<std::string> names;
    for (int k = 0; k < kNumVertices; ++k) {
        names.insert(labels[k].str());
        CHECK(vertex_position(labels[k]) == k);
        CHECK(VertexLabel::parse(labels[k].str()) == labels[k]);
    }
    CHECK(names.size() == kNumVertices);

    CHECK_THROWS_AS(VertexLabel::parse("L-012"), std::invalid_argument);
    CHECK_THROWS_AS(VertexLabel::parse("N-0000"), std::invalid_argument);
    CHECK_THROWS_AS(VertexLabel::parse("X-0000"), std::invalid_argument);
    CHECK_THROWS_AS(VertexLabel::parse("L-0002"), std::invalid_argument);
}

TEST_CASE("local vertices are the deterministic strategies") {
    const VertexLabel l = VertexLabel::local(1, 0, 1, 1);  // a = X, b = Y + 1
    const Behavior v = vertex(l);
    for (int X : {0, 1})
        for (int Y : {0, 1})
            for (int a : {0, 1})
                for (int b : {0, 1}) {
                    const double expect = (a == X && b == (Y ^ 1)) ? 1.0 : 0.0;
                    CHECK(v.p(X, Y, a, b) == expect);
                }
}

TEST_CASE("nonlocal vertices put half weight on the parity pairs") {
    const VertexLabel l = VertexLabel::nonlocal(0, 0, 1);
    const Behavior v = vertex(l);
    for (int X : {0, 1})
        for (int Y : {0, 1})
            for (int a : {0, 1})
                for (int b : {0, 1}) {
                    const int parity = (X & Y) ^ 1;
                    CHECK(v.p(X, Y, a, b) == ((a ^ b) == parity ? 0.5 : 0.0));
                }
}

TEST_CASE("every vertex validates with exactly zero residuals") {
    for (const auto& l : all_vertex_labels()) {
        const ValidityReport r = validate(vertex(l));
        CHECK(r.normalization_residual == 0.0);
        CHECK(r.max_negativity == 0.0);
        CHECK(r.alice_marginal_residual == 0.0);
        CHECK(r.bob_marginal_residual == 0.0);
        CHECK(r.valid());
    }
}

TEST_CASE("convex_mix validates weights") {
    const Behavior a = vertex(VertexLabel::nonlocal(0, 0, 0));
    const Behavior b = vertex(VertexLabel::nonlocal(0, 0, 1));
    CHECK_THROWS_AS(convex_mix({{0.6, a}, {0.6, b}}), std::invalid_argument);
    CHECK_THROWS_AS(convex_mix({{1.2, a}, {-0.2, b}}), std::invalid_argument);

    // opposite-parity PR boxes average to the uniform box
    const Behavior mix = convex_mix({{0.5, a}, {0.5, b}});
    CHECK(mix == uniform_box());
}

TEST_CASE("each vertex decomposes to itself") {
    for (const auto& l : all_vertex_labels()) {
        const DecomposeOutcome out = decompose(vertex(l));
        REQUIRE(out.feasible);
        CHECK(out.max_violation <= 1e-12);
        CHECK(out.decomposition.weight(l) == Catch::Approx(1.0).margin(1e-9));
        for (const auto& other : all_vertex_labels())
            if (!(other == l))
                CHECK(out.decomposition.weight(other) <= 1e-9);
    }
}

TEST_CASE("random mixtures decompose and reconstruct") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const Behavior b = random_mixture(rng);
        const DecomposeOutcome out = decompose(b);
        REQUIRE(out.feasible);
        const Behavior back = out.decomposition.reconstruct();
        for (int i = 0; i < 16; ++i)
            CHECK(std::abs(back.table[i] - b.table[i]) < 1e-8);
        double sum = 0;
        for (double w : out.decomposition.weights) {
            CHECK(w >= 0.0);
            CHECK(w <= 1.0 + 1e-12);
            sum += w;
        }
        CHECK(sum == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("is_local separates the two vertex classes") {
    for (const auto& l : all_vertex_labels()) {
        const LocalityCheck r = is_local(vertex(l));
        if (l.kind == VertexKind::Local)
            CHECK(r.local);
        else
            CHECK_FALSE(r.local);
    }
}

TEST_CASE("is_local witness reconstructs the input") {
    Rng rng(5);
    std::vector<std::pair<double, Behavior>> terms;
    const std::vector<double> w = random_simplex_weights(rng, kNumLocalVertices);
    for (int k = 0; k < kNumLocalVertices; ++k)
        terms.emplace_back(w[k], vertex(all_vertex_labels()[k]));
    const Behavior b = convex_mix(terms);

    const LocalityCheck r = is_local(b);
    REQUIRE(r.local);
    std::array<double, 16> t{};
    for (int k = 0; k < kNumLocalVertices; ++k) {
        const Behavior v = vertex(all_vertex_labels()[k]);
        for (int i = 0; i < 16; ++i) t[i] += r.local_weights[k] * v.table[i];
    }
    for (int i = 0; i < 16; ++i) CHECK(std::abs(t[i] - b.table[i]) < 1e-8);
}

TEST_CASE("noisy nonlocal box crosses the local boundary at half weight") {
    const Behavior pr = vertex(VertexLabel::nonlocal(0, 0, 1));
    auto noisy = [&](double v) {
        return convex_mix({{v, pr}, {1.0 - v, uniform_box()}});
    };
    CHECK(is_local(noisy(0.49)).local);
    CHECK_FALSE(is_local(noisy(0.51)).local);
    // at the boundary, B = 2: still inside by the closed-polytope LP
    CHECK(is_local(noisy(0.5)).local);
}

TEST_CASE("decompose rejects invalid input") {
    Behavior sig;
    for (int X : {0, 1})
        for (int Y : {0, 1}) sig.p(X, Y, 0, X) = 1.0;
    CHECK_THROWS_AS(decompose(sig), std::invalid_argument);
    CHECK_THROWS_AS(is_local(sig), std::invalid_argument);

    Behavior unnorm = uniform_box();
    unnorm.p(0, 0, 0, 0) = 0.5;
    CHECK_THROWS_AS(decompose(unnorm), std::invalid_argument);
}

TEST_CASE("random_mixture is deterministic per seed") {
    Rng a(99), b(99);
    CHECK(random_mixture(a) == random_mixture(b));
}
