#include <catch2/catch_amalgamated.hpp>

#include "nsbox/bell.hpp"
#include "nsbox/hardy.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/sampling.hpp"

using namespace nsbox;

TEST_CASE("hardy_stats reads the four distinguished entries") {
    Behavior b;
    for (int i = 0; i < 16; ++i) b.table[i] = i / 120.0;
    const HardyStats s = hardy_stats(b);
    CHECK(s.q1 == b.p(0, 0, 0, 0));
    CHECK(s.q2 == b.p(1, 1, 1, 1));
    CHECK(s.zero_residuals[0] == b.p(1, 0, 1, 1));
    CHECK(s.zero_residuals[1] == b.p(0, 1, 1, 1));
    CHECK(s.w == s.q2 - s.q1);
}

TEST_CASE("family vertex lists are pinned") {
    const auto& h = hardy_family();
    const char* expect_h[] = {"L-0001", "L-0011", "L-0100", "L-1100", "L-1111", "N-001"};
    for (int k = 0; k < 6; ++k) CHECK(h[k].str() == expect_h[k]);

    const auto& c = cabello_family();
    const char* expect_c[] = {"L-0001", "L-0011", "L-0100", "L-1100", "L-1111", "N-001",
                              "L-0000", "L-0010", "L-1000", "L-1010", "N-110"};
    for (int k = 0; k < 11; ++k) CHECK(c[k].str() == expect_c[k]);
}

TEST_CASE("family members satisfy the zero constraints exactly") {
    for (const auto& l : cabello_family()) {
        const HardyStats s = hardy_stats(vertex(l));
        CHECK(s.zero_residuals[0] == 0.0);
        CHECK(s.zero_residuals[1] == 0.0);
    }
    for (const auto& l : hardy_family())
        CHECK(hardy_stats(vertex(l)).q1 == 0.0);
}

TEST_CASE("family members carry the pinned q1, q2 and w values") {
    const double expect_q2[] = {0, 0, 0, 0, 0, 0.5};
    for (int k = 0; k < 6; ++k)
        CHECK(hardy_stats(vertex(hardy_family()[k])).q2 == expect_q2[k]);

    const double expect_q1[] = {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0.5};
    const double expect_w[] = {0, 0, 0, 0, 0, 0.5, -1, -1, -1, 0, -0.5};
    for (int k = 0; k < 11; ++k) {
        const HardyStats s = hardy_stats(vertex(cabello_family()[k]));
        CHECK(s.q1 == expect_q1[k]);
        CHECK(s.w == expect_w[k]);
    }
}

TEST_CASE("only the listed vertices keep both zero constraints") {
    int in_family = 0;
    for (const auto& l : all_vertex_labels()) {
        const HardyStats s = hardy_stats(vertex(l));
        if (s.zero_residuals[0] == 0.0 && s.zero_residuals[1] == 0.0) ++in_family;
    }
    CHECK(in_family == 11);
}

TEST_CASE("coefficient validation") {
    CHECK_THROWS_AS(HardyCoefficients::validated({0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(HardyCoefficients::validated({1, 0, 0, 0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(HardyCoefficients::validated({0.6, 0.6, 0, 0, 0, -0.2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(HardyCoefficients::validated({0.5, 0.49, 0, 0, 0, 0}),
                    std::invalid_argument);

    const auto hc = HardyCoefficients::validated({1.0 + 5e-13, -5e-13, 0, 0, 0, 0});
    CHECK(hc.c[1] == 0.0);
    CHECK_FALSE(hc.cabello());
    CHECK(HardyCoefficients::validated(std::vector<double>(11, 1.0 / 11)).cabello());
}

TEST_CASE("builders demand the matching family size") {
    const auto h6 = HardyCoefficients::validated({1, 0, 0, 0, 0, 0});
    const auto c11 = HardyCoefficients::validated({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(build_hardy_box(c11), std::invalid_argument);
    CHECK_THROWS_AS(build_cabello_box(h6), std::invalid_argument);
    CHECK(build_hardy_box(h6) == vertex(VertexLabel::local(0, 0, 0, 1)));
    CHECK(build_cabello_box(c11) == vertex(VertexLabel::local(0, 0, 0, 1)));
}

namespace {

// correlator columns of the family vertices, rows <00>,<01>,<10>,<11>
const double kHardyCorr[4][6] = {
    {-1, -1, -1, -1, +1, -1},
    {-1, +1, -1, -1, -1, -1},
    {-1, -1, -1, +1, -1, -1},
    {-1, +1, -1, +1, +1, +1},
};
const double kCabelloExtraCorr[4][5] = {
    {+1, +1, +1, +1, +1},
    {+1, -1, +1, -1, -1},
    {+1, +1, -1, -1, -1},
    {+1, -1, -1, +1, -1},
};

}  // namespace

TEST_CASE("family vertices have the frozen correlator columns") {
    for (int k = 0; k < 6; ++k) {
        const Correlators e = correlators(vertex(hardy_family()[k]));
        for (int X : {0, 1})
            for (int Y : {0, 1}) CHECK(e(X, Y) == kHardyCorr[X * 2 + Y][k]);
    }
    for (int k = 0; k < 5; ++k) {
        const Correlators e = correlators(vertex(cabello_family()[6 + k]));
        for (int X : {0, 1})
            for (int Y : {0, 1}) CHECK(e(X, Y) == kCabelloExtraCorr[X * 2 + Y][k]);
    }
}

TEST_CASE("built boxes obey the linear family identities") {
    Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const auto hc = HardyCoefficients::validated(random_simplex_weights(rng, 6));
        const Behavior box = build_hardy_box(hc);
        const HardyStats s = hardy_stats(box);
        CHECK(s.q1 == 0.0);
        CHECK(s.zero_residuals[0] == 0.0);
        CHECK(s.zero_residuals[1] == 0.0);
        CHECK(s.q2 == Catch::Approx(0.5 * hc.c[5]).margin(1e-15));
        const double b = bell_value(box, kHardyBellLabel).b;
        CHECK(std::abs(b - (2.0 + 4.0 * s.q2)) <= 1e-12);
        CHECK(s.satisfies_hardy() == (s.q2 > kValidityTol));
    }
    for (int trial = 0; trial < 300; ++trial) {
        const auto hc = HardyCoefficients::validated(random_simplex_weights(rng, 11));
        const Behavior box = build_cabello_box(hc);
        const HardyStats s = hardy_stats(box);
        CHECK(s.zero_residuals[0] == 0.0);
        CHECK(s.zero_residuals[1] == 0.0);
        const double q1_expect = hc.c[6] + hc.c[7] + hc.c[8] + hc.c[9] + 0.5 * hc.c[10];
        CHECK(s.q1 == Catch::Approx(q1_expect).margin(1e-14));
        const double b = bell_value(box, kHardyBellLabel).b;
        CHECK(std::abs(b - (2.0 + 4.0 * s.w)) <= 1e-12);
    }
}

TEST_CASE("hardy mixtures without the nonlocal member are local") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c = random_simplex_weights(rng, 5);
        c.push_back(0.0);
        const Behavior box = build_hardy_box(HardyCoefficients::validated(c));
        const HardyStats s = hardy_stats(box);
        CHECK(s.q2 == 0.0);
        CHECK_FALSE(s.satisfies_hardy());
        CHECK(is_local(box).local);
    }
}

TEST_CASE("satisfies_cabello needs w strictly positive") {
    // pure N-001: w = 0.5
    const Behavior pr = vertex(VertexLabel::nonlocal(0, 0, 1));
    CHECK(hardy_stats(pr).satisfies_cabello());
    // uniform over the cabello locals: w < 0
    std::vector<double> c(11, 0.0);
    for (int k : {0, 1, 2, 3, 4, 6, 7, 8, 9}) c[k] = 1.0 / 9;
    const HardyStats s = hardy_stats(build_cabello_box(HardyCoefficients::validated(c)));
    CHECK(s.w < 0.0);
    CHECK_FALSE(s.satisfies_cabello());
    // a box that fails hardy (q1 > 0) can still pass cabello
    std::vector<double> mix(11, 0.0);
    mix[5] = 0.9;   // N-001
    mix[6] = 0.1;   // L-0000, q1 = 1
    const HardyStats sm = hardy_stats(build_cabello_box(HardyCoefficients::validated(mix)));
    CHECK(sm.q1 == Catch::Approx(0.1).margin(1e-15));
    CHECK(sm.satisfies_cabello());
    CHECK_FALSE(sm.satisfies_hardy());
}
