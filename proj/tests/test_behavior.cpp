#include <catch2/catch_amalgamated.hpp>

#include "nsbox/behavior.hpp"
#include "nsbox/behavior_io.hpp"
#include "nsbox/sampling.hpp"

using namespace nsbox;

TEST_CASE("table layout is [X][Y][a][b]") {
    Behavior b;
    b.p(1, 0, 1, 1) = 0.25;
    CHECK(b.table[Behavior::index(1, 0, 1, 1)] == 0.25);
    CHECK(Behavior::index(0, 0, 0, 0) == 0);
    CHECK(Behavior::index(1, 1, 1, 1) == 15);
    CHECK(Behavior::index(1, 0, 0, 1) == 9);
}

TEST_CASE("make_behavior clamps float noise and rejects real negatives") {
    std::array<double, 16> t{};
    t[0] = -1e-13;
    t[1] = 1.0;
    const Behavior b = make_behavior(t);
    CHECK(b.table[0] == 0.0);

    t[0] = -1e-11;
    CHECK_THROWS_AS(make_behavior(t), std::invalid_argument);
    t[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(make_behavior(t), std::invalid_argument);
    t[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(make_behavior(t), std::invalid_argument);
}

TEST_CASE("uniform box validates with zero residuals") {
    const ValidityReport r = validate(uniform_box());
    CHECK(r.normalization_residual == 0.0);
    CHECK(r.max_negativity == 0.0);
    CHECK(r.alice_marginal_residual == 0.0);
    CHECK(r.bob_marginal_residual == 0.0);
    CHECK(r.valid());
}

TEST_CASE("validate flags a signaling table") {
    // Bob's outcome copies X: deterministic, normalized, but signaling.
    Behavior b;
    for (int X : {0, 1})
        for (int Y : {0, 1}) b.p(X, Y, 0, X) = 1.0;
    const ValidityReport r = validate(b);
    CHECK(r.normalized);
    CHECK(r.nonnegative);
    CHECK_FALSE(r.is_no_signaling);
    CHECK(r.bob_marginal_residual == 1.0);
    CHECK(r.alice_marginal_residual == 0.0);
    CHECK_FALSE(r.valid());
}

TEST_CASE("validate flags normalization and negativity") {
    Behavior b = uniform_box();
    b.p(0, 0, 0, 0) = 0.3;
    const ValidityReport r = validate(b);
    CHECK_FALSE(r.normalized);
    CHECK(r.normalization_residual == Catch::Approx(0.05).margin(1e-15));

    Behavior neg = uniform_box();
    neg.p(1, 1, 0, 0) = -0.25;
    neg.p(1, 1, 0, 1) = 0.75;
    const ValidityReport rn = validate(neg);
    CHECK_FALSE(rn.nonnegative);
    CHECK(rn.max_negativity == 0.25);

    Behavior nan_box = uniform_box();
    nan_box.p(0, 0, 0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate(nan_box), std::invalid_argument);
}

TEST_CASE("correlators of simple tables") {
    const Correlators u = correlators(uniform_box());
    for (int X : {0, 1})
        for (int Y : {0, 1}) CHECK(u(X, Y) == 0.0);

    // a = b = 0 always: every correlator is +1
    Behavior all_zero;
    for (int X : {0, 1})
        for (int Y : {0, 1}) all_zero.p(X, Y, 0, 0) = 1.0;
    const Correlators c = correlators(all_zero);
    for (int X : {0, 1})
        for (int Y : {0, 1}) CHECK(c(X, Y) == 1.0);

    // perfectly anticorrelated at every setting
    Behavior anti;
    for (int X : {0, 1})
        for (int Y : {0, 1}) {
            anti.p(X, Y, 0, 1) = 0.5;
            anti.p(X, Y, 1, 0) = 0.5;
        }
    const Correlators ca = correlators(anti);
    for (int X : {0, 1})
        for (int Y : {0, 1}) CHECK(ca(X, Y) == -1.0);
}

TEST_CASE("behavior json round trip is bit exact") {
    Rng rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        Behavior b;
        for (auto& v : b.table) v = rng.uniform();
        const std::string text = write_behavior(b);
        const Behavior back = read_behavior(text);
        CHECK(back == b);
    }
}

TEST_CASE("read_behavior reports schema errors with index paths") {
    CHECK_THROWS_AS(read_behavior("not json"), ParseError);
    CHECK_THROWS_AS(read_behavior("[1,2]"), ParseError);

    try {
        read_behavior("{\"q\": []}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.path() == "p");
    }

    try {
        read_behavior("{\"p\": [[[[0,0],[0,0]],[[0,0],[0,0]]]]}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.path() == "p");
        CHECK(std::string(e.what()).find("2 elements") != std::string::npos);
    }

    try {
        read_behavior(
            "{\"p\": [[[[0,0],[0,0]],[[0,0],[0,0]]],"
            " [[[0,0],[0,\"x\"]],[[0,0],[0,0]]]]}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.path() == "p[1][0][1][1]");
    }
}

TEST_CASE("read_behavior keeps raw values for validate to judge") {
    const Behavior b = read_behavior(
        "{\"p\": [[[[0.5,0],[0,0.5]],[[0.5,0],[0,0.5]]],"
        " [[[0.5,0],[0,0.5]],[[0.9,0],[0,0.5]]]]}");
    CHECK(b.p(1, 1, 0, 0) == 0.9);
    CHECK_FALSE(validate(b).normalized);
}

TEST_CASE("rng stream is stable across runs") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());

    Rng r(7);
    const std::vector<double> w = random_simplex_weights(r, 24);
    double s = 0;
    for (double v : w) {
        CHECK(v >= 0.0);
        s += v;
    }
    CHECK(s == Catch::Approx(1.0).margin(1e-12));
}
