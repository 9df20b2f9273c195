#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nsbox/bounds.hpp"
#include "nsbox/hardy.hpp"
#include "nsbox/infocausality.hpp"

using namespace nsbox;

TEST_CASE("no-signaling bound is the pure nonlocal vertex, exactly") {
    for (Family f : {Family::Hardy, Family::Cabello}) {
        const BoundResult r = max_under_no_signaling(f);
        CHECK(r.value == 0.5);
        CHECK(r.witness.c[5] == 1.0);
        double rest = 0;
        for (size_t k = 0; k < r.witness.c.size(); ++k)
            if (k != 5) rest += r.witness.c[k];
        CHECK(rest == 0.0);
        CHECK(r.witness_bell.b == 4.0);
        CHECK(r.witness_bell.b_prime == 1.0);
        CHECK(r.witness_ic.a_value == 2.0);
        CHECK_FALSE(r.witness_ic.ic_satisfied);
    }
    CHECK(max_under_no_signaling(Family::Hardy).witness.c.size() == 6);
    CHECK(max_under_no_signaling(Family::Cabello).witness.c.size() == 11);
}

TEST_CASE("information causality lowers both bounds to the same value") {
    for (Family f : {Family::Hardy, Family::Cabello}) {
        const BoundResult r = max_under_ic(f, 40, 42);
        CHECK(r.value >= kIcFamilyBound - 1e-4);
        CHECK(r.value <= kIcFamilyBound + 1e-9);
        CHECK(r.value < max_under_no_signaling(f).value);

        // witness coefficients form a proper mixture
        double sum = 0;
        for (double c : r.witness.c) {
            CHECK(c >= 0.0);
            sum += c;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);

        // the witness box itself satisfies the quadratic condition
        CHECK(r.witness_ic.a_value <= 1.0 + 1e-9);
        CHECK(r.witness_ic.ic_satisfied);

        // both families share B = 2 + 4 * value at the 001 label
        CHECK(std::abs(r.witness_bell.b - (2.0 + 4.0 * r.value)) <= 1e-12);
        CHECK(r.witness_bell.b <= kTsirelsonBound + 1e-6);
    }
}

TEST_CASE("ic bound search is deterministic for a fixed seed") {
    const BoundResult a = max_under_ic(Family::Hardy, 20, 7);
    const BoundResult b = max_under_ic(Family::Hardy, 20, 7);
    CHECK(a.value == b.value);
    for (size_t k = 0; k < a.witness.c.size(); ++k) CHECK(a.witness.c[k] == b.witness.c[k]);
}

TEST_CASE("bound metadata is tagged correctly") {
    const BoundResult ns = max_under_no_signaling(Family::Hardy);
    CHECK(ns.constraint == BoundConstraint::NoSignaling);
    CHECK(ns.family == Family::Hardy);
    const BoundResult ic = max_under_ic(Family::Cabello, 10, 3);
    CHECK(ic.constraint == BoundConstraint::InformationCausality);
    CHECK(ic.family == Family::Cabello);
    CHECK(std::string(to_string(Family::Hardy)) == "hardy");
    CHECK(std::string(to_string(Family::Cabello)) == "cabello");
    CHECK(std::string(to_string(BoundConstraint::NoSignaling)) == "no-signaling");
    CHECK(std::string(to_string(BoundConstraint::InformationCausality)) ==
          "information-causality");
}
