#include <doctest.h>

#include <cmath>
#include <limits>

#include "kosc/errors.hpp"
#include "kosc/model.hpp"

using namespace kosc;

TEST_CASE("construction validates the domain") {
    CHECK_NOTHROW(ModelParams(1.0, 1.0, 0.0));
    CHECK_THROWS_AS(ModelParams(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ModelParams(1.0, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ModelParams(1.0, 1.0, -1e-3), DomainError);
    CHECK_THROWS_AS(ModelParams(std::nan(""), 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ModelParams(1.0, std::numeric_limits<double>::infinity(), 1.0), DomainError);
    try {
        ModelParams(1.0, 0.0, 1.0);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.field() == "r");
    }
}

TEST_CASE("from_physical reduces to lambda units") {
    const auto a = from_physical(1, 1, 1, 0);
    CHECK(a == ModelParams(1, 1, 0));
    const auto b = from_physical(10, 1, 10, 2);
    CHECK(b.q() == 10);
    CHECK(b.r() == doctest::Approx(0.1));
    CHECK(b.alpha() == 2);
    CHECK(b.gamma() == doctest::Approx(10));

    try {
        from_physical(1, 0, 1, 0);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.field() == "lambda");
    }
    CHECK_THROWS_AS(from_physical(-1, 1, 1, 0), DomainError);
    CHECK_THROWS_AS(from_physical(1, 1, 0, 0), DomainError);
}

TEST_CASE("from_physical is scale invariant") {
    const auto base = from_physical(3.0, 0.5, 2.0, 0.25, Approx::RWA);
    for (double c : {0.5, 4.0, 1024.0}) {
        // powers of two keep the ratios exact
        CHECK(from_physical(3.0 * c, 0.5 * c, 2.0 * c, 0.25 * c, Approx::RWA) == base);
    }
}

TEST_CASE("regime labels") {
    CHECK(regime(ModelParams(10, 0.1, 1)) == Regime::NonMarkovian);
    CHECK(regime(ModelParams(0.1, 10, 1)) == Regime::Markovian);
    CHECK(regime(ModelParams(1, 1, 1)) == Regime::Crossover);
    // thresholds are inclusive
    CHECK(regime(ModelParams(5, 0.5, 0)) == Regime::NonMarkovian);
    CHECK(regime(ModelParams(0.2, 2, 0)) == Regime::Markovian);
    CHECK(regime(ModelParams(10, 10, 0)) == Regime::Crossover);
    CHECK(to_string(Regime::NonMarkovian) == "non_markovian");
}

TEST_CASE("with_* copies keep the other fields") {
    const ModelParams p(2, 3, 4, Approx::RWA);
    CHECK(p.with_q(5) == ModelParams(5, 3, 4, Approx::RWA));
    CHECK(p.with_alpha(0).alpha() == 0);
    CHECK(p.with_approx(Approx::NonRWA).approx() == Approx::NonRWA);
    CHECK_THROWS_AS(p.with_r(0), DomainError);
}
