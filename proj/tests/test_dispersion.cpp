#include <doctest.h>

#include <algorithm>
#include <random>

#include "kosc/dispersion.hpp"
#include "kosc/errors.hpp"
#include "kosc/greens.hpp"

using namespace kosc;

namespace {

bool contains(const std::vector<Mode>& modes, cplx z, double tol) {
    return std::any_of(modes.begin(), modes.end(), [&](const Mode& m) { return std::abs(m.z - z) < tol; });
}

}  // namespace

TEST_CASE("classify") {
    CHECK(classify({1, -0.5}) == Stability::Stable);
    CHECK(classify({1, 0.5}) == Stability::Unstable);
    CHECK(classify(1.0) == Stability::Marginal);
    CHECK(classify({0, 5e-10}) == Stability::Marginal);
}

TEST_CASE("characteristic polynomial degrees") {
    const auto n = char_poly(ModelParams(2, 1, 3));
    REQUIRE(n.size() == 1);
    CHECK(n[0].coefficients.size() == 7);
    CHECK(n[0].branch == PolyBranch::NonRWA);
    const auto r = char_poly(ModelParams(2, 1, 3, Approx::RWA));
    REQUIRE(r.size() == 2);
    CHECK(r[0].degree() == 3);
    CHECK(r[1].degree() == 3);
}

TEST_CASE("polynomial vanishes where the dispersion function does") {
    // Clearing denominators multiplies det D^re by the bath factor.
    const ModelParams p(1.7, 0.6, 2.2);
    const auto cp = char_poly(p)[0];
    const cplx z(0.3, -0.8);
    const cplx p2 = std::pow(z * z + 1.7 * 1.7 + 1.0, 2) - 4.0 * 1.7 * 1.7 * z * z;
    const cplx lhs = poly::eval(cp.coefficients, z);
    const cplx rhs = -dispersion_function(z, p, PolyBranch::NonRWA) * p2;
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
}

TEST_CASE("decoupled spectrum") {
    const ModelParams p(3, 2, 0);
    const auto s = spectrum(p);
    REQUIRE(s.size() == 2);
    CHECK(contains(s, {3, -0.5}, 1e-14));
    CHECK(contains(s, {-3, -0.5}, 1e-14));

    const auto r = spectrum(p.with_approx(Approx::RWA));
    REQUIRE(r.size() == 2);
    CHECK(contains(r, {3, -0.5}, 1e-14));

    // r = 1 makes the decoupled roots coincide with bath poles; they must survive
    const auto c = spectrum(ModelParams(2, 1, 0));
    CHECK(c.size() == 2);
    CHECK(all_roots(ModelParams(2, 1, 0)).size() == 6);
}

TEST_CASE("matches 40-digit polynomial roots") {
    // reference: mpmath polyroots on the same degree-6 polynomial
    const cplx expect[] = {{-1.9451983395630885678, 0.86145214155456232839},
                           {1.9451983395630885678, 0.86145214155456232839},
                           {-1.2282878836407543558, -0.91091654601940813465},
                           {1.2282878836407543558, -0.91091654601940813465},
                           {-2.486543576743138501, -0.95053559553515419375},
                           {2.486543576743138501, -0.95053559553515419375}};
    const auto all = all_roots(ModelParams(2, 1, 5));
    REQUIRE(all.size() == 6);
    for (const auto& z : expect) CHECK(contains(all, z, 1e-10));
    // the pair at Im ~ +0.86 is genuine; canonical ordering puts it first
    const auto s = spectrum(ModelParams(2, 1, 5));
    REQUIRE(!s.empty());
    CHECK(s[0].z.real() < 0);
    CHECK(s[0].z.imag() == doctest::Approx(0.86145214155456232839));
}

TEST_CASE("returned modes satisfy the dispersion relation") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uq(0.1, 20), ur(0.05, 20), ua(0, 200);
    for (int i = 0; i < 60; ++i) {
        const ModelParams p(uq(rng), ur(rng), ua(rng), i % 2 ? Approx::RWA : Approx::NonRWA);
        const auto all = all_roots(p);
        CHECK(all.size() == 6);
        for (const auto& m : spectrum(p)) {
            CHECK(m.residual < kSpuriousResidual);
            CHECK(relative_residual(m.z, p, m.branch) == m.residual);
        }
        // excluded roots fail the residual test or sit on a bath pole
        for (const auto& m : all) {
            if (!m.spurious) continue;
            const double q = p.q();
            const bool on_pole = std::min({std::abs(m.z - cplx(q, 1)), std::abs(m.z - cplx(q, -1)),
                                           std::abs(m.z - cplx(-q, 1)), std::abs(m.z - cplx(-q, -1))}) <
                                 kDenominatorMatch * std::max(1.0, std::abs(m.z));
            CHECK((on_pole || m.residual >= kSpuriousResidual));
        }
    }
}

TEST_CASE("canonical ordering") {
    const auto s = spectrum(ModelParams(4, 0.3, 50));
    for (std::size_t i = 1; i < s.size(); ++i) {
        const bool ordered = s[i - 1].z.imag() > s[i].z.imag() - 1e-10;
        CHECK(ordered);
    }
    CHECK(s.size() == spectrum(ModelParams(4, 0.3, 50)).size());
}

TEST_CASE("RWA branch mirror") {
    for (double a : {0.5, 10.0, 100.0}) {
        const ModelParams p(2.5, 0.4, a, Approx::RWA);
        std::vector<cplx> plus, minus;
        for (const auto& m : all_roots(p)) (m.branch == PolyBranch::RwaPositive ? plus : minus).push_back(m.z);
        REQUIRE(plus.size() == 3);
        REQUIRE(minus.size() == 3);
        for (const auto& z : plus) {
            const cplx mirror = -std::conj(z);
            const bool found = std::any_of(minus.begin(), minus.end(),
                                           [&](cplx w) { return std::abs(w - mirror) < 1e-10; });
            CHECK(found);
        }
    }
}

TEST_CASE("decoupled NonRWA roots pair as {z, -conj z}") {
    const auto s = spectrum(ModelParams(1.2, 3.0, 0));
    REQUIRE(s.size() == 2);
    CHECK(std::abs(s[0].z + std::conj(s[1].z)) < 1e-14);
}

TEST_CASE("narrow-band quartic") {
    const auto r = narrowband_roots(ModelParams(10, 1, 0));
    REQUIRE(r.size() == 4);
    // 40-digit reference values
    CHECK(r[0].z.real() == doctest::Approx(0.70447644422346915564).epsilon(1e-14));
    CHECK(r[1].z.real() == doctest::Approx(-0.70447644422346915564).epsilon(1e-14));
    CHECK(r[2].z.imag() == doctest::Approx(14.19493878325883245).epsilon(1e-14));
    CHECK(r[3].z.imag() == doctest::Approx(-14.19493878325883245).epsilon(1e-14));
    CHECK(r[2].stability == Stability::Unstable);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> uq(1, 20), ur(0.05, 20), ua(1e-3, 300);
    for (int i = 0; i < 50; ++i) {
        const auto m = narrowband_roots(ModelParams(uq(rng), ur(rng), ua(rng)));
        // z+ > 0: a real pair; z- < 0: one root in the upper half plane
        CHECK(m[0].z.imag() == 0.0);
        CHECK(m[0].z.real() > 0.0);
        CHECK(std::count_if(m.begin(), m.end(), [](const Mode& x) { return x.stability == Stability::Unstable; }) == 1);
    }
}

TEST_CASE("critical coupling") {
    const auto c1 = critical_coupling(ModelParams(1, 1, 0));
    CHECK(std::abs(c1.alpha_c - 8.0) < 1e-10);
    CHECK(c1.closed_form_r == 8.0);
    CHECK(c1.closed_form_r_inv == 8.0);
    CHECK(std::abs(critical_coupling(ModelParams(2, 1, 0)).alpha_c - 12.5) < 1e-10);

    // away from r = 1 the numeric root follows the r^-2 form
    const auto c = critical_coupling(ModelParams(3, 0.2, 0));
    CHECK(c.alpha_c == doctest::Approx(c.closed_form_r_inv).epsilon(1e-12));
    CHECK(c.alpha_c != doctest::Approx(c.closed_form_r));

    CHECK_THROWS_AS(critical_coupling(ModelParams(1, 1, 0, Approx::RWA)), SolverError);

    for (double q : {0.5, 1.0, 2.0, 5.0}) {
        const ModelParams p(q, 1, 0);
        const double half = 0.5 * critical_coupling(p).alpha_c;
        for (const auto& m : spectrum(p.with_alpha(half))) CHECK(std::abs(m.z) > 1e-6);
    }
}
