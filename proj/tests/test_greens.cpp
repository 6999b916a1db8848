#include <doctest.h>

#include <random>

#include "kosc/errors.hpp"
#include "kosc/greens.hpp"

using namespace kosc;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("inverse retarded structure") {
    const auto d0 = retarded_inverse(0.3, ModelParams(2, 1, 0));
    CHECK(d0.entries(0, 1) == cplx(0.0));
    CHECK(d0.entries(1, 0) == cplx(0.0));
    CHECK(d0.kind == GreenKind::InverseRetarded);

    const auto dr = retarded_inverse(0.3, ModelParams(2, 1, 5, Approx::RWA));
    CHECK(dr.entries(0, 1) == cplx(0.0));
    CHECK(dr.entries(1, 0) == cplx(0.0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4, 4);
    const ModelParams p(1.5, 0.7, 3.0);
    for (int i = 0; i < 20; ++i) {
        const cplx z(u(rng), u(rng));
        const double g = p.gamma();
        const cplx expect = -(z + I * g) * (z + I * g) + p.q() * p.q() - 2.0 * p.q() * self_energy(z, p).value;
        CHECK(std::abs(retarded_determinant(z, p) - expect) < 1e-12 * (1 + std::abs(expect)));
    }
}

TEST_CASE("keldysh inverse") {
    const auto k = keldysh_inverse(ModelParams(3, 0.5, 9));
    CHECK(k.entries(0, 0) == cplx(0, 4));
    CHECK(k.entries(1, 1) == cplx(0, 4));
    CHECK(k.entries(0, 1) == cplx(0.0));
    CHECK(keldysh_inverse(ModelParams(1, 1, 0)).entries(0, 0) == cplx(0, 2));
}

TEST_CASE("green functions: inversion, adjoint and anti-hermiticity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-6, 6);
    for (auto a : {Approx::NonRWA, Approx::RWA}) {
        const ModelParams p(2.0, 1.0, 4.0, a);
        for (int i = 0; i < 30; ++i) {
            const double z = u(rng);
            const auto g = green_functions(z, p);
            const Mat2 d = inverse_retarded_matrix(z, p);
            CHECK((d * g.retarded.entries - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((g.advanced.entries - g.retarded.entries.adjoint()).cwiseAbs().maxCoeff() == 0.0);
            CHECK((g.keldysh.entries.adjoint() + g.keldysh.entries).cwiseAbs().maxCoeff() < 1e-12);
            const double closed = gk11(z, p);
            CHECK(closed >= 0.0);
            CHECK(std::abs((I * g.keldysh.entries(0, 0)).real() - closed) < 1e-10);
            CHECK(std::abs((I * g.keldysh.entries(0, 0)).imag()) < 1e-12);
        }
    }
}

TEST_CASE("gk11 closed forms") {
    CHECK(gk11(0.0, ModelParams(1, 1, 0)) == doctest::Approx(1.0));
    const ModelParams p(2.5, 0.5, 0);
    const double g = p.gamma();
    for (double z : {-3.0, 0.1, 2.5, 7.0}) {
        CHECK(gk11(z, p) == doctest::Approx(2 * g / ((z - 2.5) * (z - 2.5) + g * g)).epsilon(1e-13));
        // denominator factorization at alpha = 0
        const double q = p.q();
        const double lhs = std::pow(z * z - g * g - q * q, 2) + 4 * z * z * g * g;
        const double rhs = ((z - q) * (z - q) + g * g) * ((z + q) * (z + q) + g * g);
        CHECK(std::abs(lhs - rhs) < 1e-12 * rhs);
    }
    const ModelParams tail(3, 2, 5);
    const double z = 1e5;
    // leading behaviour 2 gamma / (z - q)^2
    CHECK(z * z * gk11(z, tail) == doctest::Approx(z * z / ((z - 3) * (z - 3))).epsilon(1e-8));
}

TEST_CASE("singular D^re at the critical point") {
    // alpha_c(q=1, r=1) = 8 puts a root at z = 0
    const ModelParams p(1, 1, 8);
    try {
        green_functions(0.0, p);
        FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
        CHECK(e.at() == 0.0);
    }
    CHECK_THROWS_AS(gk11(0.0, p), SingularityError);
}
