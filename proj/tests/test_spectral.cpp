#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kosc/errors.hpp"
#include "kosc/quadrature.hpp"
#include "kosc/spectral.hpp"

using namespace kosc;

TEST_CASE("spectral density shape") {
    const ModelParams p(3.0, 1.0, 2.0);
    const double peak = 2.0 / (2.0 * std::numbers::pi);
    CHECK(spectral_density(3.0, p) == doctest::Approx(peak));
    CHECK(spectral_density(2.0, p) == doctest::Approx(peak / 2));
    CHECK(spectral_density(4.0, p) == doctest::Approx(peak / 2));
    CHECK(spectral_density(1e9, p) < 1e-18);
}

TEST_CASE("spectral density integrates to alpha / 2") {
    for (double q : {0.3, 2.0, 15.0}) {
        const ModelParams p(q, 1.0, 7.0);
        auto f = [&](double z) { return spectral_density(z, p); };
        const auto mid = quad::integrate_pieces(f, {-50.0, q - 1, q, q + 1, 50.0});
        const auto hi = quad::integrate_upper_tail(f, 50.0);
        const auto lo = quad::integrate_lower_tail(f, 50.0);
        CHECK(std::abs(mid.value + hi.value + lo.value - 3.5) < 1e-6);
    }
}

TEST_CASE("self-energy values") {
    CHECK(self_energy(0.0, ModelParams(1, 1, 4)).value.real() == doctest::Approx(0.5));
    // reference from 40-digit evaluation of the rational form
    CHECK(self_energy(0.7, ModelParams(2, 1, 5)).value.real() == doctest::Approx(0.50560311388738167093).epsilon(1e-14));
    CHECK(self_energy_rwa(0.0, ModelParams(1, 1, 2)).value.real() == doctest::Approx(0.5));
    CHECK(self_energy_rwa(3.0, ModelParams(3, 1, 2)).value == cplx(0.0));
    CHECK(self_energy(5.0, ModelParams(1, 1, 0)).value == cplx(0.0));
}

TEST_CASE("self-energy symmetries") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const ModelParams p(1.7, 0.4, 3.3);
    for (int i = 0; i < 50; ++i) {
        const cplx z(u(rng), u(rng));
        const cplx s = self_energy(z, p).value;
        CHECK(std::abs(s - self_energy(-z, p).value) < 1e-12 * (1 + std::abs(s)));
        CHECK(std::abs(std::conj(s) - self_energy(std::conj(z), p).value) < 1e-12 * (1 + std::abs(s)));
        const cplx t = self_energy_rwa(z, p).value;
        CHECK(std::abs(std::conj(t) - self_energy_rwa(std::conj(z), p).value) < 1e-12 * (1 + std::abs(t)));
        const double x = u(rng);
        CHECK(std::abs(self_energy(x, p).value.imag()) < 1e-12);
        CHECK(std::abs(self_energy_rwa(x, p).value.imag()) < 1e-12);
    }
}

TEST_CASE("self-energy decays at large |z|") {
    const ModelParams p(2, 1, 10);
    CHECK(std::abs(self_energy(1e6, p).value) < 1e-10);
    const double z = 1e7;
    CHECK(std::abs(z * self_energy_rwa(z, p).value.real() + 5.0) < 1e-5);
}

TEST_CASE("derivatives match finite differences") {
    const ModelParams p(1.3, 1, 6);
    const cplx z(0.4, -0.3);
    const double h = 1e-6;
    const cplx fd = (self_energy(z + h, p).value - self_energy(z - h, p).value) / (2 * h);
    CHECK(std::abs(fd - self_energy_derivative(z, p)) < 1e-7);
    const cplx fdr = (self_energy_rwa(z + h, p).value - self_energy_rwa(z - h, p).value) / (2 * h);
    CHECK(std::abs(fdr - self_energy_rwa_derivative(z, p)) < 1e-7);
}

TEST_CASE("limits") {
    const ModelParams narrow(100, 1, 1);
    const double full = self_energy(0.0, narrow).value.real();
    const double nb = self_energy_limit(0.0, narrow, SelfEnergyBranch::NarrowBand).value.real();
    CHECK(std::abs(full - nb) / std::abs(full) < 1e-3);

    const ModelParams wide(0.01, 1, 1);
    const double fw = self_energy(0.3, wide).value.real();
    const double wb = self_energy_limit(0.3, wide, SelfEnergyBranch::WideBand).value.real();
    CHECK(std::abs(fw - wb) / std::abs(fw) < 1e-3);
    CHECK(self_energy_limit(1.0, wide, SelfEnergyBranch::WideBand).value == cplx(0.0));

    // sup over a fixed grid decreases with q
    double prev = 1e300;
    for (double q : {10.0, 30.0, 100.0}) {
        const ModelParams p(q, 1, 1);
        double worst = 0;
        for (int i = 0; i <= 20; ++i) {
            const double z = 0.25 * i;
            const double f = self_energy(z, p).value.real();
            const double n = self_energy_limit(z, p, SelfEnergyBranch::NarrowBand).value.real();
            worst = std::max(worst, std::abs(f - n) / std::abs(f));
        }
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("poles raise PoleError carrying z") {
    const ModelParams p(2, 1, 1);
    const cplx pole(2.0, 1.0);
    try {
        self_energy(pole, p);
        FAIL("expected PoleError");
    } catch (const PoleError& e) {
        CHECK(e.at() == pole);
    }
    CHECK_THROWS_AS(self_energy_rwa(cplx(2.0, -1.0), p), PoleError);
    CHECK_THROWS_AS(self_energy_limit(2.0, p, SelfEnergyBranch::NarrowBand), PoleError);
    CHECK_THROWS_AS(self_energy_limit(cplx(0, 1), p, SelfEnergyBranch::WideBand), PoleError);
    CHECK_THROWS_AS(self_energy(cplx(std::nan(""), 0), p), DomainError);
}
