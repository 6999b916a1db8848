#include "kosc/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kosc/errors.hpp"

namespace kosc {

namespace {

void require_finite(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("z", "frequency must be finite");
    }
}

[[noreturn]] void throw_pole(cplx z, const char* which) {
    std::ostringstream os;
    os.precision(17);
    os << which << " has a pole at z = " << z;
    throw PoleError(z, os.str());
}

bool is_pole(cplx den, cplx num) {
    return std::abs(den) < kPoleTolerance * (1.0 + std::abs(num));
}

struct Rational {
    cplx num;
    cplx den;
};

// Numerator (q^2 - z^2 + 1) and denominator (z^2 + q^2 + 1)^2 - 4 q^2 z^2 of Sigma.
Rational full_parts(cplx z, double q) {
    // factored forms avoid cancellation near z = +-q
    const cplx dm = z - q;
    const cplx dp = z + q;
    return {1.0 - dm * dp, (dm * dm + 1.0) * (dp * dp + 1.0)};
}

}  // namespace

std::string_view to_string(SelfEnergyBranch b) noexcept {
    switch (b) {
        case SelfEnergyBranch::FullNonRWA: return "full_nrwa";
        case SelfEnergyBranch::NarrowBand: return "narrow_band";
        case SelfEnergyBranch::WideBand: return "wide_band";
        case SelfEnergyBranch::RWA: return "rwa";
    }
    return "full_nrwa";
}

double spectral_density(double z, const ModelParams& p) {
    const double d = z - p.q();
    return p.alpha() / (2.0 * std::numbers::pi) / (d * d + 1.0);
}

SelfEnergyValue self_energy(cplx z, const ModelParams& p) {
    require_finite(z);
    if (p.alpha() == 0.0) return {0.0, SelfEnergyBranch::FullNonRWA};
    const auto [num, den] = full_parts(z, p.q());
    if (is_pole(den, num)) throw_pole(z, "self_energy");
    return {p.alpha() * p.q() / 4.0 * num / den, SelfEnergyBranch::FullNonRWA};
}

cplx self_energy_derivative(cplx z, const ModelParams& p) {
    require_finite(z);
    if (p.alpha() == 0.0) return 0.0;
    const double q2 = p.q() * p.q();
    const auto [num, den] = full_parts(z, p.q());
    if (is_pole(den, num)) throw_pole(z, "self_energy_derivative");
    const cplx dnum = -2.0 * z;
    const cplx dden = 4.0 * z * (z * z + q2 + 1.0) - 8.0 * q2 * z;
    return p.alpha() * p.q() / 4.0 * (dnum * den - num * dden) / (den * den);
}

SelfEnergyValue self_energy_limit(cplx z, const ModelParams& p, SelfEnergyBranch which) {
    require_finite(z);
    const double q = p.q();
    const double pref = p.alpha() * q / 4.0;
    switch (which) {
        case SelfEnergyBranch::NarrowBand: {
            const cplx den = q * q - z * z;
            if (is_pole(den, 1.0)) throw_pole(z, "narrow-band self_energy");
            return {pref / den, which};
        }
        case SelfEnergyBranch::WideBand: {
            const cplx z2 = z * z;
            const cplx den = (1.0 + z2) * (1.0 + z2);
            const cplx num = 1.0 - z2;
            if (is_pole(den, num)) throw_pole(z, "wide-band self_energy");
            return {pref * num / den, which};
        }
        default:
            throw DomainError("which", "self_energy_limit accepts NarrowBand or WideBand");
    }
}

SelfEnergyValue self_energy_rwa(cplx z, const ModelParams& p) {
    require_finite(z);
    if (p.alpha() == 0.0) return {0.0, SelfEnergyBranch::RWA};
    const cplx d = p.q() - z;
    const cplx den = d * d + 1.0;
    if (is_pole(den, d)) throw_pole(z, "self_energy_rwa");
    return {p.alpha() / 2.0 * d / den, SelfEnergyBranch::RWA};
}

cplx self_energy_rwa_derivative(cplx z, const ModelParams& p) {
    require_finite(z);
    if (p.alpha() == 0.0) return 0.0;
    // d/dz [d/(d^2+1)] with d = q - z  ->  -(1 - d^2)/(d^2+1)^2
    const cplx d = p.q() - z;
    const cplx den = d * d + 1.0;
    if (is_pole(den, d)) throw_pole(z, "self_energy_rwa_derivative");
    return -p.alpha() / 2.0 * (1.0 - d * d) / (den * den);
}

}  // namespace kosc
