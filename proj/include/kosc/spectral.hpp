// Lorentzian bath spectral density and self-energies
//
// All functions take frequencies in lambda units. The self-energies are the
// rational closed forms; off the real axis they are continued as rational
// functions, which is what the dispersion solver needs.
//
//   J(z)      = (alpha / 2pi) / ((z - q)^2 + 1)
//   Sigma(z)  = (alpha q / 4) (q^2 - z^2 + 1) / ((z^2 + q^2 + 1)^2 - 4 q^2 z^2)
//   Sigma~(z) = (alpha / 2) (q - z) / ((q - z)^2 + 1)                      (RWA)
//
// Sigma is even in z and both are real on the real axis.

#pragma once

#include <complex>
#include <string_view>

#include "kosc/model.hpp"

namespace kosc {

using cplx = std::complex<double>;

enum class SelfEnergyBranch { FullNonRWA, NarrowBand, WideBand, RWA };

std::string_view to_string(SelfEnergyBranch b) noexcept;

struct SelfEnergyValue {
    cplx value;
    SelfEnergyBranch branch;
};

/// Relative pole tolerance: |denominator| < kPoleTolerance * (1 + |numerator|) is a pole.
inline constexpr double kPoleTolerance = 1e-12;

double spectral_density(double z, const ModelParams& p);

/// Full NonRWA self-energy. Throws PoleError at zeros of the denominator
/// (z = +-q +- i).
SelfEnergyValue self_energy(cplx z, const ModelParams& p);

/// d Sigma / dz, used for Newton polishing of dispersion roots.
cplx self_energy_derivative(cplx z, const ModelParams& p);

/// Narrow-band (q >> 1) or wide-band (q << 1) limit of the NonRWA self-energy.
SelfEnergyValue self_energy_limit(cplx z, const ModelParams& p, SelfEnergyBranch which);

/// RWA self-energy Sigma~(z). Throws PoleError at z = q +- i.
SelfEnergyValue self_energy_rwa(cplx z, const ModelParams& p);

cplx self_energy_rwa_derivative(cplx z, const ModelParams& p);

}  // namespace kosc
