//   c0 = 2<n> + 1 = (1 / 2pi) * integral over real z of i G^K_11(z)
//
// The real line is split at +-z_cut = max(50, 10 q + 10 / r). The inner part
// is integrated adaptively with breakpoints at the bath resonances and at the
// real parts of the dispersion modes; the outer parts go through the mapped
// tail integrator, since i G^K_11 ~ 2 gamma / z^2 converges slowly.

#pragma once

#include <string_view>

#include "kosc/greens.hpp"
#include "kosc/model.hpp"
#include "kosc/quadrature.hpp"

namespace kosc {

/// A mode with |Im z| below this is treated as sitting on the real axis.
inline constexpr double kPoleProximity = 1e-6;
/// |xi| at or below this is Neutral.
inline constexpr double kZenoEpsilon = 1e-6;
/// Minimum |I - 1| in the literal Zeno formula.
inline constexpr double kZenoDenominator = 1e-12;

struct SteadyStateReport {
    double c0 = 0.0;            // 2<n> + 1
    double n_avg = 0.0;         // (c0 - 1) / 2, may be negative; see negative_density
    double abs_err = 0.0;       // error estimate on c0
    bool diverged = false;      // c0, n_avg, abs_err and raw_integral are +inf
    double raw_integral = 0.0;  // integral of i G^K_11 dz, no 1/2pi
    bool negative_density = false;
};

double z_cut(const ModelParams& p) noexcept;

SteadyStateReport correlation_c0(const ModelParams& p, const quad::Options& opts = {});

enum class ZenoRegime { Zeno, AntiZeno, Neutral };
enum class ZenoConvention { Literal, NormalizedDensity };

std::string_view to_string(ZenoRegime r) noexcept;
std::string_view to_string(ZenoConvention c) noexcept;

struct ZenoReport {
    double xi = 0.0;
    ZenoRegime regime = ZenoRegime::Neutral;
    ZenoConvention convention = ZenoConvention::Literal;
    bool diverged = false;
};

ZenoRegime zeno_regime(double xi) noexcept;

/// Literal:           xi = (I(alpha) - I(0)) / (I(alpha) - 1), I the raw integral.
/// NormalizedDensity: xi = (<n>(alpha) - <n>(0)) / <n>(alpha) with the exact <n>(0) = 0.
/// alpha = 0 gives xi = 0 under both. A diverged integral gives the limit
/// xi = 1 with the diverged flag set. Throws DegenerateError when the
/// denominator vanishes.
ZenoReport zeno_parameter(const ModelParams& p, ZenoConvention convention = ZenoConvention::Literal);

struct DistributionFunction {
    double at = 0.0;
    Mat2 matrix;
    double residual = 0.0;  // max |G^K - (G^re F - F G^ad)|
};

/// F = sigma_z + (Sigma(z) / z) sigma_x (NonRWA), F = sigma_z (RWA).
/// Throws DomainError at z = 0 for NonRWA.
DistributionFunction distribution_function(double z, const ModelParams& p);

struct TemperatureProbe {
    double t_low = 0.0;           // Sigma(0) / 2
    double highfreq_coeff = 0.0;  // c in the least-squares fit Sigma(z) / z ~ c / z, z in [10, 100]
};

TemperatureProbe effective_temperature_probe(const ModelParams& p);

}  // namespace kosc
