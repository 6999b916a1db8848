// Every frequency in kosc is measured in units of the bath width lambda, so
// lambda == 1 internally and the model is fixed by three numbers:
//   q     = omega0 / lambda   (quality factor)
//   r     = lambda / Gamma_M  (bath width over Markovian decay rate)
//   alpha = alpha / lambda    (system-bath coupling)
// The Markovian decay rate in these units is gamma() = 1 / r.

#pragma once

#include <string_view>

namespace kosc {

enum class Approx { NonRWA, RWA };

std::string_view to_string(Approx a) noexcept;

class ModelParams {
public:
    /// Throws DomainError naming the offending field unless q > 0, r > 0,
    /// alpha >= 0 and all are finite.
    ModelParams(double q, double r, double alpha, Approx approx = Approx::NonRWA);

    double q() const noexcept { return q_; }
    double r() const noexcept { return r_; }
    double alpha() const noexcept { return alpha_; }
    Approx approx() const noexcept { return approx_; }

    /// Markovian decay rate Gamma_M in lambda units.
    double gamma() const noexcept { return 1.0 / r_; }

    ModelParams with_q(double q) const { return {q, r_, alpha_, approx_}; }
    ModelParams with_r(double r) const { return {q_, r, alpha_, approx_}; }
    ModelParams with_alpha(double alpha) const { return {q_, r_, alpha, approx_}; }
    ModelParams with_approx(Approx a) const { return {q_, r_, alpha_, a}; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double q_;
    double r_;
    double alpha_;
    Approx approx_;
};

/// Reduce physical parameters to lambda units: (omega0/lambda, lambda/gamma_m, alpha/lambda).
ModelParams from_physical(double omega0, double lambda, double gamma_m, double alpha,
                          Approx approx = Approx::NonRWA);

enum class Regime { Markovian, NonMarkovian, Crossover };

std::string_view to_string(Regime r) noexcept;

// Regime thresholds. The asymptotic conditions q >> 1 / q << 1 (with r as a
// secondary indicator) are turned into fixed cut-offs so the label is testable.
inline constexpr double kRegimeQHigh = 5.0;
inline constexpr double kRegimeQLow = 0.2;
inline constexpr double kRegimeRLow = 0.5;
inline constexpr double kRegimeRHigh = 2.0;

/// NonMarkovian when q >= 5 and r <= 0.5, Markovian when q <= 0.2 and r >= 2,
/// Crossover otherwise.
Regime regime(const ModelParams& p) noexcept;

}  // namespace kosc
