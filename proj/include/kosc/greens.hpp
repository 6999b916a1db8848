// 2x2 inverse-retarded, retarded, advanced and Keldysh Green's functions
//
// Nambu ordering (a(z), a^dagger(-z)); frequencies in lambda units, gamma = 1/r.
//
// NonRWA:  D^re(z) = [[ z - q + i gamma + S,  S ],
//                     [ S,  -z - q - i gamma + S ]],   S = Sigma(z) = Sigma(-z)
// RWA:     D^re(z) = diag(z - q + i gamma + Sigma~(z), -z - q - i gamma + Sigma~(-z))
// Keldysh: D^K = 2 i gamma * identity,  G^K = -G^re D^K G^ad,  G^ad = (G^re)^dagger.

#pragma once

#include <Eigen/Core>
#include <complex>
#include <string_view>

#include "kosc/model.hpp"
#include "kosc/spectral.hpp"

namespace kosc {

using Mat2 = Eigen::Matrix2cd;

enum class GreenKind { InverseRetarded, Retarded, Advanced, Keldysh };

std::string_view to_string(GreenKind k) noexcept;

struct GreenMatrix {
    Mat2 entries;
    GreenKind kind;
    double at;
    Approx approx;
};

/// Retarded, advanced and Keldysh functions at one real frequency.
struct GreenSet {
    GreenMatrix retarded;
    GreenMatrix advanced;
    GreenMatrix keldysh;
};

/// D^re continued to complex z (rational continuation of the self-energies).
/// Used by the dispersion solver; propagates PoleError.
Mat2 inverse_retarded_matrix(cplx z, const ModelParams& p);

/// det D^re(z). NonRWA it equals -(z + i gamma)^2 + q^2 - 2 q Sigma(z).
cplx retarded_determinant(cplx z, const ModelParams& p);

GreenMatrix retarded_inverse(double z, const ModelParams& p);

GreenMatrix keldysh_inverse(const ModelParams& p);

/// Relative singularity threshold on |det D^re| used by keldysh_green.
inline constexpr double kSingularTolerance = 1e-14;

/// Throws SingularityError when D^re(z) is singular to kSingularTolerance.
GreenSet green_functions(double z, const ModelParams& p);

GreenMatrix keldysh_green(double z, const ModelParams& p);

/// Closed form of i G^K_11(z), >= 0. Throws SingularityError on a zero denominator.
double gk11(double z, const ModelParams& p);

}  // namespace kosc
