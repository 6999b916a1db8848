// Modes of det D^re(z) = 0
//
// The dispersion relations are polynomialized by clearing the self-energy
// denominators:
//   NonRWA (degree 6):  [(z + i gamma)^2 - q^2] P2(z) + (alpha q^2 / 2) P1(z)
//                       P1 = q^2 + 1 - z^2,  P2 = (z^2 + q^2 + 1)^2 - 4 q^2 z^2
//   RWA +  (degree 3):  (z + i gamma - q) ((q - z)^2 + 1) + (alpha/2)(q - z)
//   RWA -  (degree 3):  (-z - q - i gamma) ((q + z)^2 + 1) + (alpha/2)(q + z)
// The RWA "-" branch is the Schwarz-reflected continuation of the second
// diagonal entry, so its roots are exactly {-conj(z)} of the "+" branch.
//
// Roots of the cleared polynomial that sit on a zero of the cleared
// denominator, or that fail the transcendental residual test after Newton
// polishing, are spurious and never reach callers of spectrum().

#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "kosc/model.hpp"
#include "kosc/polynomial.hpp"

namespace kosc {

using cplx = std::complex<double>;

enum class PolyBranch { NonRWA, RwaPositive, RwaNegative };
enum class Stability { Stable, Unstable, Marginal };

std::string_view to_string(PolyBranch b) noexcept;
std::string_view to_string(Stability s) noexcept;

struct CharPoly {
    poly::Coeffs coefficients;  // ascending degree
    PolyBranch branch;

    int degree() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
};

struct Mode {
    cplx z;
    double residual;  // relative |dispersion function| at z
    Stability stability;
    bool spurious;
    PolyBranch branch;
};

inline constexpr double kStabilityTolerance = 1e-9;
inline constexpr double kSpuriousResidual = 1e-8;
inline constexpr double kDenominatorMatch = 1e-8;

Stability classify(cplx z) noexcept;

/// One polynomial for NonRWA, two (positive then negative branch) for RWA.
std::vector<CharPoly> char_poly(const ModelParams& p);

/// Transcendental dispersion function whose zeros are the modes of `branch`:
/// det D^re(z) for NonRWA, the matching diagonal entry of D^re for RWA.
cplx dispersion_function(cplx z, const ModelParams& p, PolyBranch branch);

/// |dispersion_function| divided by the sum of the magnitudes of its terms.
/// Returns +inf at a self-energy pole.
double relative_residual(cplx z, const ModelParams& p, PolyBranch branch);

/// Every root of the cleared polynomials, polished and labelled, including
/// spurious ones. Sorted by descending Im z, then ascending Re z.
std::vector<Mode> all_roots(const ModelParams& p);

/// Non-spurious modes in the same canonical order.
std::vector<Mode> spectrum(const ModelParams& p);

/// Four closed-form roots +-sqrt(z_+), +-sqrt(z_-) of the narrow-bath quartic
///   z^4 + (gamma^2 + 2 q^2) z^2 - q^2 (alpha + gamma^2) = 0.
/// The residual field holds the full NonRWA dispersion residual at each root,
/// which measures how far the quartic is from the degree-6 relation.
std::vector<Mode> narrowband_roots(const ModelParams& p);

struct CriticalCoupling {
    double alpha_c;              // numeric root of det D^re(0) in alpha
    double closed_form_r;        // 2 (q^2 + 1)(q^2 + r^2) / q^2
    double closed_form_r_inv;    // 2 (q^2 + 1)(q^2 + r^-2) / q^2
};

/// Bracketed scalar solve of det D^re(z = 0; alpha) = 0. Throws SolverError
/// when no sign change is found (always the case for RWA parameters).
CriticalCoupling critical_coupling(const ModelParams& p);

}  // namespace kosc
