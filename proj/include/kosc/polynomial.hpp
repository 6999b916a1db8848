// Complex polynomials in ascending-degree coefficient form
// and an Aberth-Ehrlich simultaneous root finder.

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace kosc::poly {

using cplx = std::complex<double>;
using Coeffs = std::vector<cplx>;  // c[0] + c[1] z + c[2] z^2 + ...

cplx eval(std::span<const cplx> c, cplx z) noexcept;
cplx eval_derivative(std::span<const cplx> c, cplx z) noexcept;

Coeffs add(std::span<const cplx> a, std::span<const cplx> b);
Coeffs mul(std::span<const cplx> a, std::span<const cplx> b);
Coeffs scale(std::span<const cplx> a, cplx s);

/// Strips zero leading coefficients. The result always has at least one entry.
Coeffs trim(Coeffs c);

struct AberthOptions {
    int max_iterations = 500;
    double tolerance = 1e-15;  // relative step size at which a root is frozen
};

/// All roots of a polynomial of degree >= 1 (leading coefficient nonzero).
/// Initial guesses are placed on a circle of radius given by the Fujiwara bound
/// with a fixed angular offset, so results are reproducible bit for bit.
/// Throws SolverError on non-convergence, with the coefficients in the message.
std::vector<cplx> roots(std::span<const cplx> c, const AberthOptions& opts = {});

}  // namespace kosc::poly
