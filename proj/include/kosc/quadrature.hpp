// Adaptive Gauss-Kronrod on finite pieces plus a mapped 1/z^2 tail

#pragma once

#include <functional>
#include <vector>

namespace kosc::quad {

struct Options {
    double rel_tol = 1e-11;
    double abs_tol = 1e-15;  // floor, so pieces with a vanishing integral terminate
    int max_intervals = 2000;
};

struct Result {
    double value = 0.0;
    double abs_err = 0.0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15/31-point Gauss-Kronrod on [a, b]: the interval with
/// the largest error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol |I|) or max_intervals is reached.
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

/// Sum of integrate() over consecutive breakpoints. Breakpoints are sorted
/// and de-duplicated; at least two are required.
Result integrate_pieces(const Integrand& f, std::vector<double> breakpoints, const Options& opts = {});

/// Integral of f over [z_cut, +inf) through the substitution z = z_cut / t,
/// which turns an integrable 1/z^2 tail into a bounded integrand on (0, 1].
/// z_cut must be positive.
Result integrate_upper_tail(const Integrand& f, double z_cut, const Options& opts = {});

/// Same for (-inf, -z_cut].
Result integrate_lower_tail(const Integrand& f, double z_cut, const Options& opts = {});

}  // namespace kosc::quad
