// Discretized-bath Gaussian steady state, independent of the Green's functions
//
// The Lorentzian bath is replaced by N damped modes on a uniform grid and the
// whole linear system is solved at the covariance level. Quadrature basis
// (x, p, x_1, p_1, ..., x_N, p_N) with a = (x + i p) / sqrt(2), so the vacuum
// has variance 1/2 per quadrature and <n> = (Var x + Var p - 1) / 2.
//
// Drift (before coupling): x' = q p - gamma x, p' = -q x - gamma p, and the
// same for each bath mode with w_k and eps. Diffusion is gamma on the system
// quadratures and eps on each bath quadrature (vacuum input noise).
//
// Coupling, with g_k^2 = J(w_k) * spacing:
//   NonRWA  H_c = sum_k g_k x x_k       p' -= g_k x_k,  p_k' -= g_k x
//   RWA     H_c = sum_k g_k (x x_k + p p_k), i.e. g_k (a b_k^dag + h.c.)
// The NonRWA term equals (g_k / 2)(a + a^dag)(b_k + b_k^dag); that factor 1/2
// makes the static bath response match the closed-form Sigma used elsewhere.

#pragma once

#include <Eigen/Core>
#include <vector>

#include "kosc/model.hpp"

namespace kosc {

inline constexpr double kDefaultBathDamping = 0.02;
inline constexpr double kDefaultHalfWidth = 10.0;
inline constexpr double kLyapunovTolerance = 1e-10;

struct BathDiscretization {
    std::vector<double> frequencies;  // cell centres, strictly increasing, symmetric about q
    std::vector<double> couplings;    // g_k >= 0
    double eps = kDefaultBathDamping;
    double spacing = 0.0;
    double half_width = 0.0;
};

/// Uniform grid of n_modes cells covering [q - half_width, q + half_width].
BathDiscretization discretize_bath(const ModelParams& p, int n_modes, double half_width = kDefaultHalfWidth,
                                   double eps = kDefaultBathDamping);

/// Fraction of the Lorentzian weight outside the bath window.
double truncated_weight(double half_width) noexcept;

struct CovarianceSystem {
    Eigen::MatrixXd drift;
    Eigen::MatrixXd diffusion;
};

CovarianceSystem drift_matrix(const ModelParams& p, const BathDiscretization& b);

/// Hamiltonian part of the drift only (gamma and eps set to zero).
Eigen::MatrixXd coherent_drift(const ModelParams& p, const BathDiscretization& b);

double max_real_eigenvalue(const Eigen::MatrixXd& a);

/// max |A C + C A^T + D|
double lyapunov_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c, const Eigen::MatrixXd& d);

/// Solves A C + C A^T + D = 0. Throws InstabilityError if A is not Hurwitz and
/// SolverError if the residual stays above kLyapunovTolerance.
Eigen::MatrixXd steady_covariance(const CovarianceSystem& sys);

struct OracleReport {
    double n_avg = 0.0;
    double c0 = 1.0;
    double max_real_eig = 0.0;
    double residual = 0.0;
    double truncated_weight = 0.0;
};

OracleReport oracle_report(const ModelParams& p, int n_modes, double half_width = kDefaultHalfWidth,
                           double eps = kDefaultBathDamping);

double oracle_number_density(const ModelParams& p, int n_modes, double half_width = kDefaultHalfWidth,
                             double eps = kDefaultBathDamping);

/// Smallest alpha at which the drift matrix stops being Hurwitz, located by a
/// bracketed solve of max Re eig(A(alpha)) = 0. The alpha of p is ignored.
double instability_threshold(const ModelParams& p, int n_modes, double half_width = kDefaultHalfWidth,
                             double eps = kDefaultBathDamping);

/// RK4 integration of C' = A C + C A^T + D over [0, t] in `steps` steps.
Eigen::MatrixXd integrate_covariance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d, Eigen::MatrixXd c,
                                     double t, int steps);

/// Growth rate of tr C(t) starting from the vacuum, from the slope of
/// (1/2) log tr C over [t/2, t]. Approaches max Re eig(A) in the unstable regime.
double growth_rate_estimate(const CovarianceSystem& sys, double t, int steps);

}  // namespace kosc
