#include "kosc/oracle.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cblas.h>
#include <cmath>
#include <lapacke.h>
#include <numbers>
#include <sstream>

#include "kosc/errors.hpp"
#include "kosc/spectral.hpp"

namespace kosc {

namespace {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

struct EigenDecomposition {
    VecC values;
    MatC vectors;
};

EigenDecomposition eigen_decompose(const Eigen::MatrixXd& a, bool want_vectors) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::MatrixXd work = a;
    std::vector<double> wr(n);
    std::vector<double> wi(n);
    Eigen::MatrixXd vr(want_vectors ? n : 1, want_vectors ? n : 1);
    const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, work.data(), n,
                                          wr.data(), wi.data(), nullptr, 1, vr.data(), want_vectors ? n : 1);
    if (info != 0) {
        std::ostringstream os;
        os << "dgeev failed with info = " << info << " (n = " << n << ")";
        throw SolverError(os.str());
    }
    EigenDecomposition out;
    out.values.resize(n);
    for (lapack_int j = 0; j < n; ++j) out.values(j) = {wr[j], wi[j]};
    if (!want_vectors) return out;
    out.vectors.resize(n, n);
    for (lapack_int j = 0; j < n; ++j) {
        if (wi[j] == 0.0) {
            out.vectors.col(j) = vr.col(j).cast<std::complex<double>>();
        } else if (wi[j] > 0.0 && j + 1 < n) {
            for (lapack_int i = 0; i < n; ++i) {
                out.vectors(i, j) = {vr(i, j), vr(i, j + 1)};
                out.vectors(i, j + 1) = {vr(i, j), -vr(i, j + 1)};
            }
            ++j;
        }
    }
    return out;
}

// c = op(a) * op(b) through BLAS; Eigen's own kernels are several times slower
// at the sizes used here.
void zgemm(const MatC& a, bool trans_a, const MatC& b, bool trans_b, MatC& c) {
    const std::complex<double> one{1.0, 0.0};
    const std::complex<double> zero{0.0, 0.0};
    const int m = static_cast<int>(trans_a ? a.cols() : a.rows());
    const int k = static_cast<int>(trans_a ? a.rows() : a.cols());
    const int n = static_cast<int>(trans_b ? b.rows() : b.cols());
    c.resize(m, n);
    cblas_zgemm(CblasColMajor, trans_a ? CblasTrans : CblasNoTrans, trans_b ? CblasTrans : CblasNoTrans, m, n, k,
                &one, a.data(), static_cast<int>(a.rows()), b.data(), static_cast<int>(b.rows()), &zero, c.data(),
                m);
}

void dgemm(const Eigen::MatrixXd& a, bool trans_a, const Eigen::MatrixXd& b, bool trans_b, Eigen::MatrixXd& c) {
    const int m = static_cast<int>(trans_a ? a.cols() : a.rows());
    const int k = static_cast<int>(trans_a ? a.rows() : a.cols());
    const int n = static_cast<int>(trans_b ? b.rows() : b.cols());
    c.resize(m, n);
    cblas_dgemm(CblasColMajor, trans_a ? CblasTrans : CblasNoTrans, trans_b ? CblasTrans : CblasNoTrans, m, n, k,
                1.0, a.data(), static_cast<int>(a.rows()), b.data(), static_cast<int>(b.rows()), 0.0, c.data(), m);
}

MatC invert(const MatC& v) {
    const lapack_int n = static_cast<lapack_int>(v.rows());
    MatC w = v;
    std::vector<lapack_int> ipiv(n);
    lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, w.data(), n, ipiv.data());
    if (info == 0) info = LAPACKE_zgetri(LAPACK_COL_MAJOR, n, w.data(), n, ipiv.data());
    if (info != 0) {
        std::ostringstream os;
        os << "eigenvector matrix is singular (zgetrf/zgetri info = " << info << ")";
        throw SolverError(os.str());
    }
    return w;
}

// Diagonalized Lyapunov solve: with A = V diag(l) W, W = V^-1,
// C = V [ -(W D W^T)_ij / (l_i + l_j) ] V^T.
class DiagonalLyapunov {
public:
    DiagonalLyapunov(const EigenDecomposition& e) : l_(e.values), v_(e.vectors), w_(invert(e.vectors)) {}

    Eigen::MatrixXd solve(const Eigen::MatrixXd& d) const {
        MatC tmp;
        MatC dt;
        if (d.isDiagonal(0.0)) {
            tmp = w_ * d.diagonal().cast<std::complex<double>>().asDiagonal();
        } else {
            zgemm(w_, false, d.cast<std::complex<double>>(), false, tmp);
        }
        zgemm(tmp, false, w_, true, dt);
        const auto n = dt.rows();
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) dt(i, j) = -dt(i, j) / (l_(i) + l_(j));
        zgemm(v_, false, dt, false, tmp);
        zgemm(tmp, false, v_, true, dt);
        const Eigen::MatrixXd c = dt.real();
        return 0.5 * (c + c.transpose());
    }

private:
    VecC l_;
    MatC v_;
    MatC w_;
};

// Bartels-Stewart on the real Schur form: A = Z T Z^T.
Eigen::MatrixXd schur_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::MatrixXd t = a;
    Eigen::MatrixXd z(n, n);
    std::vector<double> wr(n);
    std::vector<double> wi(n);
    lapack_int sdim = 0;
    lapack_int info = LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, n, t.data(), n, &sdim, wr.data(), wi.data(),
                                    z.data(), n);
    if (info != 0) throw SolverError("dgees failed in the Lyapunov fallback");
    Eigen::MatrixXd tmp;
    Eigen::MatrixXd rhs;
    dgemm(z, true, d, false, tmp);
    dgemm(tmp, false, z, false, rhs);
    rhs = -rhs;
    double scale = 1.0;
    info = LAPACKE_dtrsyl(LAPACK_COL_MAJOR, 'N', 'T', 1, n, n, t.data(), n, t.data(), n, rhs.data(), n, &scale);
    if (info < 0) throw SolverError("dtrsyl failed in the Lyapunov fallback");
    rhs /= scale;
    dgemm(z, false, rhs, false, tmp);
    Eigen::MatrixXd c;
    dgemm(tmp, false, z, true, c);
    return 0.5 * (c + c.transpose());
}

void add_coupling(Eigen::MatrixXd& a, const ModelParams& p, const BathDiscretization& b) {
    const auto n = static_cast<Eigen::Index>(b.frequencies.size());
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index i = 2 + 2 * k;
        const double w = b.frequencies[k];
        const double g = b.couplings[k];
        a(i, i + 1) = w;
        a(i + 1, i) = -w;
        if (p.approx() == Approx::NonRWA) {
            a(1, i) -= g;
            a(i + 1, 0) -= g;
        } else {
            a(0, i + 1) += g;
            a(1, i) -= g;
            a(i, 1) += g;
            a(i + 1, 0) -= g;
        }
    }
}

}  // namespace

BathDiscretization discretize_bath(const ModelParams& p, int n_modes, double half_width, double eps) {
    if (n_modes < 2) throw DomainError("n_modes", "discretize_bath: n_modes must be at least 2");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw DomainError("half_width", "discretize_bath: half_width must be positive and finite");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps", "discretize_bath: eps must be positive and finite");
    BathDiscretization b;
    b.eps = eps;
    b.half_width = half_width;
    b.spacing = 2.0 * half_width / n_modes;
    b.frequencies.resize(n_modes);
    b.couplings.resize(n_modes);
    for (int k = 0; k < n_modes; ++k) {
        // Offsets are formed symmetrically so the grid reflects about q exactly.
        const double offset = (k - 0.5 * (n_modes - 1)) * b.spacing;
        b.frequencies[k] = p.q() + offset;
        b.couplings[k] = std::sqrt(spectral_density(b.frequencies[k], p) * b.spacing);
    }
    return b;
}

double truncated_weight(double half_width) noexcept {
    return 1.0 - 2.0 / std::numbers::pi * std::atan(half_width);
}

Eigen::MatrixXd coherent_drift(const ModelParams& p, const BathDiscretization& b) {
    const auto n = static_cast<Eigen::Index>(2 * b.frequencies.size() + 2);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    a(0, 1) = p.q();
    a(1, 0) = -p.q();
    add_coupling(a, p, b);
    return a;
}

CovarianceSystem drift_matrix(const ModelParams& p, const BathDiscretization& b) {
    CovarianceSystem sys;
    sys.drift = coherent_drift(p, b);
    const auto n = sys.drift.rows();
    sys.diffusion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double rate = i < 2 ? p.gamma() : b.eps;
        sys.drift(i, i) = -rate;
        sys.diffusion(i, i) = rate;
    }
    return sys;
}

double max_real_eigenvalue(const Eigen::MatrixXd& a) {
    return eigen_decompose(a, false).values.real().maxCoeff();
}

double lyapunov_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c, const Eigen::MatrixXd& d) {
    Eigen::MatrixXd ac;
    dgemm(a, false, c, false, ac);
    return (ac + ac.transpose() + d).cwiseAbs().maxCoeff();
}

namespace {

Eigen::MatrixXd solve_steady(const CovarianceSystem& sys, double& max_re) {
    const auto& a = sys.drift;
    const auto& d = sys.diffusion;
    const EigenDecomposition e = eigen_decompose(a, true);
    max_re = e.values.real().maxCoeff();
    if (!(max_re < 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "drift matrix is not Hurwitz: max Re eig = " << max_re;
        throw InstabilityError(max_re, os.str());
    }

    Eigen::MatrixXd c;
    double res = std::numeric_limits<double>::infinity();
    try {
        const DiagonalLyapunov solver(e);
        c = solver.solve(d);
        res = lyapunov_residual(a, c, d);
        // Correction steps reuse the same factorization.
        for (int it = 0; it < 2 && res > kLyapunovTolerance; ++it) {
            Eigen::MatrixXd ac;
            dgemm(a, false, c, false, ac);
            const Eigen::MatrixXd r = ac + ac.transpose() + d;
            c += solver.solve(r);
            res = lyapunov_residual(a, c, d);
        }
    } catch (const SolverError&) {
    }
    if (!(res <= kLyapunovTolerance)) {
        c = schur_lyapunov(a, d);
        res = lyapunov_residual(a, c, d);
    }
    if (!(res <= kLyapunovTolerance)) {
        std::ostringstream os;
        os.precision(3);
        os << "Lyapunov residual " << res << " exceeds " << kLyapunovTolerance << " (n = " << a.rows() << ")";
        throw SolverError(os.str());
    }
    return c;
}

}  // namespace

Eigen::MatrixXd steady_covariance(const CovarianceSystem& sys) {
    double max_re = 0.0;
    return solve_steady(sys, max_re);
}

OracleReport oracle_report(const ModelParams& p, int n_modes, double half_width, double eps) {
    const BathDiscretization b = discretize_bath(p, n_modes, half_width, eps);
    const CovarianceSystem sys = drift_matrix(p, b);
    OracleReport r;
    const Eigen::MatrixXd c = solve_steady(sys, r.max_real_eig);
    r.n_avg = (c(0, 0) + c(1, 1) - 1.0) / 2.0;
    r.c0 = 2.0 * r.n_avg + 1.0;
    r.residual = lyapunov_residual(sys.drift, c, sys.diffusion);
    r.truncated_weight = truncated_weight(half_width);
    return r;
}

double oracle_number_density(const ModelParams& p, int n_modes, double half_width, double eps) {
    return oracle_report(p, n_modes, half_width, eps).n_avg;
}

double instability_threshold(const ModelParams& p, int n_modes, double half_width, double eps) {
    auto f = [&](double alpha) {
        const ModelParams pa = p.with_alpha(alpha);
        return max_real_eigenvalue(drift_matrix(pa, discretize_bath(pa, n_modes, half_width, eps)).drift);
    };
    constexpr double kMaxAlpha = 1e6;
    double lo = 0.0;
    double flo = f(lo);
    double hi = 1.0;
    double fhi = f(hi);
    while (fhi < 0.0 && hi < kMaxAlpha) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = f(hi);
    }
    if (fhi < 0.0) {
        std::ostringstream os;
        os << "instability_threshold: drift stays Hurwitz up to alpha = " << kMaxAlpha << " (approx="
           << to_string(p.approx()) << ")";
        throw SolverError(os.str());
    }
    if (fhi == 0.0) return hi;
    boost::uintmax_t max_iter = 100;
    const auto [a, b] =
        boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(30), max_iter);
    return 0.5 * (a + b);
}

Eigen::MatrixXd integrate_covariance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d, Eigen::MatrixXd c,
                                     double t, int steps) {
    if (steps < 1) throw DomainError("steps", "integrate_covariance: steps must be positive");
    const double h = t / steps;
    auto rhs = [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
        const Eigen::MatrixXd ax = a * x;
        return ax + ax.transpose() + d;
    };
    for (int s = 0; s < steps; ++s) {
        const Eigen::MatrixXd k1 = rhs(c);
        const Eigen::MatrixXd k2 = rhs(c + 0.5 * h * k1);
        const Eigen::MatrixXd k3 = rhs(c + 0.5 * h * k2);
        const Eigen::MatrixXd k4 = rhs(c + h * k3);
        c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return c;
}

double growth_rate_estimate(const CovarianceSystem& sys, double t, int steps) {
    if (steps < 2) throw DomainError("steps", "growth_rate_estimate: steps must be at least 2");
    const auto n = sys.drift.rows();
    const Eigen::MatrixXd vacuum = 0.5 * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd half = integrate_covariance(sys.drift, sys.diffusion, vacuum, 0.5 * t, steps / 2);
    const Eigen::MatrixXd full = integrate_covariance(sys.drift, sys.diffusion, half, 0.5 * t, steps - steps / 2);
    return 0.5 * std::log(full.trace() / half.trace()) / (0.5 * t);
}

}  // namespace kosc
