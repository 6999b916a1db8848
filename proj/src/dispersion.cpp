#include "kosc/dispersion.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "kosc/errors.hpp"
#include "kosc/greens.hpp"
#include "kosc/spectral.hpp"

namespace kosc {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kPolishIterations = 8;

std::vector<cplx> denominator_zeros(const ModelParams& p, PolyBranch branch) {
    const double q = p.q();
    switch (branch) {
        case PolyBranch::NonRWA: return {{q, 1.0}, {q, -1.0}, {-q, 1.0}, {-q, -1.0}};
        case PolyBranch::RwaPositive: return {{q, 1.0}, {q, -1.0}};
        case PolyBranch::RwaNegative: return {{-q, 1.0}, {-q, -1.0}};
    }
    return {};
}

cplx dispersion_derivative(cplx z, const ModelParams& p, PolyBranch branch) {
    const double g = p.gamma();
    switch (branch) {
        case PolyBranch::NonRWA:
            return -2.0 * (z + kI * g) - 2.0 * p.q() * self_energy_derivative(z, p);
        case PolyBranch::RwaPositive:
            return 1.0 + self_energy_rwa_derivative(z, p);
        case PolyBranch::RwaNegative:
            return -1.0 - self_energy_rwa_derivative(-z, p);
    }
    return 1.0;
}

double residual_scale(cplx z, const ModelParams& p, PolyBranch branch) {
    const double q = p.q();
    const double g = p.gamma();
    if (branch == PolyBranch::NonRWA) {
        const cplx u = z + kI * g;
        return std::abs(u * u) + q * q + 2.0 * q * std::abs(self_energy(z, p).value);
    }
    const cplx arg = branch == PolyBranch::RwaPositive ? z : -z;
    return std::abs(z) + q + g + std::abs(self_energy_rwa(arg, p).value);
}

// Newton iteration on the transcendental function; keeps the best iterate.
cplx polish(cplx z, const ModelParams& p, PolyBranch branch) {
    cplx best = z;
    double best_res = relative_residual(z, p, branch);
    cplx cur = z;
    for (int it = 0; it < kPolishIterations && best_res > 0.0; ++it) {
        cplx f;
        cplx df;
        try {
            f = dispersion_function(cur, p, branch);
            df = dispersion_derivative(cur, p, branch);
        } catch (const PoleError&) {
            break;
        }
        if (df == cplx{}) break;
        cur -= f / df;
        if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag())) break;
        const double res = relative_residual(cur, p, branch);
        if (res < best_res) {
            best = cur;
            best_res = res;
        } else {
            break;
        }
    }
    return best;
}

Mode make_mode(cplx z, const ModelParams& p, PolyBranch branch, bool on_denominator_zero) {
    const double res = relative_residual(z, p, branch);
    const bool spurious = on_denominator_zero || !(res < kSpuriousResidual);
    return {z, res, classify(z), spurious, branch};
}

// Quantized imaginary part so mirror pairs with equal Im (up to rounding) sort by Re.
double sort_key(double im) { return std::round(im * 1e10); }

void canonical_sort(std::vector<Mode>& modes) {
    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
        const double ka = sort_key(a.z.imag());
        const double kb = sort_key(b.z.imag());
        if (ka != kb) return ka > kb;
        return a.z.real() < b.z.real();
    });
}

std::vector<Mode> branch_roots(const ModelParams& p, const CharPoly& cp) {
    const auto zeros = denominator_zeros(p, cp.branch);
    std::vector<Mode> out;

    if (p.alpha() == 0.0) {
        // The bath factor divides the polynomial exactly: deflate it.
        const double q = p.q();
        const double g = p.gamma();
        std::vector<cplx> genuine;
        switch (cp.branch) {
            case PolyBranch::NonRWA: genuine = {{q, -g}, {-q, -g}}; break;
            case PolyBranch::RwaPositive: genuine = {{q, -g}}; break;
            case PolyBranch::RwaNegative: genuine = {{-q, -g}}; break;
        }
        for (const auto& z : genuine) out.push_back(make_mode(z, p, cp.branch, false));
        for (const auto& z : zeros) {
            Mode m{z, std::numeric_limits<double>::infinity(), classify(z), true, cp.branch};
            try {
                m.residual = relative_residual(z, p, cp.branch);
            } catch (const PoleError&) {
            }
            out.push_back(m);
        }
        return out;
    }

    const auto raw = poly::roots(cp.coefficients);
    std::vector<bool> claimed(zeros.size(), false);
    for (const auto& z0 : raw) {
        bool on_zero = false;
        for (std::size_t k = 0; k < zeros.size(); ++k) {
            if (!claimed[k] && std::abs(z0 - zeros[k]) < kDenominatorMatch * std::max(1.0, std::abs(zeros[k]))) {
                claimed[k] = true;
                on_zero = true;
                break;
            }
        }
        if (on_zero) {
            out.push_back({z0, std::numeric_limits<double>::infinity(), classify(z0), true, cp.branch});
            continue;
        }
        out.push_back(make_mode(polish(z0, p, cp.branch), p, cp.branch, false));
    }
    return out;
}

}  // namespace

std::string_view to_string(PolyBranch b) noexcept {
    switch (b) {
        case PolyBranch::NonRWA: return "nrwa";
        case PolyBranch::RwaPositive: return "rwa_plus";
        case PolyBranch::RwaNegative: return "rwa_minus";
    }
    return "nrwa";
}

std::string_view to_string(Stability s) noexcept {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::Unstable: return "unstable";
        case Stability::Marginal: return "marginal";
    }
    return "marginal";
}

Stability classify(cplx z) noexcept {
    if (z.imag() > kStabilityTolerance) return Stability::Unstable;
    if (z.imag() < -kStabilityTolerance) return Stability::Stable;
    return Stability::Marginal;
}

std::vector<CharPoly> char_poly(const ModelParams& p) {
    using poly::Coeffs;
    const double q = p.q();
    const double q2 = q * q;
    const double g = p.gamma();
    const double a = p.alpha();

    if (p.approx() == Approx::NonRWA) {
        const Coeffs u{kI * g, 1.0};                      // z + i gamma
        const Coeffs shifted = poly::add(poly::mul(u, u), Coeffs{-q2});
        const Coeffs s{q2 + 1.0, 0.0, 1.0};               // z^2 + q^2 + 1
        const Coeffs p2 = poly::add(poly::mul(s, s), Coeffs{0.0, 0.0, -4.0 * q2});
        const Coeffs p1{q2 + 1.0, 0.0, -1.0};
        return {{poly::add(poly::mul(shifted, p2), poly::scale(p1, a * q2 / 2.0)), PolyBranch::NonRWA}};
    }

    // positive branch: (z - q + i g)((z - q)^2 + 1) + (a/2)(q - z)
    const Coeffs lin_p{-q + kI * g, 1.0};
    const Coeffs quad_p{q2 + 1.0, -2.0 * q, 1.0};
    const Coeffs plus = poly::add(poly::mul(lin_p, quad_p), Coeffs{a / 2.0 * q, -a / 2.0});
    // negative branch: (-z - q - i g)((z + q)^2 + 1) + (a/2)(q + z)
    const Coeffs lin_m{-q - kI * g, -1.0};
    const Coeffs quad_m{q2 + 1.0, 2.0 * q, 1.0};
    const Coeffs minus = poly::add(poly::mul(lin_m, quad_m), Coeffs{a / 2.0 * q, a / 2.0});
    return {{plus, PolyBranch::RwaPositive}, {minus, PolyBranch::RwaNegative}};
}

cplx dispersion_function(cplx z, const ModelParams& p, PolyBranch branch) {
    const Mat2 d = inverse_retarded_matrix(z, p);
    switch (branch) {
        case PolyBranch::NonRWA: return d.determinant();
        case PolyBranch::RwaPositive: return d(0, 0);
        case PolyBranch::RwaNegative: return d(1, 1);
    }
    return d.determinant();
}

double relative_residual(cplx z, const ModelParams& p, PolyBranch branch) {
    try {
        const double scale = residual_scale(z, p, branch);
        return std::abs(dispersion_function(z, p, branch)) / std::max(scale, 1e-300);
    } catch (const PoleError&) {
        return std::numeric_limits<double>::infinity();
    }
}

std::vector<Mode> all_roots(const ModelParams& p) {
    std::vector<Mode> out;
    for (const auto& cp : char_poly(p)) {
        auto part = branch_roots(p, cp);
        out.insert(out.end(), part.begin(), part.end());
    }
    canonical_sort(out);
    return out;
}

std::vector<Mode> spectrum(const ModelParams& p) {
    auto modes = all_roots(p);
    std::erase_if(modes, [](const Mode& m) { return m.spurious; });
    return modes;
}

std::vector<Mode> narrowband_roots(const ModelParams& p) {
    const double q2 = p.q() * p.q();
    const double g2 = p.gamma() * p.gamma();
    const double b = g2 + 2.0 * q2;
    const double disc = std::sqrt(b * b + 4.0 * q2 * (p.alpha() + g2));
    const cplx z_plus = -0.5 * b + 0.5 * disc;
    const cplx z_minus = -0.5 * b - 0.5 * disc;
    const ModelParams full = p.with_approx(Approx::NonRWA);
    std::vector<Mode> out;
    for (const cplx w : {std::sqrt(z_plus), -std::sqrt(z_plus), std::sqrt(z_minus), -std::sqrt(z_minus)}) {
        out.push_back({w, relative_residual(w, full, PolyBranch::NonRWA), classify(w), false,
                       PolyBranch::NonRWA});
    }
    return out;
}

CriticalCoupling critical_coupling(const ModelParams& p) {
    const double q = p.q();
    const double q2 = q * q;
    const double r = p.r();
    CriticalCoupling out{};
    out.closed_form_r = 2.0 * (q2 + 1.0) * (q2 + r * r) / q2;
    out.closed_form_r_inv = 2.0 * (q2 + 1.0) * (q2 + 1.0 / (r * r)) / q2;

    auto f = [&](double a) { return retarded_determinant(0.0, p.with_alpha(a)).real(); };
    const double f0 = f(0.0);
    if (f0 == 0.0) {
        out.alpha_c = 0.0;
        return out;
    }
    constexpr double kMaxAlpha = 1e12;
    double lo = 0.0;
    double hi = 1.0;
    double fhi = f(hi);
    while (std::signbit(fhi) == std::signbit(f0) && hi < kMaxAlpha) {
        lo = hi;
        hi *= 2.0;
        fhi = f(hi);
    }
    if (std::signbit(fhi) == std::signbit(f0)) {
        std::ostringstream os;
        os << "critical_coupling: det D^re(0) has no sign change for alpha in [0, " << kMaxAlpha
           << "] (q=" << q << ", r=" << r << ", approx=" << to_string(p.approx()) << ")";
        throw SolverError(os.str());
    }
    if (fhi == 0.0) {
        out.alpha_c = hi;
        return out;
    }
    boost::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, f(lo), fhi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    out.alpha_c = 0.5 * (a + b);
    return out;
}

}  // namespace kosc
