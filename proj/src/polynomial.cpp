#include "kosc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kosc/errors.hpp"

namespace kosc::poly {

cplx eval(std::span<const cplx> c, cplx z) noexcept {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx eval_derivative(std::span<const cplx> c, cplx z) noexcept {
    cplx acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
    return acc;
}

Coeffs add(std::span<const cplx> a, std::span<const cplx> b) {
    Coeffs out(std::max(a.size(), b.size()), cplx{});
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Coeffs mul(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1, cplx{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Coeffs scale(std::span<const cplx> a, cplx s) {
    Coeffs out(a.begin(), a.end());
    for (auto& x : out) x *= s;
    return out;
}

Coeffs trim(Coeffs c) {
    while (c.size() > 1 && c.back() == cplx{}) c.pop_back();
    if (c.empty()) c.push_back(0.0);
    return c;
}

namespace {

[[noreturn]] void fail(std::span<const cplx> c, const std::string& why) {
    std::ostringstream os;
    os.precision(17);
    os << "Aberth root finder: " << why << "; coefficients (ascending):";
    for (const auto& x : c) os << ' ' << x;
    throw SolverError(os.str());
}

// Fujiwara bound on the root moduli.
double root_radius(std::span<const cplx> c) {
    const std::size_t n = c.size() - 1;
    const double lead = std::abs(c[n]);
    double r = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double term = std::abs(c[n - k]) / lead;
        if (k == n) term /= 2.0;
        r = std::max(r, std::pow(term, 1.0 / static_cast<double>(k)));
    }
    return 2.0 * std::max(r, 1e-300);
}

}  // namespace

std::vector<cplx> roots(std::span<const cplx> c, const AberthOptions& opts) {
    if (c.size() < 2) fail(c, "degree must be at least 1");
    if (c.back() == cplx{}) fail(c, "leading coefficient is zero");
    for (const auto& x : c) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) fail(c, "non-finite coefficient");
    }
    const std::size_t n = c.size() - 1;
    if (n == 1) return {-c[0] / c[1]};

    // Zero roots are deflated exactly.
    std::size_t zeros = 0;
    while (zeros < n && c[zeros] == cplx{}) ++zeros;
    std::vector<cplx> out(zeros, cplx{});
    if (zeros == n) return out;
    const std::span<const cplx> reduced = c.subspan(zeros);
    const std::size_t m = reduced.size() - 1;
    if (m == 1) {
        out.push_back(-reduced[0] / reduced[1]);
        return out;
    }

    const double radius = root_radius(reduced);
    std::vector<cplx> z(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m) + 0.4;
        z[k] = std::polar(radius, theta);
    }

    std::vector<bool> done(m, false);
    std::size_t remaining = m;
    for (int it = 0; it < opts.max_iterations && remaining > 0; ++it) {
        for (std::size_t k = 0; k < m; ++k) {
            if (done[k]) continue;
            const cplx pz = eval(reduced, z[k]);
            if (pz == cplx{}) {
                done[k] = true;
                --remaining;
                continue;
            }
            const cplx ratio = pz / eval_derivative(reduced, z[k]);
            cplx repulsion = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            }
            const cplx step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[k] -= step;
            if (std::abs(step) <= opts.tolerance * std::max(1.0, std::abs(z[k]))) {
                done[k] = true;
                --remaining;
            }
        }
    }
    if (remaining > 0) {
        // Accept stragglers only if they already sit on a root to working precision.
        for (std::size_t k = 0; k < m; ++k) {
            if (done[k]) continue;
            double scale = 0.0;
            const double az = std::abs(z[k]);
            double pw = 1.0;
            for (const auto& ci : reduced) {
                scale += std::abs(ci) * pw;
                pw *= az;
            }
            if (std::abs(eval(reduced, z[k])) > 1e-10 * scale) fail(c, "no convergence");
        }
    }
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

}  // namespace kosc::poly
