#include "kosc/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>

#include "kosc/errors.hpp"

namespace kosc::quad {

namespace {

struct Piece {
    double a;
    double b;
    double value;
    double err;
    bool operator<(const Piece& o) const noexcept { return err < o.err; }
};

Piece kronrod(const Integrand& f, double a, double b) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
    // Boost reports the non-adaptive error on the reference interval [-1, 1].
    return {a, b, v, err * std::abs(b - a) / 2.0};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opts) {
    if (a == b) return {};
    std::priority_queue<Piece> heap;
    heap.push(kronrod(f, a, b));
    double value = heap.top().value;
    double err = heap.top().err;
    int count = 1;
    while (count < opts.max_intervals && err > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
        const Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // no representable split left
        heap.pop();
        const Piece left = kronrod(f, worst.a, mid);
        const Piece right = kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // re-sum to shed the drift of the running totals
    value = 0.0;
    err = 0.0;
    for (; !heap.empty(); heap.pop()) {
        value += heap.top().value;
        err += heap.top().err;
    }
    return {value, err};
}

Result integrate_pieces(const Integrand& f, std::vector<double> breakpoints, const Options& opts) {
    if (breakpoints.size() < 2) throw DomainError("breakpoints", "integrate_pieces: need at least two breakpoints");
    std::sort(breakpoints.begin(), breakpoints.end());
    // Near-coincident cuts leave slivers on which the error estimate never settles.
    auto close = [](double a, double b) { return b - a <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); };
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end(), close), breakpoints.end());
    if (breakpoints.size() < 2) throw DomainError("breakpoints", "integrate_pieces: breakpoints span no interval");
    Result out;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const Result r = integrate(f, breakpoints[i], breakpoints[i + 1], opts);
        out.value += r.value;
        out.abs_err += r.abs_err;
    }
    return out;
}

Result integrate_upper_tail(const Integrand& f, double z_cut, const Options& opts) {
    if (!(z_cut > 0.0)) throw DomainError("z_cut", "integrate_upper_tail: z_cut must be positive");
    // The endpoint t = 0 is never sampled by Gauss-Kronrod.
    auto g = [&](double t) { return f(z_cut / t) * z_cut / (t * t); };
    return integrate(g, 0.0, 1.0, opts);
}

Result integrate_lower_tail(const Integrand& f, double z_cut, const Options& opts) {
    return integrate_upper_tail([&](double z) { return f(-z); }, z_cut, opts);
}

}  // namespace kosc::quad
