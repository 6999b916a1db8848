#include "kosc/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kosc/dispersion.hpp"
#include "kosc/errors.hpp"
#include "kosc/spectral.hpp"

namespace kosc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SteadyStateReport diverged_report() {
    SteadyStateReport r;
    r.c0 = r.n_avg = r.abs_err = r.raw_integral = kInf;
    r.diverged = true;
    return r;
}

}  // namespace

double z_cut(const ModelParams& p) noexcept {
    return std::max(50.0, 10.0 * p.q() + 10.0 / p.r());
}

SteadyStateReport correlation_c0(const ModelParams& p, const quad::Options& opts) {
    const double zc = z_cut(p);
    const double q = p.q();
    std::vector<double> cuts{-zc, zc, 0.0, q, -q, q - 1.0, q + 1.0, -q - 1.0, -q + 1.0};

    if (p.alpha() != 0.0) {
        for (const auto& m : spectrum(p)) {
            if (std::abs(m.z.imag()) < kPoleProximity) return diverged_report();
            const double w = std::abs(m.z.imag());
            for (double x : {m.z.real(), m.z.real() - w, m.z.real() + w}) cuts.push_back(x);
        }
    } else {
        const double g = p.gamma();
        cuts.insert(cuts.end(), {q - g, q + g, -q - g, -q + g});
    }
    std::erase_if(cuts, [zc](double x) { return !(std::abs(x) <= zc); });

    auto f = [&p](double z) { return gk11(z, p); };
    quad::Result inner;
    quad::Result upper;
    quad::Result lower;
    try {
        inner = quad::integrate_pieces(f, cuts, opts);
        upper = quad::integrate_upper_tail(f, zc, opts);
        lower = quad::integrate_lower_tail(f, zc, opts);
    } catch (const SingularityError&) {
        return diverged_report();
    }

    SteadyStateReport r;
    r.raw_integral = inner.value + upper.value + lower.value;
    const double two_pi = 2.0 * std::numbers::pi;
    r.c0 = r.raw_integral / two_pi;
    r.abs_err = (inner.abs_err + upper.abs_err + lower.abs_err) / two_pi;
    r.n_avg = (r.c0 - 1.0) / 2.0;
    r.negative_density = r.n_avg < 0.0;
    return r;
}

std::string_view to_string(ZenoRegime r) noexcept {
    switch (r) {
        case ZenoRegime::Zeno: return "zeno";
        case ZenoRegime::AntiZeno: return "anti_zeno";
        case ZenoRegime::Neutral: return "neutral";
    }
    return "neutral";
}

std::string_view to_string(ZenoConvention c) noexcept {
    switch (c) {
        case ZenoConvention::Literal: return "literal";
        case ZenoConvention::NormalizedDensity: return "normalized";
    }
    return "literal";
}

ZenoRegime zeno_regime(double xi) noexcept {
    if (xi > kZenoEpsilon) return ZenoRegime::AntiZeno;
    if (xi < -kZenoEpsilon) return ZenoRegime::Zeno;
    return ZenoRegime::Neutral;
}

ZenoReport zeno_parameter(const ModelParams& p, ZenoConvention convention) {
    ZenoReport out;
    out.convention = convention;
    if (p.alpha() == 0.0) return out;

    const SteadyStateReport coupled = correlation_c0(p);
    if (coupled.diverged) {
        out.xi = 1.0;
        out.regime = zeno_regime(out.xi);
        out.diverged = true;
        return out;
    }

    double num;
    double den;
    if (convention == ZenoConvention::Literal) {
        const double base = correlation_c0(p.with_alpha(0.0)).raw_integral;
        num = coupled.raw_integral - base;
        den = coupled.raw_integral - 1.0;
    } else {
        num = coupled.n_avg;
        den = coupled.n_avg;
    }
    if (!(std::abs(den) > kZenoDenominator)) {
        std::ostringstream os;
        os.precision(17);
        os << "zeno_parameter: vanishing denominator " << den << " (q=" << p.q() << ", r=" << p.r()
           << ", alpha=" << p.alpha() << ", convention=" << to_string(convention) << ")";
        throw DegenerateError(os.str());
    }
    out.xi = num / den;
    out.regime = zeno_regime(out.xi);
    return out;
}

DistributionFunction distribution_function(double z, const ModelParams& p) {
    Mat2 f = Mat2::Zero();
    f(0, 0) = 1.0;
    f(1, 1) = -1.0;
    if (p.approx() == Approx::NonRWA) {
        if (z == 0.0) throw DomainError("z", "distribution_function: z = 0 is excluded for NonRWA (Sigma / z)");
        const cplx off = self_energy(z, p).value / z;
        f(0, 1) = off;
        f(1, 0) = off;
    }
    const GreenSet g = green_functions(z, p);
    const Mat2 defect = g.keldysh.entries - (g.retarded.entries * f - f * g.advanced.entries);
    return {z, f, defect.cwiseAbs().maxCoeff()};
}

TemperatureProbe effective_temperature_probe(const ModelParams& p) {
    if (p.approx() == Approx::RWA) return {};
    TemperatureProbe out;
    out.t_low = self_energy(0.0, p).value.real() / 2.0;
    // Least squares for c in y(z) = c / z over a uniform grid on [10, 100].
    double sxy = 0.0;
    double sxx = 0.0;
    for (int i = 0; i <= 90; ++i) {
        const double z = 10.0 + i;
        const double x = 1.0 / z;
        const double y = self_energy(z, p).value.real() / z;
        sxy += x * y;
        sxx += x * x;
    }
    out.highfreq_coeff = sxy / sxx;
    return out;
}

}  // namespace kosc
