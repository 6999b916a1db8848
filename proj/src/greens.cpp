#include "kosc/greens.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "kosc/errors.hpp"

namespace kosc {

namespace {

constexpr cplx kI{0.0, 1.0};

[[noreturn]] void throw_singular(double z, const char* what) {
    std::ostringstream os;
    os.precision(17);
    os << what << " is singular at z = " << z;
    throw SingularityError(z, os.str());
}

}  // namespace

std::string_view to_string(GreenKind k) noexcept {
    switch (k) {
        case GreenKind::InverseRetarded: return "inverse_retarded";
        case GreenKind::Retarded: return "retarded";
        case GreenKind::Advanced: return "advanced";
        case GreenKind::Keldysh: return "keldysh";
    }
    return "retarded";
}

Mat2 inverse_retarded_matrix(cplx z, const ModelParams& p) {
    const double q = p.q();
    const double g = p.gamma();
    Mat2 d;
    if (p.approx() == Approx::NonRWA) {
        const cplx s = self_energy(z, p).value;
        d << z - q + kI * g + s, s,
             s, -z - q - kI * g + s;
    } else {
        const cplx s_plus = self_energy_rwa(z, p).value;
        const cplx s_minus = self_energy_rwa(-z, p).value;
        d << z - q + kI * g + s_plus, 0.0,
             0.0, -z - q - kI * g + s_minus;
    }
    return d;
}

cplx retarded_determinant(cplx z, const ModelParams& p) {
    return inverse_retarded_matrix(z, p).determinant();
}

GreenMatrix retarded_inverse(double z, const ModelParams& p) {
    return {inverse_retarded_matrix(z, p), GreenKind::InverseRetarded, z, p.approx()};
}

GreenMatrix keldysh_inverse(const ModelParams& p) {
    return {Mat2::Identity() * (2.0 * kI * p.gamma()), GreenKind::Keldysh, 0.0, p.approx()};
}

GreenSet green_functions(double z, const ModelParams& p) {
    const Mat2 d = inverse_retarded_matrix(z, p);
    const cplx det = d.determinant();
    const double scale = std::abs(d(0, 0) * d(1, 1)) + std::abs(d(0, 1) * d(1, 0));
    if (!(std::abs(det) > kSingularTolerance * scale)) throw_singular(z, "D^re");

    Mat2 gr;
    gr << d(1, 1), -d(0, 1),
          -d(1, 0), d(0, 0);
    gr /= det;
    const Mat2 ga = gr.adjoint();
    const Mat2 gk = -gr * keldysh_inverse(p).entries * ga;
    return {{gr, GreenKind::Retarded, z, p.approx()},
            {ga, GreenKind::Advanced, z, p.approx()},
            {gk, GreenKind::Keldysh, z, p.approx()}};
}

GreenMatrix keldysh_green(double z, const ModelParams& p) {
    return green_functions(z, p).keldysh;
}

double gk11(double z, const ModelParams& p) {
    const double q = p.q();
    const double g = p.gamma();
    double num;
    double den;
    if (p.approx() == Approx::NonRWA) {
        const double s = self_energy(z, p).value.real();
        const double a = z + q - s;
        const double b = (z - q) * (z + q) - g * g + 2.0 * q * s;
        num = 2.0 * g * (a * a + g * g + s * s);
        den = b * b + 4.0 * z * z * g * g;
    } else {
        const double s = self_energy_rwa(z, p).value.real();
        const double a = z - q + s;
        num = 2.0 * g;
        den = a * a + g * g;
    }
    if (!(den > 0.0) || !std::isfinite(den)) throw_singular(z, "i G^K_11 denominator");
    return num / den;
}

}  // namespace kosc
