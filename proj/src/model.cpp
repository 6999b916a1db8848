#include "kosc/model.hpp"

#include <cmath>
#include <string>

#include "kosc/errors.hpp"

namespace kosc {

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw DomainError(field, std::string(field) + " must be finite");
    }
}

void require_positive(double v, const char* field) {
    require_finite(v, field);
    if (!(v > 0.0)) {
        throw DomainError(field, std::string(field) + " must be > 0, got " + std::to_string(v));
    }
}

}  // namespace

std::string_view to_string(Approx a) noexcept {
    return a == Approx::RWA ? "rwa" : "nrwa";
}

std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::Markovian: return "markovian";
        case Regime::NonMarkovian: return "non_markovian";
        case Regime::Crossover: return "crossover";
    }
    return "crossover";
}

ModelParams::ModelParams(double q, double r, double alpha, Approx approx)
    : q_(q), r_(r), alpha_(alpha), approx_(approx) {
    require_positive(q, "q");
    require_positive(r, "r");
    require_finite(alpha, "alpha");
    if (alpha < 0.0) {
        throw DomainError("alpha", "alpha must be >= 0, got " + std::to_string(alpha));
    }
}

ModelParams from_physical(double omega0, double lambda, double gamma_m, double alpha,
                          Approx approx) {
    require_positive(omega0, "omega0");
    require_positive(lambda, "lambda");
    require_positive(gamma_m, "gamma_m");
    require_finite(alpha, "alpha");
    if (alpha < 0.0) {
        throw DomainError("alpha", "alpha must be >= 0, got " + std::to_string(alpha));
    }
    return ModelParams(omega0 / lambda, lambda / gamma_m, alpha / lambda, approx);
}

Regime regime(const ModelParams& p) noexcept {
    if (p.q() >= kRegimeQHigh && p.r() <= kRegimeRLow) return Regime::NonMarkovian;
    if (p.q() <= kRegimeQLow && p.r() >= kRegimeRHigh) return Regime::Markovian;
    return Regime::Crossover;
}

}  // namespace kosc
