// Exception types shared by all kosc modules

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kosc {

/// Invalid argument outside the documented domain (e.g. q <= 0).
class DomainError : public std::invalid_argument {
public:
    DomainError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Evaluation hit a pole of a rational self-energy.
class PoleError : public std::runtime_error {
public:
    PoleError(std::complex<double> z, const std::string& what)
        : std::runtime_error(what), z_(z) {}
    std::complex<double> at() const noexcept { return z_; }

private:
    std::complex<double> z_;
};

/// The inverse retarded matrix is singular at a real frequency (on-shell mode).
class SingularityError : public std::runtime_error {
public:
    SingularityError(double z, const std::string& what)
        : std::runtime_error(what), z_(z) {}
    double at() const noexcept { return z_; }

private:
    double z_;
};

/// Iterative solver failed to converge or could not bracket a root.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Drift matrix is not Hurwitz, so no Gaussian steady state exists.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(double max_real_eig, const std::string& what)
        : std::runtime_error(what), max_real_eig_(max_real_eig) {}
    double max_real_eigenvalue() const noexcept { return max_real_eig_; }

private:
    double max_real_eig_;
};

/// A ratio with a vanishing denominator (Zeno parameter at degenerate points).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kosc
