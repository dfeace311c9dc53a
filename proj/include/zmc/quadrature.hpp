#pragma once

#include <functional>

namespace zmc::quad {

struct Options {
    double abs_tol = 1e-14;
    double rel_tol = 1e-13;
    /// Errors above this after the subdivision budget raise QuadratureFailure.
    double fail_tol = 1e-10;
    int max_intervals = 400;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss–Kronrod on [a, b] (a > b gives the negated integral).
/// Endpoints are never evaluated.
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// ∫_a^∞ f via s = a + r/(1−r), r ∈ [0, 1).
Result integrate_to_infinity(const Integrand& f, double a, const Options& opt = {});

}  // namespace zmc::quad
