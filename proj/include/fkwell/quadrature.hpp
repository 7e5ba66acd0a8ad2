#pragma once

#include <functional>

namespace fkwell {

/// Tolerances for the adaptive integrators.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 400;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Throws std::runtime_error if the subdivision budget is exhausted
/// before the requested tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& q = {});

/// Integral of f over [a, inf), mapped to a finite interval via
/// t = a + u/(1-u). The integrand must decay fast enough for the
/// transformed integrand to be integrable at u = 1.
double integrate_half_line(const std::function<double(double)>& f, double a,
                           const QuadratureSpec& q = {});

}  // namespace fkwell
