#pragma once

#include "fkwell/quadrature.hpp"

namespace fkwell {

/// Gamma function. Throws std::domain_error at the poles (0, -1, -2, ...).
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Beta function B(x, y) for x, y > 0, evaluated in the log domain.
double beta_fn(double x, double y);

/// Modified Bessel function of the third kind K_rho(z), z > 0, rho >= 0,
/// by adaptive quadrature of the integral representation
///   K_rho(z) = 1/2 (z/2)^rho \int_0^inf t^{-rho-1} e^{-t - z^2/(4t)} dt
/// on a log-substituted axis; large-argument expansion once it has
/// converged to full precision.
double bessel_k(double rho, double z, const QuadratureSpec& q = {});

/// log K_rho(z): usable where K itself underflows.
double log_bessel_k(double rho, double z, const QuadratureSpec& q = {});

/// Modified Bessel function I_rho(z), z > 0, by power series with
/// term-ratio stopping. Throws std::runtime_error for z large enough to
/// overflow (use a log-domain variant in that regime).
double bessel_i(double rho, double z);

/// Bessel function J_rho(z), z > 0, by power series.
double bessel_j(double rho, double z);

}  // namespace fkwell
