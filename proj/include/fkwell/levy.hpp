#pragma once

#include "fkwell/quadrature.hpp"

namespace fkwell {

/// Identifies the operator/process family: dimension, stability index, mass.
struct ModelParams {
    int d = 1;
    double alpha = 1.0;
    double m = 0.0;

    void validate() const;  // throws std::invalid_argument on bad fields
};

/// Closed interval [lo, hi]; carries two-sided bounds.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class Recurrence { Recurrent, Transient };

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

/// Radial jump density j(r) of the Levy measure: for m=0 the pure power
/// A_{d,alpha} r^{-d-alpha}; for m>0 the Bessel-K form with exponential decay.
double jump_density(const ModelParams& p, double r);
double log_jump_density(const ModelParams& p, double r);

/// Non-negative difference density sigma(r) = j_{0}(r) - j_{m}(r), evaluated
/// in closed Bessel form (not by cancellation of the two densities).
double sigma_density(const ModelParams& p, double r);

/// Independent evaluation of sigma(r) through the cumulative integral
/// int_0^{m^{1/alpha} r} w^rho K_{rho-1}(w) dw; used as a cross-check.
double sigma_density_integral(const ModelParams& p, double r,
                              const QuadratureSpec& q = {});

/// Total mass of sigma over R^d; equals m.
double total_sigma_mass(const ModelParams& p, const QuadratureSpec& q = {});

/// Mass of the Levy measure outside the ball of radius r.
double tail_mass(const ModelParams& p, double r, const QuadratureSpec& q = {});

/// Two-sided band for the boundary rate function V(r) in d=1: exact r^{alpha/2}
/// for m=0; for m>0 a band [C1 r^{alpha/2}, C2 r^{alpha/2}] on r <= r0 with
/// constants calibrated once per (alpha, m) from half-line survival sampling,
/// blended into the linear large-r regime beyond r0 = m^{-1/alpha}.
Interval rate_function(const ModelParams& p, double r);

Recurrence classify_recurrence(const ModelParams& p);

}  // namespace fkwell
