#pragma once

#include "fkwell/mc.hpp"
#include "fkwell/sampler.hpp"

namespace fkwell {

/// Aggregated Monte-Carlo estimate. When `diverged` is set the value is a
/// lower bound (a truncated partial sum), not a convergent estimate.
/// `heavy_tail` flags a single path carrying > 10% of the total weight,
/// which makes the quoted stderr unreliable.
struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long n = 0;
    double truncated_fraction = 0.0;
    double tail_bound = 0.0;
    bool diverged = false;
    bool heavy_tail = false;
};

struct McConfig {
    long n = 100000;
    int streams = 1;
    int workers = 1;
    StepConfig step;
    SeedSpec seed;
};

Estimate finalize(const Accumulator& acc);

/// P^x(tau_R > t): fraction of paths still inside B_R at time t.
Estimate estimate_survival(const ProcessSpec& proc, double R, const Point& x,
                           double t, const McConfig& mc);

/// E^x[e^{lambda tau_R}]. Truncated paths contribute the lower-bound weight
/// e^{lambda t_max}. Divergence is flagged when lambda >= lambda_R_hat (the
/// expectation is infinite at and beyond the principal Dirichlet eigenvalue)
/// or when the truncated mass dominates the converged part; the returned
/// value is then the truncated partial sum.
Estimate estimate_exit_mgf(const ProcessSpec& proc, double R, const Point& x,
                           double lambda, double lambda_R_hat,
                           const McConfig& mc);

/// E^x[e^{-lambda T_R}] for |x| >= R. Truncated paths contribute weight 0;
/// their worst-case mass e^{-lambda t_max} * truncated_fraction is reported
/// as tail_bound.
Estimate estimate_hitting_laplace(const ProcessSpec& proc, double R,
                                  const Point& x, double lambda,
                                  const McConfig& mc);

/// E^x[tau_R].
Estimate estimate_mean_exit(const ProcessSpec& proc, double R, const Point& x,
                            const McConfig& mc);

/// Ratio E^x[e^{w tau}; R <= |X_tau| <= C R] / E^x[e^{w tau}] over shared
/// paths; stderr by the delta method.
Estimate exit_jump_containment(const ProcessSpec& proc, double R,
                               const Point& x, double weight_exponent,
                               double factor, const McConfig& mc);

}  // namespace fkwell
