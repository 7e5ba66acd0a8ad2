#include "fkwell/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace fkwell {

void StepConfig::validate() const {
    if (!(h > 0.0)) throw std::invalid_argument("StepConfig: h must be > 0");
    if (!(h <= t_max))
        throw std::invalid_argument("StepConfig: h must not exceed t_max");
}

double relativistic_subordinator_sample(double alpha, double m, double t,
                                        Rng& rng) {
    if (!(m > 0.0))
        throw std::invalid_argument("relativistic subordinator: m must be > 0");
    if (m * t > std::log(1e3))
        throw std::invalid_argument(
            "relativistic subordinator: acceptance e^{-mt} below 1e-3; "
            "reduce the time step");
    const double theta = 0.5 * std::pow(m, 2.0 / alpha);
    const double scale = std::pow(2.0, 0.5 * alpha);
    for (;;) {
        const double s = stable_subordinator_sample(0.5 * alpha, t, scale, rng);
        if (rng.exponential() > theta * s) return s;  // accept w.p. e^{-theta s}
    }
}

void relativistic_increment(int d, double alpha, double m, double h, Rng& rng,
                            double* dx) {
    const double s = relativistic_subordinator_sample(alpha, m, h, rng);
    const double sd = std::sqrt(s);
    for (int i = 0; i < d; ++i) dx[i] = sd * rng.normal();
}

namespace {

inline bool region_fired(const Region& region, double r) {
    switch (region.kind) {
        case Region::Kind::ExitBall:
        case Region::Kind::ExitLevelSet:
            return r >= region.R;
        case Region::Kind::HitBall:
            return r < region.R;
    }
    return false;
}

// For exit regions occupation tracks time spent in B_R (the whole path until
// exit); for hit regions it tracks time spent in B_R before the walk starts
// there (zero until the hit), so in both cases occupation <= tau_hat.
inline bool occupies(const Region& region, double r) {
    return r < region.R;
}

}  // namespace

StoppedSample walk_until(const ProcessSpec& proc, const Point& x0,
                         const Region& region, const StepConfig& cfg,
                         Rng& rng,
                         const std::function<double(double)>* potential) {
    cfg.validate();
    const int d = proc.d;
    // A continuous path monitored only on the time grid systematically
    // overshoots exit times (and undershoots hits): excursions across the
    // boundary between grid points go unseen. For Brownian paths the
    // standard continuity correction shifts the barrier by 0.5826 sqrt(h)
    // (Broadie-Glasserman); jump-driven crossings need no correction.
    Region reg = region;
    if (proc.brownian) {
        const double shift = 0.5826 * std::sqrt(cfg.h);
        reg.R += (region.kind == Region::Kind::HitBall) ? shift : -shift;
    }
    StoppedSample out;
    Point x = x0;
    double r = norm(x, d);
    if (region_fired(reg, r)) {
        out.x_before = x;
        out.x_after = x;
        return out;
    }

    const long n_steps = static_cast<long>(std::llround(cfg.t_max / cfg.h));
    double dx[3];
    for (long k = 0; k < n_steps; ++k) {
        if (cfg.record_occupation && occupies(reg, r))
            out.occupation += cfg.h;
        if (potential) out.potential_integral += cfg.h * (*potential)(r);

        if (proc.brownian)
            brownian_increment(d, cfg.h, rng, dx);
        else if (proc.m > 0.0)
            relativistic_increment(d, proc.alpha, proc.m, cfg.h, rng, dx);
        else
            stable_increment(d, proc.alpha, cfg.h, rng, dx);

        out.x_before = x;
        for (int i = 0; i < d; ++i) x[i] += dx[i];
        r = norm(x, d);
        if (region_fired(reg, r)) {
            out.tau_hat = (k + 1) * cfg.h;
            out.x_after = x;
            return out;
        }
    }
    out.tau_hat = cfg.t_max;
    out.x_before = x;
    out.x_after = x;
    out.truncated = true;
    return out;
}

}  // namespace fkwell
