#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>

#include "fkwell/levy.hpp"
#include "fkwell/rng.hpp"

namespace fkwell {

struct SeedSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

struct StepConfig {
    double h = 1e-3;
    double t_max = 50.0;
    bool record_occupation = false;

    void validate() const;
};

using Point = std::array<double, 3>;

inline double norm(const Point& x, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

/// One stopped path: grid-detected stopping time, straddling positions,
/// occupation of the target set, and (when a potential is attached to the
/// walk) the accumulated integral int_0^tau v(|X_s|) ds.
struct StoppedSample {
    double tau_hat = 0.0;
    Point x_before{};
    Point x_after{};
    double occupation = 0.0;
    double potential_integral = 0.0;
    bool truncated = false;
};

/// Which process drives the walk.
struct ProcessSpec {
    int d = 1;
    double alpha = 1.0;  // ignored when brownian
    double m = 0.0;
    bool brownian = false;

    static ProcessSpec stable(const ModelParams& p) {
        return {p.d, p.alpha, p.m, false};
    }
    static ProcessSpec brownian_motion(int d) { return {d, 2.0, 0.0, true}; }
};

struct Region {
    enum class Kind { ExitBall, HitBall, ExitLevelSet };
    Kind kind = Kind::ExitBall;
    double R = 1.0;

    static Region exit_ball(double R) { return {Kind::ExitBall, R}; }
    static Region hit_ball(double R) { return {Kind::HitBall, R}; }
    static Region exit_level_set(double r_gamma) {
        return {Kind::ExitLevelSet, r_gamma};
    }
};

/// One-sided beta-stable subordinator draw with Laplace exponent
/// scale * w^beta at time t (Kanter / Chambers-Mallows-Stuck construction).
inline double stable_subordinator_sample(double beta, double t, double scale,
                                         Rng& rng) {
    constexpr double pi = 3.14159265358979323846;
    const double u = pi * rng.uniform();
    const double w = rng.exponential();
    const double su = std::sin(u);
    const double a = std::pow(std::sin((1.0 - beta) * u) / w,
                              (1.0 - beta) / beta) *
                     std::sin(beta * u) / std::pow(su, 1.0 / beta);
    return std::pow(scale * t, 1.0 / beta) * a;
}

/// Subordinator draw with Laplace exponent (2w + m^{2/alpha})^{alpha/2} - m,
/// by exponential tilting of the stable draw; acceptance probability e^{-mt}.
/// Throws std::invalid_argument when the expected acceptance e^{-mt} < 1e-3.
double relativistic_subordinator_sample(double alpha, double m, double t,
                                        Rng& rng);

/// Isotropic alpha-stable increment over time h: sqrt(S) * Z with S the
/// subordinator draw at scale 2^{alpha/2}; characteristic function
/// e^{-h |u|^alpha}.
inline void stable_increment(int d, double alpha, double h, Rng& rng,
                             double* dx) {
    const double s =
        stable_subordinator_sample(0.5 * alpha, h, std::pow(2.0, 0.5 * alpha), rng);
    const double sd = std::sqrt(s);
    for (int i = 0; i < d; ++i) dx[i] = sd * rng.normal();
}

/// Relativistic alpha-stable increment; characteristic function
/// e^{-h ((|u|^2 + m^{2/alpha})^{alpha/2} - m)}.
void relativistic_increment(int d, double alpha, double m, double h, Rng& rng,
                            double* dx);

inline void brownian_increment(int d, double h, Rng& rng, double* dx) {
    const double sd = std::sqrt(h);
    for (int i = 0; i < d; ++i) dx[i] = sd * rng.normal();
}

/// Steps the path on the grid kh until the region predicate fires or t_max
/// is reached. Occupation (of the ball B_R for exit regions, of B_R for hit
/// regions) uses the left-endpoint rule. When `potential` is non-null its
/// value at |X_{kh}| is accumulated into potential_integral (same rule).
StoppedSample walk_until(const ProcessSpec& proc, const Point& x0,
                         const Region& region, const StepConfig& cfg,
                         Rng& rng,
                         const std::function<double(double)>* potential = nullptr);

}  // namespace fkwell
