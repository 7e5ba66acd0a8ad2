#pragma once

#include <vector>

#include "fkwell/levy.hpp"
#include "fkwell/oracles.hpp"
#include "fkwell/stopping.hpp"

namespace fkwell {

/// Parameter record for the explicit two-sided ground-state profile.
struct ProfileMeta {
    ModelParams model;
    WellSpec well;
    double lambda0_abs = 0.0;  // |lambda_0|
    double lambda_a = 0.0;     // principal Dirichlet eigenvalue of B_a

    double gap_ratio() const {  // (v - |l0|) / (l_a - v + |l0|)
        return (well.v - lambda0_abs) / (lambda_a - well.v + lambda0_abs);
    }
    void validate() const;  // requires 0 < |l0| < v and v - |l0| < l_a
};

/// Two-sided envelope lower(r) <= phi(r)/phi(a) <= upper(r).
struct ProfileBand {
    ProfileMeta meta;
    double scale = 1.0;  // fitted comparability constant
    double slack = 2.0;  // frozen multiplicative slack

    double shape(double r) const;  // continuous profile, = 1 at r = a
    double lower(double r) const { return scale / slack * shape(r); }
    double upper(double r) const { return scale * slack * shape(r); }
};

/// Monte-Carlo estimate of E^x[e^{(v - |l0|) tau_a}], the surrogate for
/// phi(x)/phi(a) inside the well. Rejects v - |l0| >= lambda_a.
Estimate fk_ratio_inside(const ProcessSpec& proc, const ProfileMeta& meta,
                         const Point& x, const McConfig& mc);

/// Monte-Carlo estimate of E^x[e^{-|l0| T_a}], the outside surrogate.
Estimate fk_ratio_outside(const ProcessSpec& proc, const ProfileMeta& meta,
                          const Point& x, const McConfig& mc);

/// Explicit profile branches: inside 1 + gap_ratio ((a-|x|)/a)^{alpha/2};
/// outside the raw jump density j(|x|).
double profile_inside(const ProfileMeta& meta, double r);
double profile_outside(const ProfileMeta& meta, double r);

/// Least-squares (log-space) fit of the single comparability constant of a
/// band against reference values phi(r)/phi(a).
double fit_profile_constant(const ProfileMeta& meta,
                            const std::vector<double>& r,
                            const std::vector<double>& ratio);

/// Two-sided band for phi(a) from the profile normalization: the inside
/// Beta-function terms plus the quadrature of j^2 over the well complement,
/// widened by the multiplicative `slack` of the comparability constant.
Interval phi_at_a(const ProfileMeta& meta, const QuadratureSpec& q = {},
                  double slack = 3.0);

/// Moment threshold: d + 2 alpha for m = 0, +infinity for m > 0.
double p_star(const ModelParams& p);

struct MomentResult {
    Interval band;
    bool diverged = false;
};

/// Band for Lambda_p = (int |x|^p phi^2)^{1/p} by radial quadrature of the
/// profile shape against the phi(a) band; flags divergence at p >= p_star
/// (confirmed by truncated-domain growth).
MomentResult moment_lambda_p(const ProfileMeta& meta, const Interval& phi_a,
                             double p_exp, const QuadratureSpec& q = {});

/// Two-sided moment bounds with the computable factors evaluated and the
/// non-constructive constants exposed as `slack`: both endpoints carry the
/// shared factor (lambda_a / (lambda_a - v + |l0|))^{2/p}. The upper branch
/// requires v > lambda_a + delta.
Interval moment_bounds(const ProfileMeta& meta, const Interval& phi_a,
                       double p_exp, double delta, double slack = 1.0,
                       const QuadratureSpec& q = {});

/// Least-squares slope of log|phi/phi(a) - 1| against log||r| - a|.
double boundary_exponent(const std::vector<double>& r,
                         const std::vector<double>& phi, double a,
                         double phi_a);

struct SymmetryReport {
    std::vector<Estimate> estimates;
    double max_z = 0.0;  // max pairwise |difference| / pooled stderr
};

/// FK inside estimates at k equally rotated points on the circle of the
/// given radius (d >= 2); rotation invariance means all should agree.
SymmetryReport check_radial_symmetry(const ProcessSpec& proc,
                                     const ProfileMeta& meta, double radius,
                                     int k_points, const McConfig& mc);

/// Solves v(r) = gamma on the monotone radial potential by bisection.
double level_set_radius(const RadialPotential& pot, double gamma);

struct DecayingBounds {
    double r_gamma = 0.0;
    Estimate lower;      // E^x[e^{(gamma - |l0|) tau}]
    Estimate fk;         // E^x[e^{int v - |l0| tau}] (occupation-weighted)
    Estimate upper;      // E^x[e^{(v(0) - |l0|) tau}]
};

/// Sandwich for phi(x)/phi(r_gamma) at |x| < r_gamma under a decaying
/// potential: the exact occupation-weighted FK functional between the
/// constant-potential bounds at levels gamma and v(0).
DecayingBounds decaying_bounds(const ProcessSpec& proc,
                               const RadialPotential& pot, double lambda0_abs,
                               double gamma, double lambda_rgamma_hat,
                               const Point& x, const McConfig& mc);

/// v - |l0| < lambda_a.
bool gap_inequality_check(const WellSpec& well, double lambda0_abs,
                          double lambda_a);

}  // namespace fkwell
