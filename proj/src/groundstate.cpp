#include "fkwell/groundstate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fkwell/specfun.hpp"

namespace fkwell {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void ProfileMeta::validate() const {
    model.validate();
    well.validate();
    if (!(lambda0_abs > 0.0 && lambda0_abs < well.v))
        throw std::invalid_argument(
            "ProfileMeta: requires 0 < |lambda0| < v (ground-state regime)");
    if (!(well.v - lambda0_abs < lambda_a))
        throw std::invalid_argument(
            "ProfileMeta: requires v - |lambda0| < lambda_a");
}

Estimate fk_ratio_inside(const ProcessSpec& proc, const ProfileMeta& meta,
                         const Point& x, const McConfig& mc) {
    meta.validate();
    return estimate_exit_mgf(proc, meta.well.a, x,
                             meta.well.v - meta.lambda0_abs, meta.lambda_a,
                             mc);
}

Estimate fk_ratio_outside(const ProcessSpec& proc, const ProfileMeta& meta,
                          const Point& x, const McConfig& mc) {
    if (!(meta.lambda0_abs > 0.0))
        throw std::invalid_argument("fk_ratio_outside: |lambda0| must be > 0");
    return estimate_hitting_laplace(proc, meta.well.a, x, meta.lambda0_abs,
                                    mc);
}

double profile_inside(const ProfileMeta& meta, double r) {
    if (r > meta.well.a)
        throw std::domain_error("profile_inside: requires |x| <= a");
    const double u = (meta.well.a - r) / meta.well.a;
    return 1.0 + meta.gap_ratio() * std::pow(u, 0.5 * meta.model.alpha);
}

double profile_outside(const ProfileMeta& meta, double r) {
    if (r < meta.well.a)
        throw std::domain_error("profile_outside: requires |x| >= a");
    return jump_density(meta.model, r);
}

double ProfileBand::shape(double r) const {
    if (r <= meta.well.a) return profile_inside(meta, r);
    return profile_outside(meta, r) / jump_density(meta.model, meta.well.a);
}

double fit_profile_constant(const ProfileMeta& meta,
                            const std::vector<double>& r,
                            const std::vector<double>& ratio) {
    ProfileBand band{meta, 1.0, 1.0};
    double sum = 0.0;
    long n = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(ratio[i] > 0.0)) continue;
        sum += std::log(ratio[i] / band.shape(r[i]));
        ++n;
    }
    if (n == 0) throw std::invalid_argument("fit_profile_constant: no data");
    return std::exp(sum / n);
}

Interval phi_at_a(const ProfileMeta& meta, const QuadratureSpec& q,
                  double slack) {
    meta.validate();
    const int d = meta.model.d;
    const double a = meta.well.a;
    const double alpha = meta.model.alpha;
    const double kappa = meta.gap_ratio();
    const double omega = unit_ball_volume(d);
    QuadratureSpec qq = q;
    qq.abs_tol = std::max(qq.abs_tol, 1e-9);
    qq.rel_tol = std::max(qq.rel_tol, 1e-9);
    // Outside term: a^{-d} int_a^inf r^{d-1} j^2(r) dr (the profile carries
    // the raw jump density outside the well).
    const double outer = integrate_half_line(
        [&](double r) {
            return std::exp((d - 1.0) * std::log(r) +
                            2.0 * log_jump_density(meta.model, r));
        },
        a, qq);
    const double bracket = 1.0 / d + 2.0 * kappa * beta_fn(d, 1.0 + 0.5 * alpha) +
                           kappa * kappa * beta_fn(d, 1.0 + alpha) +
                           outer / std::pow(a, d);
    const double central =
        1.0 / std::sqrt(std::pow(a, d) * d * omega * bracket);
    return {central / slack, central * slack};
}

double p_star(const ModelParams& p) {
    p.validate();
    if (p.m > 0.0) return std::numeric_limits<double>::infinity();
    return p.d + 2.0 * p.alpha;
}

MomentResult moment_lambda_p(const ProfileMeta& meta, const Interval& phi_a,
                             double p_exp, const QuadratureSpec& q) {
    if (!(p_exp > 0.0))
        throw std::domain_error("moment_lambda_p: p must be > 0");
    MomentResult out;
    QuadratureSpec qq = q;
    qq.abs_tol = std::max(qq.abs_tol, 1e-9);
    qq.rel_tol = std::max(qq.rel_tol, 1e-9);
    ProfileBand band{meta, 1.0, 1.0};
    const int d = meta.model.d;
    const double area = d * unit_ball_volume(d);
    auto radial = [&](double r) {
        const double s = band.shape(r);
        return std::pow(r, p_exp + d - 1.0) * s * s;
    };
    if (p_exp >= p_star(meta.model)) {
        out.diverged = true;
        // Sanity: truncated-domain integrals must keep growing. At exactly
        // p = p_star the growth is only logarithmic, so the gate is mild.
        double prev = area * integrate(radial, 0.0, 1e2, qq);
        for (double cut : {1e3, 1e4}) {
            const double cur = area * integrate(radial, 0.0, cut, qq);
            if (!(cur >= 1.2 * prev))
                throw std::runtime_error(
                    "moment_lambda_p: expected truncated-domain growth "
                    "missing above p_star");
            prev = cur;
        }
        return out;
    }
    // Massless outside branch is an exact power law r^{p+d-1-2(d+alpha)};
    // near p_star its tail is too flat for the mapped half-line quadrature,
    // so integrate it in closed form.
    const double a = meta.well.a;
    const double outside =
        meta.model.m == 0.0
            ? std::pow(a, p_exp + d) /
                  (d + 2.0 * meta.model.alpha - p_exp)
            : integrate_half_line(radial, a, qq);
    const double integral =
        area * (integrate(radial, 0.0, a, qq) + outside);
    out.band.lo = std::pow(phi_a.lo * phi_a.lo * integral, 1.0 / p_exp);
    out.band.hi = std::pow(phi_a.hi * phi_a.hi * integral, 1.0 / p_exp);
    return out;
}

Interval moment_bounds(const ProfileMeta& meta, const Interval& phi_a,
                       double p_exp, double delta, double slack,
                       const QuadratureSpec& q) {
    meta.validate();
    if (!(p_exp > 0.0 && p_exp < p_star(meta.model)))
        throw std::domain_error("moment_bounds: requires 0 < p < p_star");
    if (!(meta.well.v > meta.lambda_a + delta))
        throw std::domain_error(
            "moment_bounds: upper branch requires v > lambda_a + delta");
    QuadratureSpec qq = q;
    qq.abs_tol = std::max(qq.abs_tol, 1e-9);
    qq.rel_tol = std::max(qq.rel_tol, 1e-9);
    const int d = meta.model.d;
    const double a = meta.well.a;
    const double alpha = meta.model.alpha;
    const double area = d * unit_ball_volume(d);
    const double shared =
        std::pow(meta.lambda_a /
                     (meta.lambda_a - meta.well.v + meta.lambda0_abs),
                 2.0 / p_exp);
    // Lower factor: (int_{B_a} |x|^p ((a-|x|)/a)^alpha dx)^{1/p}.
    const double low_int = area * integrate(
        [&](double r) {
            return std::pow(r, p_exp + d - 1.0) *
                   std::pow((a - r) / a, alpha);
        },
        0.0, a, qq);
    // Upper factor: max of the inside and outside computable integrals.
    const double up_in = area * integrate(
        [&](double r) { return std::pow(r, p_exp + d - 1.0); }, 0.0, a, qq);
    const double j_a = jump_density(meta.model, a);
    const double up_out =
        meta.model.m == 0.0
            // Exact power-law tail (see moment_lambda_p).
            ? area * j_a * j_a * std::pow(a, p_exp + d) /
                  (d + 2.0 * alpha - p_exp)
            : area * integrate_half_line(
                         [&](double r) {
                             return std::exp(
                                 (p_exp + d - 1.0) * std::log(r) +
                                 2.0 * log_jump_density(meta.model, r));
                         },
                         a, qq);
    Interval out;
    out.lo = std::pow(phi_a.lo * phi_a.lo * low_int, 1.0 / p_exp) * shared /
             slack;
    out.hi = std::pow(phi_a.hi * phi_a.hi *
                          std::max(up_in, up_out / (j_a * j_a)),
                      1.0 / p_exp) *
             shared * slack;
    return out;
}

double boundary_exponent(const std::vector<double>& r,
                         const std::vector<double>& phi, double a,
                         double phi_a) {
    if (r.size() != phi.size() || r.size() < 8)
        throw std::invalid_argument(
            "boundary_exponent: needs >= 8 matched samples");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    long n = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double dev = std::fabs(phi[i] / phi_a - 1.0);
        const double dist = std::fabs(std::fabs(r[i]) - a);
        if (!(dev > 0.0) || !(dist > 0.0)) continue;
        const double x = std::log(dist), y = std::log(dev);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2)
        throw std::invalid_argument("boundary_exponent: degenerate table");
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw std::invalid_argument("boundary_exponent: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

SymmetryReport check_radial_symmetry(const ProcessSpec& proc,
                                     const ProfileMeta& meta, double radius,
                                     int k_points, const McConfig& mc) {
    if (proc.d < 2)
        throw std::invalid_argument("check_radial_symmetry: requires d >= 2");
    SymmetryReport rep;
    McConfig cfg = mc;
    for (int k = 0; k < k_points; ++k) {
        const double theta = 2.0 * kPi * k / k_points;
        Point x{radius * std::cos(theta), radius * std::sin(theta), 0.0};
        cfg.seed.stream = mc.seed.stream + static_cast<std::uint64_t>(k) *
                                               (mc.streams + 1);
        rep.estimates.push_back(fk_ratio_inside(proc, meta, x, cfg));
    }
    for (int i = 0; i < k_points; ++i)
        for (int j = i + 1; j < k_points; ++j) {
            const Estimate &a = rep.estimates[i], &b = rep.estimates[j];
            const double pooled = std::sqrt(a.stderr_ * a.stderr_ +
                                            b.stderr_ * b.stderr_);
            if (pooled > 0.0)
                rep.max_z =
                    std::max(rep.max_z, std::fabs(a.value - b.value) / pooled);
        }
    return rep;
}

double level_set_radius(const RadialPotential& pot, double gamma) {
    if (!(gamma > 0.0 && gamma < pot.v0))
        throw std::domain_error(
            "level_set_radius: gamma must lie in (0, v(0))");
    double lo = 0.0, hi = 1.0;
    while (pot.v_of_r(hi) > gamma) {
        hi *= 2.0;
        if (hi > 1e12)
            throw std::runtime_error("level_set_radius: level set unbounded");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (pot.v_of_r(mid) > gamma ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

DecayingBounds decaying_bounds(const ProcessSpec& proc,
                               const RadialPotential& pot, double lambda0_abs,
                               double gamma, double lambda_rgamma_hat,
                               const Point& x, const McConfig& mc) {
    DecayingBounds out;
    out.r_gamma = level_set_radius(pot, gamma);
    if (!(pot.v0 - lambda0_abs < lambda_rgamma_hat))
        throw std::invalid_argument(
            "decaying_bounds: requires v(0) - |lambda0| < lambda_{r_gamma}");
    const Region region = Region::exit_level_set(out.r_gamma);
    const std::function<double(double)> vr = pot.v_of_r;
    struct FkAcc {
        Accumulator lo, fk, hi;
        void merge(const FkAcc& o) {
            lo.merge(o.lo);
            fk.merge(o.fk);
            hi.merge(o.hi);
        }
    };
    const double w_lo = gamma - lambda0_abs;
    const double w_hi = pot.v0 - lambda0_abs;
    const FkAcc acc = run_reduce<FkAcc>(
        mc.n, mc.streams, mc.seed, mc.workers, [&](Rng& rng, FkAcc& a) {
            const StoppedSample s =
                walk_until(proc, x, region, mc.step, rng, &vr);
            a.lo.add({std::exp(w_lo * s.tau_hat), s.truncated});
            a.fk.add({std::exp(s.potential_integral -
                               lambda0_abs * s.tau_hat),
                      s.truncated});
            a.hi.add({std::exp(w_hi * s.tau_hat), s.truncated});
        });
    out.lower = finalize(acc.lo);
    out.fk = finalize(acc.fk);
    out.upper = finalize(acc.hi);
    return out;
}

bool gap_inequality_check(const WellSpec& well, double lambda0_abs,
                          double lambda_a) {
    return well.v - lambda0_abs < lambda_a;
}

}  // namespace fkwell
