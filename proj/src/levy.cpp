#include "fkwell/levy.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "fkwell/rng.hpp"
#include "fkwell/sampler.hpp"
#include "fkwell/specfun.hpp"

namespace fkwell {

namespace {

constexpr double kPi = 3.14159265358979323846;

double half_order(const ModelParams& p) { return 0.5 * (p.d + p.alpha); }

// log of the massless constant A: j_0(r) = A r^{-d-alpha}, with
// A = 2^{alpha-1} alpha Gamma((d+alpha)/2) / (pi^{d/2} Gamma(1-alpha/2)).
double log_massless_constant(const ModelParams& p) {
    return (p.alpha - 1.0) * std::log(2.0) + std::log(p.alpha) +
           log_gamma(half_order(p)) - 0.5 * p.d * std::log(kPi) -
           log_gamma(1.0 - 0.5 * p.alpha);
}

// log of the massive constant C: j_m(r) = C K_rho(m^{1/alpha} r) / r^rho
// with rho = (d+alpha)/2 and
// C = 2^{(alpha-d)/2} m^{rho/alpha} alpha / (pi^{d/2} Gamma(1-alpha/2)).
double log_massive_constant(const ModelParams& p) {
    const double rho = half_order(p);
    return 0.5 * (p.alpha - p.d) * std::log(2.0) +
           (rho / p.alpha) * std::log(p.m) + std::log(p.alpha) -
           0.5 * p.d * std::log(kPi) - log_gamma(1.0 - 0.5 * p.alpha);
}

// log of the sigma prefactor P in
// sigma(r) = P (2^{rho-1} Gamma(rho) - x^rho K_rho(x)) / r^{d+alpha},
// x = m^{1/alpha} r. P 2^{rho-1} Gamma(rho) = A and P m^{rho/alpha} = C,
// so sigma = j_0 - j_m identically.
double log_sigma_prefactor(const ModelParams& p) {
    return std::log(p.alpha) - 0.5 * (p.d - p.alpha) * std::log(2.0) -
           log_gamma(1.0 - 0.5 * p.alpha) - 0.5 * p.d * std::log(kPi);
}

// Surface area of the unit sphere, d * omega_d.
double sphere_area(int d) {
    return 2.0 * std::pow(kPi, 0.5 * d) / gamma_fn(0.5 * d);
}

}  // namespace

void ModelParams::validate() const {
    if (d < 1) throw std::invalid_argument("ModelParams: d must be >= 1");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("ModelParams: alpha must be in (0, 2)");
    if (!(m >= 0.0)) throw std::invalid_argument("ModelParams: m must be >= 0");
}

double unit_ball_volume(int d) {
    return std::pow(kPi, 0.5 * d) / gamma_fn(0.5 * d + 1.0);
}

double log_jump_density(const ModelParams& p, double r) {
    p.validate();
    if (!(r > 0.0)) throw std::domain_error("jump_density: r must be > 0");
    if (p.m == 0.0)
        return log_massless_constant(p) - (p.d + p.alpha) * std::log(r);
    const double rho = half_order(p);
    return log_massive_constant(p) +
           log_bessel_k(rho, std::pow(p.m, 1.0 / p.alpha) * r) -
           rho * std::log(r);
}

double jump_density(const ModelParams& p, double r) {
    return std::exp(log_jump_density(p, r));
}

double sigma_density(const ModelParams& p, double r) {
    p.validate();
    if (!(p.m > 0.0)) throw std::domain_error("sigma_density: m must be > 0");
    if (!(r > 0.0)) throw std::domain_error("sigma_density: r must be > 0");
    const double rho = half_order(p);
    const double x = std::pow(p.m, 1.0 / p.alpha) * r;
    double bracket;
    if (x < 0.5) {
        // The direct difference cancels badly for small x; use the
        // equivalent cumulative integral, which vanishes smoothly.
        bracket = integrate(
            [&](double w) {
                return std::exp(rho * std::log(w) + log_bessel_k(rho - 1.0, w));
            },
            0.0, x, {});
    } else {
        bracket = std::exp((rho - 1.0) * std::log(2.0) + log_gamma(rho)) -
                  std::exp(rho * std::log(x) + log_bessel_k(rho, x));
    }
    return std::exp(log_sigma_prefactor(p)) * bracket /
           std::pow(r, p.d + p.alpha);
}

double sigma_density_integral(const ModelParams& p, double r,
                              const QuadratureSpec& q) {
    p.validate();
    if (!(p.m > 0.0)) throw std::domain_error("sigma_density: m must be > 0");
    const double rho = half_order(p);
    const double x = std::pow(p.m, 1.0 / p.alpha) * r;
    const double integral = integrate(
        [&](double w) {
            return std::exp(rho * std::log(w) + log_bessel_k(rho - 1.0, w, q));
        },
        0.0, x, q);
    return std::exp(log_sigma_prefactor(p)) * integral /
           std::pow(r, p.d + p.alpha);
}

double total_sigma_mass(const ModelParams& p, const QuadratureSpec& q) {
    p.validate();
    if (!(p.m > 0.0))
        throw std::domain_error("total_sigma_mass: m must be > 0");
    const double area = sphere_area(p.d);
    auto f = [&](double r) {
        return std::pow(r, p.d - 1.0) * sigma_density(p, r);
    };
    // The integrand is itself quadrature-evaluated to ~1e-10, so asking the
    // outer integral for more than ~1e-7 just exhausts the budget.
    QuadratureSpec qq = q;
    qq.abs_tol = std::max(qq.abs_tol, 1e-7);
    qq.rel_tol = std::max(qq.rel_tol, 1e-7);
    // sigma ~ r^{2-d-alpha} at zero, so the radial integrand behaves like
    // r^{1-alpha} there; the substitution r = s^2 makes it bounded for all
    // alpha < 2. At infinity it decays like j_0. Split at the mass scale.
    const double r0 = std::pow(p.m, -1.0 / p.alpha);
    const double inner = integrate(
        [&](double s) { return 2.0 * s * f(s * s); }, 0.0, std::sqrt(r0), qq);
    const double outer = integrate_half_line(f, r0, qq);
    return area * (inner + outer);
}

double tail_mass(const ModelParams& p, double r, const QuadratureSpec& q) {
    p.validate();
    if (!(r > 0.0)) throw std::domain_error("tail_mass: r must be > 0");
    const double area = sphere_area(p.d);
    if (p.m == 0.0)
        return area * std::exp(log_massless_constant(p)) *
               std::pow(r, -p.alpha) / p.alpha;
    auto f = [&](double u) {
        return std::exp((p.d - 1.0) * std::log(u) + log_jump_density(p, u));
    };
    return area * integrate_half_line(f, r, q);
}

namespace {

// Universal two-sided constants for the half-line survival probability of a
// symmetric unimodal process: C1 (V(r)/sqrt(t) ^ 1) <= P^r(tau > t) <=
// C2 (V(r)/sqrt(t) ^ 1).
const double kE = std::exp(1.0);
const double kSurvC1 =
    (1.0 / (2.0 * kE)) * std::pow((kE - 1.0) / (8.0 * kE * kE), 2.0);
const double kSurvC2 = kE / (kE - 1.0);

struct RateBand {
    double c_lo;
    double c_hi;
};

// Half-line survival probability P^x(tau_{(0,inf)} > t) by simulation.
double half_line_survival(double alpha, double m, double x, double t,
                          std::uint64_t seed) {
    const int n = 2000;
    const double h = t / 1500.0;
    int survived = 0;
    for (int i = 0; i < n; ++i) {
        Rng rng(seed, 0, static_cast<std::uint64_t>(i));
        double pos = x;
        bool alive = true;
        const long steps = static_cast<long>(std::llround(t / h));
        for (long k = 0; k < steps; ++k) {
            double dx;
            relativistic_increment(1, alpha, m, h, rng, &dx);
            pos += dx;
            if (pos <= 0.0) {
                alive = false;
                break;
            }
        }
        if (alive) ++survived;
    }
    return static_cast<double>(survived) / n;
}

RateBand calibrate_rate_band(double alpha, double m) {
    const double r0 = std::pow(m, -1.0 / alpha);
    RateBand band{1e300, 0.0};
    const double fractions[3] = {0.25, 0.5, 1.0};
    for (int j = 0; j < 3; ++j) {
        const double x = fractions[j] * r0;
        const double sq = 2.0 * std::pow(x, 0.5 * alpha);  // targets P ~ C/2
        const double t = sq * sq;
        const double p = half_line_survival(alpha, m, x, t, 0x5eedull + j);
        const double v_lo = sq * p / kSurvC2;
        const double v_hi = sq * p / kSurvC1;
        band.c_lo = std::min(band.c_lo, v_lo / std::pow(x, 0.5 * alpha));
        band.c_hi = std::max(band.c_hi, v_hi / std::pow(x, 0.5 * alpha));
    }
    return band;
}

std::mutex g_rate_mutex;
std::map<std::pair<double, double>, RateBand> g_rate_cache;

RateBand rate_band(double alpha, double m) {
    const std::pair<double, double> key{alpha, m};
    {
        std::lock_guard<std::mutex> lock(g_rate_mutex);
        auto it = g_rate_cache.find(key);
        if (it != g_rate_cache.end()) return it->second;
    }
    RateBand band = calibrate_rate_band(alpha, m);
    std::lock_guard<std::mutex> lock(g_rate_mutex);
    return g_rate_cache.emplace(key, band).first->second;
}

}  // namespace

Interval rate_function(const ModelParams& p, double r) {
    p.validate();
    if (p.d != 1) throw std::domain_error("rate_function: defined for d = 1");
    if (!(r >= 0.0)) throw std::domain_error("rate_function: r must be >= 0");
    if (p.m == 0.0) {
        const double v = std::pow(r, 0.5 * p.alpha);
        return {v, v};
    }
    const RateBand band = rate_band(p.alpha, p.m);
    const double r0 = std::pow(p.m, -1.0 / p.alpha);
    if (r <= r0) {
        const double s = std::pow(r, 0.5 * p.alpha);
        return {band.c_lo * s, band.c_hi * s};
    }
    // Linear continuation beyond r0, continuous at r0, matching the large-r
    // asymptote V ~ r.
    const double slope = std::pow(r0, 0.5 * p.alpha - 1.0);
    return {band.c_lo * slope * r, band.c_hi * slope * r};
}

Recurrence classify_recurrence(const ModelParams& p) {
    p.validate();
    if (p.m > 0.0)
        return p.d <= 2 ? Recurrence::Recurrent : Recurrence::Transient;
    return (p.d == 1 && p.alpha >= 1.0) ? Recurrence::Recurrent
                                        : Recurrence::Transient;
}

}  // namespace fkwell
