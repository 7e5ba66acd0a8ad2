#include "fkwell/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace fkwell {

namespace {

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

double lanczos_gamma_positive(double x) {
    // Valid for x >= 0.5.
    const double z = x - 1.0;
    double series = kLanczos[0];
    for (int i = 1; i < 9; ++i) series += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * series;
}

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at non-positive integer");
    if (x < 0.5) {
        // Reflection formula.
        return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    }
    return lanczos_gamma_positive(x);
}

double log_gamma(double x) {
    if (x <= 0.0) throw std::domain_error("log_gamma: requires x > 0");
    if (x < 0.5) return std::log(gamma_fn(x));
    const double z = x - 1.0;
    double series = kLanczos[0];
    for (int i = 1; i < 9; ++i) series += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t +
           std::log(series);
}

double beta_fn(double x, double y) {
    if (x <= 0.0 || y <= 0.0) throw std::domain_error("beta_fn: requires x, y > 0");
    return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

namespace {

// log of the integrand exponent of K_rho(z) after t = e^u:
//   K_rho(z) = 1/2 (z/2)^rho \int e^{phi(u)} du,
//   phi(u) = -rho u - e^u - z^2/(4 e^u).
double bessel_k_log_integral(double rho, double z, const QuadratureSpec& q) {
    auto phi = [&](double u) {
        const double t = std::exp(u);
        return -rho * u - t - z * z / (4.0 * t);
    };
    // The exponent peaks where e^u - z^2/(4 e^u) + rho = 0.
    const double tpeak =
        0.5 * (std::sqrt(rho * rho + z * z) - rho) + 1e-300;
    const double upeak = std::log(tpeak);
    const double phimax = phi(upeak);
    // Expand the window until the integrand is negligible at both ends.
    double lo = upeak - 1.0, hi = upeak + 1.0;
    while (phi(lo) > phimax - 45.0 && lo > upeak - 700.0) lo -= 1.0;
    while (phi(hi) > phimax - 45.0 && hi < upeak + 700.0) hi += 1.0;
    auto f = [&](double u) { return std::exp(phi(u) - phimax); };
    const double integral = integrate(f, lo, hi, q);
    return phimax + std::log(integral) + std::log(0.5) +
           rho * std::log(z / 2.0);
}

// Large-argument expansion: K_rho(z) ~ sqrt(pi/(2z)) e^{-z} sum a_k z^{-k},
// a_k = prod_{j<=k} (4 rho^2 - (2j-1)^2) / (k! 8^k).
double bessel_k_log_asymptotic(double rho, double z) {
    const double mu = 4.0 * rho * rho;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * z);
        sum += term;
    }
    return 0.5 * std::log(kPi / (2.0 * z)) - z + std::log(sum);
}

}  // namespace

double log_bessel_k(double rho, double z, const QuadratureSpec& q) {
    if (z <= 0.0) throw std::domain_error("bessel_k: requires z > 0");
    rho = std::fabs(rho);  // K_{-rho} = K_rho
    // The log-substituted integral has no under/overflow issue, so use it
    // everywhere the expansion has not fully converged.
    if (z > 80.0 && z > 20.0 * rho * rho) return bessel_k_log_asymptotic(rho, z);
    return bessel_k_log_integral(rho, z, q);
}

double bessel_k(double rho, double z, const QuadratureSpec& q) {
    return std::exp(log_bessel_k(rho, z, q));
}

double bessel_i(double rho, double z) {
    if (z <= 0.0) throw std::domain_error("bessel_i: requires z > 0");
    if (z > 600.0)
        throw std::runtime_error(
            "bessel_i: argument overflows the series; use a log-domain variant");
    const double x2 = 0.25 * z * z;
    double term = std::exp(rho * std::log(z / 2.0) - log_gamma(rho + 1.0));
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= x2 / (k * (k + rho));
        sum += term;
        if (term < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

double bessel_j(double rho, double z) {
    if (z <= 0.0) throw std::domain_error("bessel_j: requires z > 0");
    if (z > 60.0)
        throw std::runtime_error("bessel_j: series unsuitable for large argument");
    const double x2 = 0.25 * z * z;
    double term = std::exp(rho * std::log(z / 2.0) - log_gamma(rho + 1.0));
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= -x2 / (k * (k + rho));
        sum += term;
        if (std::fabs(term) < 1e-17 * (std::fabs(sum) + 1e-300) && k > 4) break;
    }
    return sum;
}

}  // namespace fkwell
