#include "fkwell/oracles.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fkwell/specfun.hpp"

namespace fkwell {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void WellSpec::validate() const {
    if (!(a > 0.0) || !(v > 0.0))
        throw std::invalid_argument("WellSpec: a and v must be > 0");
}

// ---------------------------------------------------------------------------
// Classical 1D well
// ---------------------------------------------------------------------------

double ClassicalGroundState::phi(double x) const {
    const double k = std::sqrt(2.0 * (v - std::fabs(lambda0)));
    const double kappa = std::sqrt(2.0 * std::fabs(lambda0));
    const double r = std::fabs(x);
    if (r <= a) return B0 * std::cos(k * r);
    return A0 * std::exp(-kappa * r);
}

ClassicalGroundState classical_groundstate_1d(double a, double v) {
    WellSpec{a, v}.validate();
    // Even bound state: k tan(k a) = kappa with k^2/2 + kappa^2/2 = v.
    // On k in (0, min(sqrt(2v), pi/(2a))) the residual is increasing from
    // -sqrt(2v) to +infinity, so the root is unique; it is the nodeless
    // (lowest) mode.
    const double k_hi = std::min(std::sqrt(2.0 * v), kPi / (2.0 * a));
    auto residual = [&](double k) {
        return k * std::tan(k * a) - std::sqrt(std::max(2.0 * v - k * k, 0.0));
    };
    double lo = 1e-12, hi = k_hi - 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) < 0.0 ? lo : hi) = mid;
    }
    const double k = 0.5 * (lo + hi);
    ClassicalGroundState g;
    g.a = a;
    g.v = v;
    g.lambda0 = -(v - 0.5 * k * k);
    const double kappa = std::sqrt(2.0 * std::fabs(g.lambda0));
    // Normalization: B0^2 (a + sin(2ka)/(2k)) + B0^2 cos^2(ka)/kappa = 1.
    const double c = std::cos(k * a);
    const double inside = a + std::sin(2.0 * k * a) / (2.0 * k);
    g.B0 = 1.0 / std::sqrt(inside + c * c / kappa);
    g.A0 = g.B0 * c * std::exp(kappa * a);
    return g;
}

// ---------------------------------------------------------------------------
// Classical radial well, d >= 3
// ---------------------------------------------------------------------------

double ClassicalRadialGroundState::phi(double r) const {
    const double nu = 0.5 * (d - 2);
    const double k = std::sqrt(2.0 * (v - std::fabs(lambda0)));
    const double kappa = std::sqrt(2.0 * std::fabs(lambda0));
    if (r < 1e-12)
        return c_in * std::pow(0.5 * k, nu) / gamma_fn(nu + 1.0);
    if (r <= a) return c_in * std::pow(r, -nu) * bessel_j(nu, k * r);
    return c_out * std::pow(r, -nu) * bessel_k(nu, kappa * r);
}

ClassicalRadialGroundState classical_groundstate_radial(double a, double v,
                                                        int d) {
    WellSpec{a, v}.validate();
    if (d < 3)
        throw std::invalid_argument(
            "classical_groundstate_radial: requires d >= 3");
    const double nu = 0.5 * (d - 2);
    // Log-derivative matching of r^{-nu} J_nu(k r) against r^{-nu}
    // K_nu(kappa r) at r = a reduces to
    //   k J_{nu-1}(ka)/J_nu(ka) = -kappa K_{nu-1}(kappa a)/K_nu(kappa a).
    auto residual = [&](double k) {
        const double kappa = std::sqrt(std::max(2.0 * v - k * k, 1e-300));
        return k * bessel_j(nu - 1.0, k * a) / bessel_j(nu, k * a) +
               kappa * bessel_k(nu - 1.0, kappa * a) / bessel_k(nu, kappa * a);
    };
    // Scan k upward; the ground state is the first sign change while
    // J_nu(k a) is still positive (nodeless mode).
    const double k_max = std::sqrt(2.0 * v);
    const int n_scan = 4000;
    double k_root = -1.0;
    double prev_k = k_max * 1e-6, prev_f = residual(prev_k);
    for (int i = 1; i <= n_scan; ++i) {
        const double k = k_max * (1e-6 + (1.0 - 2e-6) * i / n_scan);
        if (bessel_j(nu, k * a) <= 0.0) break;
        const double f = residual(k);
        if (prev_f > 0.0 && f <= 0.0) {
            double lo = prev_k, hi = k;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (residual(mid) > 0.0 ? lo : hi) = mid;
            }
            k_root = 0.5 * (lo + hi);
            break;
        }
        prev_k = k;
        prev_f = f;
    }
    if (k_root < 0.0)
        throw std::runtime_error(
            "classical_groundstate_radial: no bound state at these (a, v, d)");
    ClassicalRadialGroundState g;
    g.d = d;
    g.a = a;
    g.v = v;
    g.lambda0 = -(v - 0.5 * k_root * k_root);
    const double kappa = std::sqrt(2.0 * std::fabs(g.lambda0));
    // Continuity at a fixes the ratio; the overall scale comes from the
    // L2 norm: S_d [cin^2 int_0^a r J_nu(kr)^2 dr + cout^2 int_a^inf ...].
    const double j_a = bessel_j(nu, k_root * a);
    const double k_a = bessel_k(nu, kappa * a);
    const double s_d = 2.0 * std::pow(kPi, 0.5 * d) / gamma_fn(0.5 * d);
    const double n_in = integrate(
        [&](double r) {
            const double b = bessel_j(nu, k_root * r);
            return r * b * b;
        },
        0.0, a, {});
    const double n_out = integrate_half_line(
        [&](double r) {
            const double b = std::exp(log_bessel_k(nu, kappa * r));
            return r * b * b;
        },
        a, {});
    // cin * J_nu(ka) = cout * K_nu(kappa a) =: s
    const double s =
        1.0 / std::sqrt(s_d * (n_in / (j_a * j_a) + n_out / (k_a * k_a)));
    g.c_in = s / j_a;
    g.c_out = s / k_a;
    return g;
}

// ---------------------------------------------------------------------------
// Brownian transforms
// ---------------------------------------------------------------------------

double brownian_exit_mgf(double a, double x, double u) {
    if (u < 0.0) throw std::domain_error("brownian_exit_mgf: u must be >= 0");
    const double s = std::sqrt(2.0 * u);
    if (s * a >= 0.5 * kPi)
        throw std::domain_error(
            "brownian_exit_mgf: diverges at sqrt(2u) a >= pi/2");
    return std::cos(s * x) / std::cos(s * a);
}

double brownian_hit_laplace(double b, double u) {
    if (u < 0.0)
        throw std::domain_error("brownian_hit_laplace: u must be >= 0");
    return std::exp(-std::sqrt(2.0 * u) * std::fabs(b));
}

// ---------------------------------------------------------------------------
// 1D spectral solver
// ---------------------------------------------------------------------------

namespace {

// Exact integrals of the radial jump density: cell mass over [a, b] and the
// tail mass over [s, inf).
struct KernelDensity {
    ModelParams p;

    double cell(double a, double b) const {
        if (p.m == 0.0) {
            const double A = std::exp(log_a_constant());
            return (A / p.alpha) *
                   (std::pow(a, -p.alpha) - std::pow(b, -p.alpha));
        }
        return integrate([&](double u) { return jump_density(p, u); }, a, b,
                         {1e-12, 1e-12, 400});
    }
    double tail(double s) const {
        if (p.m == 0.0) {
            const double A = std::exp(log_a_constant());
            return (A / p.alpha) * std::pow(s, -p.alpha);
        }
        return integrate_half_line(
            [&](double u) { return jump_density(p, u); }, s,
            {1e-12, 1e-12, 400});
    }
    // int_0^{delta} u^2 j(u) du, the near-diagonal second-difference weight.
    double curvature(double delta) const {
        if (p.m == 0.0) {
            const double A = std::exp(log_a_constant());
            return A * std::pow(delta, 2.0 - p.alpha) / (2.0 - p.alpha);
        }
        return integrate(
            [&](double u) { return u * u * jump_density(p, u); }, 0.0, delta,
            {1e-12, 1e-12, 400});
    }
    // Central moments int (u - c)^q j(u) du over [a, b], c = (a+b)/2, used
    // by the quadratic-interpolation correction on near-diagonal cells.
    double cell_m1(double a, double b) const {
        const double c = 0.5 * (a + b);
        if (p.m == 0.0) {
            const double A = std::exp(log_a_constant());
            const double M1 =
                p.alpha == 1.0
                    ? A * std::log(b / a)
                    : (A / (1.0 - p.alpha)) * (std::pow(b, 1.0 - p.alpha) -
                                               std::pow(a, 1.0 - p.alpha));
            return M1 - c * cell(a, b);
        }
        return integrate(
            [&](double u) { return (u - c) * jump_density(p, u); }, a, b,
            {1e-12, 1e-12, 400});
    }
    double cell_m2(double a, double b) const {
        const double c = 0.5 * (a + b);
        if (p.m == 0.0) {
            const double A = std::exp(log_a_constant());
            const double M0 = cell(a, b);
            const double M1 =
                p.alpha == 1.0
                    ? A * std::log(b / a)
                    : (A / (1.0 - p.alpha)) * (std::pow(b, 1.0 - p.alpha) -
                                               std::pow(a, 1.0 - p.alpha));
            const double M2 = (A / (2.0 - p.alpha)) *
                              (std::pow(b, 2.0 - p.alpha) -
                               std::pow(a, 2.0 - p.alpha));
            return M2 - 2.0 * c * M1 + c * c * M0;
        }
        return integrate(
            [&](double u) { return (u - c) * (u - c) * jump_density(p, u); },
            a, b, {1e-12, 1e-12, 400});
    }

  private:
    double log_a_constant() const {
        return (p.alpha - 1.0) * std::log(2.0) + std::log(p.alpha) +
               log_gamma(0.5 * (1.0 + p.alpha)) - 0.5 * std::log(kPi) -
               log_gamma(1.0 - 0.5 * p.alpha);
    }
};

// Same machinery with sigma as the density (m > 0); sigma is integrable at
// zero, so its curvature term vanishes with the cell size but is kept for
// symmetry of the assembly.
struct SigmaDensity {
    ModelParams p;
    double cell(double a, double b) const {
        return integrate([&](double u) { return sigma_density(p, u); }, a, b,
                         {1e-12, 1e-12, 400});
    }
    double tail(double s) const {
        return integrate_half_line(
            [&](double u) { return sigma_density(p, u); }, s,
            {1e-12, 1e-12, 400});
    }
    double curvature(double delta) const {
        return integrate(
            [&](double u) { return u * u * sigma_density(p, u); }, 0.0, delta,
            {1e-12, 1e-12, 400});
    }
    double cell_m1(double a, double b) const {
        const double c = 0.5 * (a + b);
        return integrate(
            [&](double u) { return (u - c) * sigma_density(p, u); }, a, b,
            {1e-12, 1e-12, 400});
    }
    double cell_m2(double a, double b) const {
        const double c = 0.5 * (a + b);
        return integrate(
            [&](double u) { return (u - c) * (u - c) * sigma_density(p, u); },
            a, b, {1e-12, 1e-12, 400});
    }
};

// Kernel-only matrix (no potential) for a uniform cell-centered grid of n
// nodes on (-H, H), exterior treated as killing (Dirichlet).
template <class Density>
Eigen::MatrixXd assemble_kernel(const Density& dens, double H, int n) {
    const double delta = 2.0 * H / n;
    std::vector<double> w(n);  // w[k] = mass of a cell at lag k
    for (int k = 1; k < n; ++k)
        w[k] = dens.cell((k - 0.5) * delta, (k + 0.5) * delta);
    const double kappa0 = dens.curvature(0.5 * delta);
    // On cells next to the singularity the midpoint rule leaves an
    // O(delta^{2-alpha}) error; represent the integrand there by quadratic
    // interpolation through the three nearest nodes instead, which needs the
    // first and second central kernel moments of each near cell.
    const int K = std::min(6, n - 1);
    std::vector<double> m1(K + 1, 0.0), m2(K + 1, 0.0);
    for (int k = 1; k <= K; ++k) {
        m1[k] = dens.cell_m1((k - 0.5) * delta, (k + 0.5) * delta);
        m2[k] = dens.cell_m2((k - 0.5) * delta, (k + 0.5) * delta);
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double xi = -H + (i + 0.5) * delta;
        double diag = dens.tail(H - xi) + dens.tail(H + xi) +
                      2.0 * kappa0 / (delta * delta);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            diag += w[std::abs(i - j)];
            A(i, j) = -w[std::abs(i - j)];
        }
        if (i > 0) A(i, i - 1) -= kappa0 / (delta * delta);
        if (i + 1 < n) A(i, i + 1) -= kappa0 / (delta * delta);
        A(i, i) = diag;
        // Quadratic-interpolation corrections: for offset s*k the cell
        // contribution s*m1*phi'(x_j) + m2/2*phi''(x_j) in central
        // differences; nodes outside the grid carry phi = 0 (killing).
        for (int k = 1; k <= K; ++k)
            for (int s : {-1, 1}) {
                const int j = i + s * k;
                if (j < 0 || j >= n) continue;
                auto sub = [&](int col, double coef) {
                    if (col >= 0 && col < n) A(i, col) -= coef;
                };
                sub(j, -m2[k] / (delta * delta));
                sub(j + 1, s * m1[k] / (2.0 * delta) +
                               m2[k] / (2.0 * delta * delta));
                sub(j - 1, -s * m1[k] / (2.0 * delta) +
                               m2[k] / (2.0 * delta * delta));
            }
    }
    // The collocation corrections are asymmetric only at higher order;
    // restore exact symmetry for the eigensolve.
    A = 0.5 * (A + A.transpose()).eval();
    return A;
}

// Lowest eigenpair of a symmetric matrix by shifted inverse iteration;
// `shift` must lie strictly below the spectrum.
std::pair<double, Eigen::VectorXd> lowest_eigenpair(const Eigen::MatrixXd& A,
                                                    double shift) {
    const int n = static_cast<int>(A.rows());
    Eigen::LDLT<Eigen::MatrixXd> solver(
        A - shift * Eigen::MatrixXd::Identity(n, n));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectral solve: factorization failed");
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const double t = -1.0 + 2.0 * (i + 0.5) / n;
        y(i) = std::exp(-4.0 * t * t);
    }
    y.normalize();
    double lambda = 0.0, prev = 1e300;
    for (int it = 0; it < 300; ++it) {
        Eigen::VectorXd z = solver.solve(y);
        z.normalize();
        lambda = z.dot(A * z);
        if (std::fabs(lambda - prev) < 1e-13 * (1.0 + std::fabs(lambda))) {
            y = z;
            break;
        }
        prev = lambda;
        y = z;
    }
    if (y.sum() < 0.0) y = -y;
    return {lambda, y};
}

// Principal Dirichlet eigenvalue on (-R, R) with n interior nodes.
double lambda_R_raw(const ModelParams& p, double R, int n) {
    const Eigen::MatrixXd A = assemble_kernel(KernelDensity{p}, R, n);
    return lowest_eigenpair(A, -1e-8).first;
}

}  // namespace

struct SpectralData::Impl {
    ModelParams p;
    double L = 0.0;
    int N = 0;
};

SpectralData::SpectralData(std::shared_ptr<Impl> impl, double lambda0,
                           std::vector<double> r, std::vector<double> phi)
    : impl_(std::move(impl)),
      lambda0_(lambda0),
      r_(std::move(r)),
      phi_(std::move(phi)) {}

double SpectralData::phi_at(double r) const {
    r = std::fabs(r);
    if (r <= r_.front()) return phi_.front();
    if (r >= r_.back()) return phi_.back();
    auto it = std::lower_bound(r_.begin(), r_.end(), r);
    const std::size_t j = static_cast<std::size_t>(it - r_.begin());
    const double t = (r - r_[j - 1]) / (r_[j] - r_[j - 1]);
    return (1.0 - t) * phi_[j - 1] + t * phi_[j];
}

double SpectralData::lambdaR(double R) const {
    // Node count matching the parent grid restricted to (-R, R).
    const int n = std::max(
        128, static_cast<int>(std::lround(impl_->N * R / impl_->L)));
    return dirichlet_lambda_R(impl_->p, R, n);
}

double dirichlet_lambda_R(const ModelParams& p, double R, int n_base) {
    p.validate();
    if (p.d != 1)
        throw std::invalid_argument("dirichlet_lambda_R: requires d = 1");
    int n = std::max(128, n_base);
    if (n % 2) ++n;
    const double l1 = lambda_R_raw(p, R, n);
    const double l2 = lambda_R_raw(p, R, 2 * n);
    const double l4 = lambda_R_raw(p, R, 4 * n);
    const double d1 = l2 - l1, d2 = l4 - l2;
    if (d2 == 0.0 || d1 / d2 <= 1.0) return l4;
    return l4 + d2 / (d1 / d2 - 1.0);
}

namespace {

// `cell_potential(lo, hi)` must return the average of the potential over
// the grid cell [lo, hi]; exact averaging keeps the discretization error
// smooth under refinement when the potential has a sharp edge.
SpectralData solve_impl(const ModelParams& p,
                        const std::function<double(double, double)>& cell_potential,
                        double v0, double L, int N) {
    p.validate();
    if (p.d != 1)
        throw std::invalid_argument("spectral_solve_1d: requires d = 1");
    if (N < 256)
        throw std::invalid_argument("spectral_solve_1d: N must be >= 256");
    Eigen::MatrixXd A = assemble_kernel(KernelDensity{p}, L, N);
    const double delta = 2.0 * L / N;
    for (int i = 0; i < N; ++i) {
        const double xi = -L + (i + 0.5) * delta;
        A(i, i) -= cell_potential(xi - 0.5 * delta, xi + 0.5 * delta);
    }
    auto [lambda, vec] = lowest_eigenpair(A, -v0 - 1.0);
    if (lambda >= 0.0)
        throw std::runtime_error("spectral_solve_1d: no bound state found");

    auto impl = std::make_shared<SpectralData::Impl>();
    impl->p = p;
    impl->L = L;
    impl->N = N;
    std::vector<double> r, phi;
    const double norm = vec.norm() * std::sqrt(delta);
    for (int i = N / 2; i < N; ++i) {
        r.push_back(-L + (i + 0.5) * delta);
        phi.push_back(vec(i) / norm);
    }
    return SpectralData(std::move(impl), lambda, std::move(r), std::move(phi));
}

}  // namespace

SpectralData spectral_solve_1d(const ModelParams& p, const WellSpec& well,
                               double L, int N) {
    well.validate();
    if (L < 10.0 * well.a)
        throw std::invalid_argument("spectral_solve_1d: L must be >= 10 a");
    // Snap the half-width so the well edge +-a falls exactly on a cell
    // boundary for every N that is a multiple of 256: otherwise the edge
    // drifts within its cell under refinement and the eigenvalue picks up an
    // alignment-dependent oscillation that ruins Cauchy convergence. The
    // snapped L is >= the requested one.
    {
        const double c_req = (well.a + L) / (2.0 * L);
        double c = std::floor(256.0 * c_req) / 256.0;
        c = std::max(c, (0.5 * 256.0 + 1.0) / 256.0);
        L = well.a / (2.0 * c - 1.0);
    }
    auto pot = [well](double lo, double hi) {
        const double overlap = std::max(
            0.0, std::min(hi, well.a) - std::max(lo, -well.a));
        return well.v * overlap / (hi - lo);
    };
    return solve_impl(p, pot, well.v, L, N);
}

SpectralData spectral_solve_1d(const ModelParams& p,
                               const RadialPotential& pot, double L, int N) {
    auto cell = [pot](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        return (pot.v_of_r(std::fabs(lo)) + 4.0 * pot.v_of_r(std::fabs(mid)) +
                pot.v_of_r(std::fabs(hi))) /
               6.0;
    };
    return solve_impl(p, cell, pot.v0, L, N);
}

double kernel_decomposition_residual(const ModelParams& p, double L, int N) {
    if (!(p.m > 0.0))
        throw std::invalid_argument(
            "kernel_decomposition_residual: m must be > 0");
    ModelParams p0 = p;
    p0.m = 0.0;
    const Eigen::MatrixXd Lm = assemble_kernel(KernelDensity{p}, L, N);
    const Eigen::MatrixXd L0 = assemble_kernel(KernelDensity{p0}, L, N);
    const Eigen::MatrixXd G = assemble_kernel(SigmaDensity{p}, L, N);
    return (Lm - (L0 - G)).cwiseAbs().maxCoeff();
}

}  // namespace fkwell
