#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fkwell/levy.hpp"

namespace fkwell {

/// Spherical well potential V = -v on the ball of radius a.
struct WellSpec {
    double a = 1.0;
    double v = 1.0;

    void validate() const;
};

/// Radial non-increasing potential v(r) >= 0 decaying to 0.
struct RadialPotential {
    std::function<double(double)> v_of_r;
    double v0 = 0.0;  // v(0)
};

/// Ground state of -1/2 Delta - v 1_{(-a,a)} on the line:
/// B0 cos(k x) inside, A0 e^{-kappa |x|} outside, k = sqrt(2(v - |l0|)),
/// kappa = sqrt(2 |l0|).
struct ClassicalGroundState {
    double lambda0 = 0.0;
    double A0 = 0.0;
    double B0 = 0.0;
    double a = 0.0;
    double v = 0.0;

    double phi(double x) const;
};

ClassicalGroundState classical_groundstate_1d(double a, double v);

/// Ground state of -1/2 Delta - v 1_{B_a} in d >= 3, via Bessel matching:
/// phi(r) = r^{-(d-2)/2} (c_in J_nu(k r) inside, c_out K_nu(kappa r) outside).
/// Throws std::runtime_error when no bound state exists at (a, v, d).
struct ClassicalRadialGroundState {
    int d = 3;
    double lambda0 = 0.0;
    double a = 0.0;
    double v = 0.0;
    double c_in = 0.0;
    double c_out = 0.0;

    double phi(double r) const;
};

ClassicalRadialGroundState classical_groundstate_radial(double a, double v,
                                                        int d);

/// cos(sqrt(2u) x) / cos(sqrt(2u) a); throws std::domain_error at/beyond the
/// blow-up sqrt(2u) a >= pi/2.
double brownian_exit_mgf(double a, double x, double u);

/// e^{-sqrt(2u) |b|}.
double brownian_hit_laplace(double b, double u);

/// Deterministic 1D eigenpair data for the nonlocal operator plus potential.
class SpectralData {
  public:
    double lambda0() const { return lambda0_; }
    /// Radial table of the ground state (r >= 0), L2-normalized.
    const std::vector<double>& r_grid() const { return r_; }
    const std::vector<double>& phi() const { return phi_; }
    /// Linear interpolation of the table.
    double phi_at(double r) const;
    /// Principal Dirichlet eigenvalue on (-R, R), by restriction of the
    /// kernel matrix to interior nodes, with one extrapolation level from a
    /// twice-refined grid.
    double lambdaR(double R) const;

    struct Impl;
    SpectralData(std::shared_ptr<Impl> impl, double lambda0,
                 std::vector<double> r, std::vector<double> phi);

  private:
    std::shared_ptr<Impl> impl_;
    double lambda0_ = 0.0;
    std::vector<double> r_;
    std::vector<double> phi_;
};

/// Dense symmetric discretization of the 1D nonlocal operator on [-L, L]
/// (uniform grid, N nodes, exterior treated as killing) plus the potential
/// on the diagonal; lowest eigenpair by shifted inverse iteration.
SpectralData spectral_solve_1d(const ModelParams& p, const WellSpec& well,
                               double L, int N);
SpectralData spectral_solve_1d(const ModelParams& p,
                               const RadialPotential& pot, double L, int N);

/// Principal Dirichlet eigenvalue of the nonlocal operator on (-R, R),
/// standalone: n_base interior nodes, two refinements, extrapolation with
/// the empirically observed order.
double dirichlet_lambda_R(const ModelParams& p, double R, int n_base = 256);

/// Entrywise check that the massive kernel matrix equals the massless one
/// minus the sigma-kernel matrix; returns the maximum absolute deviation.
double kernel_decomposition_residual(const ModelParams& p, double L, int N);

}  // namespace fkwell
