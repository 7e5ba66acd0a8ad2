#include "fkwell/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <sstream>

#include "fkwell/groundstate.hpp"
#include "fkwell/levy.hpp"
#include "fkwell/oracles.hpp"
#include "fkwell/sampler.hpp"
#include "fkwell/stopping.hpp"

namespace fkwell {

namespace {

struct Ctx {
    std::uint64_t seed = 0;
    int workers = 1;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// --- 1. Brownian end-to-end -----------------------------------------------

CriterionResult brownian_end_to_end(const Ctx& ctx) {
    CriterionResult out{"brownian-end-to-end"};
    const ClassicalGroundState g = classical_groundstate_1d(1.0, 5.0);
    constexpr double kPi = 3.14159265358979323846;
    ProfileMeta meta;
    meta.model = {1, 2.0, 0.0};  // alpha slot unused on the Brownian branch
    meta.model.alpha = 1.0;      // keep ModelParams valid
    meta.well = {1.0, 5.0};
    meta.lambda0_abs = std::fabs(g.lambda0);
    meta.lambda_a = kPi * kPi / 8.0;  // Dirichlet principal of -1/2 d^2/dx^2
    const ProcessSpec proc = ProcessSpec::brownian_motion(1);
    McConfig mc;
    mc.n = 200000;
    mc.streams = 8;
    mc.workers = ctx.workers;
    mc.step = {1e-3, 50.0, false};
    bool pass = true;
    std::ostringstream detail;
    int point = 0;
    for (double x : {0.0, 0.5, 0.9, 1.5, 2.5}) {
        mc.seed = {ctx.seed, static_cast<std::uint64_t>(100 * point++)};
        const bool inside = x <= meta.well.a;
        const Estimate e = inside
                               ? fk_ratio_inside(proc, meta, {x, 0, 0}, mc)
                               : fk_ratio_outside(proc, meta, {x, 0, 0}, mc);
        const double exact = g.phi(x) / g.phi(meta.well.a);
        const double tol = std::max(3.0 * e.stderr_, 0.02 * exact);
        const bool ok = std::fabs(e.value - exact) <= tol;
        pass = pass && ok;
        detail << fmt("x=%.1f mc=%.4f exact=%.4f ", x, e.value, exact);
    }
    out.pass = pass;
    out.detail = detail.str();
    return out;
}

// --- 2. Sampler laws -------------------------------------------------------

CriterionResult sampler_laws(const Ctx& ctx) {
    CriterionResult out{"sampler-laws"};
    const long n = 1000000;
    bool pass = true;
    std::ostringstream detail;
    auto check = [&](const char* tag, double mean, double se, double exact) {
        const bool ok = std::fabs(mean - exact) <= 4.0 * se + 1e-12;
        pass = pass && ok;
        if (!ok) detail << fmt("%s got %.5f want %.5f se %.2g; ", tag, mean,
                               exact, se);
    };
    // Subordinator Laplace transform at three w values.
    {
        const double scale = std::sqrt(2.0);
        for (double w : {0.5, 1.0, 2.0}) {
            double s = 0.0, s2 = 0.0;
            Rng rng(ctx.seed, 11, static_cast<std::uint64_t>(w * 8));
            for (long i = 0; i < n; ++i) {
                const double v = std::exp(
                    -w * stable_subordinator_sample(0.5, 1.0, scale, rng));
                s += v;
                s2 += v * v;
            }
            const double mean = s / n;
            const double se =
                std::sqrt(std::max(s2 / n - mean * mean, 0.0) / n);
            check("laplace", mean, se,
                  std::exp(-scale * std::pow(w, 0.5)));
        }
    }
    // Characteristic functions of stable and relativistic increments.
    const double h = 0.5;
    int cnt = 0;
    for (double alpha : {0.5, 1.0, 1.5})
        for (double m : {0.0, 1.0})
            for (double u : {0.5, 1.0, 2.0}) {
                double s = 0.0, s2 = 0.0;
                Rng rng(ctx.seed, 20 + cnt++, 0);
                double dx;
                for (long i = 0; i < n; ++i) {
                    if (m > 0.0)
                        relativistic_increment(1, alpha, m, h, rng, &dx);
                    else
                        stable_increment(1, alpha, h, rng, &dx);
                    const double v = std::cos(u * dx);
                    s += v;
                    s2 += v * v;
                }
                const double mean = s / n;
                const double se =
                    std::sqrt(std::max(s2 / n - mean * mean, 0.0) / n);
                const double exponent =
                    m > 0.0 ? std::pow(u * u + std::pow(m, 2.0 / alpha),
                                       0.5 * alpha) -
                                  m
                            : std::pow(u, alpha);
                check(fmt("cf a=%.1f m=%.0f u=%.1f", alpha, m, u).c_str(),
                      mean, se, std::exp(-h * exponent));
            }
    out.pass = pass;
    out.detail = pass ? "all transforms within 4 se" : detail.str();
    return out;
}

// --- 3./4. Decomposition identity and sigma mass ---------------------------

CriterionResult identity_decomposition(const Ctx&) {
    CriterionResult out{"identity-decomposition"};
    double worst = 0.0;
    for (int d : {1, 2, 3})
        for (double alpha : {0.5, 1.0, 1.5})
            for (double m : {0.5, 1.0, 2.0}) {
                const ModelParams pm{d, alpha, m};
                const ModelParams p0{d, alpha, 0.0};
                for (int i = 0; i < 200; ++i) {
                    const double r =
                        0.5 * std::pow(10.0, i / 199.0);  // [0.5, 5]
                    const double lhs =
                        jump_density(p0, r) - jump_density(pm, r);
                    worst = std::max(worst,
                                     std::fabs(lhs - sigma_density(pm, r)));
                }
            }
    out.pass = worst < 1e-8;
    out.detail = fmt("max |j0 - jm - sigma| = %.3g", worst);
    return out;
}

CriterionResult sigma_mass(const Ctx&) {
    CriterionResult out{"sigma-mass"};
    double worst = 0.0;
    for (int d : {1, 2, 3})
        for (double alpha : {0.5, 1.0, 1.5})
            for (double m : {0.5, 1.0, 2.0}) {
                const double mass = total_sigma_mass({d, alpha, m});
                worst = std::max(worst, std::fabs(mass - m) / m);
            }
    out.pass = worst < 1e-4;
    out.detail = fmt("max relative mass error = %.3g", worst);
    return out;
}

// --- 5. Small-r tail asymptotic -------------------------------------------

CriterionResult tail_asymptotic(const Ctx&) {
    CriterionResult out{"tail-asymptotic"};
    const ModelParams p{1, 1.0, 1.0};
    double lo = 1e300, hi = 0.0;
    for (double r : {1e-3, 2e-3, 3e-3, 5e-3, 1e-2}) {
        const double v = std::pow(r, p.alpha) * tail_mass(p, r);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out.pass = (hi - lo) / lo < 0.05;
    out.detail = fmt("r^alpha nu(B_r^c) in [%.5g, %.5g], spread %.2f%%", lo,
                     hi, 100.0 * (hi - lo) / lo);
    return out;
}

// --- 6./7. Exit-time MGF ---------------------------------------------------

CriterionResult mgf_exponent(const Ctx& ctx) {
    CriterionResult out{"mgf-exponent"};
    const ModelParams p{1, 1.0, 0.0};
    const double lambda_R = dirichlet_lambda_R(p, 1.0);
    const double lambda = 0.5 * lambda_R;
    const ProcessSpec proc = ProcessSpec::stable(p);
    McConfig mc;
    mc.n = 100000;
    mc.streams = 8;
    mc.workers = ctx.workers;
    mc.step = {1e-3, 15.0, false};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double x = 0.5; x < 0.951; x += 0.05) {
        mc.seed = {ctx.seed, static_cast<std::uint64_t>(600 + 10 * n)};
        const Estimate e =
            estimate_exit_mgf(proc, 1.0, {x, 0, 0}, lambda, lambda_R, mc);
        const double lx = std::log(1.0 - x), ly = std::log(e.value - 1.0);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.pass = slope >= 0.4 && slope <= 0.6;
    out.detail = fmt("regression slope %.3f (lambda = %.4f = lambda_R/2)",
                     slope, lambda);
    return out;
}

CriterionResult mgf_divergence(const Ctx& ctx) {
    CriterionResult out{"mgf-divergence"};
    const ModelParams p{1, 1.0, 0.0};
    const double lambda_R = dirichlet_lambda_R(p, 1.0);
    const double lambda = 1.1 * lambda_R;
    const ProcessSpec proc = ProcessSpec::stable(p);
    McConfig mc;
    // The doubling window tau in (t_max, 2 t_max) carries the divergent
    // mass but has probability ~exp(-lambda_R t_max): t_max large enough
    // for the growing term to dominate needs n ~ 1e6 to sample it.
    mc.n = 1000000;
    mc.streams = 8;
    mc.workers = ctx.workers;
    mc.seed = {ctx.seed, 700};
    mc.step = {2e-3, 6.0, false};
    const Estimate e1 =
        estimate_exit_mgf(proc, 1.0, {0, 0, 0}, lambda, lambda_R, mc);
    mc.step.t_max = 12.0;
    const Estimate e2 =
        estimate_exit_mgf(proc, 1.0, {0, 0, 0}, lambda, lambda_R, mc);
    const double growth = e2.value / e1.value;
    out.pass = e1.diverged && e2.diverged && growth >= 2.0;
    out.detail = fmt(
        "diverged=%d/%d partial sums %.3g -> %.3g (x%.2f) as t_max doubles",
        e1.diverged, e2.diverged, e1.value, e2.value, growth);
    return out;
}

// --- 8. Hitting / jump-kernel comparability -------------------------------

CriterionResult hitting_kernel(const Ctx& ctx) {
    CriterionResult out{"hitting-kernel"};
    bool pass = true;
    std::ostringstream detail;
    int cnt = 0;
    for (double m : {0.0, 1.0})
        for (double alpha : {0.5, 1.0, 1.5}) {
            const ModelParams p{1, alpha, m};
            const ProcessSpec proc = ProcessSpec::stable(p);
            McConfig mc;
            mc.streams = 8;
            mc.workers = ctx.workers;
            // For m > 0 and lambda < m the d=1 recurrent process reaches
            // the ball diffusively with decay rate sqrt(m^{2/a}-(m-l)^{2/a})
            // below the kernel rate m^{1/a}, so the ratio drifts with |x|.
            // lambda >= m keeps the single-jump route dominant, which is
            // the regime the kernel comparability describes.
            const double lambda = m > 0.0 ? 1.5 : 0.5;
            double lo = 1e300, hi = 0.0;
            for (double x : {1.2, 2.0, 3.0, 5.0}) {
                if (m > 0.0) {
                    // Far massive starting points hit rarely: shorter
                    // horizon, coarser steps, more paths.
                    mc.step = {2e-2, 6.0, false};
                    mc.n = x >= 3.0 ? 200000 : 50000;
                } else {
                    mc.step = {5e-3, 20.0, false};
                    mc.n = 20000;
                }
                mc.seed = {ctx.seed,
                           static_cast<std::uint64_t>(800 + 10 * cnt++)};
                const Estimate e =
                    estimate_hitting_laplace(proc, 1.0, {x, 0, 0}, lambda, mc);
                const double ratio = e.value / jump_density(p, x);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            const bool ok = lo > 0.0 && hi / lo < 10.0;
            pass = pass && ok;
            detail << fmt("m=%.0f a=%.1f spread %.2f; ", m, alpha,
                          lo > 0 ? hi / lo : -1.0);
        }
    out.pass = pass;
    out.detail = detail.str();
    return out;
}

// --- 9. Spectral solver ----------------------------------------------------

CriterionResult spectral_scaling(const Ctx&) {
    CriterionResult out{"spectral-scaling"};
    bool pass = true;
    std::ostringstream detail;
    for (double alpha : {0.5, 1.0, 1.5}) {
        const ModelParams p{1, alpha, 0.0};
        double lo = 1e300, hi = 0.0;
        for (double R : {0.5, 1.0, 2.0}) {
            const double v = dirichlet_lambda_R(p, R) * std::pow(R, alpha);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const bool scale_ok = (hi - lo) / lo < 0.02;
        // Gap inequality and grid-Cauchy convergence on the well solve.
        const WellSpec well{1.0, 5.0};
        double prev_l0 = 0.0, prev_diff = 0.0;
        bool cauchy_ok = true, gap_ok = true;
        double lambda_a = 0.0;
        for (int N : {256, 512, 1024, 2048}) {
            const SpectralData sd = spectral_solve_1d(p, well, 10.0, N);
            if (N == 2048) {
                lambda_a = sd.lambdaR(well.a);
                gap_ok = gap_inequality_check(well, -sd.lambda0(), lambda_a);
            }
            if (N > 256) {
                const double diff = std::fabs(sd.lambda0() - prev_l0);
                if (N > 512 && !(prev_diff >= 2.0 * diff)) cauchy_ok = false;
                prev_diff = diff;
            }
            prev_l0 = sd.lambda0();
        }
        pass = pass && scale_ok && cauchy_ok && gap_ok;
        detail << fmt("alpha=%.1f lR*R^a spread %.2f%% cauchy=%d gap=%d; ",
                      alpha, 100.0 * (hi - lo) / lo, cauchy_ok, gap_ok);
    }
    out.pass = pass;
    out.detail = detail.str();
    return out;
}

// --- 10. Profile containment + boundary exponent ---------------------------

CriterionResult profile_containment(const Ctx&) {
    CriterionResult out{"profile-containment"};
    const ModelParams p{1, 1.0, 0.0};
    const WellSpec well{1.0, 5.0};
    const SpectralData sd = spectral_solve_1d(p, well, 10.0, 2048);
    ProfileMeta meta{p, well, -sd.lambda0(), sd.lambdaR(well.a)};
    const double phi_a = sd.phi_at(well.a);
    std::vector<double> rs, ratios;
    for (std::size_t i = 0; i < sd.r_grid().size(); ++i) {
        const double r = sd.r_grid()[i];
        if (r > 5.0 * well.a) break;
        rs.push_back(r);
        ratios.push_back(sd.phi()[i] / phi_a);
    }
    ProfileBand band{meta, fit_profile_constant(meta, rs, ratios), 2.0};
    bool contained = true;
    double worst = 1.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double s = band.shape(rs[i]) * band.scale;
        worst = std::max({worst, ratios[i] / s, s / ratios[i]});
        if (ratios[i] < band.lower(rs[i]) || ratios[i] > band.upper(rs[i]))
            contained = false;
    }
    // Inside boundary exponent for alpha = 1 and 1.5.
    auto inside_slope = [&](const SpectralData& s, double a) {
        std::vector<double> r, phi;
        for (std::size_t i = 0; i < s.r_grid().size(); ++i) {
            const double ri = s.r_grid()[i];
            if (ri >= a - 0.2 && ri < a - 1e-9) {
                r.push_back(ri);
                phi.push_back(s.phi()[i]);
            }
        }
        return boundary_exponent(r, phi, a, s.phi_at(a));
    };
    const double slope1 = inside_slope(sd, well.a);
    const SpectralData sd15 =
        spectral_solve_1d({1, 1.5, 0.0}, well, 10.0, 2048);
    const double slope15 = inside_slope(sd15, well.a);
    const bool slopes_ok =
        slope1 >= 0.4 && slope1 <= 0.6 && slope15 >= 0.65 && slope15 <= 0.85;
    out.pass = contained && slopes_ok;
    out.detail =
        fmt("containment worst factor %.2f (slack 2.0), exponents %.3f "
            "(alpha=1), %.3f (alpha=1.5)",
            worst, slope1, slope15);
    return out;
}

// --- 11. Moments -----------------------------------------------------------

CriterionResult moments(const Ctx&) {
    CriterionResult out{"moments"};
    const WellSpec well{1.0, 5.0};
    const ModelParams p0{1, 1.0, 0.0};
    const SpectralData sd = spectral_solve_1d(p0, well, 10.0, 1024);
    ProfileMeta meta0{p0, well, -sd.lambda0(), sd.lambdaR(well.a)};
    ProfileMeta meta1 = meta0;
    meta1.model.m = 1.0;
    const Interval phi_a = phi_at_a(meta0);
    bool flags_ok = true;
    for (double pe : {1.0, 2.0, 2.9, 3.0, 3.5}) {
        const bool flag0 = moment_lambda_p(meta0, phi_a, pe).diverged;
        if (flag0 != (pe >= 3.0)) flags_ok = false;
        if (moment_lambda_p(meta1, phi_a, pe).diverged) flags_ok = false;
    }
    // Lambda_1 from the spectral table directly (d=1: 2 int_0^inf r phi^2).
    double direct = 0.0;
    const auto& r = sd.r_grid();
    const auto& phi = sd.phi();
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double dr = r[i + 1] - r[i];
        direct += dr * (r[i] * phi[i] * phi[i] +
                        r[i + 1] * phi[i + 1] * phi[i + 1]);
    }
    const Interval bounds = moment_bounds(meta0, phi_a, 1.0, 1.0);
    const bool contains =
        direct >= bounds.lo / 5.0 && direct <= bounds.hi * 5.0;
    out.pass = flags_ok && contains;
    out.detail = fmt(
        "flags_ok=%d Lambda_1 direct %.4f vs bounds [%.4f, %.4f] (5x slack)",
        flags_ok, direct, bounds.lo, bounds.hi);
    return out;
}

// --- 12. Symmetry ----------------------------------------------------------

CriterionResult symmetry(const Ctx& ctx) {
    CriterionResult out{"symmetry"};
    const ModelParams p{2, 1.0, 0.0};
    // |lambda0| is only a reference weight here: rotation invariance of the
    // estimate does not depend on it, so a nominal in-range value works for
    // a d=2 model where no 1D spectral solve applies.
    ProfileMeta meta{p, {1.0, 5.0}, 4.5, 2.0};
    McConfig mc;
    mc.n = 20000;
    mc.streams = 8;
    mc.workers = ctx.workers;
    mc.seed = {ctx.seed, 1200};
    mc.step = {1e-3, 20.0, false};
    const SymmetryReport rep =
        check_radial_symmetry(ProcessSpec::stable(p), meta, 0.5, 8, mc);
    // Reflection pair via mirrored points is included among the 8 rotations.
    out.pass = rep.max_z < 3.0;
    out.detail = fmt("max pairwise z = %.2f over 8 rotated points", rep.max_z);
    return out;
}

// --- 13. Determinism -------------------------------------------------------

std::string survival_csv(std::uint64_t seed, int workers) {
    const ModelParams p{1, 1.0, 0.0};
    const ProcessSpec proc = ProcessSpec::stable(p);
    McConfig mc;
    mc.n = 20000;
    mc.streams = 8;
    mc.workers = workers;
    mc.seed = {seed, 0};
    mc.step = {1e-3, 5.0, false};
    std::ostringstream csv;
    csv << "x,value,stderr,n,truncated_fraction,tail_bound,diverged\n";
    for (double x : {0.0, 0.5, 0.9}) {
        const Estimate e = estimate_survival(proc, 1.0, {x, 0, 0}, 1.0, mc);
        csv << fmt("%.17g,%.17g,%.17g,%ld,%.17g,%.17g,%d\n", x, e.value,
                   e.stderr_, e.n, e.truncated_fraction, e.tail_bound,
                   e.diverged);
    }
    return csv.str();
}

CriterionResult determinism(const Ctx& ctx) {
    CriterionResult out{"determinism"};
    const std::string base = survival_csv(ctx.seed, 1);
    bool pass = true;
    for (int workers : {2, 5})
        if (survival_csv(ctx.seed, workers) != base) pass = false;
    if (survival_csv(ctx.seed, 1) != base) pass = false;      // rerun
    if (survival_csv(ctx.seed + 1, 1) == base) pass = false;  // seed matters
    out.pass = pass;
    out.detail = pass ? "byte-identical across worker counts 1/2/5 and reruns"
                      : "output differs across worker counts or reruns";
    return out;
}

using CriterionFn = CriterionResult (*)(const Ctx&);

const std::vector<std::pair<std::string, CriterionFn>>& registry() {
    static const std::vector<std::pair<std::string, CriterionFn>> r = {
        {"brownian-end-to-end", brownian_end_to_end},
        {"sampler-laws", sampler_laws},
        {"identity-decomposition", identity_decomposition},
        {"sigma-mass", sigma_mass},
        {"tail-asymptotic", tail_asymptotic},
        {"mgf-exponent", mgf_exponent},
        {"mgf-divergence", mgf_divergence},
        {"hitting-kernel", hitting_kernel},
        {"spectral-scaling", spectral_scaling},
        {"profile-containment", profile_containment},
        {"moments", moments},
        {"symmetry", symmetry},
        {"determinism", determinism},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

std::vector<CriterionResult> run_verify(const std::string& suite,
                                        std::uint64_t seed, int workers) {
    Ctx ctx{seed, workers};
    std::vector<CriterionResult> results;
    bool found = false;
    for (const auto& [name, fn] : registry()) {
        if (suite != "all" && suite != name) continue;
        found = true;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn(ctx);
        } catch (const std::exception& e) {
            r.name = name;
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        results.push_back(std::move(r));
    }
    if (!found)
        throw std::invalid_argument("unknown verify suite: " + suite);
    return results;
}

}  // namespace fkwell
