#include "fkwell/stopping.hpp"

#include <cmath>
#include <stdexcept>

namespace fkwell {

Estimate finalize(const Accumulator& acc) {
    Estimate e;
    e.n = acc.n;
    if (acc.n == 0) return e;
    e.value = acc.sum / acc.n;
    if (acc.n > 1) {
        const double var =
            (acc.sum_sq - acc.sum * acc.sum / acc.n) / (acc.n - 1);
        e.stderr_ = std::sqrt(std::max(var, 0.0) / acc.n);
    }
    e.truncated_fraction = static_cast<double>(acc.truncated) / acc.n;
    e.heavy_tail = acc.sum > 0.0 && acc.max_weight > 0.1 * acc.sum;
    return e;
}

Estimate estimate_survival(const ProcessSpec& proc, double R, const Point& x,
                           double t, const McConfig& mc) {
    if (!(t <= mc.step.t_max))
        throw std::invalid_argument("estimate_survival: t must be <= t_max");
    if (t == 0.0) {
        Estimate e;
        e.value = 1.0;
        e.n = mc.n;
        return e;
    }
    const Region region = Region::exit_ball(R);
    const Accumulator acc =
        run_paths(mc.n, mc.streams, mc.seed, mc.workers, [&](Rng rng) {
            const StoppedSample s = walk_until(proc, x, region, mc.step, rng);
            PathResult r;
            r.weight = (s.truncated || s.tau_hat > t) ? 1.0 : 0.0;
            r.truncated = s.truncated;
            return r;
        });
    Estimate e = finalize(acc);
    // Bernoulli stderr.
    e.stderr_ = std::sqrt(std::max(e.value * (1.0 - e.value), 0.0) / acc.n);
    return e;
}

Estimate estimate_exit_mgf(const ProcessSpec& proc, double R, const Point& x,
                           double lambda, double lambda_R_hat,
                           const McConfig& mc) {
    if (lambda < 0.0)
        throw std::domain_error("estimate_exit_mgf: lambda must be >= 0");
    const Region region = Region::exit_ball(R);
    struct MgfAcc {
        Accumulator base;
        double truncated_weight = 0.0;
        void merge(const MgfAcc& o) {
            base.merge(o.base);
            truncated_weight += o.truncated_weight;
        }
    };
    const MgfAcc acc = run_reduce<MgfAcc>(
        mc.n, mc.streams, mc.seed, mc.workers, [&](Rng& rng, MgfAcc& a) {
            const StoppedSample s = walk_until(proc, x, region, mc.step, rng);
            PathResult r;
            r.weight = std::exp(lambda * s.tau_hat);
            r.truncated = s.truncated;
            if (s.truncated) a.truncated_weight += r.weight;
            a.base.add(r);
        });
    Estimate e = finalize(acc.base);
    e.diverged = lambda >= lambda_R_hat;
    if (!e.diverged) {
        e.tail_bound = e.truncated_fraction *
                       std::exp((lambda - lambda_R_hat) * mc.step.t_max) /
                       (lambda_R_hat - lambda);
        // Truncated mass dominating the converged part also signals blow-up.
        if (acc.truncated_weight > 0.5 * acc.base.sum &&
            e.truncated_fraction > 0.01)
            e.diverged = true;
    }
    return e;
}

Estimate estimate_hitting_laplace(const ProcessSpec& proc, double R,
                                  const Point& x, double lambda,
                                  const McConfig& mc) {
    if (norm(x, proc.d) < R) {
        Estimate e;  // already inside: T_R = 0
        e.value = 1.0;
        e.n = mc.n;
        return e;
    }
    const Region region = Region::hit_ball(R);
    const Accumulator acc =
        run_paths(mc.n, mc.streams, mc.seed, mc.workers, [&](Rng rng) {
            const StoppedSample s = walk_until(proc, x, region, mc.step, rng);
            PathResult r;
            r.weight = s.truncated ? 0.0 : std::exp(-lambda * s.tau_hat);
            r.truncated = s.truncated;
            return r;
        });
    Estimate e = finalize(acc);
    e.tail_bound = e.truncated_fraction * std::exp(-lambda * mc.step.t_max);
    return e;
}

Estimate estimate_mean_exit(const ProcessSpec& proc, double R, const Point& x,
                            const McConfig& mc) {
    const Region region = Region::exit_ball(R);
    const Accumulator acc =
        run_paths(mc.n, mc.streams, mc.seed, mc.workers, [&](Rng rng) {
            const StoppedSample s = walk_until(proc, x, region, mc.step, rng);
            return PathResult{s.tau_hat, s.truncated};
        });
    return finalize(acc);
}

Estimate exit_jump_containment(const ProcessSpec& proc, double R,
                               const Point& x, double weight_exponent,
                               double factor, const McConfig& mc) {
    if (!(factor > 1.0))
        throw std::domain_error("exit_jump_containment: factor must be > 1");
    const Region region = Region::exit_ball(R);
    struct RatioAcc {
        double num = 0.0, den = 0.0, num_sq = 0.0, den_sq = 0.0, cross = 0.0;
        long n = 0, truncated = 0;
        void merge(const RatioAcc& o) {
            num += o.num;
            den += o.den;
            num_sq += o.num_sq;
            den_sq += o.den_sq;
            cross += o.cross;
            n += o.n;
            truncated += o.truncated;
        }
    };
    const RatioAcc a = run_reduce<RatioAcc>(
        mc.n, mc.streams, mc.seed, mc.workers, [&](Rng& rng, RatioAcc& acc) {
            const StoppedSample s = walk_until(proc, x, region, mc.step, rng);
            const double w = std::exp(weight_exponent * s.tau_hat);
            const double r_exit = norm(s.x_after, proc.d);
            const double wn =
                (!s.truncated && r_exit >= R && r_exit <= factor * R) ? w : 0.0;
            acc.num += wn;
            acc.den += w;
            acc.num_sq += wn * wn;
            acc.den_sq += w * w;
            acc.cross += wn * w;
            ++acc.n;
            if (s.truncated) ++acc.truncated;
        });
    Estimate e;
    e.n = a.n;
    e.truncated_fraction = static_cast<double>(a.truncated) / a.n;
    if (a.den == 0.0) return e;
    const double ratio = a.num / a.den;
    e.value = ratio;
    // Delta method: var(ratio) ~ var(wn - ratio * w) / (mean w)^2 / n.
    const double mn = a.num / a.n, md = a.den / a.n;
    const double var_n = a.num_sq / a.n - mn * mn;
    const double var_d = a.den_sq / a.n - md * md;
    const double cov = a.cross / a.n - mn * md;
    const double v = (var_n - 2.0 * ratio * cov + ratio * ratio * var_d) /
                     (md * md) / a.n;
    e.stderr_ = std::sqrt(std::max(v, 0.0));
    return e;
}

}  // namespace fkwell
