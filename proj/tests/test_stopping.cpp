#include <cmath>

#include "doctest.h"
#include "fkwell/mc.hpp"
#include "fkwell/oracles.hpp"
#include "fkwell/stopping.hpp"

using namespace fkwell;

namespace {

McConfig quick(std::uint64_t stream, long n = 20000) {
    McConfig mc;
    mc.n = n;
    mc.streams = 4;
    mc.workers = 2;
    mc.seed = {0xfeedu, stream};
    mc.step = {1e-3, 20.0, false};
    return mc;
}

}  // namespace

TEST_CASE("run_paths is worker-invariant") {
    auto fn = [](Rng rng) {
        return PathResult{rng.uniform(), false};
    };
    const Accumulator a = run_paths(10000, 4, {1, 0}, 1, fn);
    const Accumulator b = run_paths(10000, 4, {1, 0}, 3, fn);
    CHECK(a.sum == b.sum);
    CHECK(a.sum_sq == b.sum_sq);
    CHECK(a.n == b.n);
}

TEST_CASE("brownian mean exit time matches (R^2 - x^2)/d") {
    const ProcessSpec proc = ProcessSpec::brownian_motion(1);
    McConfig mc = quick(1);
    const Estimate e = estimate_mean_exit(proc, 1.0, {0.5, 0, 0}, mc);
    CHECK(e.value ==
          doctest::Approx(1.0 - 0.25).epsilon(0.05));  // E tau = R^2 - x^2
    CHECK(e.stderr_ > 0.0);
    CHECK(e.n == 20000);
}

TEST_CASE("brownian exit mgf matches the cosine closed form") {
    const ProcessSpec proc = ProcessSpec::brownian_motion(1);
    McConfig mc = quick(2);
    const double lambda = 0.3;
    const double lambda_R = std::acos(-1.0) * std::acos(-1.0) / 8.0;
    const Estimate e =
        estimate_exit_mgf(proc, 1.0, {0.5, 0, 0}, lambda, lambda_R, mc);
    const double exact = brownian_exit_mgf(1.0, 0.5, lambda);
    CHECK_FALSE(e.diverged);
    CHECK(e.value == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("brownian hitting laplace matches the exponential closed form") {
    const ProcessSpec proc = ProcessSpec::brownian_motion(1);
    McConfig mc = quick(3, 10000);
    mc.step.t_max = 200.0;
    mc.step.h = 5e-3;
    const double lambda = 0.5;
    // Distance from start 2 to the ball of radius 1: b = 1.
    const Estimate e =
        estimate_hitting_laplace(proc, 1.0, {2.0, 0, 0}, lambda, mc);
    const double exact = brownian_hit_laplace(1.0, lambda);
    CHECK(std::fabs(e.value - exact) <
          0.05 * exact + 3.0 * e.stderr_ + e.tail_bound);
}

TEST_CASE("survival estimate is a probability with Bernoulli error") {
    const ProcessSpec proc = ProcessSpec::stable({1, 1.0, 0.0});
    McConfig mc = quick(4);
    mc.step.t_max = 2.0;
    const Estimate e = estimate_survival(proc, 1.0, {0, 0, 0}, 1.0, mc);
    CHECK(e.value >= 0.0);
    CHECK(e.value <= 1.0);
    CHECK(e.stderr_ ==
          doctest::Approx(std::sqrt(e.value * (1.0 - e.value) / e.n))
              .epsilon(1e-9));
}

TEST_CASE("mgf divergence flag trips above the threshold") {
    const ProcessSpec proc = ProcessSpec::stable({1, 1.0, 0.0});
    McConfig mc = quick(5, 2000);
    mc.step.t_max = 5.0;
    const double lambda_R = 1.157;
    const Estimate e =
        estimate_exit_mgf(proc, 1.0, {0, 0, 0}, 1.5 * lambda_R, lambda_R, mc);
    CHECK(e.diverged);
}

TEST_CASE("exit jump containment ratio is monotone in the factor") {
    const ProcessSpec proc = ProcessSpec::stable({1, 1.0, 0.0});
    McConfig mc = quick(6, 5000);
    mc.step.t_max = 10.0;
    const Estimate wide =
        exit_jump_containment(proc, 1.0, {0.5, 0, 0}, 0.0, 1e6, mc);
    const Estimate narrow =
        exit_jump_containment(proc, 1.0, {0.5, 0, 0}, 0.0, 2.0, mc);
    CHECK(wide.value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(narrow.value <= wide.value);
    CHECK(narrow.value > 0.5);  // most exits land within 2R for alpha = 1
    CHECK_THROWS_AS(
        exit_jump_containment(proc, 1.0, {0.5, 0, 0}, 0.0, 1.0, mc),
        std::domain_error);
}
