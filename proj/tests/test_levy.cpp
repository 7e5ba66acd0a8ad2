#include <cmath>

#include "doctest.h"
#include "fkwell/levy.hpp"

using namespace fkwell;

TEST_CASE("massless jump density closed forms") {
    // d = 1, alpha = 1 (Cauchy): j(r) = 1/(pi r^2).
    const ModelParams cauchy{1, 1.0, 0.0};
    for (double r : {0.2, 1.0, 3.0})
        CHECK(jump_density(cauchy, r) ==
              doctest::Approx(1.0 / (std::acos(-1.0) * r * r))
                  .epsilon(1e-12));
    // Scaling j(r) = j(1) r^{-d-alpha} in general.
    const ModelParams p{3, 1.5, 0.0};
    const double j1 = jump_density(p, 1.0);
    for (double r : {0.5, 2.0, 7.0})
        CHECK(jump_density(p, r) ==
              doctest::Approx(j1 * std::pow(r, -4.5)).epsilon(1e-12));
}

TEST_CASE("log jump density agrees with direct evaluation") {
    const ModelParams p{2, 0.7, 1.3};
    for (double r : {0.1, 1.0, 5.0})
        CHECK(log_jump_density(p, r) ==
              doctest::Approx(std::log(jump_density(p, r))).epsilon(1e-10));
    // Log form stays finite deep in the exponential tail.
    CHECK(std::isfinite(log_jump_density(p, 500.0)));
}

TEST_CASE("kernel decomposition j0 = jm + sigma pointwise") {
    for (double alpha : {0.5, 1.0, 1.5}) {
        const ModelParams pm{1, alpha, 1.0};
        const ModelParams p0{1, alpha, 0.0};
        for (double r : {0.5, 1.0, 2.0, 4.0}) {
            const double lhs = jump_density(p0, r) - jump_density(pm, r);
            CHECK(sigma_density(pm, r) ==
                  doctest::Approx(lhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("sigma density is nonnegative and integrates to the mass") {
    const ModelParams p{1, 1.0, 1.0};
    for (double r : {0.01, 0.1, 1.0, 10.0})
        CHECK(sigma_density(p, r) >= 0.0);
    CHECK(total_sigma_mass(p) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(total_sigma_mass({3, 1.5, 2.0}) ==
          doctest::Approx(2.0).epsilon(1e-5));
    CHECK(total_sigma_mass({2, 0.5, 0.25}) ==
          doctest::Approx(0.25).epsilon(1e-5));
}

TEST_CASE("massless tail mass closed form") {
    // nu(B_r^c) = area(S^{d-1}) A r^{-alpha} / alpha; cross-check by ratio.
    const ModelParams p{1, 1.0, 0.0};
    CHECK(tail_mass(p, 2.0) ==
          doctest::Approx(0.5 * tail_mass(p, 1.0)).epsilon(1e-10));
    // Massive tail decays strictly faster than massless.
    const ModelParams pm{1, 1.0, 1.0};
    CHECK(tail_mass(pm, 5.0) < tail_mass(p, 5.0));
}

TEST_CASE("small-r massive tail matches the massless power law") {
    const ModelParams pm{1, 1.0, 1.0};
    const ModelParams p0{1, 1.0, 0.0};
    CHECK(tail_mass(pm, 1e-3) ==
          doctest::Approx(tail_mass(p0, 1e-3)).epsilon(0.02));
}

TEST_CASE("rate function brackets and monotone structure") {
    const ModelParams p0{1, 1.0, 0.0};
    const Interval i = rate_function(p0, 4.0);
    CHECK(i.lo == doctest::Approx(2.0));  // r^{alpha/2} exactly, massless
    CHECK(i.hi == doctest::Approx(2.0));
    const ModelParams pm{1, 1.0, 1.0};
    const Interval j = rate_function(pm, 0.5);
    CHECK(j.lo > 0.0);
    CHECK(j.lo <= j.hi);
}

TEST_CASE("recurrence classification") {
    CHECK(classify_recurrence({1, 1.0, 0.0}) == Recurrence::Recurrent);
    CHECK(classify_recurrence({1, 0.5, 0.0}) == Recurrence::Transient);
    CHECK(classify_recurrence({3, 1.0, 0.0}) == Recurrence::Transient);
    CHECK(classify_recurrence({1, 0.5, 1.0}) == Recurrence::Recurrent);
    CHECK(classify_recurrence({2, 1.5, 2.0}) == Recurrence::Recurrent);
    CHECK(classify_recurrence({3, 1.5, 2.0}) == Recurrence::Transient);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(ModelParams{0, 1.0, 0.0}.validate());
    CHECK_THROWS(ModelParams{1, 2.0, 0.0}.validate());
    CHECK_THROWS(ModelParams{1, 0.0, 0.0}.validate());
    CHECK_THROWS(ModelParams{1, 1.0, -1.0}.validate());
    CHECK_NOTHROW(ModelParams{3, 1.9, 4.0}.validate());
}
