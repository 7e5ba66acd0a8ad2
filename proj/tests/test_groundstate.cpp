#include <cmath>
#include <vector>

#include "doctest.h"
#include "fkwell/groundstate.hpp"
#include "fkwell/levy.hpp"
#include "fkwell/oracles.hpp"

using namespace fkwell;

namespace {

ProfileMeta reference_meta() {
    // m=0, alpha=1, a=1, v=5 with eigenvalues frozen from converged
    // spectral runs.
    return ProfileMeta{{1, 1.0, 0.0}, {1.0, 5.0}, 4.027, 1.1577};
}

}  // namespace

TEST_CASE("profile shape is continuous and normalized at the boundary") {
    const ProfileMeta meta = reference_meta();
    ProfileBand band{meta};
    CHECK(band.shape(meta.well.a) == doctest::Approx(1.0).epsilon(1e-9));
    // Both branches tend to 1 at the boundary; the inside branch approaches
    // like dist^{alpha/2}, so the tolerance scales with sqrt of the offset.
    CHECK(band.shape(meta.well.a - 1e-7) ==
          doctest::Approx(band.shape(meta.well.a + 1e-7)).epsilon(1e-2));
    // Outside branch follows the normalized jump density.
    const ModelParams p = meta.model;
    CHECK(band.shape(3.0) ==
          doctest::Approx(jump_density(p, 3.0) / jump_density(p, 1.0))
              .epsilon(1e-10));
    // Inside branch exceeds 1 and is largest at the origin.
    CHECK(band.shape(0.0) >= band.shape(0.5));
    CHECK(band.shape(0.5) >= 1.0);
    // Band ordering.
    for (double r : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        CHECK(band.lower(r) < band.upper(r));
        CHECK(band.lower(r) <= band.shape(r) * band.scale);
    }
}

TEST_CASE("fit_profile_constant recovers a known multiple") {
    const ProfileMeta meta = reference_meta();
    ProfileBand band{meta};
    std::vector<double> r, ratio;
    for (double x = 0.1; x < 3.0; x += 0.3) {
        r.push_back(x);
        ratio.push_back(2.5 * band.shape(x));
    }
    CHECK(fit_profile_constant(meta, r, ratio) ==
          doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("boundary exponent recovers a synthetic power law") {
    // The fit regresses log(phi/phi_a - 1) on log(a - r): a profile of the
    // form phi_a (1 + c (a - r)^q) has exponent exactly q.
    std::vector<double> r, phi;
    for (double x = 0.8; x < 0.999; x += 0.01) {
        r.push_back(x);
        phi.push_back(3.0 * (1.0 + 2.0 * std::pow(1.0 - x, 0.5)));
    }
    CHECK(boundary_exponent(r, phi, 1.0, 3.0) ==
          doctest::Approx(0.5).epsilon(1e-6));
    for (std::size_t i = 0; i < r.size(); ++i)
        phi[i] = 0.7 * (1.0 + 0.3 * std::pow(1.0 - r[i], 0.75));
    CHECK(boundary_exponent(r, phi, 1.0, 0.7) ==
          doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("gap inequality check") {
    CHECK(gap_inequality_check({1.0, 5.0}, 4.027, 1.1577));
    // Fails when the gap inequality v - |l0| < lambda_a is violated.
    CHECK_FALSE(gap_inequality_check({1.0, 5.0}, 3.0, 1.1577));
}

TEST_CASE("gap ratio") {
    const ProfileMeta meta = reference_meta();
    const double expect = (5.0 - 4.027) / (1.1577 - 5.0 + 4.027);
    CHECK(meta.gap_ratio() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("level set radius") {
    // Potential equal to the indicator well: r_gamma = a for any
    // gamma in (0, v).
    RadialPotential well;
    well.v_of_r = [](double r) { return r <= 1.0 ? 5.0 : 0.0; };
    well.v0 = 5.0;
    CHECK(level_set_radius(well, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
    // Smooth decaying potential 2 e^{-r}: v(r) = gamma at r = ln(2/gamma).
    RadialPotential decay;
    decay.v_of_r = [](double r) { return 2.0 * std::exp(-r); };
    decay.v0 = 2.0;
    CHECK(level_set_radius(decay, 2.0 * std::exp(-1.0)) ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("moment divergence threshold p* = d + 2 alpha") {
    CHECK(p_star({1, 1.0, 0.0}) == doctest::Approx(3.0));
    CHECK(p_star({3, 0.5, 0.0}) == doctest::Approx(4.0));
    const ProfileMeta meta = reference_meta();
    const Interval phi_a = phi_at_a(meta);
    CHECK(phi_a.lo > 0.0);
    CHECK(phi_a.lo <= phi_a.hi);
    CHECK(moment_lambda_p(meta, phi_a, 3.0).diverged);
    CHECK(moment_lambda_p(meta, phi_a, 3.5).diverged);
    CHECK_FALSE(moment_lambda_p(meta, phi_a, 2.0).diverged);
    // Massive model: all moments finite.
    ProfileMeta massive = meta;
    massive.model.m = 1.0;
    CHECK_FALSE(moment_lambda_p(massive, phi_a, 5.0).diverged);
}

TEST_CASE("moment bounds are ordered and positive") {
    const ProfileMeta meta = reference_meta();
    const Interval phi_a = phi_at_a(meta);
    const Interval b1 = moment_bounds(meta, phi_a, 1.0, 1.0);
    const Interval b2 = moment_bounds(meta, phi_a, 2.0, 1.0);
    CHECK(b1.lo > 0.0);
    CHECK(b1.lo < b1.hi);
    CHECK(b2.lo > 0.0);
    CHECK(b2.lo < b2.hi);
}

TEST_CASE("meta validation") {
    ProfileMeta bad = reference_meta();
    bad.lambda0_abs = 6.0;  // deeper than the well
    CHECK_THROWS(bad.validate());
}
