#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fkwell/specfun.hpp"

using namespace fkwell;

TEST_CASE("gamma function reference values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) ==
          doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    // Recurrence z Gamma(z) = Gamma(z+1) across the reflection branch.
    for (double z : {0.1, 0.3, 1.7, 3.2, 7.5})
        CHECK(z * gamma_fn(z) ==
              doctest::Approx(gamma_fn(z + 1.0)).epsilon(1e-13));
    // Reflection through a negative argument.
    CHECK(gamma_fn(-0.5) ==
          doctest::Approx(-2.0 * std::sqrt(std::acos(-1.0))).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.0), std::domain_error);
}

TEST_CASE("log gamma for large arguments") {
    // Stirling cross-check at z = 100: ln Gamma(100) = 359.1342053695754.
    CHECK(log_gamma(100.0) ==
          doctest::Approx(359.1342053695754).epsilon(1e-13));
    CHECK(std::exp(log_gamma(10.0)) ==
          doctest::Approx(362880.0).epsilon(1e-12));
}

TEST_CASE("beta function") {
    CHECK(beta_fn(3.0, 1.5) == doctest::Approx(16.0 / 105.0).epsilon(1e-13));
    CHECK(beta_fn(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // Symmetry.
    CHECK(beta_fn(2.3, 4.1) == doctest::Approx(beta_fn(4.1, 2.3)));
}

TEST_CASE("modified Bessel K reference values") {
    // Frozen from an independent high-precision evaluation.
    CHECK(bessel_k(0.75, 2.0) ==
          doctest::Approx(0.12790297862917903).epsilon(1e-12));
    CHECK(bessel_k(0.5, 1.0) ==
          doctest::Approx(0.46106850444789456).epsilon(1e-12));
    // Closed form K_{1/2}(z) = sqrt(pi/(2 z)) e^{-z}.
    for (double z : {0.1, 1.0, 10.0, 100.0}) {
        const double exact =
            std::sqrt(std::acos(-1.0) / (2.0 * z)) * std::exp(-z);
        CHECK(bessel_k(0.5, z) == doctest::Approx(exact).epsilon(1e-11));
        CHECK(log_bessel_k(0.5, z) ==
              doctest::Approx(std::log(exact)).epsilon(1e-11));
    }
    // Log-domain evaluation stays finite far beyond double underflow.
    CHECK(std::isfinite(log_bessel_k(1.0, 800.0)));
    CHECK(log_bessel_k(0.5, 800.0) ==
          doctest::Approx(0.5 * std::log(std::acos(-1.0) / 1600.0) - 800.0)
              .epsilon(1e-10));
}

TEST_CASE("modified Bessel K recurrence") {
    // K_{v+1}(z) = K_{v-1}(z) + (2v/z) K_v(z).
    for (double z : {0.5, 2.0, 8.0, 40.0, 120.0}) {
        const double lhs = bessel_k(1.75, z);
        const double rhs =
            bessel_k(0.25, z) + (2.0 * 0.75 / z) * bessel_k(0.75, z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("modified Bessel I and J series") {
    CHECK(bessel_i(0.0, 1.0) ==
          doctest::Approx(1.2660658777520083).epsilon(1e-13));
    CHECK(bessel_i(0.5, 1.0) ==
          doctest::Approx(0.9376748882454876).epsilon(1e-13));
    // J_{1/2}(z) = sqrt(2/(pi z)) sin z.
    for (double z : {0.3, 1.0, 5.0}) {
        const double exact =
            std::sqrt(2.0 / (std::acos(-1.0) * z)) * std::sin(z);
        CHECK(bessel_j(0.5, z) == doctest::Approx(exact).epsilon(1e-12));
    }
}
