#include <doctest.h>

#include <cmath>
#include <random>

#include "fanoeit/errors.hpp"
#include "fanoeit/units.hpp"

using namespace fanoeit;

TEST_CASE("energy conversion reproduces the tabulated equivalences") {
    const auto e = units::convert_energy(0.1);
    CHECK(e.ev == doctest::Approx(2.7211386245988).epsilon(1e-12));
    CHECK(e.ev == doctest::Approx(2.72).epsilon(1e-3));  // quoted rounding

    const auto g = units::convert_energy(1e-9);
    CHECK(g.hz == doctest::Approx(6.5796839204e6).epsilon(1e-9));
    CHECK(g.hz == doctest::Approx(6.6e6).epsilon(2e-2));  // quoted "about 6.6 MHz"

    const auto zero = units::convert_energy(0.0);
    CHECK(zero.ev == 0.0);
    CHECK(zero.hz == 0.0);

    CHECK_THROWS_AS(units::convert_energy(std::nan("")), invalid_input);
    CHECK_THROWS_AS(units::convert_energy(INFINITY), invalid_input);
}

TEST_CASE("density conversion against an independently cubed Bohr radius") {
    // Bohr radius in cm, cubed in the test itself so the expected value does
    // not come from the library's own constant folding.
    const double bohr_cm = 0.529177210903e-8;
    const double bohr3 = bohr_cm * bohr_cm * bohr_cm;

    CHECK(units::convert_density(0.67e12) ==
          doctest::Approx(0.67e12 * bohr3).epsilon(1e-13));
    CHECK(units::convert_density(0.67e12) == doctest::Approx(9.93e-14).epsilon(1e-3));
    CHECK(units::convert_density(0.0) == 0.0);
    CHECK(units::convert_density(1.0 / bohr3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(units::convert_density(-1.0), invalid_input);
}

TEST_CASE("conversions are linear and round-trip to 12 significant digits") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mag(-12.0, 12.0);
    std::uniform_real_distribution<double> scale_d(0.0, 10.0);
    for (int k = 0; k < 200; ++k) {
        const double x = std::pow(10.0, mag(rng));
        const double a = scale_d(rng);

        const auto ex = units::convert_energy(x);
        const auto eax = units::convert_energy(a * x);
        CHECK(eax.ev == doctest::Approx(a * ex.ev).epsilon(1e-12));
        CHECK(eax.hz == doctest::Approx(a * ex.hz).epsilon(1e-12));

        CHECK(units::convert_density(a * x) ==
              doctest::Approx(a * units::convert_density(x)).epsilon(1e-12));

        // a.u. -> lab units -> a.u.
        CHECK(units::convert_density(units::density_to_cm3(x)) ==
              doctest::Approx(x).epsilon(1e-12));
        CHECK(units::cm_to_au_length(units::au_length_to_cm(x)) ==
              doctest::Approx(x).epsilon(1e-12));
        CHECK(units::convert_energy(x).ev / units::UnitContext{}.hartree_to_ev ==
              doctest::Approx(x).epsilon(1e-12));
    }
}
