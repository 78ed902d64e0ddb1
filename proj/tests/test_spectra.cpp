#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rqmc/spectra.hpp"
#include "support/oracles.hpp"
#include "support/reference_values.hpp"

using namespace rqmc;

namespace {
const PhysicalParams nat = natural_params();
}

TEST_CASE("kg oscillator energies") {
    CHECK(kg_oscillator_energy(0, nat, Branch::particle) ==
          Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(kg_oscillator_energy(0, nat, Branch::antiparticle) ==
          Catch::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(kg_oscillator_energy(12, nat, Branch::particle) ==
          Catch::Approx(std::sqrt(26.0)).epsilon(1e-14));
    CHECK_THROWS_AS(kg_oscillator_energy(-1, nat, Branch::particle), std::invalid_argument);
}

TEST_CASE("kg box energies") {
    const double pi = 3.14159265358979323846;
    CHECK(kg_box_energy(1, nat, Branch::particle) ==
          Catch::Approx(std::sqrt(1.0 + pi * pi)).epsilon(1e-14));
    CHECK(kg_box_energy(2, nat, Branch::particle) ==
          Catch::Approx(std::sqrt(1.0 + 4.0 * pi * pi)).epsilon(1e-14));
    CHECK(kg_box_energy(1, nat, Branch::antiparticle) ==
          Catch::Approx(-std::sqrt(1.0 + pi * pi)).epsilon(1e-14));
    CHECK_THROWS_AS(kg_box_energy(0, nat, Branch::particle), std::invalid_argument);
}

TEST_CASE("dirac oscillator energies") {
    CHECK(dirac_oscillator_energy(0, nat, Branch::particle) == Catch::Approx(1.0));
    CHECK(dirac_oscillator_energy(1, nat, Branch::antiparticle) ==
          Catch::Approx(-std::sqrt(3.0)).epsilon(1e-14));
    CHECK(dirac_oscillator_energy(4, nat, Branch::particle) == Catch::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("energies sit at or above the rest energy and increase with n") {
    for (System system : {System::kg_oscillator, System::kg_box, System::dirac_oscillator,
                          System::dirac_box}) {
        double prev = 0.0;
        for (int n = min_quantum_number(system); n < min_quantum_number(system) + 12; ++n) {
            const double e = std::abs(state_energy({system, n, Branch::particle}, nat));
            CHECK(e >= nat.rest_energy() - 1e-14);
            if (n > min_quantum_number(system)) CHECK(e > prev);
            prev = e;
        }
    }
    // equality with mc^2 only for the dirac oscillator ground state
    CHECK(std::abs(dirac_oscillator_energy(0, nat, Branch::particle)) == nat.rest_energy());
}

TEST_CASE("non-relativistic reduction of the oscillator spectra") {
    PhysicalParams p = nat;
    p.c = 1e3;
    for (int n : {0, 1, 5, 11}) {
        const double kg_gap = std::abs(kg_oscillator_energy(n, p, Branch::particle)) -
                              p.rest_energy();
        CHECK(kg_gap == Catch::Approx((n + 0.5) * p.hbar * p.omega).epsilon(1e-4));
        const double dirac_gap = std::abs(dirac_oscillator_energy(n, p, Branch::particle)) -
                                 p.rest_energy();
        // the Moshinsky spectrum reduces to n hbar omega, not (n + 1/2)
        CHECK(dirac_gap == Catch::Approx(n * p.hbar * p.omega).margin(1e-4));
    }
}

TEST_CASE("oscillator kappa and action") {
    CHECK(oscillator_kappa(0, nat) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(oscillator_kappa(12, nat) == Catch::Approx(5.0).epsilon(1e-14));
    CHECK(oscillator_action(0, nat) ==
          Catch::Approx(4.0 * std::sqrt(2.0 * 3.14159265358979323846)).epsilon(1e-14));
    CHECK(oscillator_action(12, nat) == Catch::Approx(25.0 * oscillator_action(0, nat)).epsilon(1e-13));
    // S_n grows linearly: S_{2n} / S_n -> 2
    CHECK(oscillator_action(200, nat) / oscillator_action(100, nat) ==
          Catch::Approx(2.0).epsilon(5e-3));
}

TEST_CASE("kappa matches its energy-based form for kg states") {
    for (int n = 0; n <= 100; ++n) {
        const double e = kg_oscillator_energy(n, nat, Branch::particle);
        const double mc2 = nat.rest_energy();
        const double via_energy = std::sqrt((e * e - mc2 * mc2) /
                                            (nat.mass * nat.mass * nat.omega * nat.omega *
                                             nat.c * nat.c));
        CHECK(oscillator_kappa(n, nat) == Catch::Approx(via_energy).epsilon(1e-12));
    }
}

TEST_CASE("dirac box roots: brackets, residuals, monotonicity") {
    const auto roots = dirac_box_roots(nat, 50);
    REQUIRE(roots.size() == 50);
    const double pi = 3.14159265358979323846;
    for (std::size_t j = 1; j <= roots.size(); ++j) {
        const auto& r = roots[j - 1];
        CHECK(r.k > (j - 0.5) * pi);
        CHECK(r.k < j * pi);
        CHECK(r.residual < 1e-10);
        if (j > 1) CHECK(r.k > roots[j - 2].k);
    }
    CHECK(roots[0].k == Catch::Approx(reference::dirac_box_k1).epsilon(1e-13));
    CHECK(roots[1].k == Catch::Approx(reference::dirac_box_k2).epsilon(1e-13));
    CHECK(roots[2].k == Catch::Approx(reference::dirac_box_k3).epsilon(1e-13));
    CHECK_THROWS_AS(dirac_box_roots(nat, 0), std::invalid_argument);
}

TEST_CASE("dirac box roots approach j pi / L in the heavy-mass limit") {
    PhysicalParams p = nat;
    p.mass = 1e6;
    const auto roots = dirac_box_roots(p, 5);
    const double pi = 3.14159265358979323846;
    for (std::size_t j = 1; j <= roots.size(); ++j) {
        CHECK(roots[j - 1].k == Catch::Approx(j * pi / p.box_length).epsilon(1e-5));
        CHECK(roots[j - 1].k < j * pi / p.box_length);
    }
}

TEST_CASE("dirac box roots approach (j - 1/2) pi / L in the light-mass limit") {
    PhysicalParams p = nat;
    p.mass = 1e-6;
    const auto roots = dirac_box_roots(p, 5);
    const double pi = 3.14159265358979323846;
    for (std::size_t j = 1; j <= roots.size(); ++j) {
        CHECK(roots[j - 1].k == Catch::Approx((j - 0.5) * pi / p.box_length).epsilon(1e-5));
        CHECK(roots[j - 1].k > (j - 0.5) * pi / p.box_length);
    }
}

TEST_CASE("dirac box parameters: limits and closed form at roots") {
    // phi -> 0 as k -> 0
    const auto small = dirac_box_parameters(1e-8, nat);
    CHECK(small.phi == Catch::Approx(0.0).margin(1e-8));
    CHECK(small.delta <= 0.0);

    // B^2 -> 2/L in the non-relativistic regime
    PhysicalParams heavy = nat;
    heavy.mass = 1e4;
    const auto roots = dirac_box_roots(heavy, 3);
    for (const auto& r : roots) {
        const auto par = dirac_box_parameters(r.k, heavy);
        CHECK(par.phi < 1e-2);
        CHECK(par.b_squared * heavy.box_length / 2.0 == Catch::Approx(1.0).margin(1e-3));
    }

    // at a quantization root the general normalizer reduces to
    // E (E + mc^2) / (E^2 L + hbar m c^3)
    const auto nat_roots = dirac_box_roots(nat, 6);
    for (const auto& r : nat_roots) {
        const auto par = dirac_box_parameters(r.k, nat);
        const double e = par.energy;
        const double closed = e * (e + 1.0) / (e * e * 1.0 + 1.0);
        CHECK(par.b_squared == Catch::Approx(closed).epsilon(1e-10));
    }
}

TEST_CASE("dirac box density normalization via quadrature with these parameters") {
    const auto roots = dirac_box_roots(nat, 3);
    for (const auto& r : roots) {
        const auto par = dirac_box_parameters(r.k, nat);
        const double integral = oracles::integrate(
            [&](double x) {
                const double arg = r.k * x - 0.5 * par.delta;
                const double s = std::sin(arg), c = std::cos(arg);
                return par.b_squared * (s * s + par.phi * par.phi * c * c);
            },
            0.0, nat.box_length, 1e-13);
        CHECK(integral == Catch::Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("dirac box parameters reject bad wavenumbers") {
    CHECK_THROWS_AS(dirac_box_parameters(0.0, nat), std::invalid_argument);
    CHECK_THROWS_AS(dirac_box_parameters(-2.0, nat), std::invalid_argument);
}

TEST_CASE("spectrum entries carry the right derived values") {
    const auto osc = spectrum_entry({System::kg_oscillator, 3, Branch::particle}, nat);
    CHECK(osc.energy == Catch::Approx(std::sqrt(8.0)).epsilon(1e-14));
    CHECK(osc.kappa == Catch::Approx(std::sqrt(7.0)).epsilon(1e-14));

    const auto box = spectrum_entry({System::dirac_box, 1, Branch::antiparticle}, nat);
    CHECK(box.energy < 0.0);
    CHECK(box.k == Catch::Approx(reference::dirac_box_k1).epsilon(1e-12));
    CHECK(box.b_squared > 0.0);
    CHECK(box.phi > 0.0);
    CHECK(box.phi < 1.0);
}
