#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rqmc/core.hpp"

using namespace rqmc;

TEST_CASE("natural parameters are all one and valid") {
    const auto p = natural_params();
    CHECK(p.mass == 1.0);
    CHECK(p.omega == 1.0);
    CHECK(p.hbar == 1.0);
    CHECK(p.c == 1.0);
    CHECK(p.box_length == 1.0);
    CHECK_NOTHROW(p.validate());
    CHECK(alpha(p) == 1.0);
}

TEST_CASE("alpha is m omega / hbar") {
    PhysicalParams p;
    p.mass = 2.0;
    p.omega = 3.0;
    p.hbar = 1.0;
    CHECK(alpha(p) == Catch::Approx(6.0));
    p.mass = 1.0;
    p.omega = 1.0;
    p.hbar = 2.0;
    CHECK(alpha(p) == Catch::Approx(0.5));
}

TEST_CASE("non-positive parameters are rejected") {
    PhysicalParams p;
    p.mass = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.mass = 1.0;
    p.c = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.c = 1.0;
    p.hbar = 0.0;
    CHECK_THROWS_AS(alpha(p), std::invalid_argument);
}

TEST_CASE("alpha scales linearly in m and omega and inversely in hbar") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> mag(0.1, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        PhysicalParams p;
        p.mass = mag(rng);
        p.omega = mag(rng);
        p.hbar = mag(rng);
        const double s = mag(rng);
        PhysicalParams scaled_m = p;
        scaled_m.mass *= s;
        PhysicalParams scaled_w = p;
        scaled_w.omega *= s;
        PhysicalParams scaled_h = p;
        scaled_h.hbar *= s;
        CHECK(alpha(scaled_m) == Catch::Approx(s * alpha(p)).epsilon(1e-12));
        CHECK(alpha(scaled_w) == Catch::Approx(s * alpha(p)).epsilon(1e-12));
        CHECK(alpha(scaled_h) == Catch::Approx(alpha(p) / s).epsilon(1e-12));
    }
}

TEST_CASE("state validation per system") {
    CHECK_NOTHROW((StateSpec{System::kg_oscillator, 0, Branch::particle}.validate()));
    CHECK_NOTHROW((StateSpec{System::dirac_oscillator, 0, Branch::particle}.validate()));
    CHECK_THROWS_AS((StateSpec{System::kg_box, 0, Branch::particle}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((StateSpec{System::dirac_box, 0, Branch::particle}.validate()),
                    std::invalid_argument);
    CHECK_NOTHROW((StateSpec{System::kg_box, 1, Branch::antiparticle}.validate()));
    // the n = 0 negative-energy dirac-oscillator level does not exist
    CHECK_THROWS_AS((StateSpec{System::dirac_oscillator, 0, Branch::antiparticle}.validate()),
                    std::invalid_argument);
    CHECK_NOTHROW((StateSpec{System::dirac_oscillator, 1, Branch::antiparticle}.validate()));
    CHECK_THROWS_AS((StateSpec{System::kg_oscillator, -1, Branch::particle}.validate()),
                    std::invalid_argument);
}

TEST_CASE("system and branch names round-trip") {
    for (System s : {System::kg_oscillator, System::kg_box, System::dirac_oscillator,
                     System::dirac_box}) {
        CHECK(parse_system(to_string(s)) == s);
    }
    for (Branch b : {Branch::particle, Branch::antiparticle}) {
        CHECK(parse_branch(to_string(b)) == b);
    }
    CHECK_THROWS_AS(parse_system("schroedinger-box"), std::invalid_argument);
    CHECK_THROWS_AS(parse_branch("tachyon"), std::invalid_argument);
}

TEST_CASE("unit system factories") {
    const auto nat = UnitSystem::natural();
    CHECK(nat.mode == UnitMode::natural);
    CHECK(nat.params.mass == 1.0);

    PhysicalParams p;
    p.c = 100.0;
    const auto cust = UnitSystem::custom(p);
    CHECK(cust.mode == UnitMode::custom);
    CHECK(cust.params.c == 100.0);

    p.mass = -1.0;
    CHECK_THROWS_AS(UnitSystem::custom(p), std::invalid_argument);
}
