// SPDX-License-Identifier: Apache-2.0
#include "nandsim/voltage.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace nandsim;

TEST_SUITE("voltage") {

TEST_CASE("gray code round trip and adjacency")
{
    CHECK(gray_encode(State::ER) == GrayBits{1, 1});
    CHECK(gray_encode(State::P1) == GrayBits{0, 1});
    CHECK(gray_encode(State::P2) == GrayBits{0, 0});
    CHECK(gray_encode(State::P3) == GrayBits{1, 0});
    for (State s : kAllStates)
        CHECK(gray_decode(gray_encode(s)) == s);
    // Neighbouring states differ in exactly one bit.
    for (int i = 0; i + 1 < kNumStates; ++i) {
        const GrayBits a = gray_encode(kAllStates[i]), b = gray_encode(kAllStates[i + 1]);
        CHECK((a.msb != b.msb) + (a.lsb != b.lsb) == 1);
    }
}

TEST_CASE("read_cell thresholds")
{
    const VrefTriple v{10, 20, 30};
    CHECK(read_cell(5, v) == gray_encode(State::ER));
    CHECK(read_cell(15, v) == gray_encode(State::P1));
    CHECK(read_cell(25, v) == gray_encode(State::P2));
    CHECK(read_cell(35, v) == gray_encode(State::P3));
}

TEST_CASE("normal_sf against reference values")
{
    CHECK(normal_sf(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(normal_sf(1) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
    CHECK(normal_sf(5) == doctest::Approx(2.866515718791933e-07).epsilon(1e-10));
    CHECK(normal_sf(10) == doctest::Approx(7.61985302416047e-24).epsilon(1e-10));
    CHECK(normal_sf(30) == doctest::Approx(4.906713927147908e-198).epsilon(1e-9));
    CHECK(normal_sf(-3) == doctest::Approx(0.9986501019683699).epsilon(1e-12));
}

TEST_CASE("equal stdev boundary is the midpoint")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-100, 100), s(0.5, 20);
    for (int i = 0; i < 200; ++i) {
        const double m1 = u(rng), d = 1 + std::abs(u(rng)), sd = s(rng);
        CHECK(optimal_boundary({m1, sd}, {m1 + d, sd}) == doctest::Approx(m1 + d / 2).epsilon(1e-12));
    }
}

TEST_CASE("unequal stdev boundary matches a bounded minimizer")
{
    CHECK(optimal_boundary({0, 5}, {30, 10}) == doctest::Approx(11.12367894240988).epsilon(1e-8));
    CHECK(optimal_boundary({100, 12}, {160, 8}) == doctest::Approx(135.35415311597708).epsilon(1e-8));
}

TEST_CASE("boundary lies between the means and minimizes misread mass")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-50, 300), s(3, 20), gap(20, 80);
    for (int i = 0; i < 200; ++i) {
        const StateDistribution a{u(rng), s(rng)};
        const StateDistribution b{a.mean + gap(rng), s(rng)};
        const double v = optimal_boundary(a, b);
        CHECK(v > a.mean);
        CHECK(v < b.mean);
        const double m = boundary_misread(a, b, v);
        CHECK(m <= boundary_misread(a, b, v - 0.05) + 1e-15);
        CHECK(m <= boundary_misread(a, b, v + 0.05) + 1e-15);
    }
}

TEST_CASE("indistinguishable or misordered distributions throw")
{
    CHECK_THROWS_AS(optimal_boundary({10, 5}, {10, 5}), std::invalid_argument);
    CHECK_THROWS_AS(optimal_boundary({20, 5}, {10, 5}), std::invalid_argument);
    CHECK_THROWS_AS(optimal_boundary({0, 0}, {10, 5}), std::invalid_argument);
}

TEST_CASE("separated states never misread")
{
    const StateDistributions d{{{0, 1}, {100, 1}, {200, 1}, {300, 1}}};
    const RberBreakdown r = expected_rber(d, kUniformPriors, {50, 150, 250});
    CHECK(r.msb < 1e-12);
    CHECK(r.lsb < 1e-12);
}

TEST_CASE("symmetric pair at the midpoint misreads one tail each way")
{
    // Only ER and P1 overlap; P1 to ER is the only LSB-preserving, MSB-flipping error.
    const StateDistributions d{{{0, 10}, {30, 10}, {1000, 1}, {2000, 1}}};
    const RberBreakdown r = expected_rber(d, kUniformPriors, {15, 500, 1500});
    CHECK(r.p[0][1] == doctest::Approx(0.25 * normal_sf(1.5)).epsilon(1e-12));
    CHECK(r.p[1][0] == doctest::Approx(0.25 * normal_sf(1.5)).epsilon(1e-12));
}

TEST_CASE("wider separation never raises the error rate")
{
    double prev = 1.0;
    for (double gap = 20; gap <= 120; gap += 5) {
        const StateDistributions d{{{0, 12}, {gap, 10}, {2 * gap, 10}, {3 * gap, 10}}};
        const double r = expected_rber(d, kUniformPriors, optimal_vrefs(d)).msb;
        CHECK(r <= prev);
        prev = r;
    }
}

TEST_CASE("expected_rber on a reference context")
{
    // Layer-0 distributions at 10K PEC after one day.
    const StateDistributions d{{{7.8218001708862595, 17.253634859095843},
                                {111.22815468485346, 10.914420727651391},
                                {179.49954399993842, 11.189987467463109},
                                {248.58261889656762, 11.645359924169625}}};
    const RberBreakdown r = expected_rber(d, kUniformPriors, {72.52, 144.0525281365858, 212.60150280435064});
    CHECK(r.msb == doctest::Approx(0.0007081616986721503).epsilon(1e-9));
    CHECK(r.lsb == doctest::Approx(0.0005213651982512123).epsilon(1e-9));

    const VrefTriple vi = integer_optimal_vrefs(d);
    CHECK(vi == VrefTriple{70, 145, 213});
    const RberBreakdown ri = expected_rber(d, kUniformPriors, vi);
    CHECK(ri.msb == doctest::Approx(0.0006842730844931875).epsilon(1e-9));
    CHECK(ri.lsb == doctest::Approx(0.0005027405676019581).epsilon(1e-9));
}

TEST_CASE("expected_rber is a probability and misreads stay within each prior")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> s(4, 25), jitter(-30, 30);
    for (int i = 0; i < 100; ++i) {
        const StateDistributions d{{{0, s(rng)}, {110, s(rng)}, {180, s(rng)}, {250, s(rng)}}};
        const VrefTriple v{60 + jitter(rng), 145 + jitter(rng) / 3, 215 + jitter(rng) / 3};
        const RberBreakdown r = expected_rber(d, kUniformPriors, v);
        CHECK(r.msb >= 0.0);
        CHECK(r.msb <= 1.0);
        CHECK(r.lsb >= 0.0);
        CHECK(r.lsb <= 1.0);
        double total = 0;
        for (int st = 0; st < 4; ++st) {
            double row = 0;
            for (int rd = 0; rd < 4; ++rd)
                row += r.p[st][rd];
            CHECK(r.p[st][st] == 0.0);
            CHECK(row <= 0.25);
            total += row;
        }
        CHECK(r.er_p1 + r.p1_p2 + r.p2_p3 + r.multi == doctest::Approx(total).epsilon(1e-12));
        // Optimal vrefs never do worse than a perturbed triple.
        const RberBreakdown best = expected_rber(d, kUniformPriors, optimal_vrefs(d));
        CHECK(best.msb + best.lsb <= r.msb + r.lsb + 1e-15);
        std::uniform_real_distribution<double> five(-5, 5);
        VrefTriple near = optimal_vrefs(d);
        for (int b = 0; b < 3; ++b)
            near[b] += five(rng);
        if (near.ordered()) {
            const RberBreakdown n = expected_rber(d, kUniformPriors, near);
            CHECK(best.msb + best.lsb <= n.msb + n.lsb + 1e-15);
        }
    }
}

}
