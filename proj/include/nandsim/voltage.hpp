// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace nandsim {

// All voltages are in read-retry steps.
enum class State : std::uint8_t { ER = 0, P1 = 1, P2 = 2, P3 = 3 };
inline constexpr std::array<State, 4> kAllStates{State::ER, State::P1, State::P2, State::P3};
inline constexpr int kNumStates = 4;

constexpr int rank(State s) { return static_cast<int>(s); }
std::string_view state_name(State s);

enum class PageType : std::uint8_t { MSB = 0, LSB = 1 };
std::string_view page_type_name(PageType p);

struct GrayBits {
    std::uint8_t msb;
    std::uint8_t lsb;
    bool operator==(const GrayBits &) const = default;
};

// ER=(1,1) P1=(0,1) P2=(0,0) P3=(1,0) in (msb, lsb) order.
GrayBits gray_encode(State s);
State gray_decode(GrayBits b);

struct VrefTriple {
    double va = 0.0;
    double vb = 0.0;
    double vc = 0.0;
    bool ordered() const { return va < vb && vb < vc; }
    double operator[](int i) const { return i == 0 ? va : (i == 1 ? vb : vc); }
    double &operator[](int i) { return i == 0 ? va : (i == 1 ? vb : vc); }
    bool operator==(const VrefTriple &) const = default;
};

GrayBits read_cell(double vth, const VrefTriple &v);

struct StateDistribution {
    double mean = 0.0;
    double stdev = 1.0;
    double pdf(double x) const;
    double cdf(double x) const;
    double sf(double x) const;
};

using StateDistributions = std::array<StateDistribution, 4>;
using StatePriors = std::array<double, 4>;
inline constexpr StatePriors kUniformPriors{0.25, 0.25, 0.25, 0.25};

// Standard normal upper tail, accurate far into the tail.
double normal_sf(double z);

// Pdf-equality point between two adjacent states.
double optimal_boundary(const StateDistribution &left, const StateDistribution &right);

// Equal-prior misread mass of a single boundary placed at v.
double boundary_misread(const StateDistribution &left, const StateDistribution &right, double v);

VrefTriple optimal_vrefs(const StateDistributions &d);

// Boundary-wise integer step with the least misread mass.
VrefTriple integer_optimal_vrefs(const StateDistributions &d);

struct RberBreakdown {
    double msb = 0.0;
    double lsb = 0.0;
    // p[s][r]: prior-weighted probability that a cell programmed to s reads as r.
    std::array<std::array<double, 4>, 4> p{};
    double er_p1 = 0.0;
    double p1_p2 = 0.0;
    double p2_p3 = 0.0;
    double multi = 0.0;
};

RberBreakdown expected_rber(const StateDistributions &d, const StatePriors &priors,
                            const VrefTriple &v);

} // namespace nandsim
