// SPDX-License-Identifier: Apache-2.0
#include "nandsim/voltage.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nandsim {

std::string_view state_name(State s)
{
    static constexpr std::array<std::string_view, 4> names{"ER", "P1", "P2", "P3"};
    return names[rank(s)];
}

std::string_view page_type_name(PageType p) { return p == PageType::MSB ? "MSB" : "LSB"; }

GrayBits gray_encode(State s)
{
    static constexpr std::array<GrayBits, 4> table{GrayBits{1, 1}, GrayBits{0, 1}, GrayBits{0, 0},
                                                   GrayBits{1, 0}};
    return table[rank(s)];
}

State gray_decode(GrayBits b)
{
    if (b.lsb)
        return b.msb ? State::ER : State::P1;
    return b.msb ? State::P3 : State::P2;
}

GrayBits read_cell(double vth, const VrefTriple &v)
{
    GrayBits b;
    b.lsb = vth < v.vb ? 1 : 0;
    b.msb = (vth < v.va || vth >= v.vc) ? 1 : 0;
    return b;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double StateDistribution::pdf(double x) const
{
    const double z = (x - mean) / stdev;
    return std::exp(-0.5 * z * z) / (stdev * std::sqrt(2.0 * std::numbers::pi));
}

double StateDistribution::cdf(double x) const { return normal_sf((mean - x) / stdev); }
double StateDistribution::sf(double x) const { return normal_sf((x - mean) / stdev); }

double boundary_misread(const StateDistribution &left, const StateDistribution &right, double v)
{
    return left.sf(v) + right.cdf(v);
}

double optimal_boundary(const StateDistribution &l, const StateDistribution &r)
{
    if (!(l.stdev > 0.0) || !(r.stdev > 0.0))
        throw std::invalid_argument("non-positive stdev");
    if (l.stdev == r.stdev && l.mean == r.mean)
        throw std::invalid_argument("indistinguishable distributions");
    if (!(l.mean < r.mean))
        throw std::invalid_argument("optimal_boundary needs left.mean < right.mean");
    if (l.stdev == r.stdev)
        return 0.5 * (l.mean + r.mean);

    // Equate log-densities: a x^2 + b x + c = 0.
    const double il = 1.0 / (l.stdev * l.stdev);
    const double ir = 1.0 / (r.stdev * r.stdev);
    const double a = ir - il;
    const double b = 2.0 * (l.mean * il - r.mean * ir);
    const double c = r.mean * r.mean * ir - l.mean * l.mean * il - 2.0 * std::log(l.stdev / r.stdev);
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        throw std::invalid_argument("indistinguishable distributions");
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    const double r1 = q / a;
    const double r2 = q != 0.0 ? c / q : r1;
    const bool in1 = r1 > l.mean && r1 < r.mean;
    const bool in2 = r2 > l.mean && r2 < r.mean;
    if (in1 && !in2)
        return r1;
    if (in2 && !in1)
        return r2;
    // Neither (or both) between the means: keep the root with less misread mass.
    return boundary_misread(l, r, r1) <= boundary_misread(l, r, r2) ? r1 : r2;
}

VrefTriple optimal_vrefs(const StateDistributions &d)
{
    return {optimal_boundary(d[0], d[1]), optimal_boundary(d[1], d[2]), optimal_boundary(d[2], d[3])};
}

VrefTriple integer_optimal_vrefs(const StateDistributions &d)
{
    VrefTriple out;
    for (int i = 0; i < 3; ++i) {
        const double fl = std::floor(optimal_boundary(d[i], d[i + 1]));
        out[i] = boundary_misread(d[i], d[i + 1], fl) <= boundary_misread(d[i], d[i + 1], fl + 1.0)
                     ? fl
                     : fl + 1.0;
    }
    return out;
}

RberBreakdown expected_rber(const StateDistributions &d, const StatePriors &priors, const VrefTriple &v)
{
    for (const auto &s : d)
        if (!(s.stdev > 0.0))
            throw std::invalid_argument("non-positive stdev");
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::array<double, 5> edge{-inf, v.va, v.vb, v.vc, inf};

    RberBreakdown out;
    for (int s = 0; s < 4; ++s) {
        for (int r = 0; r < 4; ++r) {
            if (r == s)
                continue;
            double p;
            // Difference of tails on the far side of the mean avoids cancellation.
            if (r > s)
                p = d[s].sf(edge[r]) - d[s].sf(edge[r + 1]);
            else
                p = d[s].cdf(edge[r + 1]) - d[s].cdf(edge[r]);
            p = std::max(p, 0.0) * priors[s];
            out.p[s][r] = p;
            const GrayBits bs = gray_encode(static_cast<State>(s));
            const GrayBits br = gray_encode(static_cast<State>(r));
            if (bs.msb != br.msb)
                out.msb += p;
            if (bs.lsb != br.lsb)
                out.lsb += p;
            const int lo = std::min(s, r);
            if (std::abs(s - r) > 1)
                out.multi += p;
            else if (lo == 0)
                out.er_p1 += p;
            else if (lo == 1)
                out.p1_p2 += p;
            else
                out.p2_p3 += p;
        }
    }
    return out;
}

} // namespace nandsim
