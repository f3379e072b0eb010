// SPDX-License-Identifier: Apache-2.0
#include "nandsim/fit.hpp"
#include "nandsim/models.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace nandsim;

namespace {

std::vector<OlsSample> planted(const std::array<double, 4> &c, double noise, std::mt19937_64 &rng, int n_pec,
                               int n_t)
{
    std::normal_distribution<double> z(0, 1);
    std::vector<OlsSample> out;
    for (int i = 0; i < n_pec; ++i)
        for (int j = 0; j < n_t; ++j) {
            const double p = 2000.0 * i, t = 600.0 * std::pow(3.0, j);
            const double v = (c[0] * p + c[1]) * std::log(t) + c[2] * p + c[3];
            out.push_back({p, t, v + noise * z(rng)});
        }
    return out;
}

} // namespace

TEST_SUITE("fit") {

TEST_CASE("noiseless OLS recovers planted coefficients")
{
    std::mt19937_64 rng(1);
    const std::array<double, 4> c{-4.71e-5, -0.70, 3.23e-4, 189.58};
    const OlsFit f = ols_fit(planted(c, 0.0, rng, 5, 5));
    for (int k = 0; k < 4; ++k)
        CHECK(f.coef[k] == doctest::Approx(c[k]).epsilon(1e-6));
    CHECK(f.adj_r2 == doctest::Approx(1.0));
    CHECK(f.n == 25);
}

TEST_CASE("noiseless OLS closes the loop with every model row")
{
    const auto m = RetentionWearModel::load_default();
    for (int v = 0; v < kNumVars; ++v) {
        if (static_cast<Var>(v) == Var::Va)
            continue;
        std::vector<OlsSample> s;
        for (double p = 0; p <= 10000; p += 2000)
            for (double t : {420.0, 3521.0, 29511.0, 247375.0, 2073600.0})
                s.push_back({p, t, m.eval(static_cast<Var>(v), p, t)});
        const OlsFit f = ols_fit(s);
        const ModelRow &r = m.row(static_cast<Var>(v));
        CAPTURE(v);
        CHECK(f.coef[0] == doctest::Approx(r.alpha).epsilon(1e-6));
        CHECK(f.coef[1] == doctest::Approx(r.beta).epsilon(1e-6));
        CHECK(f.coef[2] == doctest::Approx(r.gamma).epsilon(1e-6));
        CHECK(f.coef[3] == doctest::Approx(r.delta).epsilon(1e-6));
    }
}

TEST_CASE("noisy OLS standard errors cover the planted values")
{
    std::mt19937_64 rng(2);
    const std::array<double, 4> c{1e-4, 0.7, 1.5e-3, -27.0};
    int covered = 0, total = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const OlsFit f = ols_fit(planted(c, 1.0, rng, 20, 10));
        for (int k = 0; k < 4; ++k) {
            covered += std::abs(f.coef[k] - c[k]) <= 3 * f.std_error[k];
            ++total;
        }
    }
    CHECK(static_cast<double>(covered) / total >= 0.95);
}

TEST_CASE("OLS rejects a design without diversity")
{
    std::vector<OlsSample> one_pec;
    for (double t : {100.0, 1000.0, 1e4, 1e5, 1e6})
        one_pec.push_back({3000, t, 1.0 + std::log(t)});
    CHECK_THROWS_WITH_AS(ols_fit(one_pec), "insufficient sample diversity", std::invalid_argument);
    std::vector<OlsSample> tiny{{0, 100, 1}, {1000, 1000, 2}, {2000, 100, 3}};
    CHECK_THROWS_AS(ols_fit(tiny), std::invalid_argument);
}

TEST_CASE("PEC-only fit")
{
    std::vector<std::pair<double, double>> s;
    for (double p = 0; p <= 10000; p += 1000)
        s.emplace_back(p, 1.2e-3 * p + 60.52);
    const LinearFit f = ols_fit_va(s);
    CHECK(f.gamma == doctest::Approx(1.2e-3).epsilon(1e-9));
    CHECK(f.delta == doctest::Approx(60.52).epsilon(1e-9));
    const std::vector<std::pair<double, double>> flat{{5, 1}, {5, 2}, {5, 3}};
    CHECK_THROWS_AS(ols_fit_va(flat), std::invalid_argument);
}

TEST_CASE("gaussian fit")
{
    const std::vector<double> pair{-1, 1};
    const StateDistribution d = gaussian_fit(pair);
    CHECK(d.mean == doctest::Approx(0.0));
    CHECK(d.stdev == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(gaussian_fit(std::vector<double>{3.0}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_fit(std::vector<double>{3.0, 3.0, 3.0}), std::invalid_argument);

    std::mt19937_64 rng(4);
    std::normal_distribution<double> n(120, 11);
    std::vector<double> x(100000);
    for (double &v : x)
        v = n(rng);
    const StateDistribution e = gaussian_fit(x);
    CHECK(std::abs(e.mean - 120) < 0.2);
    CHECK(std::abs(e.stdev - 11) < 0.2);
}

TEST_CASE("censored gaussian fit undoes clipping")
{
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(-30, 17);
    std::vector<double> x(200000);
    for (double &v : x)
        v = std::max(n(rng), -50.0);
    const StateDistribution naive = gaussian_fit(x);
    const StateDistribution cens = gaussian_fit_censored(x, -49.0, 1e9);
    CHECK(std::abs(naive.stdev - 17) > 1.0);
    CHECK(std::abs(cens.mean + 30) < 0.2);
    CHECK(std::abs(cens.stdev - 17) < 0.2);
}

TEST_CASE("gamma fit by moments")
{
    // Mean 8, sample variance 16.
    const GammaFit f = gamma_fit(std::vector<double>{4, 8, 12});
    CHECK(f.shape == doctest::Approx(4.0));
    CHECK(f.scale == doctest::Approx(2.0));

    std::mt19937_64 rng(6);
    std::gamma_distribution<double> g(4.0, 2.0);
    std::vector<double> s(100000);
    for (double &v : s)
        v = g(rng);
    const GammaFit h = gamma_fit(s);
    CHECK(h.shape == doctest::Approx(4.0).epsilon(0.05));
    CHECK(h.scale == doctest::Approx(2.0).epsilon(0.05));
    CHECK_THROWS_AS(gamma_fit(std::vector<double>{0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(gamma_fit(std::vector<double>{2.0, 2.0}), std::invalid_argument);
}

TEST_CASE("gamma self-consistency under KL")
{
    std::mt19937_64 rng(8);
    std::gamma_distribution<double> g(4.0, 2.0);
    std::vector<double> s(100000);
    for (double &v : s)
        v = g(rng);
    const GammaFit f = gamma_fit(s);
    const double hi = *std::max_element(s.begin(), s.end());
    const int bins = 50;
    std::vector<double> edges(bins + 1), counts(bins, 0.0);
    for (int i = 0; i <= bins; ++i)
        edges[i] = hi * i / bins;
    for (double v : s)
        counts[std::min(bins - 1, static_cast<int>(v / hi * bins))] += 1;
    const KlResult kl = kl_divergence(counts, edges, [&](double x) { return gamma_rber_pdf(f.shape, f.scale, x); });
    CHECK_FALSE(kl.infinite);
    CHECK(kl.nats < 0.05);
}

TEST_CASE("KL divergence edge cases")
{
    const std::vector<double> edges{0, 1, 2, 3};
    auto uniform = [](double x) { return (x >= 0 && x <= 3) ? 1.0 / 3 : 0.0; };
    CHECK(kl_divergence(std::vector<double>{10, 10, 10}, edges, uniform).nats == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(kl_divergence(std::vector<double>{10, 20, 30}, edges, uniform).nats ==
          doctest::Approx(0.08720802396075798).epsilon(1e-9));
    const std::vector<double> far{10, 11, 12};
    const KlResult r = kl_divergence(std::vector<double>{1, 1}, far, uniform);
    CHECK(r.infinite);
    CHECK(std::isinf(r.nats));
    CHECK_THROWS_AS(kl_divergence(std::vector<double>{0, 0}, std::vector<double>{0, 1, 2}, uniform), std::invalid_argument);
}

TEST_CASE("KL is never negative")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0, 100);
    const std::vector<double> edges{0, 1, 2, 3, 4};
    auto tri = [](double x) { return x >= 0 && x <= 4 ? (x <= 2 ? x / 4 : (4 - x) / 4) : 0.0; };
    for (int i = 0; i < 100; ++i) {
        const std::vector<double> c{u(rng), u(rng), u(rng), u(rng)};
        CHECK(kl_divergence(c, edges, tri).nats >= 0.0);
    }
}

TEST_CASE("empirical Vopt")
{
    SweepHistogram h;
    h.v_min = 0;
    for (auto &c : h.counts)
        c.assign(40, 0);
    // Plateau: zero errors anywhere in [5, 10].
    for (int k = 0; k < 5; ++k)
        h.counts[0][k] = 100;
    for (int k = 10; k < 15; ++k)
        h.counts[1][k] = 100;
    for (int k = 20; k < 25; ++k)
        h.counts[2][k] = 100;
    for (int k = 30; k < 35; ++k)
        h.counts[3][k] = 100;
    const EmpiricalVopt e = empirical_vopt(h);
    CHECK_FALSE(e.degenerate);
    CHECK(e.v.va == 7.5);
    CHECK(e.v.vb == 17.5);
    CHECK(e.v.vc == 27.5);

    SweepHistogram one;
    one.v_min = -50;
    for (auto &c : one.counts)
        c.assign(400, 0);
    one.counts[0][10] = 1000;
    const EmpiricalVopt d = empirical_vopt(one);
    CHECK(d.degenerate);
    CHECK(d.v.va == 150.0);
}

TEST_CASE("empirical Vopt tracks the closed-form boundary")
{
    std::mt19937_64 rng(13);
    const StateDistribution a{60, 9}, b{120, 14};
    SweepHistogram h;
    h.v_min = -50;
    for (auto &c : h.counts)
        c.assign(400, 0);
    std::normal_distribution<double> na(a.mean, a.stdev), nb(b.mean, b.stdev), far2(250, 5), far3(320, 5);
    auto put = [&](int s, double v) { h.counts[s][std::clamp(static_cast<int>(std::floor(v + 50)), 0, 399)]++; };
    for (int i = 0; i < 400000; ++i) {
        put(0, na(rng));
        put(1, nb(rng));
        put(2, far2(rng));
        put(3, far3(rng));
    }
    CHECK(std::abs(empirical_vopt(h).v.va - optimal_boundary(a, b)) <= 1.0);
}

}
