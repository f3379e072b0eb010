// SPDX-License-Identifier: Apache-2.0
#include "nandsim/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nandsim {

namespace {

struct LsqResult {
    Eigen::VectorXd coef;
    Eigen::VectorXd se;
    double residual_variance;
    double adj_r2;
};

LsqResult least_squares(const Eigen::MatrixXd &X, const Eigen::VectorXd &y)
{
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    // Column scaling keeps the rank test meaningful when PEC*ln(t) dwarfs the intercept.
    const Eigen::VectorXd scale = X.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < p; ++j)
        if (scale(j) == 0.0)
            throw std::invalid_argument("insufficient sample diversity");
    const Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
    qr.setThreshold(1e-10);
    if (qr.rank() < p)
        throw std::invalid_argument("insufficient sample diversity");
    const Eigen::VectorXd bs = qr.solve(y);
    LsqResult r;
    r.coef = bs.cwiseQuotient(scale);
    const Eigen::VectorXd resid = y - X * r.coef;
    const double sse = resid.squaredNorm();
    const double dof = static_cast<double>(n - p);
    r.residual_variance = dof > 0 ? sse / dof : 0.0;

    // (Xs^T Xs)^-1 = P R^-1 R^-T P^T
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv = R.inverse();
    const Eigen::MatrixXd P = qr.colsPermutation();
    const Eigen::MatrixXd cov = P * (Rinv * Rinv.transpose()) * P.transpose();
    r.se.resize(p);
    for (Eigen::Index j = 0; j < p; ++j)
        r.se(j) = std::sqrt(std::max(cov(j, j), 0.0) * r.residual_variance) / scale(j);

    const double mean = y.mean();
    const double sst = (y.array() - mean).square().sum();
    if (sse == 0.0) {
        r.adj_r2 = 1.0;
    } else if (sst == 0.0) {
        r.adj_r2 = 0.0;
    } else {
        const double r2 = 1.0 - sse / sst;
        r.adj_r2 = dof > 0 ? 1.0 - (1.0 - r2) * (n - 1.0) / dof : r2;
    }
    return r;
}

} // namespace

double OlsFit::predict(double pec, double t_s) const
{
    const double lt = std::log(t_s);
    return coef[0] * pec * lt + coef[1] * lt + coef[2] * pec + coef[3];
}

OlsFit ols_fit(std::span<const OlsSample> samples)
{
    if (samples.size() < 4)
        throw std::invalid_argument("insufficient sample diversity");
    std::set<double> pecs, ts;
    for (const auto &s : samples) {
        if (!(s.t_s > 0.0))
            throw std::invalid_argument("retention time must be positive");
        pecs.insert(s.pec);
        ts.insert(s.t_s);
    }
    if (pecs.size() < 2 || ts.size() < 2)
        throw std::invalid_argument("insufficient sample diversity");

    const auto n = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd X(n, 4);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto &s = samples[i];
        const double lt = std::log(s.t_s);
        X(i, 0) = s.pec * lt;
        X(i, 1) = lt;
        X(i, 2) = s.pec;
        X(i, 3) = 1.0;
        y(i) = s.value;
    }
    const LsqResult r = least_squares(X, y);
    OlsFit f;
    for (int j = 0; j < 4; ++j) {
        f.coef[j] = r.coef(j);
        f.std_error[j] = r.se(j);
    }
    f.residual_variance = r.residual_variance;
    f.adj_r2 = r.adj_r2;
    f.n = samples.size();
    return f;
}

LinearFit ols_fit_va(std::span<const std::pair<double, double>> pv)
{
    std::set<double> pecs;
    for (const auto &s : pv)
        pecs.insert(s.first);
    if (pecs.size() < 2)
        throw std::invalid_argument("insufficient sample diversity");
    const auto n = static_cast<Eigen::Index>(pv.size());
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = pv[i].first;
        X(i, 1) = 1.0;
        y(i) = pv[i].second;
    }
    const LsqResult r = least_squares(X, y);
    LinearFit f;
    f.gamma = r.coef(0);
    f.delta = r.coef(1);
    f.std_error = {r.se(0), r.se(1)};
    f.adj_r2 = r.adj_r2;
    f.n = pv.size();
    return f;
}

StateDistribution gaussian_fit(std::span<const double> v)
{
    if (v.size() < 2)
        throw std::invalid_argument("gaussian_fit needs at least two samples");
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    if (ss == 0.0)
        throw std::invalid_argument("zero variance");
    return {mean, std::sqrt(ss / (v.size() - 1))};
}

StateDistribution gaussian_fit_censored(std::span<const double> v, double lo, double hi)
{
    std::vector<double> mid;
    std::size_t n_lo = 0, n_hi = 0;
    for (double x : v) {
        if (x <= lo)
            ++n_lo;
        else if (x >= hi)
            ++n_hi;
        else
            mid.push_back(x);
    }
    StateDistribution d = gaussian_fit(mid);
    if (n_lo == 0 && n_hi == 0)
        return d;
    const double n = static_cast<double>(v.size());
    double s1 = 0.0, s2 = 0.0;
    for (double x : mid) {
        s1 += x;
        s2 += x * x;
    }
    constexpr double kInvSqrt2Pi = 0.3989422804014327;
    // EM with the censored cells replaced by their conditional moments.
    for (int it = 0; it < 1000; ++it) {
        double e1 = s1, e2 = s2;
        if (n_lo) {
            const double a = (lo - d.mean) / d.stdev;
            const double lam = kInvSqrt2Pi * std::exp(-0.5 * a * a) / normal_sf(-a);
            e1 += n_lo * (d.mean - d.stdev * lam);
            e2 += n_lo * (d.mean * d.mean + d.stdev * d.stdev - d.stdev * (lo + d.mean) * lam);
        }
        if (n_hi) {
            const double b = (hi - d.mean) / d.stdev;
            const double lam = kInvSqrt2Pi * std::exp(-0.5 * b * b) / normal_sf(b);
            e1 += n_hi * (d.mean + d.stdev * lam);
            e2 += n_hi * (d.mean * d.mean + d.stdev * d.stdev + d.stdev * (hi + d.mean) * lam);
        }
        const double mean = e1 / n;
        const double sd = std::sqrt(std::max(e2 / n - mean * mean, 1e-300));
        const bool done = std::abs(mean - d.mean) < 1e-10 && std::abs(sd - d.stdev) < 1e-10;
        d = {mean, sd};
        if (done)
            break;
    }
    return d;
}

GammaFit gamma_fit(std::span<const double> x)
{
    if (x.size() < 2)
        throw std::invalid_argument("gamma_fit needs at least two samples");
    for (double v : x)
        if (!(v > 0.0))
            throw std::invalid_argument("gamma_fit samples must be positive");
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    const double var = ss / (x.size() - 1);
    if (var == 0.0)
        throw std::invalid_argument("zero variance");
    return {mean * mean / var, var / mean, "moments"};
}

KlResult kl_divergence(std::span<const double> counts, std::span<const double> edges,
                       const std::function<double(double)> &pdf)
{
    if (counts.size() < 2 || edges.size() != counts.size() + 1)
        throw std::invalid_argument("kl_divergence needs >= 2 bins and bins+1 edges");
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    if (!(total > 0.0))
        throw std::invalid_argument("histogram has no mass");
    constexpr int kPanels = 64; // Simpson panels per bin
    KlResult out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] <= 0.0)
            continue;
        const double a = edges[i], b = edges[i + 1];
        const double h = (b - a) / kPanels;
        double q = 0.0;
        for (int k = 0; k <= kPanels; ++k) {
            // Nudge off the lower edge in case the pdf has a pole there.
            const double x = k == 0 ? a + 1e-9 * h : a + k * h;
            const double w = (k == 0 || k == kPanels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            q += w * pdf(x);
        }
        q *= h / 3.0;
        if (!(q > 0.0)) {
            out.infinite = true;
            out.nats = std::numeric_limits<double>::infinity();
            return out;
        }
        const double p = counts[i] / total;
        out.nats += p * std::log(p / q);
    }
    out.nats = std::max(out.nats, 0.0);
    return out;
}

EmpiricalVopt empirical_vopt(const SweepHistogram &h)
{
    const int bins = h.bins();
    for (const auto &c : h.counts)
        if (static_cast<int>(c.size()) != bins)
            throw std::invalid_argument("sweep histogram rows differ in length");
    EmpiricalVopt out;
    const double mid = h.v_min + 0.5 * bins;
    for (int b = 0; b < 3; ++b) {
        const auto &left = h.counts[b];
        const auto &right = h.counts[b + 1];
        const std::uint64_t nl = std::accumulate(left.begin(), left.end(), std::uint64_t{0});
        const std::uint64_t nr = std::accumulate(right.begin(), right.end(), std::uint64_t{0});
        if (nl == 0 || nr == 0) {
            out.degenerate = true;
            out.v[b] = mid;
            continue;
        }
        // A vref on grid line v_min + k misreads left cells in bins >= k and right cells below k.
        std::uint64_t left_above = nl, right_below = 0;
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        int first = 0, last = 0;
        for (int k = 0; k <= bins; ++k) {
            const std::uint64_t err = left_above + right_below;
            if (err < best) {
                best = err;
                first = last = k;
            } else if (err == best) {
                last = k;
            }
            if (k < bins) {
                left_above -= left[k];
                right_below += right[k];
            }
        }
        out.v[b] = h.v_min + 0.5 * (first + last);
    }
    return out;
}

} // namespace nandsim
