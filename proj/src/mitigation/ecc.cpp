// SPDX-License-Identifier: Apache-2.0
#include "nandsim/errors.hpp"
#include "nandsim/mitigation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nandsim {

void EccConfig::validate() const
{
    if (k < 1 || m < 1)
        throw ConfigError("ECC k and m must be >= 1");
    if (!(rber_limit > 0.0 && rber_limit < 0.5))
        throw ConfigError("ECC rber_limit must lie in (0, 0.5)");
    if (!(target_uncorrectable > 0.0 && target_uncorrectable < 1.0))
        throw ConfigError("ECC target must lie in (0, 1)");
}

double binomial_tail(int t, int n, double p)
{
    if (t >= n)
        return 0.0;
    if (p <= 0.0)
        return 0.0;
    if (t < 0)
        return 1.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    const double lgn = std::lgamma(n + 1.0);
    auto log_pmf = [&](int j) { return lgn - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) + j * lp + (n - j) * lq; };
    // Sum upward from t+1; past the mode terms shrink geometrically, so stop once they vanish.
    const double mode = std::floor((n + 1) * p);
    double log_sum = -std::numeric_limits<double>::infinity();
    for (int j = t + 1; j <= n; ++j) {
        const double lt = log_pmf(j);
        log_sum = log_sum > lt ? log_sum + std::log1p(std::exp(lt - log_sum))
                               : lt + (std::isinf(log_sum) ? 0.0 : std::log1p(std::exp(log_sum - lt)));
        if (j > mode && lt - log_sum < -40.0)
            break;
    }
    return std::min(std::exp(log_sum), 1.0);
}

int ecc_required_t(double rber, const EccConfig &cfg)
{
    if (!(rber > 0.0 && rber < 0.1))
        throw std::invalid_argument("rber must lie in (0, 0.1)");
    cfg.validate();
    const int t_max = cfg.k / cfg.m;
    for (int t = 0; t <= t_max; ++t)
        if (binomial_tail(t, cfg.k + t * cfg.m, rber) <= cfg.target_uncorrectable)
            return t;
    throw DomainError("RBER beyond code family");
}

double ecc_required_overhead(double rber, const EccConfig &cfg)
{
    return static_cast<double>(ecc_required_t(rber, cfg)) * cfg.m / cfg.k;
}

int ecc_correctable_t(const EccConfig &cfg) { return ecc_required_t(cfg.rber_limit, cfg); }

bool ecc_page_fails(std::uint64_t raw_errors, const EccConfig &cfg)
{
    return raw_errors > static_cast<std::uint64_t>(ecc_correctable_t(cfg));
}

} // namespace nandsim
