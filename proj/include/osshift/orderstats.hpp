#pragma once

#include <cstdint>
#include <vector>

#include "osshift/family.hpp"
#include "osshift/random.hpp"

namespace osshift {

/// Rank i out of a sample of size n, 1 <= i <= n.
struct RankSpec {
    int i = 1;
    int n = 1;

    RankSpec(int i_, int n_);
};

/// Default ceiling on count * n for order-statistic sampling.
inline constexpr std::uint64_t kDefaultMaxDraws = 1'000'000'000ULL;

/// CDF of the i-th order statistic of n iid variables, in probability
/// scale: P(U_{i,n} <= u) as the binomial tail sum.
double os_cdf(double u, RankSpec rank);

/// d/du of os_cdf: n * C(n-1, i-1) * u^(i-1) * (1-u)^(n-i).
double os_cdf_deriv_u(double u, RankSpec rank);

/// u^gamma, the probability-scale CDF of the F^gamma power scheme.
double power_cdf(double u, double gamma);

/// Draws of the i-th order statistic of n uniforms, by sorting n fresh
/// uniforms per replicate. Deterministic given the stream.
std::vector<double> sample_uniform_order_stat(RankSpec rank, std::size_t count,
                                              RandomStream& stream,
                                              std::uint64_t max_draws = kDefaultMaxDraws);

/// Inverse-transform order-statistic draws: Q applied to uniform ones.
std::vector<double> sample_order_stat(const QuantileModel& model, RankSpec rank,
                                      std::size_t count, RandomStream& stream,
                                      std::uint64_t max_draws = kDefaultMaxDraws);

}  // namespace osshift
