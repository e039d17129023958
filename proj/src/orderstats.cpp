#include "osshift/orderstats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace osshift {

namespace {

// Exact in double for n <= 60; log-gamma above that to avoid overflow.
double binom(int n, int j) {
    if (n <= 60) {
        double r = 1.0;
        j = std::min(j, n - j);
        for (int i = 1; i <= j; ++i) r = r * (n - j + i) / i;
        return r;
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0));
}

}  // namespace

RankSpec::RankSpec(int i_, int n_) : i(i_), n(n_) {
    if (n < 1 || i < 1 || i > n) {
        throw std::invalid_argument("rank spec requires 1 <= i <= n");
    }
}

double os_cdf(double u, RankSpec rank) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::domain_error("os_cdf requires u in [0,1]");
    }
    double sum = 0.0;
    for (int j = rank.n; j >= rank.i; --j) {
        sum += binom(rank.n, j) * std::pow(u, j) * std::pow(1.0 - u, rank.n - j);
    }
    return sum;
}

double os_cdf_deriv_u(double u, RankSpec rank) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("os_cdf_deriv_u requires u in (0,1)");
    }
    return rank.n * binom(rank.n - 1, rank.i - 1) * std::pow(u, rank.i - 1) *
           std::pow(1.0 - u, rank.n - rank.i);
}

double power_cdf(double u, double gamma) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::domain_error("power_cdf requires u in [0,1]");
    }
    if (!(gamma > 0.0)) {
        throw std::domain_error("power_cdf requires gamma > 0");
    }
    return std::pow(u, gamma);
}

std::vector<double> sample_uniform_order_stat(RankSpec rank, std::size_t count,
                                              RandomStream& stream, std::uint64_t max_draws) {
    const std::uint64_t total = static_cast<std::uint64_t>(count) * rank.n;
    if (total > max_draws) {
        throw std::length_error("order-statistic sampling would exceed the total-draw cap");
    }
    std::vector<double> out(count);
    std::vector<double> buf(rank.n);
    for (std::size_t r = 0; r < count; ++r) {
        for (auto& v : buf) v = stream.next_uniform();
        std::nth_element(buf.begin(), buf.begin() + (rank.i - 1), buf.end());
        out[r] = buf[rank.i - 1];
    }
    return out;
}

std::vector<double> sample_order_stat(const QuantileModel& model, RankSpec rank,
                                      std::size_t count, RandomStream& stream,
                                      std::uint64_t max_draws) {
    std::vector<double> out = sample_uniform_order_stat(rank, count, stream, max_draws);
    for (auto& u : out) u = quantile(model, u);
    return out;
}

}  // namespace osshift
