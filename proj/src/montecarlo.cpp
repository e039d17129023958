#include "osshift/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace osshift {

namespace {

constexpr std::size_t kChunkSize = 16384;

// Substream roles within one chunk.
enum : std::uint64_t { kLeftBase = 0, kLeftShift = 1, kRightBase = 2, kRightShift = 3 };

double kth_of_n_uniforms(RandomStream& s, int k, int n, std::vector<double>& buf) {
    buf.resize(n);
    for (auto& v : buf) v = s.next_uniform();
    std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end());
    return buf[k - 1];
}

}  // namespace

const char* to_string(RelationKind kind) {
    switch (kind) {
        case RelationKind::adjacent: return "adjacent";
        case RelationKind::two_spacing: return "two_spacing";
        case RelationKind::power_max: return "power_max";
        case RelationKind::corollary_max: return "corollary_max";
    }
    return "unknown";
}

RelationSpec RelationSpec::adjacent(int n, int k, ShiftPair shifts) {
    if (n < 2 || k < 1 || k > n - 1) {
        throw std::invalid_argument("adjacent relation requires 1 <= k <= n-1");
    }
    return RelationSpec{RelationKind::adjacent, n, k, 0.0, 0.0, shifts};
}

RelationSpec RelationSpec::two_spacing(int n, int k, ShiftPair shifts) {
    if (n < 3 || k < 1 || k > n - 2) {
        throw std::invalid_argument("two-spacing relation requires 1 <= k <= n-2");
    }
    return RelationSpec{RelationKind::two_spacing, n, k, 0.0, 0.0, shifts};
}

RelationSpec RelationSpec::power_max(double alpha, double beta, ShiftPair shifts) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::invalid_argument("power-max relation requires alpha > 0 and beta > 0");
    }
    return RelationSpec{RelationKind::power_max, 0, 0, alpha, beta, shifts};
}

RelationSpec RelationSpec::corollary_max(int n, ShiftPair shifts) {
    if (n < 2) throw std::invalid_argument("corollary relation requires n >= 2");
    return RelationSpec{RelationKind::corollary_max, n, 0, 1.0, static_cast<double>(n - 1),
                        shifts};
}

void RelationSpec::check_matches(const QuantileModel& model) const {
    const bool ok = [&] {
        switch (kind) {
            case RelationKind::adjacent: {
                const auto* f = std::get_if<AdjacentShiftFamily>(&model);
                return f && f->n == n && f->k == k;
            }
            case RelationKind::two_spacing: {
                const auto* f = std::get_if<TwoSpacingFamily>(&model);
                return f && f->n == n && f->k == k;
            }
            case RelationKind::power_max: {
                const auto* f = std::get_if<PowerMaxFamily>(&model);
                return f && f->alpha == alpha && f->beta == beta;
            }
            case RelationKind::corollary_max: {
                const auto* f = std::get_if<PowerMaxFamily>(&model);
                return f && f->alpha == 1.0 && f->beta == static_cast<double>(n - 1);
            }
        }
        return false;
    }();
    if (!ok) {
        throw std::invalid_argument(
            "relation and model disagree on family kind or structural parameters");
    }
}

std::vector<double> sample_exponential(std::size_t count, RandomStream& stream) {
    std::vector<double> out(count);
    for (auto& v : out) v = -std::log1p(-stream.next_uniform());
    return out;
}

RelationComponents simulate_components(const RelationSpec& rel, const QuantileModel& model,
                                       std::size_t count, const RandomStream& stream,
                                       unsigned workers) {
    rel.check_matches(model);
    if (workers == 0) workers = 1;

    RelationComponents comp;
    comp.left_base.resize(count);
    comp.left_shift.resize(count);
    comp.right_base.resize(count);
    comp.right_shift.resize(count);

    const std::size_t n_chunks = (count + kChunkSize - 1) / kChunkSize;

    auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = c * kChunkSize;
        const std::size_t hi = std::min(lo + kChunkSize, count);
        RandomStream s_lb = stream.substream(4 * c + kLeftBase);
        RandomStream s_ls = stream.substream(4 * c + kLeftShift);
        RandomStream s_rb = stream.substream(4 * c + kRightBase);
        RandomStream s_rs = stream.substream(4 * c + kRightShift);
        std::vector<double> buf;
        for (std::size_t r = lo; r < hi; ++r) {
            double ul, ur;
            switch (rel.kind) {
                case RelationKind::adjacent:
                    ul = kth_of_n_uniforms(s_lb, rel.k, rel.n, buf);
                    ur = kth_of_n_uniforms(s_rb, rel.k + 1, rel.n, buf);
                    break;
                case RelationKind::two_spacing:
                    ul = kth_of_n_uniforms(s_lb, rel.k, rel.n, buf);
                    ur = kth_of_n_uniforms(s_rb, rel.k + 2, rel.n, buf);
                    break;
                case RelationKind::power_max:
                    // F^alpha(Y) uniform  =>  F(Y) = U^(1/alpha); the max of the
                    // pair carries exponent alpha+beta.
                    ul = std::pow(s_lb.next_uniform(), 1.0 / rel.alpha);
                    ur = std::pow(s_rb.next_uniform(), 1.0 / (rel.alpha + rel.beta));
                    break;
                case RelationKind::corollary_max:
                default:
                    ul = s_lb.next_uniform();
                    ur = std::pow(s_rb.next_uniform(), 1.0 / rel.n);
                    break;
            }
            comp.left_base[r] = quantile(model, ul);
            comp.right_base[r] = quantile(model, ur);
            comp.left_shift[r] = -std::log1p(-s_ls.next_uniform());
            comp.right_shift[r] = -std::log1p(-s_rs.next_uniform());
        }
    };

    if (workers == 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t c = w; c < n_chunks; c += workers) run_chunk(c);
            });
        }
        for (auto& t : pool) t.join();
    }
    return comp;
}

std::pair<std::vector<double>, std::vector<double>> simulate_sides(
    const RelationSpec& rel, const QuantileModel& model, std::size_t count,
    const RandomStream& stream, unsigned workers) {
    RelationComponents comp = simulate_components(rel, model, count, stream, workers);
    std::vector<double> left(count), right(count);
    for (std::size_t r = 0; r < count; ++r) {
        left[r] = comp.left_base[r] + rel.shifts.a * comp.left_shift[r];
        right[r] = comp.right_base[r] - rel.shifts.b * comp.right_shift[r];
    }
    return {std::move(left), std::move(right)};
}

KSReport ks_two_sample(const std::vector<double>& left, const std::vector<double>& right,
                       double alpha, std::uint64_t seed) {
    if (left.empty() || right.empty()) {
        throw std::invalid_argument("ks_two_sample requires two nonempty samples");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("ks_two_sample requires 0 < alpha < 1");
    }
    std::vector<double> x = left, y = right;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double m = static_cast<double>(x.size());
    const double n = static_cast<double>(y.size());

    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(i / m - j / n));
    }

    KSReport rep;
    rep.statistic = d;
    rep.alpha = alpha;
    rep.threshold = std::sqrt(-std::log(alpha / 2.0) / 2.0) * std::sqrt((m + n) / (m * n));
    rep.n_left = x.size();
    rep.n_right = y.size();
    rep.pass = rep.statistic < rep.threshold;
    rep.seed = seed;
    return rep;
}

}  // namespace osshift
