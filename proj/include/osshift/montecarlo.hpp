#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "osshift/family.hpp"
#include "osshift/random.hpp"

namespace osshift {

/// The four characterizing equalities in law.
enum class RelationKind { adjacent, two_spacing, power_max, corollary_max };

const char* to_string(RelationKind kind);

/// One shifted-order-statistic relation: which identity, its structural
/// parameters, and the shift multipliers used on both sides.
struct RelationSpec {
    RelationKind kind = RelationKind::adjacent;
    int n = 0;
    int k = 0;
    double alpha = 0.0;
    double beta = 0.0;
    ShiftPair shifts;

    static RelationSpec adjacent(int n, int k, ShiftPair shifts);
    static RelationSpec two_spacing(int n, int k, ShiftPair shifts);
    static RelationSpec power_max(double alpha, double beta, ShiftPair shifts);
    static RelationSpec corollary_max(int n, ShiftPair shifts);

    /// Throws std::invalid_argument unless the model is the family type
    /// matching this relation with the same structural parameters.
    /// Shift multipliers are allowed to differ (perturbed controls).
    void check_matches(const QuantileModel& model) const;
};

/// Two-sample Kolmogorov-Smirnov outcome.
struct KSReport {
    double statistic = 0.0;
    double threshold = 0.0;
    double alpha = 0.0;
    std::size_t n_left = 0;
    std::size_t n_right = 0;
    bool pass = false;
    std::uint64_t seed = 0;
};

/// Standard exponentials via inverse transform -log(1-U).
std::vector<double> sample_exponential(std::size_t count, RandomStream& stream);

/// The four independent ingredients of one simulated relation, before
/// the shifts are applied. Exposed for independence diagnostics.
struct RelationComponents {
    std::vector<double> left_base;    // Q of the left-side uniform order statistic
    std::vector<double> left_shift;   // xi1 draws
    std::vector<double> right_base;   // Q of the right-side uniform order statistic
    std::vector<double> right_shift;  // xi2 draws
};

/// Simulates the raw components on disjoint substreams. Work is split
/// into fixed-size chunks keyed by chunk number, so the result does not
/// depend on the worker count.
RelationComponents simulate_components(const RelationSpec& rel, const QuantileModel& model,
                                       std::size_t count, const RandomStream& stream,
                                       unsigned workers = 1);

/// Draws of the relation's left side (base + a*xi1) and right side
/// (base - b*xi2), using the relation's shift multipliers.
std::pair<std::vector<double>, std::vector<double>> simulate_sides(
    const RelationSpec& rel, const QuantileModel& model, std::size_t count,
    const RandomStream& stream, unsigned workers = 1);

/// Two-sample KS test with the asymptotic critical value
/// c(alpha)*sqrt((m+n)/(m*n)), c(alpha) = sqrt(-ln(alpha/2)/2).
KSReport ks_two_sample(const std::vector<double>& left, const std::vector<double>& right,
                       double alpha, std::uint64_t seed = 0);

}  // namespace osshift
