#pragma once

#include <limits>
#include <variant>

namespace osshift {

/// Nonnegative multipliers (a, b) of the two independent exponential
/// shifts, not both zero.
struct ShiftPair {
    double a = 0.0;
    double b = 0.0;

    ShiftPair() = default;
    ShiftPair(double a_, double b_);
};

/// Support interval of a quantile model; endpoints may be infinite.
struct Support {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    bool contains_interior(double t) const { return t > lower && t < upper; }
};

/// Family characterized by the adjacent-order-statistic shift relation
/// X_{k,n} + a xi1 = X_{k+1,n} - b xi2 (in law):
///   Q(u) = logc + b k log(u) - a (n-k) log(1-u).
struct AdjacentShiftFamily {
    int n = 2;
    int k = 1;
    ShiftPair shifts;
    double logc = 0.0;

    AdjacentShiftFamily(int n_, int k_, ShiftPair shifts_, double logc_ = 0.0);

    double quantile(double u) const;
    double quantile_deriv(double u) const;
    Support support() const;
};

/// Family characterized by the two-spacing relation
/// X_{k,n} + a xi1 = X_{k+2,n} - b xi2 (in law):
///   Q(u) = logc + b k log(u) - a (n-k-1) log(1-u) - W(u),
/// where W is linear when n = 2k+1 and logarithmic otherwise.
struct TwoSpacingFamily {
    int n = 3;
    int k = 1;
    ShiftPair shifts;
    double logc = 0.0;

    TwoSpacingFamily(int n_, int k_, ShiftPair shifts_, double logc_ = 0.0);

    /// bk(n-k) + a(n-k-1)(k+1), always recomputed from the fields.
    double spacing_constant() const;

    /// The additive correction W(u; k, n).
    double shift_term(double u) const;
    double shift_term_deriv(double u) const;

    double quantile(double u) const;
    double quantile_deriv(double u) const;
    Support support() const;
};

/// Family characterized by the F^alpha-scheme max relation
/// Y1 + a xi1 = max{Y1, Y2} - b xi2 (in law):
///   Q(u) = logc + b alpha log(u) - d log(1 - u^beta),
///   d = [a (alpha+beta) + b alpha] / beta.
struct PowerMaxFamily {
    double alpha = 1.0;
    double beta = 1.0;
    ShiftPair shifts;
    double logc = 0.0;

    PowerMaxFamily(double alpha_, double beta_, ShiftPair shifts_, double logc_ = 0.0);

    /// [a(alpha+beta) + b alpha] / beta, recomputed on demand.
    double tail_exponent() const;

    double quantile(double u) const;
    double quantile_deriv(double u) const;
    Support support() const;
};

/// The max-order-statistic corollary family: PowerMaxFamily with
/// alpha = 1, beta = n-1, whose tail exponent equals (b + n a)/(n - 1).
PowerMaxFamily corollary_family(int n, ShiftPair shifts, double logc = 0.0);

using QuantileModel = std::variant<AdjacentShiftFamily, TwoSpacingFamily, PowerMaxFamily>;

double quantile(const QuantileModel& model, double u);
double quantile_deriv(const QuantileModel& model, double u);
Support support(const QuantileModel& model);

/// Numeric CDF: inverts the strictly increasing quantile by bisection
/// (absolute tolerance 1e-12 in u). Total over the reals: returns 0
/// below the support and 1 above it.
double cdf(const QuantileModel& model, double t);

/// Density 1/Q'(F(t)) strictly inside the support, 0 elsewhere.
double pdf(const QuantileModel& model, double t);

}  // namespace osshift
