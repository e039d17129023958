#include "osshift/family.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace osshift {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit_interval(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("u must lie strictly inside (0,1), got " + std::to_string(u));
    }
}

}  // namespace

ShiftPair::ShiftPair(double a_, double b_) : a(a_), b(b_) {
    if (!(a >= 0.0) || !(b >= 0.0)) {
        throw std::invalid_argument("shift multipliers must satisfy a >= 0 and b >= 0");
    }
    if (a == 0.0 && b == 0.0) {
        throw std::invalid_argument("shift multipliers must satisfy (a,b) != (0,0)");
    }
}

// ---------------------------------------------------------------------------
// AdjacentShiftFamily

AdjacentShiftFamily::AdjacentShiftFamily(int n_, int k_, ShiftPair shifts_, double logc_)
    : n(n_), k(k_), shifts(shifts_), logc(logc_) {
    if (n < 2) throw std::invalid_argument("adjacent family requires n >= 2");
    if (k < 1 || k > n - 1) throw std::invalid_argument("adjacent family requires 1 <= k <= n-1");
}

double AdjacentShiftFamily::quantile(double u) const {
    require_unit_interval(u);
    return logc + shifts.b * k * std::log(u) - shifts.a * (n - k) * std::log1p(-u);
}

double AdjacentShiftFamily::quantile_deriv(double u) const {
    require_unit_interval(u);
    return shifts.b * k / u + shifts.a * (n - k) / (1.0 - u);
}

Support AdjacentShiftFamily::support() const {
    Support s;
    if (shifts.b == 0.0) s.lower = logc;
    if (shifts.a == 0.0) s.upper = logc;
    return s;
}

// ---------------------------------------------------------------------------
// TwoSpacingFamily

TwoSpacingFamily::TwoSpacingFamily(int n_, int k_, ShiftPair shifts_, double logc_)
    : n(n_), k(k_), shifts(shifts_), logc(logc_) {
    if (n < 3) throw std::invalid_argument("two-spacing family requires n >= 3");
    if (k < 1 || k > n - 2) throw std::invalid_argument("two-spacing family requires 1 <= k <= n-2");
}

double TwoSpacingFamily::spacing_constant() const {
    return shifts.b * k * (n - k) + shifts.a * (n - k - 1) * (k + 1);
}

double TwoSpacingFamily::shift_term(double u) const {
    const int m = n - 2 * k - 1;
    if (m == 0) return (shifts.a + shifts.b) * k * u;
    return spacing_constant() * std::log(k + 1 + m * u) / m;
}

double TwoSpacingFamily::shift_term_deriv(double u) const {
    const int m = n - 2 * k - 1;
    if (m == 0) return (shifts.a + shifts.b) * k;
    return spacing_constant() / (k + 1 + m * u);
}

double TwoSpacingFamily::quantile(double u) const {
    require_unit_interval(u);
    return logc + shifts.b * k * std::log(u) - shifts.a * (n - k - 1) * std::log1p(-u) -
           shift_term(u);
}

double TwoSpacingFamily::quantile_deriv(double u) const {
    require_unit_interval(u);
    const double a = shifts.a, b = shifts.b;
    const double num = a * (n - k - 1) * (n - k) * u * u + b * k * (k + 1) * (1.0 - u) * (1.0 - u);
    const double den = u * (1.0 - u) * (k + 1 + (n - 2 * k - 1) * u);
    return num / den;
}

Support TwoSpacingFamily::support() const {
    Support s;
    if (shifts.b == 0.0) s.lower = logc - shift_term(0.0);
    if (shifts.a == 0.0) s.upper = logc - shift_term(1.0);
    return s;
}

// ---------------------------------------------------------------------------
// PowerMaxFamily

PowerMaxFamily::PowerMaxFamily(double alpha_, double beta_, ShiftPair shifts_, double logc_)
    : alpha(alpha_), beta(beta_), shifts(shifts_), logc(logc_) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power-max family requires alpha > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("power-max family requires beta > 0");
}

double PowerMaxFamily::tail_exponent() const {
    return (shifts.a * (alpha + beta) + shifts.b * alpha) / beta;
}

double PowerMaxFamily::quantile(double u) const {
    require_unit_interval(u);
    return logc + shifts.b * alpha * std::log(u) -
           tail_exponent() * std::log1p(-std::pow(u, beta));
}

double PowerMaxFamily::quantile_deriv(double u) const {
    require_unit_interval(u);
    const double ub = std::pow(u, beta);
    return shifts.b * alpha / u + tail_exponent() * beta * ub / (u * (1.0 - ub));
}

Support PowerMaxFamily::support() const {
    // tail_exponent() > 0 for every valid shift pair, so the upper
    // endpoint is always +inf.
    Support s;
    if (shifts.b == 0.0) s.lower = logc;
    return s;
}

PowerMaxFamily corollary_family(int n, ShiftPair shifts, double logc) {
    if (n < 2) throw std::invalid_argument("corollary family requires n >= 2");
    return PowerMaxFamily(1.0, static_cast<double>(n - 1), shifts, logc);
}

// ---------------------------------------------------------------------------
// Generic model operations

double quantile(const QuantileModel& model, double u) {
    return std::visit([u](const auto& fam) { return fam.quantile(u); }, model);
}

double quantile_deriv(const QuantileModel& model, double u) {
    return std::visit([u](const auto& fam) { return fam.quantile_deriv(u); }, model);
}

Support support(const QuantileModel& model) {
    return std::visit([](const auto& fam) { return fam.support(); }, model);
}

double cdf(const QuantileModel& model, double t) {
    const Support s = support(model);
    if (std::isfinite(s.lower) && t <= s.lower) return 0.0;
    if (std::isfinite(s.upper) && t >= s.upper) return 1.0;

    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (quantile(model, mid) < t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double pdf(const QuantileModel& model, double t) {
    if (!support(model).contains_interior(t)) return 0.0;
    const double u = cdf(model, t);
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return 1.0 / quantile_deriv(model, u);
}

}  // namespace osshift
