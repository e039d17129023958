#include "osshift/verifier.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "osshift/orderstats.hpp"

namespace osshift {

namespace {

// Probability-scale CDFs and u-derivative kernels of a relation's sides.
struct SideKernels {
    std::function<double(double)> G, Gp, H, Hp;
};

SideKernels side_kernels(const RelationSpec& rel) {
    switch (rel.kind) {
        case RelationKind::adjacent: {
            RankSpec lo(rel.k, rel.n), hi(rel.k + 1, rel.n);
            return {[lo](double u) { return os_cdf(u, lo); },
                    [lo](double u) { return os_cdf_deriv_u(u, lo); },
                    [hi](double u) { return os_cdf(u, hi); },
                    [hi](double u) { return os_cdf_deriv_u(u, hi); }};
        }
        case RelationKind::two_spacing: {
            RankSpec lo(rel.k, rel.n), hi(rel.k + 2, rel.n);
            return {[lo](double u) { return os_cdf(u, lo); },
                    [lo](double u) { return os_cdf_deriv_u(u, lo); },
                    [hi](double u) { return os_cdf(u, hi); },
                    [hi](double u) { return os_cdf_deriv_u(u, hi); }};
        }
        case RelationKind::power_max:
        case RelationKind::corollary_max:
        default: {
            const double a = rel.alpha, s = rel.alpha + rel.beta;
            return {[a](double u) { return power_cdf(u, a); },
                    [a](double u) { return a * std::pow(u, a - 1.0); },
                    [s](double u) { return power_cdf(u, s); },
                    [s](double u) { return s * std::pow(u, s - 1.0); }};
        }
    }
}

ResidualReport scan_residual(const RelationSpec& rel,
                             const std::function<double(double)>& quantile_deriv_fn,
                             int grid_size, double epsilon, double tolerance) {
    if (grid_size < 2) throw std::invalid_argument("ode_residual requires grid_size >= 2");
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw std::invalid_argument("ode_residual requires 0 < epsilon < 0.5");
    }
    const SideKernels ker = side_kernels(rel);
    const double a = rel.shifts.a, b = rel.shifts.b;

    ResidualReport rep;
    rep.grid_size = grid_size;
    rep.epsilon = epsilon;
    rep.tolerance = tolerance;
    for (int j = 0; j < grid_size; ++j) {
        const double u = epsilon + (1.0 - 2.0 * epsilon) * j / (grid_size - 1);
        const double qp = quantile_deriv_fn(u);
        const double res = (b * ker.Gp(u) + a * ker.Hp(u)) / qp - (ker.G(u) - ker.H(u));
        if (std::abs(res) > rep.max_abs_residual) {
            rep.max_abs_residual = std::abs(res);
            rep.argmax_u = u;
        }
    }
    rep.pass = rep.max_abs_residual <= tolerance;
    return rep;
}

// Adaptive Simpson with absolute tolerance, standard three-point refinement.
double simpson_segment(const std::function<double(double)>& f, double lo, double hi, double flo,
                       double fmid, double fhi, double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double fl = f(0.5 * (lo + mid));
    const double fr = f(0.5 * (mid + hi));
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson_segment(f, lo, mid, flo, fl, fmid, left, tol / 2.0, depth - 1) +
           simpson_segment(f, mid, hi, fmid, fr, fhi, right, tol / 2.0, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double tol) {
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return simpson_segment(f, lo, hi, flo, fmid, fhi, whole, tol, 48);
}

// Two-spacing quantile derivative with a chosen W constant; the linear
// form applies exactly when that constant vanishes.
double variant_quantile_deriv(double u, int n, int k, ShiftPair shifts, int w_constant) {
    const double d = shifts.b * k * (n - k) + shifts.a * (n - k - 1) * (k + 1);
    const double wp =
        w_constant == 0 ? (shifts.a + shifts.b) * k : d / (k + 1 + w_constant * u);
    return shifts.b * k / u + shifts.a * (n - k - 1) / (1.0 - u) - wp;
}

}  // namespace

ResidualReport ode_residual(const RelationSpec& rel, const QuantileModel& model, int grid_size,
                            double epsilon, double tolerance) {
    return scan_residual(
        rel, [&model](double u) { return quantile_deriv(model, u); }, grid_size, epsilon,
        tolerance);
}

std::pair<ResidualReport, ResidualReport> typo_probe(int n, int k, ShiftPair shifts,
                                                     int grid_size, double epsilon,
                                                     double tolerance) {
    if (n < 3 || k < 1 || k > n - 2) {
        throw std::domain_error("typo_probe requires 1 <= k <= n-2");
    }
    const RelationSpec rel = RelationSpec::two_spacing(n, k, shifts);
    auto variant = [&](int w_constant) {
        return scan_residual(
            rel,
            [=](double u) { return variant_quantile_deriv(u, n, k, shifts, w_constant); },
            grid_size, epsilon, tolerance);
    };
    return {variant(n - 2 * k - 1), variant(n - 2 * k + 1)};
}

ResidualReport convolution_check(const RelationSpec& rel, const QuantileModel& model,
                                 const std::vector<double>& x_points, double tolerance) {
    if (!(rel.shifts.a > 0.0 && rel.shifts.b > 0.0)) {
        throw std::invalid_argument(
            "convolution_check is defined only for a > 0 and b > 0 (the identity degenerates "
            "otherwise)");
    }
    if (x_points.empty()) {
        throw std::invalid_argument("convolution_check requires at least one x point");
    }
    const SideKernels ker = side_kernels(rel);
    const double a = rel.shifts.a, b = rel.shifts.b;
    // e^{-45} ~ 3e-20: truncation negligible against the 1e-9 quadrature tolerance.
    constexpr double kTailCut = 45.0;
    constexpr double kQuadTol = 1e-9;

    ResidualReport rep;
    rep.grid_size = static_cast<int>(x_points.size());
    rep.tolerance = tolerance;
    for (double x : x_points) {
        const double left = adaptive_simpson(
            [&](double w) { return ker.G(cdf(model, x - a * w)) * std::exp(-w); }, 0.0,
            kTailCut, kQuadTol);
        const double right = adaptive_simpson(
            [&](double w) { return ker.H(cdf(model, x + b * w)) * std::exp(-w); }, 0.0,
            kTailCut, kQuadTol);
        const double diff = std::abs(left - right);
        if (diff > rep.max_abs_residual) {
            rep.max_abs_residual = diff;
            rep.argmax_u = cdf(model, x);
        }
    }
    rep.pass = rep.max_abs_residual <= tolerance;
    return rep;
}

double remark_closed_forms(RemarkId id, double t, const RemarkParams& p) {
    switch (id) {
        case RemarkId::adjacent_exponential:
            return t <= p.c ? 0.0 : 1.0 - std::exp(-(t - p.c));
        case RemarkId::adjacent_neg_exponential:
            return t >= p.c ? 1.0 : std::exp(t - p.c);
        case RemarkId::adjacent_logistic:
            return p.c1 / (p.c1 + std::exp(-t / p.scale));
        case RemarkId::adjacent_symmetric_logistic:
            return 1.0 / (1.0 + p.c2 * std::exp(-t / p.k));
        case RemarkId::power_max_exponentiated:
            return t <= p.c ? 0.0
                            : std::pow(1.0 - std::exp(-p.beta * (t - p.c) / (p.alpha + p.beta)),
                                       1.0 / p.beta);
    }
    throw std::domain_error("unknown remark id");
}

ResidualReport remarks_suite(int points_per_case, double tolerance) {
    if (points_per_case < 1) {
        throw std::invalid_argument("remarks_suite requires points_per_case >= 1");
    }

    struct Case {
        QuantileModel model;
        RemarkId id;
        RemarkParams params;
    };
    std::vector<Case> cases;

    // Exponential: a = 1/(n-k), b = 0; location logc.
    cases.push_back({AdjacentShiftFamily(5, 3, ShiftPair(0.5, 0.0), 0.7),
                     RemarkId::adjacent_exponential, RemarkParams{.c = 0.7}});
    cases.push_back({AdjacentShiftFamily(4, 1, ShiftPair(1.0 / 3.0, 0.0), -0.3),
                     RemarkId::adjacent_exponential, RemarkParams{.c = -0.3}});
    // Negative exponential: a = 0, b = 1, k = 1.
    cases.push_back({AdjacentShiftFamily(3, 1, ShiftPair(0.0, 1.0), -0.2),
                     RemarkId::adjacent_neg_exponential, RemarkParams{.c = -0.2}});
    // Logistic with implicit scale s = bk = a(n-k): here s = 3.
    cases.push_back({AdjacentShiftFamily(5, 2, ShiftPair(1.0, 1.5), 0.4),
                     RemarkId::adjacent_logistic,
                     RemarkParams{.c1 = std::exp(-0.4 / 3.0), .scale = 3.0}});
    // n = 2k, a = b = 1: F(t) = 1/(1 + c2 e^{-t/k}).
    cases.push_back({AdjacentShiftFamily(6, 3, ShiftPair(1.0, 1.0), 0.9),
                     RemarkId::adjacent_symmetric_logistic,
                     RemarkParams{.c2 = std::exp(0.9 / 3.0), .k = 3}});
    // Power-max with a = 1, b = 0: exponentiated exponential.
    cases.push_back({PowerMaxFamily(2.0, 3.0, ShiftPair(1.0, 0.0), 0.5),
                     RemarkId::power_max_exponentiated,
                     RemarkParams{.c = 0.5, .alpha = 2.0, .beta = 3.0}});
    // Max-shift special cases: (a,b) = (1,0) and (0,1) through the corollary.
    cases.push_back({corollary_family(3, ShiftPair(1.0, 0.0), 0.2),
                     RemarkId::power_max_exponentiated,
                     RemarkParams{.c = 0.2, .alpha = 1.0, .beta = 2.0}});
    cases.push_back({corollary_family(2, ShiftPair(0.0, 1.0), 0.3),
                     RemarkId::adjacent_logistic,
                     RemarkParams{.c1 = std::exp(-0.3), .scale = 1.0}});

    ResidualReport rep;
    rep.grid_size = points_per_case;
    rep.tolerance = tolerance;
    for (const auto& c : cases) {
        for (int j = 0; j < points_per_case; ++j) {
            const double u = (j + 0.5) / points_per_case;
            const double t = quantile(c.model, u);
            const double diff = std::abs(remark_closed_forms(c.id, t, c.params) - cdf(c.model, t));
            if (diff > rep.max_abs_residual) {
                rep.max_abs_residual = diff;
                rep.argmax_u = u;
            }
        }
    }
    rep.pass = rep.max_abs_residual <= tolerance;
    return rep;
}

}  // namespace osshift
