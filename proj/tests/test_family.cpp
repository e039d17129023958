#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "osshift/family.hpp"

using namespace osshift;

namespace {

// Independent oracle: central finite difference of the quantile.
double fd_quantile_deriv(const QuantileModel& m, double u, double h = 1e-6) {
    return (quantile(m, u + h) - quantile(m, u - h)) / (2.0 * h);
}

std::vector<QuantileModel> representative_models() {
    return {
        AdjacentShiftFamily(2, 1, ShiftPair(1, 1)),
        AdjacentShiftFamily(5, 3, ShiftPair(0.5, 0), 0.0),
        AdjacentShiftFamily(3, 1, ShiftPair(0.5, 2), -0.4),
        TwoSpacingFamily(3, 1, ShiftPair(1, 1)),
        TwoSpacingFamily(4, 1, ShiftPair(1, 1), 0.3),
        TwoSpacingFamily(6, 2, ShiftPair(0.5, 2)),
        TwoSpacingFamily(7, 3, ShiftPair(2, 0.25), 1.1),
        PowerMaxFamily(1, 1, ShiftPair(0, 1)),
        PowerMaxFamily(2, 3, ShiftPair(1, 1), 0.2),
        PowerMaxFamily(0.5, 2.5, ShiftPair(0.5, 2)),
        corollary_family(4, ShiftPair(1, 0.5)),
    };
}

}  // namespace

TEST_CASE("shift pair invariants") {
    CHECK_THROWS_AS(ShiftPair(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ShiftPair(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ShiftPair(1.0, -0.5), std::invalid_argument);
    CHECK_NOTHROW(ShiftPair(1.0, 0.0));
    CHECK_NOTHROW(ShiftPair(0.0, 2.0));
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(AdjacentShiftFamily(2, 2, ShiftPair(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(AdjacentShiftFamily(1, 1, ShiftPair(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(TwoSpacingFamily(3, 2, ShiftPair(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(PowerMaxFamily(0.0, 1.0, ShiftPair(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(PowerMaxFamily(1.0, -2.0, ShiftPair(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(corollary_family(1, ShiftPair(1, 1)), std::invalid_argument);
}

TEST_CASE("adjacent quantile values") {
    AdjacentShiftFamily logistic(2, 1, ShiftPair(1, 1));
    CHECK(logistic.quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));

    AdjacentShiftFamily expo(5, 3, ShiftPair(0.5, 0));
    CHECK(expo.quantile(1.0 - std::exp(-2.0)) == doctest::Approx(2.0).epsilon(1e-12));

    AdjacentShiftFamily f(3, 1, ShiftPair(0.5, 2));
    CHECK(f.quantile(0.5) == doctest::Approx(std::log(0.5)).epsilon(1e-14));

    CHECK_THROWS_AS(f.quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(f.quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(f.quantile(-0.3), std::domain_error);
}

TEST_CASE("adjacent quantile derivative") {
    CHECK(AdjacentShiftFamily(2, 1, ShiftPair(1, 1)).quantile_deriv(0.5) == doctest::Approx(4.0));
    CHECK(AdjacentShiftFamily(3, 1, ShiftPair(0.5, 2)).quantile_deriv(0.5) ==
          doctest::Approx(6.0));
    CHECK(AdjacentShiftFamily(5, 3, ShiftPair(0.5, 0)).quantile_deriv(0.5) ==
          doctest::Approx(2.0));
}

TEST_CASE("two-spacing quantile values") {
    TwoSpacingFamily odd(3, 1, ShiftPair(1, 1));
    CHECK(odd.quantile(0.5) == doctest::Approx(-1.0).epsilon(1e-14));

    TwoSpacingFamily f(4, 1, ShiftPair(1, 1));
    CHECK(f.spacing_constant() == doctest::Approx(7.0));
    CHECK(f.quantile(0.5) ==
          doctest::Approx(std::log(2.0) - 7.0 * std::log(2.5)).epsilon(1e-14));

    // n = 2k+1 branch cancels algebraically: Q(u) + 2u = logit(u).
    for (double u = 0.05; u < 1.0; u += 0.05) {
        CHECK(odd.quantile(u) + 2.0 * u - std::log(u / (1.0 - u)) ==
              doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("two-spacing derivative forms agree") {
    TwoSpacingFamily odd(3, 1, ShiftPair(1, 1));
    CHECK(odd.quantile_deriv(0.5) == doctest::Approx(2.0));

    TwoSpacingFamily f(4, 1, ShiftPair(1, 1));
    CHECK(f.quantile_deriv(0.5) == doctest::Approx(3.2));

    // Partial-fraction form for n != 2k+1.
    for (const auto& fam : {TwoSpacingFamily(4, 1, ShiftPair(1, 1)),
                            TwoSpacingFamily(6, 2, ShiftPair(0.5, 2)),
                            TwoSpacingFamily(8, 2, ShiftPair(2, 0.25))}) {
        const int m = fam.n - 2 * fam.k - 1;
        REQUIRE(m != 0);
        for (double u = 0.02; u < 1.0; u += 0.02) {
            const double pf = fam.shifts.a * (fam.n - fam.k - 1) / (1.0 - u) +
                              fam.shifts.b * fam.k / u -
                              fam.spacing_constant() / (fam.k + 1 + m * u);
            CHECK(fam.quantile_deriv(u) == doctest::Approx(pf).epsilon(1e-12));
        }
    }

    // Linear-branch form for n = 2k+1.
    for (const auto& fam :
         {TwoSpacingFamily(5, 2, ShiftPair(1, 1)), TwoSpacingFamily(7, 3, ShiftPair(0.5, 2))}) {
        const double a = fam.shifts.a, b = fam.shifts.b;
        for (double u = 0.02; u < 1.0; u += 0.02) {
            const double lin = a * fam.k / (1.0 - u) + b * fam.k / u - (a + b) * fam.k;
            CHECK(fam.quantile_deriv(u) == doctest::Approx(lin).epsilon(1e-12));
        }
    }
}

TEST_CASE("power-max quantile values") {
    PowerMaxFamily logistic(1, 1, ShiftPair(0, 1));
    CHECK(logistic.quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));

    PowerMaxFamily expo(1, 1, ShiftPair(1, 0));
    CHECK(expo.quantile(1.0 - std::exp(-1.0)) == doctest::Approx(2.0).epsilon(1e-12));

    PowerMaxFamily f(2, 3, ShiftPair(1, 1));
    CHECK(f.tail_exponent() == doctest::Approx(7.0 / 3.0));
    CHECK(f.quantile(0.5) ==
          doctest::Approx(2.0 * std::log(0.5) - 7.0 / 3.0 * std::log(0.875)).epsilon(1e-14));
}

TEST_CASE("power-max derivative") {
    CHECK(PowerMaxFamily(1, 1, ShiftPair(0, 1)).quantile_deriv(0.5) == doctest::Approx(4.0));
    CHECK(PowerMaxFamily(2, 3, ShiftPair(1, 1)).quantile_deriv(0.5) == doctest::Approx(6.0));

    // beta = 1 reduces to b*alpha/u + ((a+b)*alpha + a)/(1-u).
    PowerMaxFamily f(2.5, 1, ShiftPair(0.7, 0.3));
    for (double u = 0.05; u < 1.0; u += 0.05) {
        const double expect = 0.3 * 2.5 / u + ((0.7 + 0.3) * 2.5 + 0.7) / (1.0 - u);
        CHECK(f.quantile_deriv(u) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("corollary reduction") {
    PowerMaxFamily c1 = corollary_family(2, ShiftPair(1, 0));
    CHECK(c1.alpha == 1.0);
    CHECK(c1.beta == 1.0);
    CHECK(c1.tail_exponent() == doctest::Approx(2.0));

    PowerMaxFamily c2 = corollary_family(3, ShiftPair(1, 1));
    CHECK(c2.tail_exponent() == doctest::Approx(2.0));

    // tail exponent equals (b + n a)/(n-1) and the quantile equals the
    // direct max-shift expression.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        double a = unif(rng), b = unif(rng);
        if (a == 0.0 && b == 0.0) a = 1.0;
        PowerMaxFamily fam = corollary_family(n, ShiftPair(a, b));
        CHECK(fam.tail_exponent() ==
              doctest::Approx((b + n * a) / (n - 1)).epsilon(1e-14));
        const double u = 0.01 + 0.98 * unif(rng) / 3.0;
        const double d = (b + n * a) / (n - 1);
        const double direct = b * std::log(u) - d * std::log1p(-std::pow(u, n - 1.0));
        CHECK(fam.quantile(u) == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("beta substitution identity") {
    // Q(u) = Hinv(u^beta) with Hinv the beta=1 quantile with exponents
    // b*alpha/beta and (a+b)*alpha/beta + a.
    for (const auto& fam : {PowerMaxFamily(2, 3, ShiftPair(1, 1), 0.4),
                            PowerMaxFamily(0.5, 2, ShiftPair(0.5, 2)),
                            PowerMaxFamily(3, 0.5, ShiftPair(0, 1), -0.7)}) {
        const double a = fam.shifts.a, b = fam.shifts.b;
        auto hinv = [&](double x) {
            return fam.logc + b * fam.alpha / fam.beta * std::log(x) -
                   ((a + b) * fam.alpha / fam.beta + a) * std::log1p(-x);
        };
        for (double u = 0.02; u < 1.0; u += 0.02) {
            CHECK(fam.quantile(u) ==
                  doctest::Approx(hinv(std::pow(u, fam.beta))).epsilon(1e-12));
        }
    }
}

TEST_CASE("monotonicity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& model : representative_models()) {
        for (int trial = 0; trial < 200; ++trial) {
            double u1 = unif(rng), u2 = unif(rng);
            if (u1 == u2 || u1 <= 0.0 || u2 >= 1.0) continue;
            if (u1 > u2) std::swap(u1, u2);
            CHECK(quantile(model, u1) < quantile(model, u2));
        }
    }
}

TEST_CASE("analytic derivative matches finite differences") {
    for (const auto& model : representative_models()) {
        for (int j = 0; j < 1000; ++j) {
            const double u = 0.001 + 0.998 * j / 999.0;
            const double fd = fd_quantile_deriv(model, u);
            const double an = quantile_deriv(model, u);
            CHECK(std::abs(an - fd) <= 1e-6 * std::abs(an));
        }
    }
}

TEST_CASE("cdf round trip") {
    for (const auto& model : representative_models()) {
        for (double u : {1e-6, 1e-4, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0 - 1e-4, 1.0 - 1e-6}) {
            CHECK(std::abs(cdf(model, quantile(model, u)) - u) <= 1e-10);
        }
    }
}

TEST_CASE("cdf closed-form points") {
    QuantileModel logistic = AdjacentShiftFamily(2, 1, ShiftPair(1, 1));
    CHECK(cdf(logistic, 0.0) == doctest::Approx(0.5).epsilon(1e-10));

    QuantileModel expo = AdjacentShiftFamily(5, 3, ShiftPair(0.5, 0));
    CHECK(cdf(expo, -1.0) == 0.0);
    CHECK(cdf(expo, 0.0) == 0.0);  // at the lower endpoint
    CHECK(cdf(expo, 50.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pdf values") {
    QuantileModel logistic = AdjacentShiftFamily(2, 1, ShiftPair(1, 1));
    CHECK(pdf(logistic, 0.0) == doctest::Approx(0.25).epsilon(1e-10));

    QuantileModel expo = AdjacentShiftFamily(5, 3, ShiftPair(0.5, 0));
    CHECK(pdf(expo, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(pdf(expo, -2.0) == 0.0);
    CHECK(pdf(expo, 0.0) == 0.0);  // endpoints are not interior
}

TEST_CASE("support classification") {
    const double inf = std::numeric_limits<double>::infinity();

    Support s1 = AdjacentShiftFamily(5, 3, ShiftPair(0.5, 0)).support();
    CHECK(s1.lower == 0.0);
    CHECK(s1.upper == inf);

    Support s2 = AdjacentShiftFamily(2, 1, ShiftPair(0, 1)).support();
    CHECK(s2.lower == -inf);
    CHECK(s2.upper == 0.0);

    Support s3 = AdjacentShiftFamily(2, 1, ShiftPair(1, 1)).support();
    CHECK(s3.lower == -inf);
    CHECK(s3.upper == inf);

    // Two-spacing upper endpoint with a = 0 includes the W(1) correction.
    TwoSpacingFamily t2(4, 1, ShiftPair(0, 1), 0.0);
    Support s4 = t2.support();
    CHECK(s4.lower == -inf);
    CHECK(s4.upper == doctest::Approx(-t2.shift_term(1.0)).epsilon(1e-15));
    const double top = quantile(QuantileModel(t2), 1.0 - 1e-13);
    CHECK(top < s4.upper);
    CHECK(s4.upper - top < 1e-9);

    Support s5 = PowerMaxFamily(2, 3, ShiftPair(1, 0), 0.5).support();
    CHECK(s5.lower == 0.5);
    CHECK(s5.upper == inf);
}

TEST_CASE("location equivariance") {
    const double delta = 1.7;
    AdjacentShiftFamily base(3, 2, ShiftPair(0.5, 2), 0.0);
    AdjacentShiftFamily moved(3, 2, ShiftPair(0.5, 2), delta);
    for (double u = 0.05; u < 1.0; u += 0.05) {
        CHECK(moved.quantile(u) - base.quantile(u) == doctest::Approx(delta).epsilon(1e-14));
    }
    for (double t : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
        CHECK(pdf(QuantileModel(moved), t + delta) ==
              doctest::Approx(pdf(QuantileModel(base), t)).epsilon(1e-9));
    }
}
