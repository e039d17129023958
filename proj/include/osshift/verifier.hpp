#pragma once

#include <utility>
#include <vector>

#include "osshift/family.hpp"
#include "osshift/montecarlo.hpp"

namespace osshift {

/// Outcome of a max-absolute-residual scan.
struct ResidualReport {
    double max_abs_residual = 0.0;
    double argmax_u = 0.0;  // probability-scale location of the maximum
    int grid_size = 0;
    double epsilon = 0.0;
    bool pass = false;
    double tolerance = 0.0;
};

/// Residual of the characterizing ODE b G'(t) + a H'(t) = G(t) - H(t)
/// on a u-grid over [epsilon, 1-epsilon]. G and H are the closed-form
/// CDFs of the relation's two sides in probability scale; t-derivatives
/// come from the chain rule through the model's quantile derivative.
ResidualReport ode_residual(const RelationSpec& rel, const QuantileModel& model, int grid_size,
                            double epsilon, double tolerance = 1e-10);

/// Contrasts the two candidate constants in the two-spacing correction
/// term W: the proof-consistent (n-2k-1) variant against the printed
/// (n-2k+1) variant. Each variant falls back to the linear form exactly
/// when its own constant vanishes. Returns (minus, plus) reports; the
/// minus variant is expected to pass and the plus variant to fail.
std::pair<ResidualReport, ResidualReport> typo_probe(int n, int k, ShiftPair shifts,
                                                     int grid_size, double epsilon = 1e-6,
                                                     double tolerance = 1e-10);

/// Checks the convolution form of the relation,
///   (1/a) int_{-inf}^{x} G(t) e^{(t-x)/a} dt
///     = (1/b) int_{x}^{inf} H(t) e^{(x-t)/b} dt,
/// by adaptive Simpson quadrature with an exponential-weight tail
/// substitution, at each requested x. Requires a > 0 and b > 0.
ResidualReport convolution_check(const RelationSpec& rel, const QuantileModel& model,
                                 const std::vector<double>& x_points,
                                 double tolerance = 1e-7);

/// Closed-form CDFs of the documented special cases;
/// used as oracles against the numeric model CDF.
enum class RemarkId {
    adjacent_exponential,        // F(t) = 1 - e^{-(t-c)},  t >= c
    adjacent_neg_exponential,    // F(t) = e^{t-c},  t <= c
    adjacent_logistic,           // F(t) = c1/(c1 + e^{-t/scale})
    adjacent_symmetric_logistic, // F(t) = 1/(1 + c2 e^{-t/k})
    power_max_exponentiated      // F(t) = (1 - e^{-beta (t-c)/(alpha+beta)})^{1/beta}
};

struct RemarkParams {
    double c = 0.0;      // location parameter
    double c1 = 1.0;
    double c2 = 1.0;
    double scale = 1.0;  // the implicit scale bk = a(n-k)
    int k = 1;
    double alpha = 1.0;
    double beta = 1.0;
};

double remark_closed_forms(RemarkId id, double t, const RemarkParams& params);

/// Compares the numeric model CDF against every remark closed form (and
/// the introduction's exponential and max-shift special cases) at
/// points_per_case support-interior points each. The report carries the
/// worst absolute CDF discrepancy.
ResidualReport remarks_suite(int points_per_case = 100, double tolerance = 1e-9);

}  // namespace osshift
