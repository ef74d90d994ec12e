#pragma once

#include <span>

namespace lenia_moqd::metrics {

/// I_x(a, b) for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double x, double a, double b);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    int df = 0;
    /// Zero pooled variance with unequal means; p is reported as 0.
    bool degenerate_variance = false;
};

/// Equal-variance two-sample t-test, two-sided. Throws std::invalid_argument
/// when either sample has fewer than two values.
TTestResult pooled_t_test(std::span<const double> a, std::span<const double> b);

} // namespace lenia_moqd::metrics
