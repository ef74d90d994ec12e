#include <lenia_moqd/metrics/stats.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lenia_moqd::metrics {

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double x, double a, double b)
{
    constexpr int kMaxIterations = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny)
        d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps)
            return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double sum_squared_deviation(std::span<const double> v, double m)
{
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return s;
}

} // namespace

double regularized_incomplete_beta(double x, double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("incomplete beta requires a, b > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("incomplete beta requires x in [0, 1]");
    if (x == 0.0 || x == 1.0)
        return x;
    const double log_front
        = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_continued_fraction(x, a, b) / a;
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double student_t_two_sided_p(double t, double df)
{
    if (!(df > 0.0))
        throw std::invalid_argument("degrees of freedom must be positive");
    if (std::isnan(t))
        return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t))
        return 0.0;
    return regularized_incomplete_beta(df / (df + t * t), 0.5 * df, 0.5);
}

TTestResult pooled_t_test(std::span<const double> a, std::span<const double> b)
{
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("t-test needs at least two values per sample");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = mean(a);
    const double mb = mean(b);
    TTestResult r;
    r.df = static_cast<int>(a.size() + b.size() - 2);
    const double pooled = (sum_squared_deviation(a, ma) + sum_squared_deviation(b, mb)) / r.df;
    const double se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    if (se == 0.0) {
        if (ma == mb)
            return r;
        r.t = ma > mb ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
        r.p = 0.0;
        r.degenerate_variance = true;
        return r;
    }
    r.t = (ma - mb) / se;
    r.p = std::clamp(student_t_two_sided_p(r.t, r.df), 0.0, 1.0);
    return r;
}

} // namespace lenia_moqd::metrics
