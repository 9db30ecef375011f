#include "adaptalpha/special_functions.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "adaptalpha/errors.hpp"

namespace adaptalpha::special {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;

// Lower incomplete gamma by power series, P(a,x) = x^a e^-x / Gamma(a+1) * sum.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps)
            return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
    }
    throw numeric_error("incomplete gamma series failed to converge (a=" + std::to_string(a) +
                        ", x=" + std::to_string(x) + ")");
}

// Upper incomplete gamma by Lentz continued fraction.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps)
            return h * std::exp(a * std::log(x) - x - std::lgamma(a));
    }
    throw numeric_error("incomplete gamma continued fraction failed to converge (a=" +
                        std::to_string(a) + ", x=" + std::to_string(x) + ")");
}

double beta_cf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps)
            return h;
    }
    throw numeric_error("incomplete beta continued fraction failed to converge (a=" +
                        std::to_string(a) + ", b=" + std::to_string(b) +
                        ", x=" + std::to_string(x) + ")");
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw domain_error("incomplete gamma requires shape a > 0, got a=" + std::to_string(a));
    if (!(x >= 0.0) || !std::isfinite(x))
        throw domain_error("incomplete gamma requires x >= 0, got x=" + std::to_string(x));
}

}  // namespace

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double beta_inc(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw domain_error("incomplete beta requires a, b > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw domain_error("incomplete beta requires x in [0,1], got x=" + std::to_string(x));
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double gamma_q_inv(double a, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw domain_error("gamma_q_inv requires tail probability in (0,1), got " +
                           std::to_string(q));
    check_gamma_args(a, 1.0);

    // bracket [lo, hi] with Q(lo) > q > Q(hi)
    double hi = a + 10.0 * std::sqrt(a) + 10.0 - std::log(q);
    while (gamma_q(a, hi) > q) hi *= 2.0;
    double lo = 0.0;

    // bisection to a rough bracket, then Newton on the log tail
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 64; ++i) {
        x = 0.5 * (lo + hi);
        if (gamma_q(a, x) > q) lo = x; else hi = x;
        if (hi - lo < 0.05 * std::max(1.0, x)) break;
    }
    x = 0.5 * (lo + hi);
    const double log_q = std::log(q);
    for (int i = 0; i < 100; ++i) {
        double qx = gamma_q(a, x);
        double log_pdf = (a - 1.0) * std::log(x) - x - std::lgamma(a);
        // d/dx log Q = -pdf/Q
        double step = (std::log(qx) - log_q) * qx / std::exp(log_pdf);
        double xn = x + step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (gamma_q(a, xn) > q) lo = xn; else hi = xn;
        bool converged = std::fabs(gamma_q(a, xn) - q) <= 1e-12 &&
                         std::fabs(xn - x) <= 1e-13 * std::max(1.0, std::fabs(xn));
        x = xn;
        if (converged) return x;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "gamma quantile inversion did not converge: a=%g target=%g last x=%g residual=%g",
                  a, q, x, gamma_q(a, x) - q);
    throw numeric_error(buf);
}

double beta_inc_inv(double a, double b, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("beta_inc_inv requires p in [0,1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    double x = 0.5;
    for (int i = 0; i < 200; ++i) {
        x = 0.5 * (lo + hi);
        double v = beta_inc(a, b, x);
        if (v < p) lo = x; else hi = x;
        if (hi - lo < 1e-4) break;
    }
    const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    for (int i = 0; i < 100; ++i) {
        double v = beta_inc(a, b, x);
        double pdf = std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta);
        double xn = x - (v - p) / pdf;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (beta_inc(a, b, xn) < p) lo = xn; else hi = xn;
        bool converged = std::fabs(beta_inc(a, b, xn) - p) <= 1e-13 &&
                         std::fabs(xn - x) <= 1e-13 * std::max(1e-6, xn);
        x = xn;
        if (converged) return x;
    }
    throw numeric_error("beta quantile inversion did not converge (a=" + std::to_string(a) +
                        ", b=" + std::to_string(b) + ", p=" + std::to_string(p) + ")");
}

// Wichura (1988), algorithm AS 241, PPND16.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw domain_error("normal_quantile requires p in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                    3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                  4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                  2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                  5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

}  // namespace adaptalpha::special
