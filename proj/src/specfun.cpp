#include "netstrata/specfun.hpp"

#include <cmath>
#include <limits>

#include "netstrata/error.hpp"

namespace netstrata::specfun {

namespace {

constexpr double kEulerMascheroni = 0.57721566490153286060651209008240243;

// Modified Lentz evaluation of the continued fraction
//   Gamma(s, z) = z^s e^-z / (z + 1 - s - 1(1-s)/(z + 3 - s - 2(2-s)/(...)))
// Returns log Gamma(s, z). Reliable for z >= |s| + 2 or so.
double log_upper_gamma_cf(double s, double z) {
    const double tiny = 1e-300;
    double b = z + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return s * std::log(z) - z + std::log(h);
}

// Series for the regularized lower incomplete gamma P(s, z), s > 0.
// All terms positive; used for z below the continued-fraction regime.
double log_upper_gamma_series(double s, double z) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 1000; ++n) {
        term *= z / (s + n);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    // gamma_lower = z^s e^-z * sum ; P = gamma_lower / Gamma(s)
    double log_lower = s * std::log(z) - z + std::log(sum);
    double log_p = log_lower - std::lgamma(s);
    double p = std::exp(log_p);
    if (p >= 1.0) return -std::numeric_limits<double>::infinity();
    return std::log1p(-p) + std::lgamma(s);
}

}  // namespace

double expint_e1(double z) {
    if (z <= 0.0) fail("domain", "expint_e1 requires z > 0");
    if (z > 1.5) return std::exp(log_upper_gamma_cf(0.0, z));
    // Convergent series for small z.
    double sum = -kEulerMascheroni - std::log(z);
    double term = 1.0;
    for (int n = 1; n < 200; ++n) {
        term *= -z / n;
        double contrib = -term / n;
        sum += contrib;
        if (std::fabs(contrib) < 1e-18 * std::fabs(sum) + 1e-300) break;
    }
    return sum;
}

double log_upper_gamma(double s, double z) {
    if (!(z > 0.0)) fail("domain", "log_upper_gamma requires z > 0");
    if (z >= std::fabs(s) + 2.0 && z >= 2.0) return log_upper_gamma_cf(s, z);
    if (s > 0.0) return log_upper_gamma_series(s, z);
    if (std::fabs(s) < 1e-7) return std::log(expint_e1(z));

    // Walk down from s0 in (0, 1].
    int m = static_cast<int>(std::floor(-s)) + 1;
    double s0 = s + m;
    double log_g = s0 > 1e-7 ? log_upper_gamma_series(s0, z) : std::log(expint_e1(z));
    for (int j = 1; j <= m; ++j) {
        double k = s0 - j;
        if (std::fabs(k) < 1e-7) {
            log_g = std::log(expint_e1(z));
            continue;
        }
        // Gamma(k, z) = (z^k e^-z - Gamma(k+1, z)) / (-k), both terms positive.
        double log_a = k * std::log(z) - z;
        double diff = log_g - log_a;  // < 0 by the identity
        if (diff >= 0.0) diff = -1e-16;
        log_g = log_a + std::log1p(-std::exp(diff)) - std::log(-k);
    }
    return log_g;
}

double upper_gamma(double s, double z) { return std::exp(log_upper_gamma(s, z)); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double log_norm_tail(double z) {
    if (z < 30.0) return std::log(0.5 * std::erfc(z * M_SQRT1_2));
    // Asymptotic tail: 1 - Phi(z) ~ phi(z)/z * (1 - 1/z^2 + 3/z^4 - 15/z^6).
    double z2 = z * z;
    return -0.5 * z2 - std::log(z) - 0.5 * std::log(2.0 * M_PI) +
           std::log1p(-1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2));
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) fail("domain", "norm_quantile requires p in (0,1)");
    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Halley step against the erfc-based CDF.
    double e = norm_cdf(x) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0)) fail("domain", "hurwitz_zeta requires s > 1");
    if (!(q > 0.0)) fail("domain", "hurwitz_zeta requires q > 0");
    const int n = 12;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += std::pow(q + k, -s);
    double w = q + n;
    sum += std::pow(w, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(w, -s);
    // Euler-Maclaurin corrections with B2, B4, B6, B8.
    static const double bern[] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0};
    double rising = s;          // s, then s(s+1)(s+2), ...
    double wpow = std::pow(w, -s - 1.0);
    double fact = 2.0;          // (2j)!
    for (int j = 0; j < 4; ++j) {
        sum += bern[j] * rising * wpow / fact;
        rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
        wpow /= w * w;
        fact *= (2 * j + 3) * (2 * j + 4);
    }
    return sum;
}

}  // namespace netstrata::specfun
