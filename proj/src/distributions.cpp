#include "reabc/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace reabc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Quantiles at u = 0 or 1 must stay finite: slice sampling can propose
// boundary points and the simulator has to keep producing numbers.
double clamp_u(double u) {
    if (std::isnan(u) || u < 0.0 || u > 1.0) {
        throw std::invalid_argument("quantile: u must lie in [0,1]");
    }
    if (u <= 0.0) return 1e-300;
    if (u >= 1.0) return 1.0 - 1e-16;
    return u;
}

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || std::isinf(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

// Series expansion of P(a,x), for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), for x >= a+1 (modified Lentz).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_p(double a, double x) {
    check_positive(a, "gamma shape");
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    check_positive(a, "gamma shape");
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double normal_quantile(double u) {
    u = clamp_u(u);
    // Wichura (1988), algorithm AS 241, PPND16.
    const double q = u - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = (q < 0.0) ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -value : value;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double exponential_quantile(double u, double rate) {
    check_positive(rate, "exponential rate");
    u = clamp_u(u);
    return -std::log1p(-u) / rate;
}

double exponential_cdf(double x, double rate) {
    check_positive(rate, "exponential rate");
    if (x <= 0.0) return 0.0;
    return -std::expm1(-rate * x);
}

double gamma_cdf(double x, double shape, double rate) {
    check_positive(shape, "gamma shape");
    check_positive(rate, "gamma rate");
    if (x <= 0.0) return 0.0;
    return gamma_p(shape, rate * x);
}

double gamma_quantile(double u, double shape, double rate) {
    check_positive(shape, "gamma shape");
    check_positive(rate, "gamma rate");
    u = clamp_u(u);

    // Solve P(shape, y) = u for y, then rescale by the rate. Start from the
    // Wilson-Hilferty approximation, falling back to inverting the leading
    // series term P(a,y) ~ y^a / (a Gamma(a)) deep in the left tail, and
    // polish with Newton iterations safeguarded by a bisection bracket.
    const double a = shape;
    double lo = 0.0;
    double hi = a + 1.0;
    while (gamma_p(a, hi) < u && hi < 1e12) hi *= 2.0;

    const double g = normal_quantile(u);
    double y = a * std::pow(1.0 - 1.0 / (9.0 * a) + g / (3.0 * std::sqrt(a)), 3.0);
    if (!(y > lo) || !(y < hi)) {
        y = std::exp((std::log(u) + std::log(a) + std::lgamma(a)) / a);
        if (!(y > lo) || !(y < hi)) y = 0.5 * (lo + hi);
    }

    // Above the median, iterate on Q(a,y) = 1 - u instead: P evaluated as
    // 1 - Q cannot resolve the tail finely enough for Newton to converge.
    const bool upper = u > 0.5;
    const double target = upper ? 1.0 - u : u;
    const double log_gamma_a = std::lgamma(a);
    for (int it = 0; it < 200; ++it) {
        const double err = upper ? target - gamma_q(a, y) : gamma_p(a, y) - target;
        if (err > 0.0) hi = y; else lo = y;
        const double log_pdf = (a - 1.0) * std::log(y) - y - log_gamma_a;
        double next = y - err / std::exp(log_pdf);
        if (!(next > lo && next < hi) || !std::isfinite(next)) {
            next = 0.5 * (lo + hi); // bisect when Newton leaves the bracket
        }
        const bool converged = std::fabs(next - y) <= 1e-14 * (y + 1e-300);
        y = next;
        if (converged) break;
    }
    return y / rate;
}

double weibull_cdf(double x, double shape, double scale) {
    check_positive(shape, "weibull shape");
    check_positive(scale, "weibull scale");
    if (x <= 0.0) return 0.0;
    return -std::expm1(-std::pow(x / scale, shape));
}

double weibull_quantile(double u, double shape, double scale) {
    check_positive(shape, "weibull shape");
    check_positive(scale, "weibull scale");
    u = clamp_u(u);
    return scale * std::pow(-std::log1p(-u), 1.0 / shape);
}

Distribution Distribution::standard_normal() {
    return Distribution(Family::standard_normal, 0.0, 0.0);
}

Distribution Distribution::exponential(double rate) {
    check_positive(rate, "exponential rate");
    return Distribution(Family::exponential, rate, 0.0);
}

Distribution Distribution::gamma(double shape, double rate) {
    check_positive(shape, "gamma shape");
    check_positive(rate, "gamma rate");
    return Distribution(Family::gamma, shape, rate);
}

Distribution Distribution::weibull(double shape, double scale) {
    check_positive(shape, "weibull shape");
    check_positive(scale, "weibull scale");
    return Distribution(Family::weibull, shape, scale);
}

double Distribution::quantile(double u) const {
    switch (family_) {
    case Family::standard_normal: return normal_quantile(u);
    case Family::exponential: return exponential_quantile(u, a_);
    case Family::gamma: return gamma_quantile(u, a_, b_);
    case Family::weibull: return weibull_quantile(u, a_, b_);
    }
    return kInf;
}

double Distribution::cdf(double x) const {
    switch (family_) {
    case Family::standard_normal: return normal_cdf(x);
    case Family::exponential: return exponential_cdf(x, a_);
    case Family::gamma: return gamma_cdf(x, a_, b_);
    case Family::weibull: return weibull_cdf(x, a_, b_);
    }
    return 0.0;
}

double Distribution::mean() const {
    switch (family_) {
    case Family::standard_normal: return 0.0;
    case Family::exponential: return 1.0 / a_;
    case Family::gamma: return a_ / b_;
    case Family::weibull: return b_ * std::exp(std::lgamma(1.0 + 1.0 / a_));
    }
    return 0.0;
}

double Distribution::sd() const {
    switch (family_) {
    case Family::standard_normal: return 1.0;
    case Family::exponential: return 1.0 / a_;
    case Family::gamma: return std::sqrt(a_) / b_;
    case Family::weibull: {
        double m1 = std::exp(std::lgamma(1.0 + 1.0 / a_));
        double m2 = std::exp(std::lgamma(1.0 + 2.0 / a_));
        return b_ * std::sqrt(m2 - m1 * m1);
    }
    }
    return 1.0;
}

std::string Distribution::name() const {
    switch (family_) {
    case Family::standard_normal: return "normal(0,1)";
    case Family::exponential: return "exponential(" + std::to_string(a_) + ")";
    case Family::gamma: return "gamma(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    case Family::weibull: return "weibull(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    }
    return "?";
}

} // namespace reabc
