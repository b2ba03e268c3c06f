#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reabc/distributions.hpp"
#include "reabc/rng.hpp"

#include <cmath>
#include <functional>
#include <vector>

using namespace reabc;

namespace {

// Adaptive Simpson quadrature; independent oracle for CDF round trips.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 48);
}

// Gamma CDF by quadrature of the density. Near zero the substitution
// t = tau^(1/shape) removes the integrable singularity of shapes below 1;
// past that the density itself is smooth.
double gamma_cdf_quadrature(double x, double shape, double rate) {
    if (x <= 0.0) return 0.0;
    const double log_norm = shape * std::log(rate) - std::lgamma(shape);
    auto density = [&](double t) {
        return std::exp(log_norm + (shape - 1.0) * std::log(t) - rate * t);
    };
    const double split = std::min(x, 1.0 / rate);
    auto substituted = [&](double tau) {
        return std::exp(log_norm - rate * std::pow(tau, 1.0 / shape)) / shape;
    };
    double cdf = integrate(substituted, 0.0, std::pow(split, shape), 1e-13);
    if (x > split) cdf += integrate(density, split, x, 1e-13);
    return cdf;
}

const std::vector<double> kUGrid = {1e-8, 1e-5, 1e-3, 0.02, 0.1,  0.3,       0.5,
                                    0.7,  0.9,  0.98, 0.999, 1 - 1e-5, 1 - 1e-8};

} // namespace

TEST_CASE("normal quantile hits the median and known points") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(normal_quantile(normal_cdf(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.2) == doctest::Approx(-normal_quantile(0.8)).epsilon(1e-14));
}

TEST_CASE("exponential quantile analytic inverse") {
    CHECK(exponential_quantile(1.0 - std::exp(-1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(exponential_quantile(0.0, 3.0) == doctest::Approx(0.0));
    CHECK(exponential_quantile(0.5, 2.0) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("gamma with shape 1 reduces to the exponential") {
    for (double u : kUGrid) {
        CHECK(gamma_quantile(u, 1.0, 2.0) ==
              doctest::Approx(exponential_quantile(u, 2.0)).epsilon(1e-11));
    }
}

TEST_CASE("weibull with shape 1 reduces to the exponential") {
    for (double u : kUGrid) {
        CHECK(weibull_quantile(u, 1.0) == doctest::Approx(exponential_quantile(u, 1.0)));
    }
}

TEST_CASE("gamma quantile round-trips through an independent quadrature CDF") {
    for (double shape : {0.5, 2.5, 7.0}) {
        for (double rate : {0.5, 3.0}) {
            for (double u : kUGrid) {
                const double x = gamma_quantile(u, shape, rate);
                CHECK(std::fabs(gamma_cdf_quadrature(x, shape, rate) - u) < 1e-10);
            }
        }
    }
}

TEST_CASE("normal and weibull round-trips against their CDFs") {
    for (double u : kUGrid) {
        CHECK(std::fabs(normal_cdf(normal_quantile(u)) - u) < 1e-10);
        CHECK(std::fabs(weibull_cdf(weibull_quantile(u, 2.3, 1.5), 2.3, 1.5) - u) < 1e-10);
        CHECK(std::fabs(exponential_cdf(exponential_quantile(u, 0.7), 0.7) - u) < 1e-10);
    }
}

TEST_CASE("quantiles are monotone in u") {
    Rng rng(1234);
    std::vector<Distribution> dists = {
        Distribution::standard_normal(), Distribution::exponential(1.3),
        Distribution::gamma(2.0, 0.8), Distribution::gamma(0.4, 2.0),
        Distribution::weibull(1.7, 2.0)};
    for (const auto& dist : dists) {
        for (int i = 0; i < 500; ++i) {
            double u1 = rng.uniform01();
            double u2 = rng.uniform01();
            if (u1 > u2) std::swap(u1, u2);
            CHECK(dist.quantile(u1) <= dist.quantile(u2));
        }
    }
}

TEST_CASE("boundary quantiles stay finite") {
    std::vector<Distribution> dists = {
        Distribution::standard_normal(), Distribution::exponential(1.0),
        Distribution::gamma(3.0, 1.0), Distribution::weibull(0.8)};
    for (const auto& dist : dists) {
        CHECK(std::isfinite(dist.quantile(0.0)));
        CHECK(std::isfinite(dist.quantile(1.0)));
        CHECK(dist.quantile(0.0) <= dist.quantile(1e-10));
        CHECK(dist.quantile(1.0) >= dist.quantile(1.0 - 1e-10));
    }
}

TEST_CASE("invalid distribution parameters are rejected") {
    CHECK_THROWS_AS(Distribution::exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::exponential(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::gamma(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::gamma(1.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::weibull(-0.5), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(1.5), std::invalid_argument);
}

TEST_CASE("distribution moments") {
    CHECK(Distribution::exponential(2.0).mean() == doctest::Approx(0.5));
    CHECK(Distribution::gamma(3.0, 2.0).mean() == doctest::Approx(1.5));
    CHECK(Distribution::gamma(3.0, 2.0).sd() == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(Distribution::weibull(1.0, 1.0).mean() == doctest::Approx(1.0));
    CHECK(Distribution::weibull(2.0, 1.0).mean() ==
          doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
}
