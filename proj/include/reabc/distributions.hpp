#ifndef REABC_DISTRIBUTIONS_HPP
#define REABC_DISTRIBUTIONS_HPP

#include <string>

namespace reabc {

// Standard normal quantile (Wichura's PPND16 rational approximation,
// accurate to ~1e-15) and CDF.
double normal_quantile(double u);
double normal_cdf(double x);

// Regularized incomplete gamma functions P(a,x) (lower) and Q(a,x) = 1 - P.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

double exponential_quantile(double u, double rate);
double exponential_cdf(double x, double rate);

// No closed form: solved by Newton iteration with bisection safeguard on
// gamma_p, to well below 1e-12 absolute tolerance in probability.
double gamma_quantile(double u, double shape, double rate);
double gamma_cdf(double x, double shape, double rate);

double weibull_quantile(double u, double shape, double scale = 1.0);
double weibull_cdf(double x, double shape, double scale = 1.0);

// A distribution selector for latent-variable transforms: simulators draw
// their randomness as uniform quantiles and map them through F^{-1}.
class Distribution {
public:
    enum class Family { standard_normal, exponential, gamma, weibull };

    static Distribution standard_normal();
    static Distribution exponential(double rate);
    static Distribution gamma(double shape, double rate);
    static Distribution weibull(double shape, double scale = 1.0);

    double quantile(double u) const;
    double cdf(double x) const;
    double mean() const;
    double sd() const;
    Family family() const { return family_; }
    std::string name() const;

private:
    Distribution(Family f, double a, double b) : family_(f), a_(a), b_(b) {}
    Family family_;
    double a_; // rate (exponential), shape (gamma, weibull)
    double b_; // rate (gamma), scale (weibull)
};

} // namespace reabc

#endif
