#ifndef REABC_STATS_HPP
#define REABC_STATS_HPP

#include <cstddef>
#include <vector>

namespace reabc {

double mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v); // n-1 denominator
double sample_sd(const std::vector<double>& v);

// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
double chi_square_pvalue(double statistic, int df);

// Chi-square goodness-of-fit of samples against a uniform distribution on
// [lo, hi] using equally sized bins. Returns the p-value.
double chi_square_uniform_pvalue(const std::vector<double>& samples,
                                 double lo, double hi, int bins);

// Two-sample chi-square over integer categories (e.g. epidemic final sizes).
// Categories with too few combined counts are pooled into a neighbour.
double chi_square_two_sample_pvalue(const std::vector<int>& a,
                                    const std::vector<int>& b,
                                    int min_expected = 5);

// One-sample Kolmogorov-Smirnov test against a CDF evaluated at each sample.
// `cdf_values` must be the model CDF evaluated at the (unsorted) samples.
struct KsResult {
    double statistic;
    double pvalue;
};
KsResult ks_test(std::vector<double> cdf_values);

// Two-sample Kolmogorov-Smirnov test.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Ordinary least squares fit y = intercept + slope * x.
struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

} // namespace reabc

#endif
