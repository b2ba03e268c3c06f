#include "reabc/stats.hpp"
#include "reabc/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reabc {

double mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("mean: empty vector");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("sample_variance: need at least 2 values");
    double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

double sample_sd(const std::vector<double>& v) {
    return std::sqrt(sample_variance(v));
}

double chi_square_pvalue(double statistic, int df) {
    if (df <= 0) throw std::invalid_argument("chi_square_pvalue: df must be positive");
    if (statistic <= 0.0) return 1.0;
    return gamma_q(0.5 * df, 0.5 * statistic);
}

double chi_square_uniform_pvalue(const std::vector<double>& samples,
                                 double lo, double hi, int bins) {
    if (bins < 2) throw std::invalid_argument("chi_square_uniform_pvalue: need >= 2 bins");
    if (!(hi > lo)) throw std::invalid_argument("chi_square_uniform_pvalue: bad interval");
    std::vector<int> counts(bins, 0);
    for (double s : samples) {
        if (s < lo || s > hi) {
            throw std::invalid_argument("chi_square_uniform_pvalue: sample outside interval");
        }
        int b = static_cast<int>((s - lo) / (hi - lo) * bins);
        if (b == bins) b = bins - 1;
        counts[b]++;
    }
    double expected = static_cast<double>(samples.size()) / bins;
    double stat = 0.0;
    for (int c : counts) stat += (c - expected) * (c - expected) / expected;
    return chi_square_pvalue(stat, bins - 1);
}

double chi_square_two_sample_pvalue(const std::vector<int>& a,
                                    const std::vector<int>& b,
                                    int min_expected) {
    if (a.empty() || b.empty()) throw std::invalid_argument("two-sample chi-square: empty input");
    int max_cat = 0;
    for (int v : a) max_cat = std::max(max_cat, v);
    for (int v : b) max_cat = std::max(max_cat, v);
    std::vector<double> ca(max_cat + 1, 0.0), cb(max_cat + 1, 0.0);
    for (int v : a) ca[v] += 1.0;
    for (int v : b) cb[v] += 1.0;

    // Pool sparse adjacent categories so the chi-square approximation holds.
    std::vector<double> pa, pb;
    double accum_a = 0.0, accum_b = 0.0;
    for (std::size_t k = 0; k < ca.size(); ++k) {
        accum_a += ca[k];
        accum_b += cb[k];
        if (accum_a + accum_b >= 2 * min_expected) {
            pa.push_back(accum_a);
            pb.push_back(accum_b);
            accum_a = accum_b = 0.0;
        }
    }
    if (accum_a + accum_b > 0.0) {
        if (pa.empty()) {
            pa.push_back(accum_a);
            pb.push_back(accum_b);
        } else {
            pa.back() += accum_a;
            pb.back() += accum_b;
        }
    }
    if (pa.size() < 2) return 1.0;

    double na = 0.0, nb = 0.0;
    for (double v : pa) na += v;
    for (double v : pb) nb += v;
    double stat = 0.0;
    for (std::size_t k = 0; k < pa.size(); ++k) {
        double total = pa[k] + pb[k];
        double ea = total * na / (na + nb);
        double eb = total * nb / (na + nb);
        stat += (pa[k] - ea) * (pa[k] - ea) / ea;
        stat += (pb[k] - eb) * (pb[k] - eb) / eb;
    }
    return chi_square_pvalue(stat, static_cast<int>(pa.size()) - 1);
}

KsResult ks_test(std::vector<double> cdf_values) {
    if (cdf_values.empty()) throw std::invalid_argument("ks_test: empty input");
    std::sort(cdf_values.begin(), cdf_values.end());
    const double n = static_cast<double>(cdf_values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < cdf_values.size(); ++i) {
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(cdf_values[i] - lo, hi - cdf_values[i]));
    }
    // Asymptotic Kolmogorov distribution with the usual finite-n correction.
    double sn = std::sqrt(n);
    double lambda = (sn + 0.12 + 0.11 / sn) * d;
    double p = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * lambda * lambda);
        p += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    p = std::min(1.0, std::max(0.0, 2.0 * p));
    return {d, p};
}

namespace {

double kolmogorov_pvalue(double lambda) {
    double p = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * lambda * lambda);
        p += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * p));
}

} // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty input");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            ++i;
        } else {
            ++j;
        }
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_pvalue((ne + 0.12 + 0.11 / ne) * d)};
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("linear_fit: need matched vectors of length >= 2");
    }
    double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate x");
    double slope = sxy / sxx;
    double r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return {slope, my - slope * mx, r2};
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("pearson_correlation: need matched vectors of length >= 2");
    }
    double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace reabc
