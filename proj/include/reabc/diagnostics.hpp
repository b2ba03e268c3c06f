#ifndef REABC_DIAGNOSTICS_HPP
#define REABC_DIAGNOSTICS_HPP

#include "reabc/abc.hpp"
#include "reabc/pmmh.hpp"

#include <string>
#include <vector>

namespace reabc {

struct EssReport {
    double ess = 1.0;
    int pair_sums_used = 0; // autocovariance pair sums entering the estimate
    int chain_length = 0;
    bool degenerate = false; // constant chain
};

// Effective sample size via Geyer's initial monotone sequence estimator:
// ESS = M / (1 + 2 sum rho_k), with the autocorrelation sum built from
// consecutive pair sums, truncated at the first negative pair and forced
// nonincreasing.
EssReport ess_imse(const std::vector<double>& chain);

double rmse(const std::vector<double>& samples, double truth);

struct QqData {
    std::vector<double> theoretical; // standard normal quantiles
    std::vector<double> empirical;   // standardized sorted finite log estimates
    int zero_estimates = 0;          // -inf entries, excluded from the pairs

    double correlation() const;
};

// Normality probe for replicated log-likelihood estimates. Requires at
// least 30 finite replicates; zero estimates are counted separately.
QqData loglik_qq(const std::vector<double>& log_estimates);

enum class CostMethod { abc_reject, abc_mcmc, re_abc };
std::string cost_method_name(CostMethod m);

struct CostScanRow {
    double epsilon = 0.0;
    std::string method;
    long long simulator_calls = 0;
    double wall_time_s = 0.0;
    double ess_or_accepts = 0.0;
    double time_per_effective_sample = 0.0;
    bool degenerate = false; // no effective samples; excluded from fits
};

struct CostScanConfig {
    std::vector<double> epsilons; // scanned largest to smallest
    std::vector<CostMethod> methods;
    long long rejection_target_accepts = 200;
    long long rejection_max_attempts = 50000000;
    int mcmc_iterations = 5000;
    int reabc_iterations = 300;
    SmcConfig smc;
    ParamVector initial_theta; // chain start and pilot point
    std::optional<ProposalConfig> proposal;
};

// Cost measurements across the epsilon grid for each method: simulator
// calls and wall time per accepted (rejection) or effective (MCMC) sample.
// RE-ABC tunes a fixed schedule per epsilon by an adaptive pilot run at
// initial_theta.
std::vector<CostScanRow> cost_scan(const ModelSpec& model, const CostScanConfig& cfg,
                                   std::uint64_t seed);

// Stage counts of adaptive RE-SMC runs across an epsilon grid, for checking
// that the stage count grows like log(1/epsilon).
std::vector<int> adapt_stage_counts(const ModelSpec& model, const ParamVector& theta,
                                    const SmcConfig& cfg, const std::vector<double>& epsilons,
                                    std::uint64_t seed);

} // namespace reabc

#endif
