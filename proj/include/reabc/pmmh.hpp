#ifndef REABC_PMMH_HPP
#define REABC_PMMH_HPP

#include "reabc/linalg.hpp"
#include "reabc/model.hpp"
#include "reabc/smc.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace reabc {

// Gaussian random-walk proposal with a fixed covariance.
class ProposalConfig {
public:
    explicit ProposalConfig(Matrix covariance);

    int dim() const { return covariance_.dim(); }
    const Matrix& covariance() const { return covariance_; }

    ParamVector propose(const ParamVector& from, Rng& rng) const;

    // log q(to | from); symmetric in its arguments for a random walk, but
    // evaluated explicitly so the acceptance arithmetic stays general.
    double log_density(const ParamVector& from, const ParamVector& to) const;

private:
    Matrix covariance_;
    Matrix chol_;
};

struct PilotSummary {
    ParamVector mean;
    Matrix covariance;
};

// Proposal covariance (2.562^2 / dim(theta)) * Sigma_hat.
ProposalConfig tune_proposal(const PilotSummary& pilot);

struct ChainRecord {
    int iteration = 0;
    ParamVector theta;
    double log_like = 0.0;
    bool accepted = false;
    int smc_stages = 0;
    double smc_time_s = 0.0;
    bool terminated_early = false;
    long long sim_calls = 0;
};

struct Trace {
    std::vector<ChainRecord> records;
    std::uint64_t seed = 0;

    std::vector<double> component(int i) const;
    double acceptance_rate() const;
    long long total_sim_calls() const;
    double total_smc_time_s() const;
};

// Rejection bound for stopping a likelihood-estimate run early:
//   u * pi(theta_prev) * L_prev * q(theta_prop | theta_prev)
//   / (pi(theta_prop) * q(theta_prev | theta_prop)).
// A run whose running product falls below this value is guaranteed to be
// rejected. All arithmetic is in log space; the exponentiated form is for
// callers working on the natural scale.
double log_early_termination_bound(double u, const ParamVector& theta_prev,
                                   const ParamVector& theta_prop, double log_like_prev,
                                   const ModelSpec& model, const ProposalConfig& proposal);
double early_termination_bound(double u, const ParamVector& theta_prev,
                               const ParamVector& theta_prop, double log_like_prev,
                               const ModelSpec& model, const ProposalConfig& proposal);

// Pseudo-marginal Metropolis-Hastings chain, generic over the likelihood
// estimator. The estimator is invoked as
//     estimator(theta, stream_seed, log_bound) -> SmcResult
// with log_bound set when early termination is enabled. Per-iteration rng
// streams are derived from (seed, iteration), so enabling or disabling
// early termination cannot desynchronise later iterations.
template <typename EstimatorFn>
Trace pseudo_marginal_chain(const ModelSpec& model, const ParamVector& initial_theta,
                            int iterations, const ProposalConfig& proposal,
                            bool early_termination, int init_retries,
                            EstimatorFn&& estimator, std::uint64_t seed) {
    if (iterations < 1) throw std::invalid_argument("pseudo_marginal_chain: iterations must be >= 1");
    double log_prior = model.prior_log_density(initial_theta);
    if (!std::isfinite(log_prior)) {
        throw std::invalid_argument("pseudo_marginal_chain: initial state outside prior support");
    }

    Trace trace;
    trace.seed = seed;
    trace.records.reserve(iterations);

    // Initial likelihood estimate; a zero estimate is retried with a fresh
    // stream a bounded number of times.
    SmcResult init;
    bool have_init = false;
    for (int r = 0; r <= init_retries; ++r) {
        init = estimator(initial_theta, derive_seed(seed, 0, static_cast<std::uint64_t>(r)), std::nullopt);
        if (!init.estimate.is_zero()) {
            have_init = true;
            break;
        }
    }
    if (!have_init) {
        throw std::runtime_error("pseudo_marginal_chain: initial likelihood estimate is zero "
                                 "after all retries; pick a better starting point");
    }

    ParamVector theta = initial_theta;
    double log_like = init.estimate.log_value;
    trace.records.push_back(ChainRecord{1, theta, log_like, true, init.stages_completed,
                                        init.wall_time_s, init.terminated_early,
                                        init.simulator_calls});

    for (int t = 2; t <= iterations; ++t) {
        Rng iter_rng = make_stream(seed, static_cast<std::uint64_t>(t), 0);
        ParamVector theta_prop = proposal.propose(theta, iter_rng);
        double u = iter_rng.open01();

        double log_prior_prop = model.prior_log_density(theta_prop);
        if (!std::isfinite(log_prior_prop)) {
            // Outside the prior support: reject without simulating.
            trace.records.push_back(ChainRecord{t, theta, log_like, false, 0, 0.0, false, 0});
            continue;
        }

        double log_bound = std::log(u) + log_prior + log_like +
                           proposal.log_density(theta, theta_prop) -
                           log_prior_prop -
                           proposal.log_density(theta_prop, theta);

        SmcResult est = estimator(theta_prop, derive_seed(seed, static_cast<std::uint64_t>(t), 1),
                                  early_termination ? std::optional<double>(log_bound)
                                                    : std::nullopt);
        // Accept iff u <= MH ratio, rearranged around the same bound used
        // for early termination so both modes decide identically.
        bool accept = !est.terminated_early && est.estimate.log_value >= log_bound;
        if (accept) {
            theta = theta_prop;
            log_like = est.estimate.log_value; // reused until the next acceptance
            log_prior = log_prior_prop;
        }
        trace.records.push_back(ChainRecord{t, theta, log_like, accept, est.stages_completed,
                                            est.wall_time_s, est.terminated_early,
                                            est.simulator_calls});
    }
    return trace;
}

struct PmmhConfig {
    ParamVector initial_theta;
    int iterations = 1000;
    SmcConfig smc;
    std::optional<ThresholdSchedule> schedule; // present: FIXED-RE-SMC; absent: ADAPT-RE-SMC
    std::optional<ProposalConfig> proposal;
    bool early_termination = true;
    int init_retries = 10;
};

// RE-ABC: pseudo-marginal MH over theta with RE-SMC likelihood estimates.
// With a fixed schedule the invariant distribution is the ABC posterior at
// the schedule's target threshold.
Trace re_abc(const ModelSpec& model, const PmmhConfig& cfg, std::uint64_t seed);

struct ParticleTuneOptions {
    double target_log_variance = 1.0; // aim for log-likelihood variance ~ 1
    int replicates = 20;
    int initial_particles = 50;
    int max_doublings = 8;
};

struct ParticleTuneResult {
    int particles = 0;
    double log_variance = 0.0;
    int zero_estimates = 0; // at the returned particle count
    int replicates_used = 0;
};

// Smallest particle count in a doubling sequence whose replicated fixed
// RE-SMC log estimates have sample variance at or below the target.
// Zero estimates are excluded from the variance and counted; more than 50%
// zeros at the largest count tried is a failure.
ParticleTuneResult tune_particles(const ModelSpec& model, const ParamVector& theta_hat,
                                  const ThresholdSchedule& schedule,
                                  const ParticleTuneOptions& opts, const SmcConfig& base,
                                  std::uint64_t seed);

// Threshold reachable within a wall-time budget: ADAPT-RE-SMC toward
// epsilon = 0, stopped at the budget.
double tune_epsilon(const ModelSpec& model, const ParamVector& theta_hat,
                    double budget_s, const SmcConfig& cfg, std::uint64_t seed);

} // namespace reabc

#endif
