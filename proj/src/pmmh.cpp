#include "reabc/pmmh.hpp"
#include "reabc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace reabc {

ProposalConfig::ProposalConfig(Matrix covariance)
    : covariance_(std::move(covariance)), chol_(cholesky_psd(covariance_)) {
    if (covariance_.dim() == 0) {
        throw std::invalid_argument("ProposalConfig: empty covariance");
    }
}

ParamVector ProposalConfig::propose(const ParamVector& from, Rng& rng) const {
    if (static_cast<int>(from.size()) != dim()) {
        throw std::invalid_argument("ProposalConfig: dimension mismatch");
    }
    std::vector<double> inc = gaussian_increment(chol_, rng);
    ParamVector to(from);
    for (int i = 0; i < dim(); ++i) to[i] += inc[i];
    return to;
}

double ProposalConfig::log_density(const ParamVector& from, const ParamVector& to) const {
    std::vector<double> diff(dim());
    for (int i = 0; i < dim(); ++i) diff[i] = to[i] - from[i];
    return gaussian_log_density(chol_, diff);
}

ProposalConfig tune_proposal(const PilotSummary& pilot) {
    if (pilot.covariance.dim() == 0 || pilot.covariance.is_zero()) {
        throw std::invalid_argument("tune_proposal: degenerate pilot covariance");
    }
    const double d = static_cast<double>(pilot.covariance.dim());
    const double factor = 2.562 * 2.562 / d;
    return ProposalConfig(pilot.covariance.scaled(factor));
}

std::vector<double> Trace::component(int i) const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.theta.at(i));
    return out;
}

double Trace::acceptance_rate() const {
    if (records.size() < 2) return 0.0;
    double acc = 0.0;
    for (std::size_t t = 1; t < records.size(); ++t) acc += records[t].accepted ? 1.0 : 0.0;
    return acc / static_cast<double>(records.size() - 1);
}

long long Trace::total_sim_calls() const {
    long long total = 0;
    for (const auto& r : records) total += r.sim_calls;
    return total;
}

double Trace::total_smc_time_s() const {
    double total = 0.0;
    for (const auto& r : records) total += r.smc_time_s;
    return total;
}

double log_early_termination_bound(double u, const ParamVector& theta_prev,
                                   const ParamVector& theta_prop, double log_like_prev,
                                   const ModelSpec& model, const ProposalConfig& proposal) {
    double log_prior_prop = model.prior_log_density(theta_prop);
    if (!std::isfinite(log_prior_prop)) {
        throw std::invalid_argument("early_termination_bound: proposal outside prior support");
    }
    return std::log(u) + model.prior_log_density(theta_prev) + log_like_prev +
           proposal.log_density(theta_prev, theta_prop) - log_prior_prop -
           proposal.log_density(theta_prop, theta_prev);
}

double early_termination_bound(double u, const ParamVector& theta_prev,
                               const ParamVector& theta_prop, double log_like_prev,
                               const ModelSpec& model, const ProposalConfig& proposal) {
    return std::exp(log_early_termination_bound(u, theta_prev, theta_prop, log_like_prev,
                                                model, proposal));
}

Trace re_abc(const ModelSpec& model, const PmmhConfig& cfg, std::uint64_t seed) {
    if (!cfg.proposal) throw std::invalid_argument("re_abc: proposal covariance required");
    if (cfg.schedule) {
        const ThresholdSchedule& schedule = *cfg.schedule;
        return pseudo_marginal_chain(
            model, cfg.initial_theta, cfg.iterations, *cfg.proposal, cfg.early_termination,
            cfg.init_retries,
            [&](const ParamVector& theta, std::uint64_t est_seed, std::optional<double> log_bound) {
                return fixed_re_smc(model, theta, schedule, cfg.smc, log_bound, est_seed);
            },
            seed);
    }
    return pseudo_marginal_chain(
        model, cfg.initial_theta, cfg.iterations, *cfg.proposal, cfg.early_termination,
        cfg.init_retries,
        [&](const ParamVector& theta, std::uint64_t est_seed, std::optional<double> log_bound) {
            return adapt_re_smc(model, theta, cfg.smc, log_bound, est_seed);
        },
        seed);
}

ParticleTuneResult tune_particles(const ModelSpec& model, const ParamVector& theta_hat,
                                  const ThresholdSchedule& schedule,
                                  const ParticleTuneOptions& opts, const SmcConfig& base,
                                  std::uint64_t seed) {
    if (!std::isfinite(model.prior_log_density(theta_hat))) {
        throw std::invalid_argument("tune_particles: theta outside prior support");
    }
    if (opts.replicates < 3) throw std::invalid_argument("tune_particles: need >= 3 replicates");

    int particles = opts.initial_particles;
    for (int level = 0; level <= opts.max_doublings; ++level, particles *= 2) {
        SmcConfig cfg = base;
        cfg.particles = particles;
        cfg.n_accept = std::max(1, particles / 2);

        std::vector<double> log_estimates;
        int zeros = 0;
        for (int r = 0; r < opts.replicates; ++r) {
            SmcResult res = fixed_re_smc(model, theta_hat, schedule, cfg, std::nullopt,
                                         derive_seed(seed, static_cast<std::uint64_t>(level),
                                                     static_cast<std::uint64_t>(r)));
            if (res.estimate.is_zero()) {
                ++zeros;
            } else {
                log_estimates.push_back(res.estimate.log_value);
            }
        }
        const bool too_many_zeros = zeros * 2 > opts.replicates;
        if (!too_many_zeros && log_estimates.size() >= 2) {
            double var = sample_variance(log_estimates);
            if (var <= opts.target_log_variance) {
                return ParticleTuneResult{particles, var, zeros, opts.replicates};
            }
        }
        if (level == opts.max_doublings && too_many_zeros) {
            throw std::runtime_error("tune_particles: more than half the estimates were zero "
                                     "at the largest particle count tried");
        }
    }
    throw std::runtime_error("tune_particles: target log-likelihood variance not reached; "
                             "increase max_doublings or relax the threshold");
}

double tune_epsilon(const ModelSpec& model, const ParamVector& theta_hat,
                    double budget_s, const SmcConfig& cfg, std::uint64_t seed) {
    if (!(budget_s > 0.0)) throw std::invalid_argument("tune_epsilon: budget must be positive");
    SmcConfig run_cfg = cfg;
    run_cfg.epsilon = 0.0;
    return adapt_re_smc_until(model, theta_hat, run_cfg, budget_s, seed);
}

} // namespace reabc
