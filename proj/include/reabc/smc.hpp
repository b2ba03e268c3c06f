#ifndef REABC_SMC_HPP
#define REABC_SMC_HPP

#include "reabc/model.hpp"
#include "reabc/slice.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace reabc {

// Strictly decreasing threshold sequence; the last entry is the target
// epsilon of the run.
struct ThresholdSchedule {
    std::vector<double> epsilons;

    ThresholdSchedule() = default;
    explicit ThresholdSchedule(std::vector<double> eps);

    std::size_t stages() const { return epsilons.size(); }
    double target() const { return epsilons.back(); }
};

struct SmcConfig {
    int particles = 100;     // N
    int n_accept = 50;       // N_acc, adaptive algorithm only; 1 <= N_acc <= N
    double epsilon = 0.0;    // target threshold (adaptive algorithm)
    int slice_repeats = 1;   // Markov kernel applications per particle per stage
    int max_stages = 10000;  // adaptive non-termination guard
    int workers = 1;
    int slice_max_iterations = 1000;

    void validate(bool adaptive) const;
};

struct SmcResult {
    LikelihoodEstimate estimate;
    std::vector<double> stage_fractions; // per-stage acceptance fractions P_t
    int stages_completed = 0;
    bool terminated_early = false;       // stopped by the rejection bound
    std::vector<double> epsilons_used;
    double wall_time_s = 0.0;
    long long simulator_calls = 0;
};

// N IID uniform draws from the accepted index set (multinomial resampling).
std::vector<int> resample_indices(const std::vector<int>& accepted, int n, Rng& rng);

// Next adaptive threshold: the n_accept-th smallest distance, floored at
// the target.
double adaptive_threshold(std::vector<double> phis, int n_accept, double target);

// Rare-event SMC likelihood estimator with a prespecified threshold
// sequence. Unbiased for Pr(phi(x) <= target | theta). If log_bound is
// supplied, the run stops (terminated_early) as soon as the running product
// of stage fractions — an upper bound on the final estimate — falls below
// exp(log_bound).
SmcResult fixed_re_smc(const ModelSpec& model, const ParamVector& theta,
                       const ThresholdSchedule& schedule, const SmcConfig& cfg,
                       std::optional<double> log_bound, std::uint64_t seed);

// Rare-event SMC with thresholds chosen on the fly: each stage uses the
// larger of the n_accept-th smallest particle distance and the target.
// O(1/N) bias; every stage fraction is at least n_accept / particles.
SmcResult adapt_re_smc(const ModelSpec& model, const ParamVector& theta,
                       const SmcConfig& cfg, std::optional<double> log_bound,
                       std::uint64_t seed);

// adapt_re_smc stopped once wall time exceeds budget_s; returns the
// threshold reached. Run with cfg.epsilon = 0 to probe how small a target
// a given time budget affords.
double adapt_re_smc_until(const ModelSpec& model, const ParamVector& theta,
                          const SmcConfig& cfg, double budget_s, std::uint64_t seed);

// Threshold sequence for later fixed runs: the adaptive run's thresholds
// with consecutive duplicates removed. Rejects early-terminated input.
ThresholdSchedule schedule_from_pilot(const SmcResult& adaptive_result);

} // namespace reabc

#endif
